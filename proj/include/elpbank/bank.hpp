#pragma once

#include <string>
#include <vector>

#include "elpbank/filters.hpp"

namespace elpbank {

/// SVP generators: 1 - H G^* = sum_j k_j conj(l_j) with every k_j(1) = l_j(1) = 0.
/// K belongs to the dual side, L to the primal side.
struct SvpCertificate {
  std::vector<LaurentPoly> k;
  std::vector<LaurentPoly> l;

  std::size_t size() const { return k.size(); }
  bool operator==(const SvpCertificate&) const = default;
};

/// Lowpass filter followed by ordered highpass filters.
class FilterBank {
 public:
  FilterBank() = default;
  FilterBank(Filter lowpass, std::vector<Filter> highpass) : lowpass_(std::move(lowpass)), highpass_(std::move(highpass)) {
    if (classify_filter(lowpass_) != FilterClass::CanonicalLowpass)
      throw Error(Errc::invariant_violation, "bank lowpass filter is not a canonical lowpass filter");
    for (std::size_t i = 0; i < highpass_.size(); ++i) {
      if (!(highpass_[i].scheme() == lowpass_.scheme()))
        throw Error(Errc::scheme_mismatch, "highpass filter " + std::to_string(i + 1) + " scheme");
      if (classify_filter(highpass_[i]) != FilterClass::Highpass)
        throw Error(Errc::invariant_violation, "filter " + std::to_string(i + 1) + " is not highpass");
    }
  }

  const DilationScheme& scheme() const { return lowpass_.scheme(); }
  const Filter& lowpass() const { return lowpass_; }
  const std::vector<Filter>& highpass() const { return highpass_; }
  std::size_t size() const { return highpass_.size(); }

  /// Lowpass first, then highpass filters in order.
  std::vector<Filter> all() const {
    std::vector<Filter> v{lowpass_};
    v.insert(v.end(), highpass_.begin(), highpass_.end());
    return v;
  }

  bool operator==(const FilterBank&) const = default;

 private:
  Filter lowpass_;
  std::vector<Filter> highpass_;
};

struct BankPair {
  FilterBank primal;
  FilterBank dual;

  BankPair swapped() const { return {dual, primal}; }
  bool operator==(const BankPair&) const = default;
};

}  // namespace elpbank
