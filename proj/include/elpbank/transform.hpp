#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <type_traits>
#include <vector>

#include "elpbank/muep.hpp"

namespace elpbank {

/// Finitely supported signal on Z^n with exact (RadicalRational) or numeric (double) samples.
template <class T>
struct Signal {
  std::size_t dim = 0;
  std::map<Exponent, T> samples;

  static constexpr bool exact = std::is_same_v<T, RadicalRational>;

  T at(const Exponent& k) const {
    auto it = samples.find(k);
    return it == samples.end() ? T{} : it->second;
  }

  void add(const Exponent& k, const T& v) {
    auto& slot = samples[k];
    slot += v;
    if (is_zero_sample(slot)) samples.erase(k);
  }

  static bool is_zero_sample(const T& v) {
    if constexpr (exact) return v.is_zero();
    else return v == 0.0;
  }

  bool operator==(const Signal&) const = default;
};

using ExactSignal = Signal<RadicalRational>;
using NumericSignal = Signal<double>;

namespace detail {

template <class T>
T tap_as(const RadicalRational& c) {
  if constexpr (std::is_same_v<T, RadicalRational>) return c;
  else return c.to_double();
}

template <class T>
void require_bank_dim(const FilterBank& bank, const Signal<T>& x) {
  if (bank.scheme().dim() != x.dim) throw Error(Errc::dimension_mismatch, "signal and bank dimensions differ");
}

}  // namespace detail

/// c_i(m) = sum_k x(k) conj(f_i(k - L m)) for each filter of the bank, lowpass first.
/// Coefficients are real, so conj is the identity here.
template <class T>
std::vector<Signal<T>> analyze(const FilterBank& bank, const Signal<T>& x) {
  detail::require_bank_dim(bank, x);
  const auto& scheme = bank.scheme();
  std::vector<Signal<T>> out;
  for (const auto& f : bank.all()) {
    Signal<T> c{x.dim, {}};
    for (const auto& [k, xv] : x.samples)
      for (const auto& [t, fv] : f.taps())
        if (auto m = scheme.solve(k - t)) c.add(*m, xv * detail::tap_as<T>(fv));
    out.push_back(std::move(c));
  }
  return out;
}

/// x(k) = sum_i sum_m f_i(k - L m) c_i(m).
template <class T>
Signal<T> synthesize_signal(const FilterBank& bank, const std::vector<Signal<T>>& coeffs) {
  const auto filters = bank.all();
  if (coeffs.size() != filters.size())
    throw Error(Errc::shape_mismatch, "expected " + std::to_string(filters.size()) + " coefficient signals, got " +
                                          std::to_string(coeffs.size()));
  const auto& scheme = bank.scheme();
  Signal<T> x{scheme.dim(), {}};
  for (std::size_t i = 0; i < filters.size(); ++i) {
    if (coeffs[i].dim != x.dim) throw Error(Errc::dimension_mismatch, "coefficient signal dimension");
    for (const auto& [m, cv] : coeffs[i].samples) {
      const Exponent shift = scheme.lambda() * m;
      for (const auto& [t, fv] : filters[i].taps()) x.add(t + shift, detail::tap_as<T>(fv) * cv);
    }
  }
  return x;
}

struct PrResult {
  bool dual_then_primal = false;  // analyze with dual, synthesize with primal
  bool primal_then_dual = false;  // analyze with primal, synthesize with dual
  double max_error = 0.0;

  bool ok() const { return dual_then_primal && primal_then_dual; }
};

namespace detail {

template <class T>
double max_abs_difference(const Signal<T>& a, const Signal<T>& b) {
  double worst = 0.0;
  auto visit = [&](const Exponent& k) {
    T d = a.at(k);
    d -= b.at(k);
    if constexpr (std::is_same_v<T, RadicalRational>) worst = std::max(worst, std::abs(d.to_double()));
    else worst = std::max(worst, std::abs(d));
  };
  for (const auto& [k, v] : a.samples) visit(k);
  for (const auto& [k, v] : b.samples) visit(k);
  return worst;
}

}  // namespace detail

/// Perfect reconstruction in both role orders. Exact signals must reproduce x exactly;
/// numeric signals within 1e-10.
template <class T>
PrResult pr_check(const BankPair& pair, const Signal<T>& x) {
  if (!muep_verify_polyphase(pair))
    throw Error(Errc::precondition_failed, "bank pair does not satisfy the polyphase MUEP identity");
  PrResult r;
  const Signal<T> a = synthesize_signal(pair.primal, analyze(pair.dual, x));
  const Signal<T> b = synthesize_signal(pair.dual, analyze(pair.primal, x));
  r.max_error = std::max(detail::max_abs_difference(a, x), detail::max_abs_difference(b, x));
  if constexpr (Signal<T>::exact) {
    r.dual_then_primal = a == x;
    r.primal_then_dual = b == x;
  } else {
    r.dual_then_primal = detail::max_abs_difference(a, x) < 1e-10;
    r.primal_then_dual = detail::max_abs_difference(b, x) < 1e-10;
  }
  return r;
}

/// Random exact signal: `count` samples at positions in [-radius, radius]^dim with rational
/// values num/den, num in [-9, 9] \ {0}, den in [1, 7].
template <class Rng>
ExactSignal random_exact_signal(std::size_t dim, std::size_t count, std::int64_t radius, Rng& rng) {
  std::uniform_int_distribution<std::int64_t> pos(-radius, radius);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  ExactSignal x{dim, {}};
  for (std::size_t i = 0; i < count; ++i) {
    Exponent k(dim);
    for (auto& v : k) v = pos(rng);
    long n = 0;
    while (n == 0) n = num(rng);
    x.samples[k] = RadicalRational::rational(n, den(rng));
  }
  return x;
}

}  // namespace elpbank
