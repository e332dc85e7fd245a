#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "elpbank/algebra.hpp"
#include "elpbank/lattice.hpp"

namespace elpbank {

/// Finitely supported filter f : Z^n -> R on a dilation scheme. Zero taps are never stored.
class Filter {
 public:
  using TapMap = std::map<Exponent, RadicalRational>;

  Filter() = default;
  Filter(DilationScheme scheme, TapMap taps) : scheme_(std::move(scheme)) {
    for (auto& [m, c] : taps) set_tap(m, c);
  }
  explicit Filter(DilationScheme scheme) : scheme_(std::move(scheme)) {}

  /// Filter whose z-transform is F: the coefficient of z^e becomes the tap at -e.
  static Filter from_z(DilationScheme scheme, const LaurentPoly& z) {
    if (z.dim() != scheme.dim()) throw Error(Errc::dimension_mismatch, "z-transform dimension");
    Filter f(std::move(scheme));
    for (const auto& [e, c] : z.terms()) f.taps_.emplace(-e, c);
    return f;
  }

  const DilationScheme& scheme() const { return scheme_; }
  std::size_t dim() const { return scheme_.dim(); }
  const TapMap& taps() const { return taps_; }
  std::size_t nonzero_taps() const { return taps_.size(); }

  RadicalRational tap(const Exponent& m) const {
    auto it = taps_.find(m);
    return it == taps_.end() ? RadicalRational() : it->second;
  }

  void set_tap(const Exponent& m, const RadicalRational& c) {
    if (m.size() != dim()) throw Error(Errc::dimension_mismatch, "tap position " + to_string(m));
    if (c.is_zero()) taps_.erase(m);
    else taps_[m] = c;
  }

  Filter operator-() const {
    Filter r = *this;
    for (auto& [m, c] : r.taps_) c = -c;
    return r;
  }

  bool operator==(const Filter& o) const { return scheme_ == o.scheme_ && taps_ == o.taps_; }

 private:
  DilationScheme scheme_;
  TapMap taps_;
};

/// F(z) = sum_m f(m) z^{-m}.
inline LaurentPoly filter_to_z(const Filter& f) {
  LaurentPoly p(f.dim());
  for (const auto& [m, c] : f.taps()) p.add_term(-m, c);
  return p;
}

/// Row vector [F_{nu_0}, ..., F_{nu_{q-1}}] in scheme gamma order.
struct PolyphaseVector {
  DilationScheme scheme;
  std::vector<LaurentPoly> components;

  bool operator==(const PolyphaseVector&) const = default;
};

/// f_nu(m) = f(L m - nu), so that F(z) = sum_nu z^nu F_nu(z^L).
inline PolyphaseVector polyphase_decompose(const Filter& f) {
  const auto& s = f.scheme();
  PolyphaseVector pv{s, std::vector<LaurentPoly>(s.q(), LaurentPoly(s.dim()))};
  for (const auto& [k, c] : f.taps()) {
    auto [idx, m] = s.split(k);
    pv.components[idx].add_term(-m, c);
  }
  return pv;
}

inline Filter polyphase_reconstruct(const PolyphaseVector& pv) {
  const auto& s = pv.scheme;
  if (pv.components.size() != s.q()) throw Error(Errc::shape_mismatch, "polyphase vector length != q");
  Filter f(s);
  for (std::size_t i = 0; i < s.q(); ++i) {
    const auto& nu = s.gamma()[i];
    for (const auto& [e, c] : pv.components[i].terms()) {
      // c z^e in F_nu contributes c z^{nu + L e}, i.e. the tap at L(-e) - nu.
      const Exponent m = s.lambda() * (-e) - nu;
      if (!f.tap(m).is_zero()) throw Error(Errc::invariant_violation, "polyphase components collide at " + to_string(m));
      f.set_tap(m, c);
    }
  }
  return f;
}

enum class FilterClass { Lowpass, CanonicalLowpass, Highpass, Neither };

constexpr std::string_view to_string(FilterClass c) {
  switch (c) {
    case FilterClass::Lowpass: return "Lowpass";
    case FilterClass::CanonicalLowpass: return "CanonicalLowpass";
    case FilterClass::Highpass: return "Highpass";
    case FilterClass::Neither: return "Neither";
  }
  return "?";
}

/// Exact classification. The canonical test F_nu(1) = 1/sqrt(q) for all nu is equivalent to
/// the mask vanishing on the nonzero dual frequencies.
inline FilterClass classify_filter(const Filter& f) {
  RadicalRational sum;
  for (const auto& [m, c] : f.taps()) sum += c;
  if (sum.is_zero()) return FilterClass::Highpass;
  const auto q = f.scheme().q();
  if (sum != RadicalRational::sqrt(q)) return FilterClass::Neither;
  const RadicalRational target = RadicalRational::sqrt(q) / mpq_class(static_cast<unsigned long>(q));
  for (const auto& comp : polyphase_decompose(f).components)
    if (comp.eval_one() != target) return FilterClass::Lowpass;
  return FilterClass::CanonicalLowpass;
}

inline bool is_lowpass(FilterClass c) { return c == FilterClass::Lowpass || c == FilterClass::CanonicalLowpass; }

/// Numeric taps for fast evaluation on grids.
struct NumericFilter {
  std::vector<std::pair<std::vector<double>, double>> taps;

  explicit NumericFilter(const Filter& f) {
    for (const auto& [m, c] : f.taps()) taps.emplace_back(std::vector<double>(m.begin(), m.end()), c.to_double());
  }

  /// F(e^{i omega}) = sum f(m) e^{-i omega . m}.
  std::complex<double> z_transform(std::span<const double> omega) const {
    std::complex<double> s = 0.0;
    for (const auto& [m, c] : taps) {
      double ph = 0.0;
      for (std::size_t i = 0; i < m.size(); ++i) ph -= omega[i] * m[i];
      s += c * std::polar(1.0, ph);
    }
    return s;
  }
};

/// Mask f^(omega) = q^{-1/2} sum_m f(m) e^{-i omega . m}.
inline std::complex<double> mask(const Filter& f, std::span<const double> omega) {
  if (omega.size() != f.dim()) throw Error(Errc::dimension_mismatch, "frequency vector length");
  return NumericFilter(f).z_transform(omega) / std::sqrt(static_cast<double>(f.scheme().q()));
}

}  // namespace elpbank
