#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "elpbank/error.hpp"
#include "elpbank/int_matrix.hpp"

namespace elpbank {

/// Splits n > 0 into (s, r) with n = s^2 * r and r squarefree. Trial division.
inline std::pair<std::uint64_t, std::uint64_t> squarefree_split(std::uint64_t n) {
  if (n == 0) throw Error(Errc::invariant_violation, "radicand must be positive");
  std::uint64_t s = 1, r = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) s *= p;
    if (e % 2) r *= p;
  }
  return {s, r * n};
}

inline bool is_squarefree(std::uint64_t n) { return n > 0 && squarefree_split(n).first == 1; }

/// Exact real number sum_n q_n sqrt(n) over distinct squarefree radicands n.
///
/// Terms are kept sorted by radicand, no coefficient is zero, and zero is the empty sum.
/// Because square roots of distinct squarefree integers are linearly independent over Q,
/// this representation is canonical and equality is structural.
class RadicalRational {
 public:
  struct Term {
    std::uint64_t radicand;
    mpq_class coeff;
    bool operator==(const Term& o) const { return radicand == o.radicand && coeff == o.coeff; }
  };

  RadicalRational() = default;
  RadicalRational(long v) : RadicalRational(mpq_class(v)) {}  // NOLINT(implicit)
  RadicalRational(int v) : RadicalRational(mpq_class(v)) {}   // NOLINT(implicit)
  RadicalRational(const mpq_class& q) {                        // NOLINT(implicit)
    if (q != 0) {
      mpq_class c = q;
      c.canonicalize();
      terms_.push_back({1, c});
    }
  }

  static RadicalRational rational(long num, long den) {
    if (den == 0) throw Error(Errc::invariant_violation, "zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return RadicalRational(q);
  }

  /// sqrt(n) for any positive n, reduced to g*sqrt(squarefree).
  static RadicalRational sqrt(std::uint64_t n) {
    auto [s, r] = squarefree_split(n);
    RadicalRational out;
    out.terms_.push_back({r, mpq_class(static_cast<unsigned long>(s))});
    return out;
  }

  /// Canonicalizes an arbitrary list of terms: radicands are reduced to squarefree form,
  /// like radicands merged, zeros dropped. Idempotent on canonical input.
  static RadicalRational normalize(std::vector<Term> raw) {
    std::map<std::uint64_t, mpq_class> acc;
    for (auto& t : raw) {
      if (t.coeff == 0) continue;
      auto [s, r] = squarefree_split(t.radicand);
      acc[r] += t.coeff * mpq_class(static_cast<unsigned long>(s));
    }
    RadicalRational out;
    for (auto& [r, c] : acc)
      if (c != 0) {
        c.canonicalize();
        out.terms_.push_back({r, c});
      }
    return out;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1); }

  mpq_class rational_part() const {
    if (!terms_.empty() && terms_[0].radicand == 1) return terms_[0].coeff;
    return 0;
  }

  double to_double() const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.coeff.get_d() * std::sqrt(static_cast<double>(t.radicand));
    return s;
  }

  RadicalRational operator-() const {
    RadicalRational r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  RadicalRational& operator+=(const RadicalRational& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    if (&o == this) return *this *= mpq_class(2);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.cbegin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->radicand < b->radicand)) {
        merged.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->radicand < a->radicand) {
        merged.push_back(*b++);
      } else {
        mpq_class c = a->coeff + b->coeff;
        if (c != 0) merged.push_back({a->radicand, std::move(c)});
        ++a;
        ++b;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }

  RadicalRational& operator-=(const RadicalRational& o) { return *this += -o; }

  RadicalRational& operator*=(const RadicalRational& o) { return *this = *this * o; }

  RadicalRational& operator*=(const mpq_class& q) {
    if (q == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.coeff *= q;
    return *this;
  }

  RadicalRational& operator/=(const mpq_class& q) {
    if (q == 0) throw Error(Errc::invariant_violation, "division by zero");
    for (auto& t : terms_) t.coeff /= q;
    return *this;
  }

  friend RadicalRational operator+(RadicalRational a, const RadicalRational& b) { return a += b; }
  friend RadicalRational operator-(RadicalRational a, const RadicalRational& b) { return a -= b; }
  friend RadicalRational operator/(RadicalRational a, const mpq_class& q) { return a /= q; }

  // sqrt(a) * sqrt(b) = g * sqrt((a/g)(b/g)) with g = gcd(a, b); squarefree a, b keep the
  // result squarefree without factoring.
  friend RadicalRational operator*(const RadicalRational& x, const RadicalRational& y) {
    if (x.terms_.empty() || y.terms_.empty()) return {};
    if (x.is_rational() && y.is_rational()) return RadicalRational(x.terms_[0].coeff * y.terms_[0].coeff);
    std::map<std::uint64_t, mpq_class> acc;
    for (const auto& a : x.terms_)
      for (const auto& b : y.terms_) {
        const std::uint64_t g = std::gcd(a.radicand, b.radicand);
        const unsigned __int128 r = static_cast<unsigned __int128>(a.radicand / g) * (b.radicand / g);
        if (r > UINT64_MAX) throw Error(Errc::overflow, "radicand product exceeds 64 bits");
        acc[static_cast<std::uint64_t>(r)] += a.coeff * b.coeff * mpq_class(static_cast<unsigned long>(g));
      }
    RadicalRational out;
    for (auto& [r, c] : acc)
      if (c != 0) out.terms_.push_back({r, std::move(c)});
    return out;
  }

  bool operator==(const RadicalRational& o) const { return terms_ == o.terms_; }

  /// Human-readable form, e.g. "-1/16*sqrt(2) + 3/4".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& t = terms_[i];
      mpq_class c = t.coeff;
      if (i) {
        s += c < 0 ? " - " : " + ";
        if (c < 0) c = -c;
      }
      if (t.radicand == 1) {
        s += c.get_str();
      } else {
        if (c == -1) s += "-";
        else if (c != 1) s += c.get_str() + "*";
        s += "sqrt(" + std::to_string(t.radicand) + ")";
      }
    }
    return s;
  }

 private:
  std::vector<Term> terms_;
};

using RR = RadicalRational;

inline double to_double(const RadicalRational& a) { return a.to_double(); }

/// Sparse n-variate Laurent polynomial with RadicalRational coefficients.
///
/// The term stored at exponent e denotes coeff * z^e. Terms iterate in lexicographic
/// exponent order, which fixes serialization order.
class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, RadicalRational>;

  explicit LaurentPoly(std::size_t dim = 0) : dim_(dim) {}

  static LaurentPoly constant(std::size_t dim, const RadicalRational& c) {
    LaurentPoly p(dim);
    p.add_term(Exponent(dim, 0), c);
    return p;
  }

  static LaurentPoly monomial(const Exponent& e, const RadicalRational& c = RadicalRational(1)) {
    LaurentPoly p(e.size());
    p.add_term(e, c);
    return p;
  }

  /// z_i^power in dimension dim.
  static LaurentPoly variable(std::size_t dim, std::size_t i, std::int64_t power = 1) {
    Exponent e(dim, 0);
    e.at(i) = power;
    return monomial(e);
  }

  std::size_t dim() const { return dim_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  RadicalRational coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? RadicalRational() : it->second;
  }

  void add_term(const Exponent& e, const RadicalRational& c) {
    if (e.size() != dim_)
      throw Error(Errc::dimension_mismatch,
                  "exponent of length " + std::to_string(e.size()) + " in dim " + std::to_string(dim_));
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    check_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    check_dim(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  LaurentPoly& operator*=(const RadicalRational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const RadicalRational& s) { return a *= s; }
  friend LaurentPoly operator*(const RadicalRational& s, LaurentPoly a) { return a *= s; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.check_dim(b);
    LaurentPoly r(a.dim_);
    Exponent e(a.dim_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  bool operator==(const LaurentPoly& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

  /// p*(z) = p(z^{-1}); coefficients are real so only exponents flip.
  LaurentPoly conjugate() const {
    LaurentPoly r(dim_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(-e, c);
    return r;
  }

  /// p(z^L): the monomial z^e becomes z^{L e}, L's columns giving the new variables.
  LaurentPoly substitute(const IntMatrix& lambda) const {
    if (!lambda.is_square() || lambda.rows() != dim_)
      throw Error(Errc::shape_mismatch, "substitution matrix " + lambda.str() + " for dim " + std::to_string(dim_));
    LaurentPoly r(dim_);
    for (const auto& [e, c] : terms_) r.add_term(lambda * e, c);
    return r;
  }

  /// p(1, ..., 1).
  RadicalRational eval_one() const {
    RadicalRational s;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  /// p(e^{i omega}) = sum c * e^{i omega . e} in double precision.
  std::complex<double> eval_unit_circle(std::span<const double> omega) const {
    if (omega.size() != dim_) throw Error(Errc::dimension_mismatch, "frequency vector length");
    std::complex<double> s = 0.0;
    for (const auto& [e, c] : terms_) {
      double phase = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) phase += omega[i] * static_cast<double>(e[i]);
      s += c.to_double() * std::polar(1.0, phase);
    }
    return s;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      const bool unit = is_zero_vector(e);
      const bool compound = c.terms().size() > 1;
      if (unit) {
        s += compound ? "(" + c.str() + ")" : c.str();
        continue;
      }
      s += compound ? "(" + c.str() + ")" : c.str();
      for (std::size_t i = 0; i < dim_; ++i) {
        if (e[i] == 0) continue;
        s += "*z" + std::to_string(i + 1);
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
      }
    }
    return s;
  }

 private:
  void check_dim(const LaurentPoly& o) const {
    if (o.dim_ != dim_)
      throw Error(Errc::dimension_mismatch,
                  "polynomials of dim " + std::to_string(dim_) + " and " + std::to_string(o.dim_));
  }

  std::size_t dim_;
  TermMap terms_;
};

/// (1 - z^m): the basic vanishing factor used throughout the corpus.
inline LaurentPoly one_minus_monomial(const Exponent& m) {
  LaurentPoly p = LaurentPoly::constant(m.size(), 1);
  p.add_term(m, -1);
  return p;
}

}  // namespace elpbank
