#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "elpbank/error.hpp"
#include "elpbank/int_matrix.hpp"

namespace elpbank {

namespace detail {

inline std::int64_t mpz_to_i64(const mpz_class& v) {
  if (!v.fits_slong_p()) throw Error(Errc::overflow, "determinant out of range");
  return v.get_si();
}

// Lambda^{-1} v = adj v / det; returns adj v.
inline Exponent scaled_preimage(const IntMatrix& adj, const Exponent& v) { return adj * v; }

// True iff every coordinate of t / det lies in [0, 1).
inline bool in_unit_cube(const Exponent& t, std::int64_t det) {
  for (auto x : t) {
    if (det > 0 ? (x < 0 || x >= det) : (x > 0 || x <= det)) return false;
  }
  return true;
}

// Brute force over the integer bounding box of L[0,1)^n.
inline std::vector<Exponent> enumerate_cosets(const IntMatrix& lambda, const ExactInverse& inv) {
  const std::size_t n = lambda.rows();
  const std::int64_t det = mpz_to_i64(inv.det);
  Exponent lo(n, 0), hi(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (lambda(i, j) < 0) lo[i] += lambda(i, j);
      else hi[i] += lambda(i, j);
    }
  std::vector<Exponent> reps;
  Exponent m = lo;
  while (true) {
    if (in_unit_cube(scaled_preimage(inv.adjugate, m), det)) reps.push_back(m);
    std::size_t k = 0;
    while (k < n && m[k] == hi[k]) {
      m[k] = lo[k];
      ++k;
    }
    if (k == n) break;
    ++m[k];
  }
  const std::size_t q = static_cast<std::size_t>(det < 0 ? -det : det);
  if (reps.size() != q)
    throw Error(Errc::invariant_violation, "coset enumeration found " + std::to_string(reps.size()) +
                                               " representatives, expected " + std::to_string(q));
  // lexicographic, with 0 forced first
  std::sort(reps.begin(), reps.end(), [](const Exponent& a, const Exponent& b) {
    const bool za = is_zero_vector(a), zb = is_zero_vector(b);
    if (za != zb) return za;
    return a < b;
  });
  return reps;
}

inline void check_expanding(const IntMatrix& lambda) {
  const auto n = static_cast<Eigen::Index>(lambda.rows());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = static_cast<double>(lambda(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(es.eigenvalues()[i]) <= 1.0 + 1e-9)
      throw Error(Errc::not_expanding, "matrix " + lambda.str() + " has an eigenvalue of modulus " +
                                           std::to_string(std::abs(es.eigenvalues()[i])));
  }
}

}  // namespace detail

/// A validated dilation matrix together with ordered coset representatives of
/// Z^n / L Z^n (gamma) and Z^n / L^T Z^n (dual_reps). The dual frequency for index k is
/// 2 pi (L^T)^{-1} dual_reps[k]; it is computed on demand and never used in exact paths.
class DilationScheme {
 public:
  DilationScheme() = default;

  /// Canonical scheme: representatives in lexicographic order, 0 first.
  static DilationScheme from_matrix(const IntMatrix& lambda) {
    DilationScheme s = prepare(lambda);
    s.gamma_ = detail::enumerate_cosets(lambda, s.inv_);
    s.dual_reps_ = detail::enumerate_cosets(s.lambda_t_, s.inv_t_);
    return s;
  }

  /// Scheme with caller-chosen representative order, validated for completeness.
  static DilationScheme with_representatives(const IntMatrix& lambda, std::vector<Exponent> gamma,
                                             std::vector<Exponent> dual_reps) {
    DilationScheme s = prepare(lambda);
    check_complete(gamma, s.inv_, s.q_, "gamma");
    check_complete(dual_reps, s.inv_t_, s.q_, "dual_reps");
    s.gamma_ = std::move(gamma);
    s.dual_reps_ = std::move(dual_reps);
    return s;
  }

  std::size_t dim() const { return lambda_.rows(); }
  std::size_t q() const { return q_; }
  const IntMatrix& lambda() const { return lambda_; }
  const std::vector<Exponent>& gamma() const { return gamma_; }
  const std::vector<Exponent>& dual_reps() const { return dual_reps_; }

  /// gamma_k = 2 pi (L^T)^{-1} d_k.
  std::vector<double> dual_frequency(std::size_t k) const {
    const Exponent t = inv_t_.adjugate * dual_reps_.at(k);
    const double det = inv_t_.det.get_d();
    std::vector<double> g(dim());
    for (std::size_t i = 0; i < dim(); ++i) g[i] = 2.0 * std::numbers::pi * static_cast<double>(t[i]) / det;
    return g;
  }

  /// Returns m with L m = v when v is in L Z^n.
  std::optional<Exponent> solve(const Exponent& v) const {
    Exponent t = inv_.adjugate * v;
    const std::int64_t det = detail::mpz_to_i64(inv_.det);
    for (auto& x : t) {
      if (x % det != 0) return std::nullopt;
      x /= det;
    }
    return t;
  }

  /// Index of the representative nu with v + nu in L Z^n, i.e. v = L m - nu.
  std::pair<std::size_t, Exponent> split(const Exponent& v) const {
    for (std::size_t i = 0; i < gamma_.size(); ++i)
      if (auto m = solve(v + gamma_[i])) return {i, *m};
    throw Error(Errc::invariant_violation, "no coset representative for " + to_string(v));
  }

  bool operator==(const DilationScheme& o) const {
    return lambda_ == o.lambda_ && gamma_ == o.gamma_ && dual_reps_ == o.dual_reps_;
  }

 private:
  static DilationScheme prepare(const IntMatrix& lambda) {
    if (!lambda.is_square() || lambda.rows() == 0)
      throw Error(Errc::shape_mismatch, "dilation matrix must be square and non-empty");
    DilationScheme s;
    s.lambda_ = lambda;
    s.lambda_t_ = lambda.transpose();
    s.inv_ = exact_inverse(lambda);
    s.inv_t_ = exact_inverse(s.lambda_t_);
    const std::int64_t det = detail::mpz_to_i64(s.inv_.det);
    s.q_ = static_cast<std::size_t>(det < 0 ? -det : det);
    if (s.q_ < 2) throw Error(Errc::not_expanding, "|det| = " + std::to_string(s.q_) + " < 2");
    detail::check_expanding(lambda);
    return s;
  }

  static void check_complete(const std::vector<Exponent>& reps, const ExactInverse& inv, std::size_t q,
                             const char* what) {
    if (reps.size() != q)
      throw Error(Errc::invariant_violation, std::string(what) + " must have q elements");
    if (reps.empty() || !is_zero_vector(reps[0]))
      throw Error(Errc::invariant_violation, std::string(what) + " must start with 0");
    const std::int64_t det = detail::mpz_to_i64(inv.det);
    const std::size_t n = inv.adjugate.rows();
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (reps[i].size() != n) throw Error(Errc::dimension_mismatch, std::string(what) + " entry length");
      for (std::size_t j = 0; j < i; ++j) {
        const Exponent t = inv.adjugate * (reps[i] - reps[j]);
        if (std::all_of(t.begin(), t.end(), [det](std::int64_t x) { return x % det == 0; }))
          throw Error(Errc::invariant_violation, std::string(what) + " entries " + to_string(reps[j]) + " and " +
                                                     to_string(reps[i]) + " share a coset");
      }
    }
  }

  IntMatrix lambda_;
  IntMatrix lambda_t_;
  ExactInverse inv_;
  ExactInverse inv_t_;
  std::size_t q_ = 0;
  std::vector<Exponent> gamma_;
  std::vector<Exponent> dual_reps_;
};

inline DilationScheme validate_dilation(const IntMatrix& lambda) { return DilationScheme::from_matrix(lambda); }

inline std::vector<Exponent> coset_reps(const IntMatrix& lambda) { return validate_dilation(lambda).gamma(); }

inline std::vector<Exponent> dual_coset_reps(const IntMatrix& lambda) {
  return validate_dilation(lambda).dual_reps();
}

/// X(omega) = q^{-1/2} [e^{i (omega + gamma) . nu}], rows nu in gamma, columns dual frequencies.
inline Eigen::MatrixXcd fourier_matrix(const DilationScheme& s, std::span<const double> omega) {
  if (omega.size() != s.dim()) throw Error(Errc::dimension_mismatch, "frequency vector length");
  const auto q = static_cast<Eigen::Index>(s.q());
  Eigen::MatrixXcd x(q, q);
  const double scale = 1.0 / std::sqrt(static_cast<double>(s.q()));
  for (Eigen::Index k = 0; k < q; ++k) {
    const auto g = s.dual_frequency(static_cast<std::size_t>(k));
    for (Eigen::Index r = 0; r < q; ++r) {
      const auto& nu = s.gamma()[static_cast<std::size_t>(r)];
      double phase = 0.0;
      for (std::size_t i = 0; i < s.dim(); ++i) phase += (omega[i] + g[i]) * static_cast<double>(nu[i]);
      x(r, k) = std::polar(scale, phase);
    }
  }
  return x;
}

}  // namespace elpbank
