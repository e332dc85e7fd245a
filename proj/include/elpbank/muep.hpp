#pragma once

#include <complex>
#include <numeric>
#include <vector>

#include "elpbank/parallel.hpp"
#include "elpbank/svp.hpp"

namespace elpbank {

/// Polyphase rows of a list of filters, one row per filter, in the given order.
inline PolyMatrix stacked_polyphase(const std::vector<Filter>& filters, const DilationScheme& scheme) {
  PolyMatrix m(filters.size(), scheme.q(), scheme.dim());
  for (std::size_t r = 0; r < filters.size(); ++r) {
    if (!(filters[r].scheme() == scheme)) throw Error(Errc::scheme_mismatch, "stacked filters differ in scheme");
    auto comps = polyphase_decompose(filters[r]).components;
    for (std::size_t c = 0; c < comps.size(); ++c) m(r, c) = std::move(comps[c]);
  }
  return m;
}

/// [H; H_1; ...; H_s], (1+s) x q.
inline PolyMatrix stacked_polyphase(const FilterBank& bank) { return stacked_polyphase(bank.all(), bank.scheme()); }

/// [H_1; ...; H_s], s x q.
inline PolyMatrix highpass_polyphase(const FilterBank& bank) {
  return stacked_polyphase(bank.highpass(), bank.scheme());
}

struct MuepVerdict {
  bool holds = true;
  IdentityCheck dual_primal;  // [G^*, H_1^d*, ...][H; H_1; ...]
  IdentityCheck primal_dual;  // [H^*, H_1^*, ...][G; H_1^d; ...]

  explicit operator bool() const { return holds; }
};

namespace detail {

inline void require_compatible(const BankPair& pair) {
  if (!(pair.primal.scheme() == pair.dual.scheme())) throw Error(Errc::scheme_mismatch, "primal and dual schemes");
  if (pair.primal.size() != pair.dual.size())
    throw Error(Errc::shape_mismatch, "primal has " + std::to_string(pair.primal.size()) + " highpass filters, dual has " +
                                          std::to_string(pair.dual.size()));
}

}  // namespace detail

/// Exact polyphase MUEP check, in both product orders.
inline MuepVerdict muep_verify_polyphase(const BankPair& pair) {
  detail::require_compatible(pair);
  const PolyMatrix p = stacked_polyphase(pair.primal);
  const PolyMatrix d = stacked_polyphase(pair.dual);
  MuepVerdict v;
  v.dual_primal = check_identity(d.conjugate_transpose() * p);
  v.primal_dual = check_identity(p.conjugate_transpose() * d);
  v.holds = v.dual_primal.holds && v.primal_dual.holds;
  return v;
}

struct GridDeviation {
  double max_deviation = 0.0;
  std::vector<double> omega;
  std::size_t gamma_index = 0;
};

/// max over the grid and all dual frequencies gamma of
/// |h^(w) conj(g^(w+gamma)) + sum_i h_i^(w) conj(h_i^d(w+gamma)) - delta_{0,gamma}|.
inline GridDeviation muep_verify_grid(const BankPair& pair, std::size_t grid_points, bool parallel = false) {
  detail::require_compatible(pair);
  const auto& scheme = pair.primal.scheme();
  const std::size_t dim = scheme.dim(), q = scheme.q();
  std::vector<NumericFilter> primal, dual;
  for (const auto& f : pair.primal.all()) primal.emplace_back(f);
  for (const auto& f : pair.dual.all()) dual.emplace_back(f);
  std::vector<std::vector<double>> gammas(q);
  for (std::size_t k = 0; k < q; ++k) gammas[k] = scheme.dual_frequency(k);
  const double norm = 1.0 / static_cast<double>(q);  // q^{-1/2} per mask, two masks per product

  const std::size_t total = grid_size(dim, grid_points);
  std::vector<double> worst(total, 0.0);
  std::vector<std::size_t> worst_k(total, 0);
  parallel_for(
      total,
      [&](std::size_t idx) {
        const auto w = grid_point(dim, grid_points, idx);
        std::vector<std::complex<double>> at_w(primal.size());
        for (std::size_t i = 0; i < primal.size(); ++i) at_w[i] = primal[i].z_transform(w);
        std::vector<double> shifted(dim);
        for (std::size_t k = 0; k < q; ++k) {
          for (std::size_t i = 0; i < dim; ++i) shifted[i] = w[i] + gammas[k][i];
          std::complex<double> lhs = 0.0;
          for (std::size_t i = 0; i < dual.size(); ++i) lhs += at_w[i] * std::conj(dual[i].z_transform(shifted));
          lhs *= norm;
          const double dev = std::abs(lhs - (k == 0 ? 1.0 : 0.0));
          if (dev > worst[idx]) {
            worst[idx] = dev;
            worst_k[idx] = k;
          }
        }
      },
      parallel);
  GridDeviation out;
  out.omega = grid_point(dim, grid_points, 0);
  for (std::size_t i = 0; i < total; ++i)
    if (worst[i] > out.max_deviation) {
      out.max_deviation = worst[i];
      out.omega = grid_point(dim, grid_points, i);
      out.gamma_index = worst_k[i];
    }
  return out;
}

namespace detail {

inline LaurentPoly minor_det(const PolyMatrix& m, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
  const std::size_t n = rows.size();
  if (n == 0) return LaurentPoly::constant(m.dim(), 1);
  if (n == 1) return m(rows[0], cols[0]);
  // expand along the row or column with the most zero entries
  std::size_t best = 0, best_zeros = 0;
  bool by_row = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t zr = 0, zc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      zr += m(rows[i], cols[j]).is_zero();
      zc += m(rows[j], cols[i]).is_zero();
    }
    if (zr > best_zeros) {
      best = i;
      best_zeros = zr;
      by_row = true;
    }
    if (zc > best_zeros) {
      best = i;
      best_zeros = zc;
      by_row = false;
    }
  }
  if (best_zeros == n) return LaurentPoly(m.dim());
  LaurentPoly det(m.dim());
  for (std::size_t j = 0; j < n; ++j) {
    const LaurentPoly& e = by_row ? m(rows[best], cols[j]) : m(rows[j], cols[best]);
    if (e.is_zero()) continue;
    std::vector<std::size_t> r2, c2;
    for (std::size_t t = 0; t < n; ++t) {
      if (by_row ? t != best : t != j) r2.push_back(rows[t]);
      if (by_row ? t != j : t != best) c2.push_back(cols[t]);
    }
    LaurentPoly term = e * minor_det(m, std::move(r2), std::move(c2));
    if ((best + j) % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace detail

/// Determinant of a square polynomial matrix by cofactor expansion.
inline LaurentPoly determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::shape_mismatch, "determinant of a non-square matrix");
  std::vector<std::size_t> idx(m.rows());
  std::iota(idx.begin(), idx.end(), 0);
  return detail::minor_det(m, idx, idx);
}

/// Determinant of the rows `rows` of m (all columns).
inline LaurentPoly row_minor(const PolyMatrix& m, const std::vector<std::size_t>& rows) {
  std::vector<std::size_t> cols(m.cols());
  std::iota(cols.begin(), cols.end(), 0);
  return detail::minor_det(m, rows, cols);
}

/// All size-k subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    out.push_back(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return out;
}

struct SvpExtraction {
  SvpCertificate certificate;
  std::size_t candidates = 0;  // C(s, q) before pruning
  std::size_t dropped = 0;     // pairs with an identically zero product
  std::vector<std::vector<std::size_t>> subsets;  // 0-based highpass rows of each kept pair
};

/// Generators from a MUEP bank pair: k_sigma = det M_[sigma], l_sigma = det M^d_[sigma] over
/// all q-row subsets sigma of the highpass polyphase stacks (Cauchy-Binet). Pairs with a zero
/// product are dropped.
inline SvpExtraction extract_svp(const BankPair& pair, bool parallel = false) {
  if (!muep_verify_polyphase(pair))
    throw Error(Errc::precondition_failed, "bank pair does not satisfy the polyphase MUEP identity");
  const std::size_t q = pair.primal.scheme().q();
  const std::size_t s = pair.primal.size();
  const PolyMatrix m = highpass_polyphase(pair.primal);
  const PolyMatrix md = highpass_polyphase(pair.dual);
  const auto subsets = combinations(s, q);
  std::vector<LaurentPoly> ks(subsets.size()), ls(subsets.size());
  parallel_for(
      subsets.size(),
      [&](std::size_t i) {
        ks[i] = row_minor(m, subsets[i]);
        ls[i] = row_minor(md, subsets[i]);
      },
      parallel);
  SvpExtraction out;
  out.candidates = subsets.size();
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (ks[i].is_zero() || ls[i].is_zero()) {
      ++out.dropped;
      continue;
    }
    out.certificate.k.push_back(std::move(ks[i]));
    out.certificate.l.push_back(std::move(ls[i]));
    out.subsets.push_back(subsets[i]);
  }
  const auto verdict = svp_verify(pair.primal.lowpass(), pair.dual.lowpass(), out.certificate);
  if (!verdict) throw Error(Errc::invariant_violation, "extracted certificate failed: " + verdict.describe());
  return out;
}

}  // namespace elpbank
