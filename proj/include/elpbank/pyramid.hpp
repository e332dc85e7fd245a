#pragma once

#include <optional>
#include <string>
#include <vector>

#include "elpbank/filters.hpp"

namespace elpbank {

/// Dense matrix of Laurent polynomials sharing one dimension.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, std::size_t dim)
      : rows_(rows), cols_(cols), dim_(dim), entries_(rows * cols, LaurentPoly(dim)) {}

  static PolyMatrix identity(std::size_t n, std::size_t dim) {
    PolyMatrix m(n, n, dim);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPoly::constant(dim, 1);
    return m;
  }

  /// Stacks row vectors (all of equal length) into a matrix.
  static PolyMatrix from_rows(const std::vector<std::vector<LaurentPoly>>& rows, std::size_t dim) {
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    PolyMatrix m(rows.size(), cols, dim);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw Error(Errc::shape_mismatch, "ragged polynomial rows");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dim() const { return dim_; }

  LaurentPoly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const LaurentPoly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::vector<LaurentPoly> row(std::size_t r) const {
    return {entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  PolyMatrix conjugate_transpose() const {
    PolyMatrix t(cols_, rows_, dim_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c).conjugate();
    return t;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_ || a.dim_ != b.dim_) throw Error(Errc::shape_mismatch, "polynomial matrix product");
    PolyMatrix p(a.rows_, b.cols_, a.dim_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        LaurentPoly acc(a.dim_);
        for (std::size_t k = 0; k < a.cols_; ++k) {
          const auto& x = a(i, k);
          const auto& y = b(k, j);
          if (!x.is_zero() && !y.is_zero()) acc += x * y;
        }
        p(i, j) = std::move(acc);
      }
    return p;
  }

  bool operator==(const PolyMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t dim_ = 0;
  std::vector<LaurentPoly> entries_;
};

/// Outcome of an exact "equals I_q" check; on failure names the first offending entry and
/// the nonzero residual (entry minus the identity entry).
struct IdentityCheck {
  bool holds = true;
  std::size_t row = 0;
  std::size_t col = 0;
  LaurentPoly residual;

  explicit operator bool() const { return holds; }
};

inline IdentityCheck check_identity(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::shape_mismatch, "identity check on a non-square matrix");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      LaurentPoly d = m(r, c);
      if (r == c) d -= LaurentPoly::constant(m.dim(), 1);
      if (!d.is_zero()) return {false, r, c, std::move(d)};
    }
  return {true, 0, 0, LaurentPoly(m.dim())};
}

namespace detail {

inline void require_same_scheme(const Filter& a, const Filter& b) {
  if (!(a.scheme() == b.scheme())) throw Error(Errc::scheme_mismatch, "filters live on different schemes");
}

// [H; conj(l_1) H; ...; conj(l_J) H; I - G^* H]
inline PolyMatrix stacked_pyramid(const std::vector<LaurentPoly>& h, const std::vector<LaurentPoly>& g,
                                  const std::vector<LaurentPoly>& gens, std::size_t dim) {
  const std::size_t q = h.size();
  PolyMatrix m(q + gens.size() + 1, q, dim);
  for (std::size_t c = 0; c < q; ++c) m(0, c) = h[c];
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const LaurentPoly lc = gens[j].conjugate();
    for (std::size_t c = 0; c < q; ++c) m(1 + j, c) = lc * h[c];
  }
  const std::size_t base = 1 + gens.size();
  for (std::size_t r = 0; r < q; ++r) {
    const LaurentPoly gc = g[r].conjugate();
    for (std::size_t c = 0; c < q; ++c) {
      LaurentPoly e = -(gc * h[c]);
      if (r == c) e += LaurentPoly::constant(dim, 1);
      m(base + r, c) = std::move(e);
    }
  }
  return m;
}

}  // namespace detail

/// Laplacian pyramid matrix [H; I_q - G^* H], (q+1) x q.
inline PolyMatrix lp_matrix(const Filter& h, const Filter& g) {
  detail::require_same_scheme(h, g);
  if (!is_lowpass(classify_filter(h)) || !is_lowpass(classify_filter(g)))
    throw Error(Errc::not_lowpass, "Laplacian pyramid matrix needs lowpass filters");
  return detail::stacked_pyramid(polyphase_decompose(h).components, polyphase_decompose(g).components, {}, h.dim());
}

/// Extended Laplacian pyramid matrix [H; conj(l_1)H; ...; conj(l_J)H; I_q - G^* H].
inline PolyMatrix extended_lp_matrix(const Filter& h, const Filter& g, const std::vector<LaurentPoly>& gens) {
  detail::require_same_scheme(h, g);
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].dim() != h.dim()) throw Error(Errc::dimension_mismatch, "generator dimension");
    if (!gens[j].eval_one().is_zero())
      throw Error(Errc::non_vanishing_generator, "generator " + std::to_string(j + 1) + " does not vanish at 1");
  }
  if (!is_lowpass(classify_filter(h)) || !is_lowpass(classify_filter(g)))
    throw Error(Errc::not_lowpass, "Laplacian pyramid matrix needs lowpass filters");
  return detail::stacked_pyramid(polyphase_decompose(h).components, polyphase_decompose(g).components, gens,
                                 h.dim());
}

/// Exact check of Phi_{g,h,K}^* Phi_{h,g,L} = I_q.
inline IdentityCheck verify_core_identity(const Filter& h, const Filter& g, const std::vector<LaurentPoly>& k,
                                          const std::vector<LaurentPoly>& l) {
  if (k.size() != l.size()) throw Error(Errc::shape_mismatch, "generator lists differ in length");
  const PolyMatrix primal = extended_lp_matrix(h, g, l);
  const PolyMatrix dual = extended_lp_matrix(g, h, k);
  return check_identity(dual.conjugate_transpose() * primal);
}

}  // namespace elpbank
