#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "elpbank/error.hpp"

namespace elpbank {

/// Integer vector on Z^n. Used for exponents, tap positions and coset representatives.
using Exponent = std::vector<std::int64_t>;

inline Exponent operator+(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Exponent operator-(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Exponent operator-(const Exponent& a) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline bool is_zero_vector(const Exponent& a) {
  for (auto v : a)
    if (v != 0) return false;
  return true;
}

inline std::string to_string(const Exponent& e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(Errc::shape_mismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix from_row_major(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data) {
    if (data.size() != rows * cols) throw Error(Errc::shape_mismatch, "row-major data has wrong length");
    IntMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_ = std::move(data);
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix scalar(std::size_t n, std::int64_t s) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<std::int64_t>& row_major() const { return data_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Exponent operator*(const Exponent& v) const {
    if (v.size() != cols_) throw Error(Errc::dimension_mismatch, "matrix-vector product");
    Exponent r(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      __int128 acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<__int128>((*this)(i, j)) * v[j];
      if (acc > INT64_MAX || acc < INT64_MIN) throw Error(Errc::overflow, "matrix-vector product");
      r[i] = static_cast<std::int64_t>(acc);
    }
    return r;
  }

  bool operator==(const IntMatrix&) const = default;

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) s += ";";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ",";
        s += std::to_string((*this)(i, j));
      }
    }
    return s + "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Exact rational inverse of a square integer matrix, as (determinant, adjugate) so that
/// inverse = adjugate / determinant with an all-integer adjugate.
struct ExactInverse {
  mpz_class det;
  IntMatrix adjugate;
};

inline ExactInverse exact_inverse(const IntMatrix& a) {
  if (!a.is_square()) throw Error(Errc::shape_mismatch, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  // Gauss-Jordan over Q on [A | I].
  std::vector<std::vector<mpq_class>> w(n, std::vector<mpq_class>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = static_cast<long>(a(i, j));
    w[i][n + i] = 1;
  }
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && w[p][c] == 0) ++p;
    if (p == n) throw Error(Errc::singular_matrix, "matrix " + a.str() + " has zero determinant");
    if (p != c) {
      std::swap(w[p], w[c]);
      det = -det;
    }
    det *= w[c][c];
    const mpq_class piv = w[c][c];
    for (auto& x : w[c]) x /= piv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || w[r][c] == 0) continue;
      const mpq_class f = w[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) w[r][k] -= f * w[c][k];
    }
  }
  ExactInverse out;
  out.det = det.get_num();
  out.adjugate = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class v = w[i][n + j] * det;
      if (v.get_den() != 1 || !v.get_num().fits_slong_p())
        throw Error(Errc::overflow, "adjugate entry out of range");
      out.adjugate(i, j) = v.get_num().get_si();
    }
  return out;
}

}  // namespace elpbank
