#pragma once

// Dense matrices over arbitrary-precision integers and the Smith normal form.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nacoh/error.hpp"

namespace nacoh {

using Integer = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (auto const& row : init) {
      if (row.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
      for (auto v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Integer const& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(IntMatrix const& o) const = default;

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix column(std::size_t j) const {
    IntMatrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Integer const& x) { return x == 0; });
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += q * row[src]
  void add_row(std::size_t dst, std::size_t src, Integer const& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += q * (*this)(src, j);
  }
  /// col[dst] += q * col[src]
  void add_col(std::size_t dst, std::size_t src, Integer const& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += q * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline IntMatrix operator*(IntMatrix const& a, IntMatrix const& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "matrix product shape");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

inline IntMatrix operator+(IntMatrix a, IntMatrix const& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::ShapeMismatch, "matrix sum shape");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) += b(i, j);
  return a;
}

inline IntMatrix operator-(IntMatrix a, IntMatrix const& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::ShapeMismatch, "matrix difference shape");
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= b(i, j);
  return a;
}

inline std::ostream& operator<<(std::ostream& os, IntMatrix const& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]";
  }
  return os << "]";
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "determinant of non-square matrix");
  std::size_t const n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct SmithForm {
  IntMatrix S;  // diagonal, non-negative, each nonzero entry divides the next
  IntMatrix U;  // unimodular, rows x rows
  IntMatrix V;  // unimodular, cols x cols
  std::size_t rank = 0;

  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

/// U * M * V = S by elementary row and column operations. Pivots are the
/// smallest nonzero entry of the remaining block, so every restart strictly
/// decreases the pivot and the loop terminates.
inline SmithForm smith_normal_form(IntMatrix const& m) {
  std::size_t const rows = m.rows(), cols = m.cols();
  SmithForm f{m, IntMatrix::identity(rows), IntMatrix::identity(cols), 0};
  IntMatrix& s = f.S;
  std::size_t t = 0;
  while (t < std::min(rows, cols)) {
    bool settled = false;
    while (!settled) {
      std::optional<std::pair<std::size_t, std::size_t>> piv;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (s(i, j) == 0) continue;
          Integer a = abs(s(i, j));
          if (!piv || a < best) {
            best = a;
            piv = {i, j};
          }
        }
      if (!piv) {
        f.rank = t;
        return f;
      }
      s.swap_rows(t, piv->first);
      f.U.swap_rows(t, piv->first);
      s.swap_cols(t, piv->second);
      f.V.swap_cols(t, piv->second);

      bool residue = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        Integer q = s(i, t) / s(t, t);
        s.add_row(i, t, -q);
        f.U.add_row(i, t, -q);
        if (s(i, t) != 0) residue = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        Integer q = s(t, j) / s(t, t);
        s.add_col(j, t, -q);
        f.V.add_col(j, t, -q);
        if (s(t, j) != 0) residue = true;
      }
      if (residue) continue;

      // pivot must divide the remaining block; otherwise fold the offending
      // row into the pivot row and reduce again
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < rows && !bad_row; ++i)
        for (std::size_t j = t + 1; j < cols && !bad_row; ++j)
          if (s(i, j) % s(t, t) != 0) bad_row = i;
      if (bad_row) {
        s.add_row(t, *bad_row, 1);
        f.U.add_row(t, *bad_row, 1);
        continue;
      }
      settled = true;
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      f.U.negate_row(t);
    }
    ++t;
  }
  f.rank = t;
  return f;
}

/// Solves D y = p over the integers, or nothing when p is not in the column
/// lattice of D. Free coordinates (rank-deficient D) are set to zero.
inline std::optional<IntMatrix> solve_integer(SmithForm const& f, IntMatrix const& p) {
  IntMatrix up = f.U * p;
  std::size_t const cols = f.V.rows();
  IntMatrix z(cols, 1);
  for (std::size_t i = 0; i < up.rows(); ++i) {
    if (i < f.rank) {
      if (up(i, 0) % f.S(i, i) != 0) return std::nullopt;
      z(i, 0) = up(i, 0) / f.S(i, i);
    } else if (up(i, 0) != 0) {
      return std::nullopt;
    }
  }
  return f.V * z;
}

}  // namespace nacoh
