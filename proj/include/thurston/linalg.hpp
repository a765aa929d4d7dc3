#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thurston/error.hpp"
#include "thurston/rational.hpp"

namespace thurston {

using RatVector = std::vector<Rational>;

inline RatVector zero_vector(std::size_t n) { return RatVector(n, Rational(0)); }

inline RatVector unit_vector(std::size_t n, std::size_t i) {
  RatVector v = zero_vector(n);
  v.at(i) = 1;
  return v;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch,
                "dot of vectors of length " + std::to_string(a.size()) + " and " +
                    std::to_string(b.size()));
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

inline RatVector operator+(RatVector a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sum");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline RatVector operator-(RatVector a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector difference");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline RatVector operator-(RatVector a) {
  for (auto& x : a) x = -x;
  return a;
}

inline RatVector operator*(const Rational& c, RatVector a) {
  for (auto& x : a) x *= c;
  return a;
}

/// Least common multiple of all denominators (1 for the empty vector).
inline BigInt denominator_lcm(const RatVector& v) {
  BigInt l = 1;
  for (const auto& x : v) l = lcm(l, x.denominator());
  return l;
}

/// Positive multiple of v with coprime integer entries; zero stays zero.
inline RatVector primitive_integral(const RatVector& v) {
  if (is_zero(v)) return v;
  const BigInt l = denominator_lcm(v);
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, (x * Rational(l)).numerator());
  return Rational(l, g) * v;
}

/// Primitive integral representative of the line through v, first nonzero
/// coordinate positive. Two vectors span the same line iff their canonical
/// forms are equal.
inline RatVector canonical_line(const RatVector& v) {
  RatVector p = primitive_integral(v);
  for (const auto& x : p) {
    if (x.is_zero()) continue;
    if (x.sign() < 0) p = -p;
    break;
  }
  return p;
}

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// All rows must have length `cols`; `cols` is needed for the empty case.
  static RatMatrix from_rows(const std::vector<RatVector>& rows, std::size_t cols) {
    RatMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static RatMatrix from_columns(const std::vector<RatVector>& cols, std::size_t rows) {
    return from_rows(cols, rows).transpose();
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector row(std::size_t i) const {
    return RatVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  RatVector column(std::size_t j) const {
    RatVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return x.is_zero(); });
  }

  const std::vector<Rational>& entries() const { return data_; }

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend RatVector operator*(const RatMatrix& a, const RatVector& v) {
    if (a.cols_ != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
    RatVector r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

  friend RatMatrix operator*(const Rational& c, RatMatrix m) {
    for (auto& x : m.data_) x *= c;
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form plus the pivot column of each nonzero row.
struct EchelonForm {
  RatMatrix reduced;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank() const { return pivot_columns.size(); }
};

/// Gauss-Jordan elimination. Columns are resolved left to right; the pivot
/// of a column is the first nonzero entry at or below the current pivot row.
inline EchelonForm row_reduce(RatMatrix m) {
  EchelonForm out;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < m.cols() && prow < m.rows(); ++c) {
    std::size_t r = prow;
    while (r < m.rows() && m(r, c).is_zero()) ++r;
    if (r == m.rows()) continue;
    if (r != prow)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(prow, j));
    const Rational inv = Rational(1) / m(prow, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(prow, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == prow || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(prow, j);
    }
    out.pivot_columns.push_back(c);
    ++prow;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const RatMatrix& m) { return row_reduce(m).rank(); }

inline std::size_t rank(const std::vector<RatVector>& vectors, std::size_t dim) {
  return rank(RatMatrix::from_rows(vectors, dim));
}

/// Canonical basis of the right kernel: one vector per free column (in
/// increasing order), with a 1 in that column, 0 in the other free columns.
inline std::vector<RatVector> kernel_basis(const RatMatrix& m) {
  const EchelonForm ef = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ef.pivot_columns) is_pivot[c] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v = zero_vector(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < ef.rank(); ++r) v[ef.pivot_columns[r]] = -ef.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// A solution of m x = b with all free variables set to zero, or nullopt if
/// the system is inconsistent.
inline std::optional<RatVector> solve(const RatMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "solve: right-hand side");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const EchelonForm ef = row_reduce(aug);
  if (!ef.pivot_columns.empty() && ef.pivot_columns.back() == m.cols()) return std::nullopt;
  RatVector x = zero_vector(m.cols());
  for (std::size_t r = 0; r < ef.rank(); ++r) x[ef.pivot_columns[r]] = ef.reduced(r, m.cols());
  return x;
}

inline RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const EchelonForm ef = row_reduce(aug);
  if (ef.rank() < n || ef.pivot_columns[n - 1] != n - 1)
    throw Error(ErrorCode::RankDeficient, "matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = ef.reduced(i, n + j);
  return inv;
}

inline bool in_span(const std::vector<RatVector>& span, const RatVector& v) {
  if (span.empty()) return is_zero(v);
  std::vector<RatVector> ext = span;
  const std::size_t r = rank(ext, v.size());
  ext.push_back(v);
  return rank(ext, v.size()) == r;
}

/// Exact subspace equality by mutual containment.
inline bool same_span(const std::vector<RatVector>& a, const std::vector<RatVector>& b) {
  for (const auto& v : a)
    if (!in_span(b, v)) return false;
  for (const auto& v : b)
    if (!in_span(a, v)) return false;
  return true;
}

/// Integral symmetric matrix with prescribed kernel.
struct PrescribedKernel {
  RatMatrix abar;                     ///< integral, symmetric, ker = span(input)
  std::vector<RatVector> completion;  ///< standard basis vectors added to reach a basis
  BigInt scale;                       ///< lcm of the denominators that were cleared
};

/// Builds Abar = scale * (Q^-1)^T B Q^-1 where Q = [v_1..v_d | w_{d+1}..w_n]
/// and B = diag(0,..,0,1,..,1). The w's are the first standard basis vectors
/// (in index order) that keep the columns independent.
inline PrescribedKernel prescribed_kernel_matrix(const std::vector<RatVector>& vs) {
  if (vs.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one kernel vector");
  const std::size_t n = vs.front().size();
  const std::size_t d = vs.size();
  if (d > n) throw Error(ErrorCode::DependentInput, "more vectors than the ambient dimension");
  for (const auto& v : vs)
    if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "kernel vectors differ in length");
  if (rank(vs, n) != d) throw Error(ErrorCode::DependentInput, "kernel vectors are dependent");

  std::vector<RatVector> cols = vs;
  PrescribedKernel out;
  for (std::size_t i = 0; i < n && cols.size() < n; ++i) {
    RatVector e = unit_vector(n, i);
    if (in_span(cols, e)) continue;
    cols.push_back(e);
    out.completion.push_back(std::move(e));
  }
  const RatMatrix qinv = inverse(RatMatrix::from_columns(cols, n));
  RatMatrix b(n, n);
  for (std::size_t i = d; i < n; ++i) b(i, i) = 1;
  const RatMatrix bbar = qinv.transpose() * b * qinv;
  out.scale = denominator_lcm(bbar.entries());
  out.abar = Rational(out.scale) * bbar;
  return out;
}

}  // namespace thurston
