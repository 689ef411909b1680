#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mezzo/errors.hpp"
#include "mezzo/rational.hpp"

namespace mezzo {

/// Dense matrix over Q, row-major. All rank, kernel and span computations in
/// the library go through this type; nothing here rounds.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return {};
    QMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error(ErrorKind::input, "ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static QMatrix from_int_rows(const std::vector<std::vector<long>>& rows) {
    std::vector<std::vector<Rational>> q;
    for (const auto& r : rows) q.emplace_back(r.begin(), r.end());
    return from_rows(q);
  }

  /// Column matrix from a vector.
  static QMatrix column_vector(const std::vector<Rational>& v) {
    QMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  QMatrix transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<Rational> column(std::size_t j) const {
    std::vector<Rational> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void set_column(std::size_t j, const std::vector<Rational>& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  QMatrix select_columns(const std::vector<std::size_t>& which) const {
    QMatrix m(rows_, which.size());
    for (std::size_t k = 0; k < which.size(); ++k)
      for (std::size_t i = 0; i < rows_; ++i) m(i, k) = (*this)(i, which[k]);
    return m;
  }

  QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    QMatrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const QMatrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q == 0; });
  }

  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::range, "matrix product shape mismatch");
    QMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::vector<Rational> operator*(const QMatrix& a, const std::vector<Rational>& x) {
    if (a.cols_ != x.size()) throw Error(ErrorKind::range, "matrix-vector shape mismatch");
    std::vector<Rational> y(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (a(i, k) != 0 && x[k] != 0) y[i] += a(i, k) * x[k];
    return y;
  }

  friend QMatrix operator+(QMatrix a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::range, "matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend QMatrix operator-(QMatrix a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::range, "matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend QMatrix operator*(const Rational& s, QMatrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  Eigen::MatrixXd to_eigen() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = to_double((*this)(i, j));
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// [a | b]
inline QMatrix hstack(const QMatrix& a, const QMatrix& b) {
  if (a.cols() == 0) return b.rows() == 0 && a.rows() != 0 ? QMatrix(a.rows(), 0) : b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw Error(ErrorKind::range, "hstack row mismatch");
  QMatrix m(a.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(0, a.cols(), b);
  return m;
}

/// [a ; b]
inline QMatrix vstack(const QMatrix& a, const QMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw Error(ErrorKind::range, "vstack column mismatch");
  QMatrix m(a.rows() + b.rows(), a.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), 0, b);
  return m;
}

struct Echelon {
  QMatrix reduced;                  // reduced row-echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

/// Gauss-Jordan elimination to reduced row-echelon form.
inline Echelon row_reduce(QMatrix m) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j)
      if (m(r, j) != 0) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

inline std::size_t rank(const QMatrix& m) {
  if (m.empty()) return 0;
  return row_reduce(m).pivots.size();
}

/// Kernel basis as columns: one vector per free column, with that free
/// variable set to 1. Deterministic for a fixed matrix.
inline QMatrix null_space(const QMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return QMatrix::identity(n);
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free.push_back(j);
  QMatrix k(n, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], f) = -e.reduced(r, free[f]);
  }
  return k;
}

/// Indices of the greedily-chosen independent columns (pivot columns).
inline std::vector<std::size_t> independent_columns(const QMatrix& m) {
  if (m.empty()) return {};
  return row_reduce(m).pivots;
}

inline QMatrix column_space(const QMatrix& m) { return m.select_columns(independent_columns(m)); }

/// Some X with A X = B, or nullopt when inconsistent.
inline std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::range, "solve shape mismatch");
  QMatrix x(a.cols(), b.cols());
  if (b.cols() == 0) return x;
  if (a.cols() == 0) return b.is_zero() ? std::optional<QMatrix>(x) : std::nullopt;
  Echelon e = row_reduce(hstack(a, b));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, a.cols() + j);
  }
  return x;
}

inline QMatrix inverse(const QMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::range, "inverse of non-square matrix");
  Echelon e = row_reduce(hstack(a, QMatrix::identity(a.rows())));
  if (e.pivots.size() < a.rows() || (a.rows() > 0 && e.pivots[a.rows() - 1] >= a.cols()))
    throw Error(ErrorKind::nondegeneracy, "matrix is singular");
  return e.reduced.block(0, a.cols(), a.rows(), a.rows());
}

inline Rational determinant(QMatrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::range, "determinant of non-square matrix");
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Canonical basis of the column span: columns are the nonzero rows of
/// rref(Aᵀ). Two matrices span the same subspace iff their canonical spans
/// are equal.
inline QMatrix canonical_span(const QMatrix& a) {
  if (a.cols() == 0 || a.rows() == 0) return QMatrix(a.rows(), 0);
  Echelon e = row_reduce(a.transpose());
  return e.reduced.block(0, 0, e.pivots.size(), a.rows()).transpose();
}

inline bool same_span(const QMatrix& a, const QMatrix& b) { return canonical_span(a) == canonical_span(b); }

/// Whether T maps span(W) into itself: rank [W | T W] == rank W.
inline bool is_invariant(const QMatrix& t, const QMatrix& w) {
  if (w.cols() == 0) return true;
  return rank(hstack(w, t * w)) == rank(w);
}

/// Matrix of T restricted to the invariant span of the full-rank W: T W = W R.
inline QMatrix restrict_to(const QMatrix& t, const QMatrix& w) {
  auto r = solve(w, t * w);
  if (!r) throw Error(ErrorKind::flatness, "subspace is not invariant");
  return *r;
}

}  // namespace mezzo
