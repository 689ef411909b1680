#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mezzo/errors.hpp"
#include "mezzo/qmatrix.hpp"

namespace mezzo {

/// A bounded cochain complex of finite-dimensional Q-vector spaces,
/// C^0 -> C^1 -> ... -> C^top. Simplicial cochains, truncated cone
/// complexes and the assembled suspension/bundle complexes all share it.
struct CochainComplex {
  std::vector<std::size_t> dims;  // dim C^k
  std::vector<QMatrix> d;         // d[k] : C^k -> C^{k+1}; d.size() == dims.size() - 1

  std::size_t length() const noexcept { return dims.size(); }

  /// d_k as a dims[k+1] x dims[k] matrix; zero map out of the top degree.
  QMatrix coboundary(std::size_t k) const {
    if (k >= dims.size()) throw Error(ErrorKind::range, "degree " + std::to_string(k) + " out of range");
    if (k + 1 == dims.size()) return QMatrix(0, dims[k]);
    return d[k];
  }

  /// d_{k-1}; the zero map into C^0 for k == 0.
  QMatrix incoming(std::size_t k) const {
    if (k >= dims.size()) throw Error(ErrorKind::range, "degree " + std::to_string(k) + " out of range");
    if (k == 0) return QMatrix(dims[0], 0);
    return d[k - 1];
  }

  bool squares_to_zero() const {
    for (std::size_t k = 0; k + 2 < dims.size(); ++k)
      if (!(d[k + 1] * d[k]).is_zero()) return false;
    return true;
  }
};

/// Dimensions of H^k for every k, by rank bookkeeping.
inline std::vector<std::size_t> cohomology_dims(const CochainComplex& c) {
  std::vector<std::size_t> ranks(c.length(), 0);
  for (std::size_t k = 0; k + 1 < c.length(); ++k) ranks[k] = rank(c.d[k]);
  std::vector<std::size_t> out(c.length());
  for (std::size_t k = 0; k < c.length(); ++k) out[k] = c.dims[k] - ranks[k] - (k ? ranks[k - 1] : 0);
  return out;
}

/// Cocycle representatives of H^k, chosen deterministically: kernel vectors of
/// d_k in free-variable form, kept greedily when independent of the
/// coboundaries and of the ones already kept.
struct CohomologyBasis {
  std::size_t degree = 0;
  QMatrix representatives;  // columns are cocycles
  QMatrix boundaries;       // column basis of im d_{k-1}
  std::size_t betti = 0;

  /// Coordinates of the class of a cocycle in the representative basis.
  std::vector<Rational> coordinates(const std::vector<Rational>& cocycle) const {
    auto x = solve(hstack(representatives, boundaries), QMatrix::column_vector(cocycle));
    if (!x) throw Error(ErrorKind::consistency, "vector is not a cocycle of degree " + std::to_string(degree));
    std::vector<Rational> c(betti);
    for (std::size_t i = 0; i < betti; ++i) c[i] = (*x)(i, 0);
    return c;
  }

  /// Coordinates for every column of a matrix of cocycles.
  QMatrix coordinates(const QMatrix& cocycles) const {
    auto x = solve(hstack(representatives, boundaries), cocycles);
    if (!x) throw Error(ErrorKind::consistency, "columns are not cocycles of degree " + std::to_string(degree));
    return x->block(0, 0, betti, cocycles.cols());
  }
};

inline CohomologyBasis cohomology_basis(const CochainComplex& c, std::size_t k) {
  if (k >= c.length()) throw Error(ErrorKind::range, "degree " + std::to_string(k) + " out of range");
  CohomologyBasis basis;
  basis.degree = k;
  QMatrix cocycles = null_space(c.coboundary(k));
  basis.boundaries = column_space(c.incoming(k));
  const std::size_t nb = basis.boundaries.cols();
  std::vector<std::size_t> chosen;
  for (auto j : independent_columns(hstack(basis.boundaries, cocycles)))
    if (j >= nb) chosen.push_back(j - nb);
  basis.representatives = cocycles.select_columns(chosen);
  if (basis.representatives.rows() != c.dims[k]) basis.representatives = QMatrix(c.dims[k], 0);
  if (basis.boundaries.rows() != c.dims[k]) basis.boundaries = QMatrix(c.dims[k], 0);
  basis.betti = chosen.size();
  return basis;
}

}  // namespace mezzo
