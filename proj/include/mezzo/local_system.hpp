#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mezzo/errors.hpp"
#include "mezzo/qmatrix.hpp"

namespace mezzo {

/// Flat bundle of Q-vector spaces over a base, given by its holonomy.
struct LocalSystem {
  std::size_t fiber_dim = 0;
  std::vector<QMatrix> monodromy;  // one per generator of the base fundamental group
};

struct TwistedDims {
  std::size_t h0 = 0;
  std::size_t h1 = 0;
};

/// Cohomology of a local system on the circle: H⁰ = ker(T − I),
/// H¹ = coker(T − I).
inline TwistedDims circle_twisted_cohomology(const LocalSystem& ls) {
  if (ls.monodromy.size() != 1)
    throw Error(ErrorKind::unsupported_base, "circle base needs exactly one monodromy generator, got " +
                                                 std::to_string(ls.monodromy.size()));
  const QMatrix& t = ls.monodromy.front();
  if (t.rows() != ls.fiber_dim || t.cols() != ls.fiber_dim)
    throw Error(ErrorKind::structure, "monodromy size does not match the fiber dimension");
  if (rank(t) != ls.fiber_dim) throw Error(ErrorKind::structure, "monodromy is not invertible");
  const std::size_t r = rank(t - QMatrix::identity(ls.fiber_dim));
  return {ls.fiber_dim - r, ls.fiber_dim - r};
}

}  // namespace mezzo
