#pragma once

#include <cstddef>
#include <vector>

#include "mezzo/simplicial.hpp"

/// Small standard triangulations used as links, bases and test fixtures.
namespace mezzo::catalog {

/// Boundary of an n-gon, n >= 3.
inline SimplicialComplex circle(std::size_t n = 3) {
  std::vector<Simplex> edges;
  for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return SimplicialComplex::from_indices(n, edges);
}

/// Boundary of the tetrahedron.
inline SimplicialComplex tetrahedron_boundary() {
  return SimplicialComplex::from_indices(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

/// Octahedron: vertices ±x = 0,1; ±y = 2,3; ±z = 4,5.
inline SimplicialComplex octahedron() {
  std::vector<Simplex> tris;
  for (std::size_t x : {0, 1})
    for (std::size_t y : {2, 3})
      for (std::size_t z : {4, 5}) tris.push_back({x, y, z});
  return SimplicialComplex::from_indices(6, tris);
}

/// Möbius' 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
inline SimplicialComplex torus7() {
  std::vector<Simplex> tris;
  for (std::size_t i = 0; i < 7; ++i) {
    tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
    tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return SimplicialComplex::from_indices(7, tris);
}

/// 6-vertex real projective plane (non-orientable).
inline SimplicialComplex rp2_6() {
  return SimplicialComplex::from_indices(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                             {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}});
}

/// Kühnel's 9-vertex complex projective plane (36 facets).
inline SimplicialComplex cp2_9() {
  static const std::vector<std::vector<std::size_t>> facets = {
      {1, 2, 3, 4, 5}, {1, 2, 3, 4, 6}, {1, 2, 3, 5, 6}, {1, 2, 4, 5, 7}, {1, 2, 4, 6, 8}, {1, 2, 4, 7, 8},
      {1, 2, 5, 6, 7}, {1, 2, 6, 7, 9}, {1, 2, 6, 8, 9}, {1, 2, 7, 8, 9}, {1, 3, 4, 5, 9}, {1, 3, 4, 6, 9},
      {1, 3, 5, 6, 7}, {1, 3, 5, 7, 8}, {1, 3, 5, 8, 9}, {1, 3, 6, 7, 9}, {1, 3, 7, 8, 9}, {1, 4, 5, 7, 8},
      {1, 4, 5, 8, 9}, {1, 4, 6, 8, 9}, {2, 3, 4, 5, 9}, {2, 3, 4, 6, 8}, {2, 3, 4, 7, 8}, {2, 3, 4, 7, 9},
      {2, 3, 5, 6, 8}, {2, 3, 5, 8, 9}, {2, 3, 7, 8, 9}, {2, 4, 5, 7, 9}, {2, 5, 6, 7, 9}, {2, 5, 6, 8, 9},
      {3, 4, 6, 7, 8}, {3, 4, 6, 7, 9}, {3, 5, 6, 7, 8}, {4, 5, 6, 7, 8}, {4, 5, 6, 7, 9}, {4, 5, 6, 8, 9},
  };
  std::vector<Simplex> tops;
  for (const auto& f : facets) {
    Simplex s;
    for (auto v : f) s.push_back(v - 1);
    tops.push_back(std::move(s));
  }
  return SimplicialComplex::from_indices(9, tops);
}

/// S² × S² as the staircase product of two tetrahedron boundaries.
inline SimplicialComplex s2_x_s2() { return product(tetrahedron_boundary(), tetrahedron_boundary()); }

}  // namespace mezzo::catalog
