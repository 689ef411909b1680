#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mezzo/cochain_complex.hpp"
#include "mezzo/errors.hpp"
#include "mezzo/qmatrix.hpp"

namespace mezzo {

/// Strictly increasing vertex indices.
using Simplex = std::vector<std::size_t>;

/// Finite abstract simplicial complex given by its maximal simplices.
///
/// Vertices are sorted lexicographically by name and indexed 0..V-1; every
/// face list is kept in lexicographic order of its sorted index tuple. All
/// cochain coordinates in the library refer to that order.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  SimplicialComplex(std::vector<std::string> vertex_names, const std::vector<std::vector<std::string>>& maximal) {
    std::sort(vertex_names.begin(), vertex_names.end());
    if (std::adjacent_find(vertex_names.begin(), vertex_names.end()) != vertex_names.end())
      throw Error(ErrorKind::structure, "duplicate vertex name");
    vertices_ = std::move(vertex_names);
    std::map<std::string, std::size_t> lookup;
    for (std::size_t i = 0; i < vertices_.size(); ++i) lookup[vertices_[i]] = i;

    std::vector<Simplex> simplices;
    for (const auto& named : maximal) {
      Simplex s;
      for (const auto& v : named) {
        auto it = lookup.find(v);
        if (it == lookup.end()) throw Error(ErrorKind::input, "simplex uses unknown vertex '" + v + "'");
        s.push_back(it->second);
      }
      simplices.push_back(std::move(s));
    }
    build(std::move(simplices));
  }

  /// Complex on vertices 0..n-1. Names are zero-padded so that the
  /// lexicographic order of names agrees with the numeric order.
  static SimplicialComplex from_indices(std::size_t n_vertices, const std::vector<Simplex>& maximal) {
    const std::size_t width = std::to_string(n_vertices > 0 ? n_vertices - 1 : 0).size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n_vertices; ++i) {
      std::string s = std::to_string(i);
      names.push_back(std::string(width - s.size(), '0') + s);
    }
    std::vector<std::vector<std::string>> named;
    for (const auto& s : maximal) {
      std::vector<std::string> row;
      for (auto v : s) {
        if (v >= n_vertices) throw Error(ErrorKind::input, "vertex index out of range");
        row.push_back(names[v]);
      }
      named.push_back(std::move(row));
    }
    return SimplicialComplex(std::move(names), named);
  }

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Simplex>& maximal_simplices() const noexcept { return maximal_; }

  /// -1 for the empty complex.
  int dimension() const noexcept { return static_cast<int>(faces_.size()) - 1; }
  bool empty() const noexcept { return faces_.empty(); }

  const std::vector<Simplex>& simplices(std::size_t k) const {
    if (k >= faces_.size()) throw Error(ErrorKind::range, "no simplices of dimension " + std::to_string(k));
    return faces_[k];
  }

  std::size_t count(std::size_t k) const { return k < faces_.size() ? faces_[k].size() : 0; }

  std::optional<std::size_t> index_of(const Simplex& s) const {
    if (s.empty() || s.size() > faces_.size()) return std::nullopt;
    const auto& idx = index_[s.size() - 1];
    auto it = idx.find(s);
    if (it == idx.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_or_throw(const Simplex& s) const {
    auto i = index_of(s);
    if (!i) throw Error(ErrorKind::structure, "simplex not present in complex");
    return *i;
  }

  std::string simplex_name(const Simplex& s) const {
    std::string out = "[";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + vertices_[s[i]];
    return out + "]";
  }

 private:
  void build(std::vector<Simplex> simplices) {
    for (auto& s : simplices) {
      if (s.empty()) throw Error(ErrorKind::structure, "empty simplex");
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw Error(ErrorKind::structure, "simplex repeats a vertex");
    }
    std::sort(simplices.begin(), simplices.end());
    simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
    maximal_ = simplices;

    std::size_t top = 0;
    for (const auto& s : maximal_) top = std::max(top, s.size());
    if (vertices_.empty()) return;
    top = std::max<std::size_t>(top, 1);

    std::vector<std::set<Simplex>> sets(top);
    for (std::size_t v = 0; v < vertices_.size(); ++v) sets[0].insert(Simplex{v});
    for (const auto& s : maximal_) {
      const std::size_t n = s.size();
      // every nonempty subset, enumerated by bitmask
      for (unsigned long mask = 1; mask < (1ul << n); ++mask) {
        Simplex f;
        for (std::size_t i = 0; i < n; ++i)
          if (mask & (1ul << i)) f.push_back(s[i]);
        sets[f.size() - 1].insert(std::move(f));
      }
    }
    faces_.resize(top);
    index_.resize(top);
    for (std::size_t k = 0; k < top; ++k) {
      faces_[k].assign(sets[k].begin(), sets[k].end());
      for (std::size_t i = 0; i < faces_[k].size(); ++i) index_[k][faces_[k][i]] = i;
    }
  }

  std::vector<std::string> vertices_;
  std::vector<Simplex> maximal_;
  std::vector<std::vector<Simplex>> faces_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

/// k-cochain: one coefficient per k-simplex in canonical order.
struct Cochain {
  std::size_t degree = 0;
  std::vector<Rational> coefficients;
};

inline void require_degree(const SimplicialComplex& k_complex, std::size_t k) {
  if (k_complex.empty() || static_cast<int>(k) > k_complex.dimension())
    throw Error(ErrorKind::range,
                "degree " + std::to_string(k) + " outside 0.." + std::to_string(k_complex.dimension()));
}

/// Simplicial coboundary d_k : C^k -> C^{k+1},
/// (d c)[v0..v_{k+1}] = sum_i (-1)^i c[v0..^vi..v_{k+1}].
inline QMatrix coboundary_matrix(const SimplicialComplex& complex, std::size_t k) {
  require_degree(complex, k);
  if (static_cast<int>(k) == complex.dimension()) return QMatrix(0, complex.count(k));
  const auto& upper = complex.simplices(k + 1);
  QMatrix d(upper.size(), complex.count(k));
  for (std::size_t r = 0; r < upper.size(); ++r) {
    const Simplex& s = upper[r];
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face;
      face.reserve(s.size() - 1);
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i) face.push_back(s[j]);
      d(r, complex.index_or_throw(face)) = (i % 2 == 0) ? 1 : -1;
    }
  }
  return d;
}

inline CochainComplex cochain_complex(const SimplicialComplex& complex) {
  CochainComplex c;
  if (complex.empty()) return c;
  const auto n = static_cast<std::size_t>(complex.dimension());
  for (std::size_t k = 0; k <= n; ++k) c.dims.push_back(complex.count(k));
  for (std::size_t k = 0; k < n; ++k) c.d.push_back(coboundary_matrix(complex, k));
  return c;
}

inline CohomologyBasis cohomology_basis(const SimplicialComplex& complex, std::size_t k) {
  require_degree(complex, k);
  return cohomology_basis(cochain_complex(complex), k);
}

inline std::vector<std::size_t> betti_numbers(const SimplicialComplex& complex) {
  return cohomology_dims(cochain_complex(complex));
}

/// Front-face/back-face cup product on coefficient vectors:
/// (a ⌣ b)[v0..v_{p+q}] = a[v0..vp] · b[vp..v_{p+q}].
template <class Scalar>
std::vector<Scalar> cup_product(const SimplicialComplex& complex, std::size_t p, const std::vector<Scalar>& a,
                                std::size_t q, const std::vector<Scalar>& b) {
  require_degree(complex, p);
  require_degree(complex, q);
  if (static_cast<int>(p + q) > complex.dimension())
    throw Error(ErrorKind::range, "cup product degree " + std::to_string(p + q) + " exceeds dimension");
  if (a.size() != complex.count(p) || b.size() != complex.count(q))
    throw Error(ErrorKind::range, "cochain length does not match simplex count");
  const auto& target = complex.simplices(p + q);
  std::vector<Scalar> out(target.size(), Scalar(0));
  for (std::size_t i = 0; i < target.size(); ++i) {
    const Simplex& s = target[i];
    Simplex front(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(p + 1));
    Simplex back(s.begin() + static_cast<std::ptrdiff_t>(p), s.end());
    const Scalar& x = a[complex.index_or_throw(front)];
    if (x == Scalar(0)) continue;
    out[i] = x * b[complex.index_or_throw(back)];
  }
  return out;
}

inline Cochain cup_product(const SimplicialComplex& complex, const Cochain& a, const Cochain& b) {
  return {a.degree + b.degree, cup_product(complex, a.degree, a.coefficients, b.degree, b.coefficients)};
}

/// d applied to a cochain.
inline Cochain coboundary(const SimplicialComplex& complex, const Cochain& c) {
  return {c.degree + 1, coboundary_matrix(complex, c.degree) * c.coefficients};
}

/// Coherently oriented top chain of a closed pseudomanifold.
struct FundamentalClass {
  std::vector<int> coefficients;  // one ±1 per top simplex, canonical order

  /// ⟨c, [K]⟩ for a top-degree cochain.
  template <class Scalar>
  Scalar evaluate(const std::vector<Scalar>& top_cochain) const {
    if (top_cochain.size() != coefficients.size())
      throw Error(ErrorKind::range, "cochain is not of top degree");
    Scalar sum(0);
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      if (top_cochain[i] == Scalar(0)) continue;
      if (coefficients[i] > 0)
        sum += top_cochain[i];
      else
        sum -= top_cochain[i];
    }
    return sum;
  }
};

/// Requires a pure complex whose codimension-one faces each lie in exactly two
/// top simplices. The first top simplex of every strongly connected piece
/// carries +1.
inline FundamentalClass fundamental_class(const SimplicialComplex& complex) {
  if (complex.empty()) throw Error(ErrorKind::structure, "empty complex has no fundamental class");
  const auto n = static_cast<std::size_t>(complex.dimension());
  for (const auto& s : complex.maximal_simplices())
    if (s.size() != n + 1)
      throw Error(ErrorKind::structure, "complex is not pure: maximal simplex " + complex.simplex_name(s) +
                                            " has dimension " + std::to_string(s.size() - 1));
  const auto& tops = complex.simplices(n);
  FundamentalClass fc;
  fc.coefficients.assign(tops.size(), 0);
  if (n == 0) {
    std::fill(fc.coefficients.begin(), fc.coefficients.end(), 1);
    return fc;
  }

  struct Incidence {
    std::size_t top;
    int sign;
  };
  std::vector<std::vector<Incidence>> cofaces(complex.count(n - 1));
  for (std::size_t t = 0; t < tops.size(); ++t) {
    const Simplex& s = tops[t];
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i) face.push_back(s[j]);
      cofaces[complex.index_or_throw(face)].push_back({t, (i % 2 == 0) ? 1 : -1});
    }
  }
  for (std::size_t f = 0; f < cofaces.size(); ++f)
    if (cofaces[f].size() != 2)
      throw Error(ErrorKind::structure, "not a closed pseudomanifold: face " +
                                            complex.simplex_name(complex.simplices(n - 1)[f]) + " lies in " +
                                            std::to_string(cofaces[f].size()) + " top simplices");

  std::vector<std::vector<std::size_t>> facets_of(tops.size());
  for (std::size_t f = 0; f < cofaces.size(); ++f)
    for (const auto& inc : cofaces[f]) facets_of[inc.top].push_back(f);

  for (std::size_t seed = 0; seed < tops.size(); ++seed) {
    if (fc.coefficients[seed] != 0) continue;
    fc.coefficients[seed] = 1;
    std::deque<std::size_t> queue{seed};
    while (!queue.empty()) {
      std::size_t t = queue.front();
      queue.pop_front();
      for (auto f : facets_of[t]) {
        const auto& pair = cofaces[f];
        const Incidence& here = pair[0].top == t ? pair[0] : pair[1];
        const Incidence& there = pair[0].top == t ? pair[1] : pair[0];
        // boundary cancellation on the shared face: c_here·ε_here + c_there·ε_there = 0
        int required = -fc.coefficients[t] * here.sign * there.sign;
        if (fc.coefficients[there.top] == 0) {
          fc.coefficients[there.top] = required;
          queue.push_back(there.top);
        } else if (fc.coefficients[there.top] != required) {
          throw OrientabilityError(t, there.top,
                                   "non-orientable: simplices " + complex.simplex_name(tops[t]) + " and " +
                                       complex.simplex_name(tops[there.top]) + " disagree across " +
                                       complex.simplex_name(complex.simplices(n - 1)[f]));
        }
      }
    }
  }
  return fc;
}

/// Boundary of an integer top chain, as a vector over (n-1)-simplices.
inline std::vector<Rational> boundary_of_top_chain(const SimplicialComplex& complex, const std::vector<int>& chain) {
  const auto n = static_cast<std::size_t>(complex.dimension());
  std::vector<Rational> c(chain.begin(), chain.end());
  return coboundary_matrix(complex, n - 1).transpose() * c;
}

/// Barycentric subdivision: vertices are the simplices of K, top simplices the
/// maximal flags.
inline SimplicialComplex barycentric_subdivision(const SimplicialComplex& complex) {
  std::vector<std::string> names;
  std::map<Simplex, std::string> name_of;
  for (int k = 0; k <= complex.dimension(); ++k)
    for (const auto& s : complex.simplices(static_cast<std::size_t>(k))) {
      name_of[s] = "{" + complex.simplex_name(s) + "}";
      names.push_back(name_of[s]);
    }
  std::vector<std::vector<std::string>> flags;
  for (const auto& top : complex.maximal_simplices()) {
    Simplex order = top;
    do {
      std::vector<std::string> flag;
      for (std::size_t len = 1; len <= order.size(); ++len) {
        Simplex prefix(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(len));
        std::sort(prefix.begin(), prefix.end());
        flag.push_back(name_of.at(prefix));
      }
      flags.push_back(std::move(flag));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return SimplicialComplex(std::move(names), flags);
}

/// Staircase triangulation of K × L using the canonical vertex orders.
inline SimplicialComplex product(const SimplicialComplex& left, const SimplicialComplex& right) {
  auto pair_name = [&](std::size_t a, std::size_t b) {
    return "(" + left.vertices()[a] + "," + right.vertices()[b] + ")";
  };
  std::vector<std::string> names;
  for (std::size_t a = 0; a < left.vertices().size(); ++a)
    for (std::size_t b = 0; b < right.vertices().size(); ++b) names.push_back(pair_name(a, b));

  std::vector<std::vector<std::string>> tops;
  for (const auto& s : left.maximal_simplices())
    for (const auto& t : right.maximal_simplices()) {
      const std::size_t p = s.size() - 1;
      const std::size_t q = t.size() - 1;
      // a lattice path is a choice of which of the p+q steps move in the left factor
      std::vector<bool> steps(p + q, false);
      std::fill(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(p), true);
      std::sort(steps.begin(), steps.end());
      do {
        std::size_t i = 0, j = 0;
        std::vector<std::string> simplex{pair_name(s[0], t[0])};
        for (bool step_left : steps) {
          step_left ? ++i : ++j;
          simplex.push_back(pair_name(s[i], t[j]));
        }
        tops.push_back(std::move(simplex));
      } while (std::next_permutation(steps.begin(), steps.end()));
    }
  return SimplicialComplex(std::move(names), tops);
}

}  // namespace mezzo
