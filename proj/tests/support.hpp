#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "mezzo/cochain_complex.hpp"
#include "mezzo/qmatrix.hpp"
#include "mezzo/rational.hpp"
#include "mezzo/simplicial.hpp"

// Oracles here deliberately avoid the library's rational elimination: ranks
// are taken modulo a large prime, and face lattices are enumerated from
// scratch.
namespace oracle {

using mezzo::QMatrix;
using mezzo::Rational;

constexpr std::uint64_t kPrime = 2147483647ULL;  // 2^31 - 1

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  b %= kPrime;
  while (e) {
    if (e & 1) r = r * b % kPrime;
    b = b * b % kPrime;
    e >>= 1;
  }
  return r;
}

inline std::uint64_t to_mod(const mezzo::Integer& z) {
  mezzo::Integer m = z % mezzo::Integer(kPrime);
  if (m < 0) m += kPrime;
  return m.convert_to<std::uint64_t>();
}

inline std::uint64_t to_mod(const Rational& q) {
  std::uint64_t num = to_mod(boost::multiprecision::numerator(q));
  std::uint64_t den = to_mod(boost::multiprecision::denominator(q));
  return num * pow_mod(den, kPrime - 2) % kPrime;
}

inline std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const std::uint64_t inv = pow_mod(m[r][c], kPrime - 2);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const std::uint64_t f = m[i][c] * inv % kPrime;
      for (std::size_t j = c; j < cols; ++j) m[i][j] = (m[i][j] + (kPrime - f) * m[r][j]) % kPrime;
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const QMatrix& a) {
  std::vector<std::vector<std::uint64_t>> m(a.rows(), std::vector<std::uint64_t>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = to_mod(a(i, j));
  return rank_mod_p(std::move(m));
}

/// Betti numbers of the complex generated by the given maximal simplices.
inline std::vector<std::size_t> betti(const std::vector<std::vector<int>>& maximal) {
  std::vector<std::set<std::vector<int>>> faces;
  for (auto top : maximal) {
    std::sort(top.begin(), top.end());
    const std::size_t n = top.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> f;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) f.push_back(top[i]);
      if (faces.size() < f.size()) faces.resize(f.size());
      faces[f.size() - 1].insert(f);
    }
  }
  const std::size_t dim = faces.size() - 1;
  std::vector<std::map<std::vector<int>, std::size_t>> index(faces.size());
  for (std::size_t k = 0; k <= dim; ++k) {
    std::size_t i = 0;
    for (const auto& f : faces[k]) index[k][f] = i++;
  }
  // boundary ∂_k : C_k -> C_{k-1}, rank equals rank of the coboundary
  std::vector<std::size_t> rk(dim + 2, 0);
  for (std::size_t k = 1; k <= dim; ++k) {
    std::vector<std::vector<std::uint64_t>> m(faces[k - 1].size(), std::vector<std::uint64_t>(faces[k].size(), 0));
    std::size_t col = 0;
    for (const auto& f : faces[k]) {
      for (std::size_t i = 0; i < f.size(); ++i) {
        std::vector<int> g = f;
        g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
        m[index[k - 1][g]][col] = i % 2 == 0 ? 1 : kPrime - 1;
      }
      ++col;
    }
    rk[k] = rank_mod_p(std::move(m));
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= dim; ++k) out.push_back(faces[k].size() - rk[k] - rk[k + 1]);
  return out;
}

inline std::vector<std::vector<int>> raw_maximal(const mezzo::SimplicialComplex& k) {
  std::vector<std::vector<int>> out;
  for (const auto& s : k.maximal_simplices()) out.emplace_back(s.begin(), s.end());
  return out;
}

/// Cohomology dimensions of a cochain complex via ranks mod p.
inline std::vector<std::size_t> cohomology_dims(const mezzo::CochainComplex& c) {
  std::vector<std::size_t> r(c.length() + 1, 0);
  for (std::size_t k = 0; k + 1 < c.length(); ++k) r[k + 1] = oracle::rank(c.d[k]);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < c.length(); ++k) out.push_back(c.dims[k] - r[k + 1] - r[k]);
  return out;
}

/// The simplicial suspension: two new apex vertices joined to every simplex.
inline std::vector<std::vector<int>> suspension(const std::vector<std::vector<int>>& maximal, int apex_a, int apex_b) {
  std::vector<std::vector<int>> out;
  for (const auto& s : maximal)
    for (int apex : {apex_a, apex_b}) {
      auto t = s;
      t.push_back(apex);
      out.push_back(t);
    }
  return out;
}

/// Truncated cone complex at degree t keeping span(reps·w), written out
/// directly. Returns the basis of R^t in C^t coordinates as well.
struct Truncation {
  mezzo::CochainComplex complex;
  QMatrix top_basis;
  std::size_t exact = 0;
};

inline Truncation truncation(const mezzo::CochainComplex& link, std::size_t t, const QMatrix& lifts) {
  Truncation out;
  QMatrix exact = t == 0 ? QMatrix(link.dims[0], 0) : mezzo::column_space(link.d[t - 1]);
  out.exact = exact.cols();
  out.top_basis = mezzo::hstack(exact, lifts);
  for (std::size_t q = 0; q < link.length(); ++q)
    out.complex.dims.push_back(q < t ? link.dims[q] : (q == t ? out.top_basis.cols() : 0));
  for (std::size_t q = 0; q + 1 < link.length(); ++q) {
    if (q + 1 < t)
      out.complex.d.push_back(link.d[q]);
    else if (q + 1 == t)
      out.complex.d.push_back(*mezzo::solve(out.top_basis, link.d[q]));
    else
      out.complex.d.push_back(QMatrix(out.complex.dims[q + 1], out.complex.dims[q]));
  }
  return out;
}

/// Cone bundle over a 3-vertex circle with the twist on the edge (2, 0):
/// Tot^k = R^k ⊗ Q^3 ⊕ R^{k-1} ⊗ Q^3, D(a, b) = (d a, δ_ρ a - d b), where
/// (δ_ρ a)_{ij} = ρ_{ij} a_j - a_i and ρ is the identity except on (2, 0).
inline std::vector<std::size_t> bundle_over_triangle(const mezzo::CochainComplex& r, const std::vector<QMatrix>& action) {
  const std::size_t len = r.length();
  auto dim = [&](long q) -> std::size_t { return q < 0 || q >= static_cast<long>(len) ? 0 : r.dims[static_cast<std::size_t>(q)]; };
  auto dr = [&](long q) -> QMatrix {
    if (q < 0 || q + 1 >= static_cast<long>(len)) return QMatrix(dim(q + 1), dim(q));
    return r.d[static_cast<std::size_t>(q)];
  };
  mezzo::CochainComplex tot;
  for (long k = 0; k <= static_cast<long>(len); ++k) tot.dims.push_back(3 * dim(k) + 3 * dim(k - 1));
  const int edges[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (long k = 0; k < static_cast<long>(len); ++k) {
    const std::size_t a0 = dim(k), a1 = dim(k + 1), b0 = dim(k - 1);
    QMatrix m(tot.dims[static_cast<std::size_t>(k + 1)], tot.dims[static_cast<std::size_t>(k)]);
    QMatrix dk = dr(k), dkm = dr(k - 1);
    for (int v = 0; v < 3; ++v) m.set_block(v * a1, v * a0, dk);
    const QMatrix id = QMatrix::identity(a0);
    const QMatrix rho = action[static_cast<std::size_t>(k)];
    for (int e = 0; e < 3; ++e) {
      const std::size_t row = 3 * a1 + static_cast<std::size_t>(e) * a0;
      const auto tail = static_cast<std::size_t>(edges[e][0]), head = static_cast<std::size_t>(edges[e][1]);
      m.set_block(row, head * a0, e == 2 ? rho : id);
      for (std::size_t x = 0; x < a0; ++x) m(row + x, tail * a0 + x) -= 1;
      m.set_block(row, 3 * a0 + static_cast<std::size_t>(e) * b0, Rational(-1) * dkm);
    }
    tot.d.push_back(std::move(m));
  }
  return oracle::cohomology_dims(tot);
}

}  // namespace oracle

// Hand-rolled generators, seeded for reproducibility.
namespace gen {

using mezzo::QMatrix;
using mezzo::Rational;

struct Source {
  std::mt19937_64 rng;
  explicit Source(std::uint64_t seed) : rng(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  bool coin() { return integer(0, 1) == 1; }

  QMatrix matrix(std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = integer(lo, hi);
    return m;
  }

  QMatrix invertible(std::size_t n) {
    for (;;) {
      QMatrix m = matrix(n, n);
      if (mezzo::rank(m) == n) return m;
    }
  }

  /// Full-rank n×d matrix.
  QMatrix subspace(std::size_t n, std::size_t d) {
    if (d == 0) return QMatrix(n, 0);
    for (;;) {
      QMatrix m = matrix(n, d);
      if (mezzo::rank(m) == d) return m;
    }
  }

  /// Pᵀ J P with J the standard symplectic matrix.
  QMatrix symplectic_form(std::size_t n) {
    QMatrix j(n, n);
    for (std::size_t i = 0; i + 1 < n; i += 2) {
      j(i, i + 1) = 1;
      j(i + 1, i) = -1;
    }
    QMatrix p = invertible(n);
    return p.transpose() * j * p;
  }

  /// Pᵀ D P with D diagonal of nonzero entries; signature zero when balanced.
  QMatrix symmetric_form(std::size_t n, bool balanced) {
    QMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      int v = integer(1, 3);
      bool negative = balanced ? (i % 2 == 1) : coin();
      d(i, i) = negative ? -v : v;
    }
    QMatrix p = invertible(n);
    return p.transpose() * d * p;
  }

  std::vector<std::vector<double>> weights(const std::vector<std::size_t>& dims, double lo = 0.25, double hi = 4.0) {
    std::vector<std::vector<double>> w;
    for (auto n : dims) {
      std::vector<double> row;
      for (std::size_t i = 0; i < n; ++i) row.push_back(real(lo, hi));
      w.push_back(std::move(row));
    }
    return w;
  }

  std::vector<Rational> rational_vector(std::size_t n, int lo = -4, int hi = 4) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(Rational(integer(lo, hi), integer(1, 3)));
    return v;
  }
};

}  // namespace gen
