#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mezzo/errors.hpp"
#include "mezzo/hodge.hpp"
#include "mezzo/mezzo.hpp"
#include "mezzo/mezzoperversity.hpp"
#include "mezzo/qmatrix.hpp"
#include "mezzo/rational.hpp"
#include "mezzo/refined.hpp"
#include "mezzo/simplicial.hpp"
#include "mezzo/space.hpp"

namespace mezzo {

enum class Parity { symmetric, antisymmetric, mixed };

inline const char* to_string(Parity p) {
  switch (p) {
    case Parity::symmetric: return "symmetric";
    case Parity::antisymmetric: return "antisymmetric";
    case Parity::mixed: return "mixed";
  }
  return "unknown";
}

/// Cup pairing H^k × H^{n-k} -> Q in the canonical cohomology bases.
struct IntersectionForm {
  std::size_t degree = 0;
  std::size_t dimension = 0;  // n
  QMatrix matrix;
  Parity parity = Parity::mixed;
  bool nondegenerate = false;

  std::size_t size() const { return matrix.rows(); }

  static IntersectionForm from_matrix(QMatrix q) {
    IntersectionForm form;
    form.matrix = std::move(q);
    const QMatrix t = form.matrix.transpose();
    if (t == form.matrix)
      form.parity = Parity::symmetric;
    else if (t == Rational(-1) * form.matrix)
      form.parity = Parity::antisymmetric;
    form.nondegenerate = form.matrix.rows() == form.matrix.cols() && (form.matrix.rows() == 0 || determinant(form.matrix) != 0);
    return form;
  }
};

inline Rational pair(const QMatrix& q, const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> qb = q * b;
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * qb[i];
  return s;
}

inline IntersectionForm intersection_form(const SimplicialComplex& complex, std::size_t k, int orientation = 1) {
  require_degree(complex, k);
  FundamentalClass fc = fundamental_class(complex);
  const auto n = static_cast<std::size_t>(complex.dimension());
  CohomologyBasis a = cohomology_basis(complex, k);
  CohomologyBasis b = cohomology_basis(complex, n - k);
  QMatrix q(a.betti, b.betti);
  for (std::size_t i = 0; i < a.betti; ++i) {
    const auto ai = a.representatives.column(i);
    for (std::size_t j = 0; j < b.betti; ++j)
      q(i, j) = Rational(orientation) * fc.evaluate(cup_product(complex, k, ai, n - k, b.representatives.column(j)));
  }
  IntersectionForm form = IntersectionForm::from_matrix(std::move(q));
  form.degree = k;
  form.dimension = n;
  if (2 * k == n) form.parity = (k * k) % 2 == 0 ? Parity::symmetric : Parity::antisymmetric;
  return form;
}

/// Q-orthogonal complement {v : Q(w, v) = 0 for all w in W}, in canonical form.
inline QMatrix dual_subspace(const IntersectionForm& form, const QMatrix& w) {
  if (!form.nondegenerate) throw Error(ErrorKind::nondegeneracy, "intersection form is degenerate");
  const std::size_t n = form.size();
  if (w.cols() == 0) return QMatrix::identity(n);
  if (w.rows() != n) throw Error(ErrorKind::structure, "subspace does not match the form size");
  if (rank(w) != w.cols()) throw Error(ErrorKind::rank, "subspace basis is not linearly independent");
  QMatrix d = null_space(w.transpose() * form.matrix);
  return d.cols() == 0 ? QMatrix(n, 0) : canonical_span(d);
}

/// Pᵀ A P = diag(d) by exact symmetric elimination.
struct Congruence {
  QMatrix basis;  // P, columns are the diagonalizing vectors
  std::vector<Rational> diagonal;
};

inline Congruence congruence_diagonalize(const QMatrix& symmetric) {
  if (!(symmetric.transpose() == symmetric)) throw Error(ErrorKind::parity, "form is not symmetric");
  const std::size_t n = symmetric.rows();
  QMatrix a = symmetric;
  QMatrix p = QMatrix::identity(n);
  auto add_col_row = [&](std::size_t dst, std::size_t src, const Rational& c) {
    // column/row operation x_dst += c x_src applied as congruence
    for (std::size_t r = 0; r < n; ++r) a(r, dst) += c * a(r, src);
    for (std::size_t col = 0; col < n; ++col) a(dst, col) += c * a(src, col);
    for (std::size_t r = 0; r < n; ++r) p(r, dst) += c * p(r, src);
  };
  auto swap_index = [&](std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(p(r, i), p(r, j));
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) == 0) {
      std::size_t j = i + 1;
      while (j < n && a(j, j) == 0) ++j;
      if (j < n) {
        swap_index(i, j);
      } else {
        j = i + 1;
        while (j < n && a(i, j) == 0) ++j;
        if (j == n) continue;  // row i already zero
        add_col_row(i, j, Rational(1));
      }
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a(i, j) == 0) continue;
      add_col_row(j, i, -a(i, j) / a(i, i));
    }
  }
  Congruence c;
  c.basis = p;
  for (std::size_t i = 0; i < n; ++i) c.diagonal.push_back(a(i, i));
  return c;
}

struct Inertia {
  std::size_t positive = 0, negative = 0, zero = 0;
  long signature() const { return static_cast<long>(positive) - static_cast<long>(negative); }
};

inline Inertia inertia(const QMatrix& symmetric) {
  Inertia out;
  for (const auto& d : congruence_diagonalize(symmetric).diagonal) {
    if (d > 0)
      ++out.positive;
    else if (d < 0)
      ++out.negative;
    else
      ++out.zero;
  }
  return out;
}

inline long signature_of_form(const QMatrix& symmetric) { return inertia(symmetric).signature(); }

enum class ObstructionKind { nonzero_signature, no_invariant_lagrangian, no_rational_lagrangian };

inline const char* to_string(ObstructionKind k) {
  switch (k) {
    case ObstructionKind::nonzero_signature: return "nonzero_signature";
    case ObstructionKind::no_invariant_lagrangian: return "no_invariant_lagrangian";
    case ObstructionKind::no_rational_lagrangian: return "no_rational_lagrangian";
  }
  return "unknown";
}

struct Obstruction {
  ObstructionKind kind;
  long signature = 0;
  std::string detail;
};

struct SelfDualResult {
  std::optional<QMatrix> lagrangian;
  std::optional<Obstruction> obstruction;
  std::string strategy;
};

namespace detail {

/// Basis of the Q-complement of span(s) inside span(v).
inline QMatrix complement_within(const QMatrix& q, const QMatrix& v, const QMatrix& s) {
  QMatrix coeffs = null_space(s.transpose() * q * v);
  if (coeffs.cols() == 0) return QMatrix(v.rows(), 0);
  return v * coeffs;
}

inline std::optional<std::vector<Rational>> partner(const QMatrix& q, const QMatrix& v, const std::vector<Rational>& e) {
  for (std::size_t j = 0; j < v.cols(); ++j) {
    auto col = v.column(j);
    if (pair(q, e, col) != 0) return col;
  }
  return std::nullopt;
}

/// A nonzero isotropic vector of the symmetric form q restricted to span(v).
inline std::optional<std::vector<Rational>> isotropic_vector(const QMatrix& q, const QMatrix& v, int bound) {
  Congruence c = congruence_diagonalize(v.transpose() * q * v);
  const std::size_t m = v.cols();
  QMatrix u = v * c.basis;
  for (std::size_t i = 0; i < m; ++i)
    if (c.diagonal[i] == 0) return u.column(i);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Rational root;
      if (c.diagonal[i] * c.diagonal[j] < 0 && rational_sqrt(-c.diagonal[j] / c.diagonal[i], root)) {
        std::vector<Rational> x(u.rows());
        for (std::size_t r = 0; r < u.rows(); ++r) x[r] = root * u(r, i) + u(r, j);
        return x;
      }
    }
  // small-coefficient search over combinations of at most three diagonal vectors
  const std::size_t width = std::min<std::size_t>(m, 3);
  std::vector<std::size_t> idx(width);
  for (std::size_t i = 0; i < width; ++i) idx[i] = i;
  auto next_combination = [&]() {
    for (std::size_t pos = width; pos-- > 0;) {
      if (idx[pos] < m - width + pos) {
        ++idx[pos];
        for (std::size_t q2 = pos + 1; q2 < width; ++q2) idx[q2] = idx[q2 - 1] + 1;
        return true;
      }
    }
    return false;
  };
  if (width < 3) return std::nullopt;
  do {
    for (int a = 1; a <= bound; ++a)
      for (int b = -bound; b <= bound; ++b)
        for (int cc = -bound; cc <= bound; ++cc) {
          if (b == 0 || cc == 0) continue;
          Rational val = Rational(a * a) * c.diagonal[idx[0]] + Rational(b * b) * c.diagonal[idx[1]] +
                         Rational(cc * cc) * c.diagonal[idx[2]];
          if (val != 0) continue;
          std::vector<Rational> x(u.rows());
          for (std::size_t r = 0; r < u.rows(); ++r)
            x[r] = Rational(a) * u(r, idx[0]) + Rational(b) * u(r, idx[1]) + Rational(cc) * u(r, idx[2]);
          return x;
        }
  } while (next_combination());
  return std::nullopt;
}

/// Lagrangian of q restricted to the nondegenerate subspace span(v), built by
/// splitting off hyperbolic planes. Empty optional if an isotropic vector
/// cannot be found.
inline std::optional<QMatrix> lagrangian_within(const QMatrix& q, QMatrix v, bool symmetric) {
  QMatrix lag(q.rows(), 0);
  while (v.cols() > 0) {
    std::optional<std::vector<Rational>> e;
    if (symmetric)
      e = isotropic_vector(q, v, 3);
    else
      e = v.column(0);
    if (!e) return std::nullopt;
    auto f = partner(q, v, *e);
    if (!f) return std::nullopt;
    QMatrix plane = hstack(QMatrix::column_vector(*e), QMatrix::column_vector(*f));
    lag = hstack(lag, QMatrix::column_vector(*e));
    v = complement_within(q, v, plane);
  }
  return lag;
}

inline bool isotropic(const QMatrix& q, const QMatrix& w) { return w.cols() == 0 || (w.transpose() * q * w).is_zero(); }

inline bool invariant_under(const std::vector<QMatrix>& monodromy, const QMatrix& w) {
  for (const auto& t : monodromy)
    if (w.cols() > 0 && !is_invariant(t, w)) return false;
  return true;
}

/// Coefficients c_0..c_n of det(x I - T) by Faddeev-LeVerrier.
inline std::vector<Rational> characteristic_polynomial(const QMatrix& t) {
  const std::size_t n = t.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  QMatrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = t * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    QMatrix tm = t * m;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += tm(i, i);
    c[n - k] = -tr / Rational(static_cast<long>(k));
  }
  return c;
}

inline std::vector<Integer> small_divisors(Integer x) {
  if (x < 0) x = -x;
  std::vector<Integer> out;
  if (x == 0 || x > Integer(1000000)) return out;
  for (Integer d = 1; d <= x; ++d)
    if (x % d == 0) out.push_back(d);
  return out;
}

/// Rational eigenvalues via the rational root theorem.
inline std::vector<Rational> rational_eigenvalues(const QMatrix& t) {
  auto c = characteristic_polynomial(t);
  Integer lcm = 1;
  for (const auto& x : c) {
    Integer d = boost::multiprecision::denominator(x);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  std::vector<Integer> ic;
  for (const auto& x : c) ic.push_back(boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x)));
  std::size_t low = 0;
  while (low < ic.size() && ic[low] == 0) ++low;
  std::vector<Rational> roots;
  if (low > 0) roots.push_back(0);
  if (low >= ic.size()) return roots;
  for (const auto& p : small_divisors(ic[low]))
    for (const auto& q : small_divisors(ic.back()))
      for (int sgn : {1, -1}) {
        Rational r = Rational(p, q) * sgn;
        if (std::find(roots.begin(), roots.end(), r) != roots.end()) continue;
        Rational value = 0;
        for (std::size_t i = c.size(); i-- > 0;) value = value * r + c[i];
        if (value == 0) roots.push_back(r);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

inline QMatrix power(const QMatrix& a, std::size_t e) {
  QMatrix r = QMatrix::identity(a.rows());
  for (std::size_t i = 0; i < e; ++i) r = r * a;
  return r;
}

/// Isotropic invariant building blocks: eigenspaces, generalized eigenspaces,
/// the complement with no rational eigenvalues, and Lagrangians of the
/// nondegenerate ones.
inline std::vector<QMatrix> monodromy_atoms(const QMatrix& q, const QMatrix& t, bool symmetric) {
  const std::size_t n = t.rows();
  std::vector<QMatrix> raw;
  QMatrix rest = QMatrix::identity(n);
  for (const auto& lambda : rational_eigenvalues(t)) {
    QMatrix shifted = t - lambda * QMatrix::identity(n);
    raw.push_back(null_space(shifted));
    QMatrix p = power(shifted, n);
    raw.push_back(null_space(p));
    // intersect rest with im p
    QMatrix coeffs = null_space(hstack(rest, Rational(-1) * column_space(p)));
    rest = coeffs.cols() == 0 ? QMatrix(n, 0) : rest * coeffs.block(0, 0, rest.cols(), coeffs.cols());
  }
  if (rest.cols() > 0) raw.push_back(rest);
  std::vector<QMatrix> atoms;
  auto push = [&](const QMatrix& w) {
    if (w.cols() == 0) return;
    QMatrix c = canonical_span(w);
    for (const auto& a : atoms)
      if (a.cols() == c.cols() && a == c) return;
    atoms.push_back(c);
  };
  for (const auto& w : raw) {
    if (isotropic(q, w)) push(w);
    QMatrix restricted = w.transpose() * q * w;
    if (determinant(restricted) != 0)
      if (auto lag = lagrangian_within(q, w, symmetric)) push(*lag);
  }
  return atoms;
}

}  // namespace detail

/// Lagrangian (self-dual subspace) for a nondegenerate form, invariant under
/// the given monodromy when possible. Antisymmetric forms use a Darboux
/// construction; symmetric forms split off hyperbolic planes after checking
/// the signature. Candidates failing invariance trigger a search over sums of
/// monodromy atoms; when that also fails the result is an obstruction, which
/// records what was searched rather than claiming nonexistence.
inline SelfDualResult find_self_dual(const IntersectionForm& form, const std::vector<QMatrix>& monodromy = {}) {
  const std::size_t n = form.size();
  if (n % 2 == 1) throw Error(ErrorKind::parity, "odd ambient dimension " + std::to_string(n) + " admits no Lagrangian");
  if (!form.nondegenerate) throw Error(ErrorKind::nondegeneracy, "intersection form is degenerate");
  if (form.parity == Parity::mixed) throw Error(ErrorKind::parity, "form is neither symmetric nor antisymmetric");
  for (const auto& t : monodromy)
    if (t.rows() != n || t.cols() != n) throw Error(ErrorKind::structure, "monodromy does not act on the form's space");
  const bool symmetric = form.parity == Parity::symmetric;
  const QMatrix& q = form.matrix;
  SelfDualResult out;
  if (symmetric) {
    long sigma = signature_of_form(q);
    if (sigma != 0) {
      out.obstruction = Obstruction{ObstructionKind::nonzero_signature, sigma, "signature " + std::to_string(sigma)};
      out.strategy = "congruence diagonalization";
      return out;
    }
  }
  out.strategy = symmetric ? "hyperbolic splitting" : "Darboux basis";
  auto candidate = detail::lagrangian_within(q, QMatrix::identity(n), symmetric);
  if (!candidate) {
    out.obstruction = Obstruction{ObstructionKind::no_rational_lagrangian, 0,
                                  "no rational isotropic vector found (search incomplete)"};
    return out;
  }
  if (detail::invariant_under(monodromy, *candidate)) {
    out.lagrangian = canonical_span(*candidate);
    return out;
  }
  out.strategy += ", then monodromy atom search";
  std::vector<QMatrix> atoms;
  for (const auto& t : monodromy)
    for (auto& a : detail::monodromy_atoms(q, t, symmetric)) atoms.push_back(std::move(a));
  if (atoms.size() <= 16) {
    for (unsigned long mask = 1; mask < (1UL << atoms.size()); ++mask) {
      QMatrix sum(n, 0);
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (mask & (1UL << i)) sum = hstack(sum, atoms[i]);
      QMatrix span = column_space(sum);
      if (2 * span.cols() != n) continue;
      if (!detail::isotropic(q, span) || !detail::invariant_under(monodromy, span)) continue;
      out.lagrangian = canonical_span(span);
      return out;
    }
  }
  out.obstruction = Obstruction{ObstructionKind::no_invariant_lagrangian, 0,
                                "no invariant Lagrangian among sums of " + std::to_string(atoms.size()) +
                                    " monodromy atoms (search incomplete)"};
  return out;
}

// ---------------------------------------------------------------------------
// Space-level duality
// ---------------------------------------------------------------------------

/// Form on the middle refined cohomology of a non-Witt stratum's link. Such
/// links are closed manifolds: the middle refined cohomology of a suspension
/// of an odd-dimensional link vanishes.
inline IntersectionForm stratum_form(const Stratum& s) {
  if (s.link->kind() != SpaceKind::closed)
    throw Error(ErrorKind::structure, "stratum " + s.id + " has a singular link with nonzero middle cohomology");
  return intersection_form(s.link->complex(), s.link_dim / 2, s.link->orientation());
}

/// DW at every assigned stratum.
inline Mezzoperversity dual_mezzoperversity(const StratifiedSpace& space, const Mezzoperversity& m) {
  require_valid(space, m);
  Mezzoperversity out;
  for (const auto& s : enumerate_strata(space)) {
    const QMatrix* w = m.find(s.id);
    if (!w) continue;
    IntersectionForm form = stratum_form(s);
    QMatrix kept = w->cols() == 0 ? QMatrix(form.size(), 0) : *w;
    out.assignments.emplace(s.id, dual_subspace(form, kept));
  }
  require_valid(space, out);
  return out;
}

inline bool is_self_dual(const StratifiedSpace& space, const Mezzoperversity& m) {
  Mezzoperversity d = dual_mezzoperversity(space, m);
  for (const auto& [id, w] : m.assignments) {
    const QMatrix* v = d.find(id);
    const std::size_t n = v->rows();
    QMatrix a = w.cols() == 0 ? QMatrix(n, 0) : w;
    if (a.cols() != v->cols() || (a.cols() > 0 && !same_span(a, *v))) return false;
  }
  return true;
}

struct StratumCheeger {
  std::string id;
  IntersectionForm form;
  SelfDualResult result;
};

struct CheegerReport {
  bool cheeger = true;
  std::vector<StratumCheeger> strata;
  Mezzoperversity self_dual;  // complete only when cheeger
};

/// Searches a self-dual mezzoperversity stratum by stratum in depth order.
inline CheegerReport find_cheeger_structure(const StratifiedSpace& space) {
  CheegerReport report;
  for (const auto& s : enumerate_strata(space)) {
    if (s.link_dim % 2 == 1) continue;
    WittStatus status = witt_status(s, report.self_dual);
    if (status.witt) continue;
    StratumCheeger entry{s.id, stratum_form(s), {}};
    std::vector<QMatrix> monodromy;
    if (s.owner->kind() == SpaceKind::flat_cone_bundle) monodromy = s.owner->monodromy().generators;
    if (entry.form.size() % 2 == 1 && entry.form.parity == Parity::symmetric) {
      const long sigma = signature_of_form(entry.form.matrix);
      entry.result.obstruction = Obstruction{ObstructionKind::nonzero_signature, sigma, "signature " + std::to_string(sigma)};
      entry.result.strategy = "congruence diagonalization";
    } else {
      entry.result = find_self_dual(entry.form, monodromy);
    }
    if (entry.result.lagrangian)
      report.self_dual.assignments.emplace(s.id, *entry.result.lagrangian);
    else
      report.cheeger = false;
    report.strata.push_back(std::move(entry));
  }
  return report;
}

struct PoincareReport {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> dual_dims;
  bool dimension_symmetry = true;
  std::vector<std::string> checks;  // which checks ran
  bool closed_pairings_nondegenerate = true;
};

inline void collect_closed_leaves(const StratifiedSpace& space, std::vector<const StratifiedSpace*>& out) {
  if (space.kind() == SpaceKind::closed) {
    out.push_back(&space);
    return;
  }
  collect_closed_leaves(*space.link(), out);
}

/// dim H^k_W = dim H^{n-k}_{DW} and nondegeneracy of cup pairings on the
/// closed pieces. Defined for spaces without boundary (Closed, Suspension).
inline PoincareReport poincare_check(const StratifiedSpace& space, const Mezzoperversity& m) {
  if (!space.is_closed_space())
    throw Error(ErrorKind::structure, std::string("Poincaré duality needs a space without boundary, got ") +
                                          to_string(space.kind()));
  PoincareReport report;
  Mezzoperversity d = dual_mezzoperversity(space, m);
  report.dims = refined::refined_dims(space, m);
  report.dual_dims = refined::refined_dims(space, d);
  const std::size_t n = space.dimension();
  for (std::size_t k = 0; k <= n; ++k)
    if (report.dims[k] != report.dual_dims[n - k]) report.dimension_symmetry = false;
  report.checks.push_back("dimension symmetry dim H^k_W = dim H^{n-k}_DW");
  std::vector<const StratifiedSpace*> leaves;
  collect_closed_leaves(space, leaves);
  for (const auto* leaf : leaves) {
    const auto dim = static_cast<std::size_t>(leaf->complex().dimension());
    for (std::size_t k = 0; k <= dim; ++k) {
      IntersectionForm form = intersection_form(leaf->complex(), k, leaf->orientation());
      if (!form.nondegenerate) report.closed_pairings_nondegenerate = false;
    }
    report.checks.push_back("cup pairing nondegenerate on closed piece of dimension " + std::to_string(dim));
  }
  return report;
}

/// Signature of the middle-degree form of a self-dual refined cohomology.
inline long signature(const StratifiedSpace& space, const Mezzoperversity& m) {
  if (!is_self_dual(space, m)) throw Error(ErrorKind::self_duality, "mezzoperversity is not self-dual");
  const std::size_t n = space.dimension();
  if (n % 4 != 0) return 0;
  if (space.kind() == SpaceKind::closed)
    return signature_of_form(intersection_form(space.complex(), n / 2, space.orientation()).matrix);
  if (space.kind() == SpaceKind::suspension && refined::refined_dims(space, m)[n / 2] == 0) return 0;
  throw Error(ErrorKind::structure, std::string("signature is computed for closed spaces, got ") + to_string(space.kind()));
}

// ---------------------------------------------------------------------------
// Hodge-star route to the dual subspace
// ---------------------------------------------------------------------------

/// * (W^⊥) with ⊥ taken in the metric for which the star is the duality map.
/// Coordinates are those of the canonical cohomology basis (real).
inline Eigen::MatrixXd dual_subspace_via_star(const hodge::HodgeStar& star, const QMatrix& w) {
  const auto b = star.star_gram.rows();
  Eigen::MatrixXd wd = w.cols() == 0 ? Eigen::MatrixXd(b, 0) : w.to_eigen();
  if (wd.cols() == 0) return star.harmonic_map;
  Eigen::MatrixXd constraint = wd.transpose() * star.star_gram;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(constraint);
  lu.setThreshold(1e-10);
  Eigen::MatrixXd perp = lu.kernel();
  if (lu.rank() == b) return Eigen::MatrixXd(star.harmonic_map.rows(), 0);
  return star.harmonic_map * perp;
}

/// Numerical span equality of real column spaces.
inline bool same_span_numeric(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol = 1e-8) {
  if (a.cols() == 0 || b.cols() == 0) return a.cols() == b.cols() || (a.norm() < tol && b.norm() < tol);
  auto rank_of = [&](const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > tol * std::max(1.0, s(0))) ++r;
    return r;
  };
  Eigen::MatrixXd both(a.rows(), a.cols() + b.cols());
  both << a, b;
  const auto ra = rank_of(a), rb = rank_of(b);
  return ra == rb && rank_of(both) == ra;
}

}  // namespace mezzo
