#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "mezzo/cochain_complex.hpp"
#include "mezzo/errors.hpp"
#include "mezzo/local_system.hpp"
#include "mezzo/mezzoperversity.hpp"
#include "mezzo/qmatrix.hpp"
#include "mezzo/simplicial.hpp"
#include "mezzo/space.hpp"

/// Refined (mezzoperversity-twisted) cohomology.
///
/// Two independent routes are kept side by side:
///  - the dimension route: the cone formula on link cohomology, Mayer-Vietoris
///    rank bookkeeping for suspensions, and the Wang sequence for flat cone
///    bundles over the circle;
///  - the chain route: explicit finite cochain complexes over Q (truncated
///    cone complexes, the Mayer-Vietoris double complex, the Wang mapping
///    cone) whose cohomology is computed by exact ranks.
///
/// Reported degree ranges: Closed 0..n, Cone 0..f (degree f+1 of a cone is
/// always zero and is not listed), Suspension 0..f+1, FlatConeBundle 0..f+2.
namespace mezzo::refined {

/// Degree at which the cone complex is cut off, and whether it carries a W slot.
struct ConeShape {
  std::size_t link_dim = 0;
  std::size_t truncation = 0;
  bool has_middle = false;
};

inline ConeShape cone_shape(std::size_t f) { return {f, f / 2, f % 2 == 0}; }

/// Validates the subspace supplied at a cone point over an f-dimensional link
/// whose degree-t refined cohomology has dimension `ambient`, and returns the
/// subspace kept in the truncation degree (all of it when f is odd).
inline QMatrix apex_subspace(std::size_t f, std::size_t ambient, const QMatrix* w, const std::string& id) {
  if (f % 2 == 1) {
    if (w)
      throw StratumError(ErrorKind::superfluous_assignment, id,
                         "stratum " + id + " has odd-dimensional link (f = " + std::to_string(f) +
                             ") and takes no subspace");
    return QMatrix::identity(ambient);
  }
  if (ambient == 0) {
    if (w)
      throw StratumError(ErrorKind::superfluous_assignment, id,
                         "stratum " + id + " is Witt (middle cohomology vanishes) and takes no subspace");
    return QMatrix(0, 0);
  }
  if (!w)
    throw StratumError(ErrorKind::incompleteness, id,
                       "non-Witt stratum " + id + " has no assigned subspace (middle dimension " +
                           std::to_string(ambient) + ")");
  if (w->cols() > 0 && w->rows() != ambient)
    throw StratumError(ErrorKind::structure, id,
                       "subspace at " + id + " has vectors of length " + std::to_string(w->rows()) +
                           ", expected " + std::to_string(ambient));
  if (w->cols() == 0) return QMatrix(ambient, 0);
  if (rank(*w) != w->cols())
    throw StratumError(ErrorKind::rank, id, "subspace basis at " + id + " is not linearly independent");
  return *w;
}

/// Monodromy must act on the ambient middle cohomology and preserve W.
inline void check_monodromy(const MonodromyRep& rep, std::size_t ambient, const QMatrix& w, const std::string& id) {
  for (std::size_t g = 0; g < rep.generators.size(); ++g) {
    const QMatrix& t = rep.generators[g];
    if (t.rows() != ambient)
      throw StratumError(ErrorKind::structure, id,
                         "monodromy generator " + std::to_string(g) + " at " + id + " has size " +
                             std::to_string(t.rows()) + ", middle cohomology has dimension " + std::to_string(ambient));
    if (w.cols() > 0 && !is_invariant(t, w))
      throw FlatnessError(id, g, "subspace at " + id + " is not invariant under monodromy generator " + std::to_string(g));
  }
}

inline std::vector<std::size_t> padded(std::vector<std::size_t> v, std::size_t length) {
  v.resize(length, 0);
  return v;
}

// ---------------------------------------------------------------------------
// Dimension route
// ---------------------------------------------------------------------------

/// Which assembly rule produced a set of dimensions, recursively.
struct ProvenanceNode {
  std::string path;  // stratum id of the node ("" at the root)
  std::string rule;
  std::vector<std::size_t> dims;
  std::vector<ProvenanceNode> children;
};

ProvenanceNode refined_node(const StratifiedSpace& space, const Mezzoperversity& m, const std::string& scope);

inline std::vector<std::size_t> refined_dims(const StratifiedSpace& space, const Mezzoperversity& m,
                                             const std::string& scope = "") {
  return refined_node(space, m, scope).dims;
}

/// dim H^{f/2} of a closed link under the given prior assignments (0 for odd f).
inline std::size_t middle_dimension(const StratifiedSpace& link, const Mezzoperversity& prior,
                                    const std::string& scope = "") {
  const std::size_t f = link.dimension();
  if (f % 2 == 1) return 0;
  return refined_dims(link, prior, scope)[f / 2];
}

/// Cone formula: H^k = H^k(Z) for k < f/2, W at k = f/2, 0 above.
inline std::vector<std::size_t> cone_dims_from(const std::vector<std::size_t>& link_dims, std::size_t f,
                                               const QMatrix& kept) {
  const ConeShape shape = cone_shape(f);
  std::vector<std::size_t> out(f + 1, 0);
  for (std::size_t q = 0; q < shape.truncation; ++q) out[q] = link_dims[q];
  out[shape.truncation] = kept.cols();
  return out;
}

inline std::vector<std::size_t> cone_cohomology(const StratifiedSpace& link, const Mezzoperversity& prior,
                                                const QMatrix* w, const std::string& id = "cone.apex") {
  const std::size_t f = link.dimension();
  const std::string scope = id.substr(0, id.rfind('.') + 1);
  auto link_dims = refined_dims(link, prior, scope + "link.");
  QMatrix kept = apex_subspace(f, f % 2 ? 0 : link_dims[f / 2], w, id);
  if (f % 2 == 1) kept = QMatrix::identity(link_dims[f / 2]);
  return cone_dims_from(link_dims, f, kept);
}

/// Mayer-Vietoris over the two-cone cover of ΣZ with apex subspaces W₊, W₋.
inline std::vector<std::size_t> suspension_dims_from(const std::vector<std::size_t>& link_dims, std::size_t f,
                                                     const QMatrix& kept_plus, const QMatrix& kept_minus) {
  const ConeShape shape = cone_shape(f);
  auto plus = cone_dims_from(link_dims, f, kept_plus);
  auto minus = cone_dims_from(link_dims, f, kept_minus);
  // rank of restriction H^q(C₊) ⊕ H^q(C₋) -> H^q(Z)
  auto restriction_rank = [&](std::size_t q) -> std::size_t {
    if (q < shape.truncation) return link_dims[q];
    if (q == shape.truncation) return rank(hstack(kept_plus, kept_minus));
    return 0;
  };
  std::vector<std::size_t> out(f + 2, 0);
  for (std::size_t q = 0; q <= f + 1; ++q) {
    std::size_t kernel = q <= f ? plus[q] + minus[q] - restriction_rank(q) : 0;
    std::size_t cokernel = q >= 1 ? link_dims[q - 1] - restriction_rank(q - 1) : 0;
    out[q] = kernel + cokernel;
  }
  return out;
}

inline std::vector<std::size_t> suspension_cohomology(const StratifiedSpace& link, const Mezzoperversity& prior,
                                                      const QMatrix* w_plus, const QMatrix* w_minus,
                                                      const std::string& id = "suspension.poles") {
  const std::size_t f = link.dimension();
  const std::string scope = id.substr(0, id.rfind('.') + 1);
  auto link_dims = refined_dims(link, prior, scope + "link.");
  const std::size_t ambient = link_dims[f / 2];
  QMatrix plus = apex_subspace(f, f % 2 ? 0 : ambient, w_plus, id);
  QMatrix minus = apex_subspace(f, f % 2 ? 0 : ambient, w_minus, id);
  if (f % 2 == 1) plus = minus = QMatrix::identity(ambient);
  if (plus.rows() == 0) plus = minus = QMatrix(ambient, 0);
  return suspension_dims_from(link_dims, f, plus, minus);
}

/// Künneth over the circle with twisted coefficients: the cone cohomology in
/// the truncation degree carries T restricted to W, every other degree the
/// trivial action.
inline std::vector<std::size_t> bundle_dims_from(const std::vector<std::size_t>& cone_dims, std::size_t f,
                                                 const QMatrix& kept, const MonodromyRep& rep) {
  if (rep.generators.size() != 1)
    throw Error(ErrorKind::unsupported_base, "flat cone bundles are supported over the circle only (one generator), got " +
                                                 std::to_string(rep.generators.size()));
  const ConeShape shape = cone_shape(f);
  std::vector<std::size_t> h0(f + 1), h1(f + 1);
  for (std::size_t q = 0; q <= f; ++q) {
    if (shape.has_middle && q == shape.truncation && kept.cols() > 0) {
      QMatrix restricted = restrict_to(rep.generators.front(), kept);
      TwistedDims t = circle_twisted_cohomology({kept.cols(), {restricted}});
      h0[q] = t.h0;
      h1[q] = t.h1;
    } else {
      h0[q] = h1[q] = cone_dims[q];
    }
  }
  std::vector<std::size_t> out(f + 3, 0);
  for (std::size_t k = 0; k <= f + 2; ++k) {
    if (k <= f) out[k] += h0[k];
    if (k >= 1 && k - 1 <= f) out[k] += h1[k - 1];
  }
  return out;
}

inline std::vector<std::size_t> bundle_cohomology(const StratifiedSpace& link, const Mezzoperversity& prior,
                                                  const MonodromyRep& rep, const QMatrix* w,
                                                  const std::string& id = "bundle.base") {
  const std::size_t f = link.dimension();
  const std::string scope = id.substr(0, id.rfind('.') + 1);
  auto link_dims = refined_dims(link, prior, scope + "link.");
  const std::size_t ambient = f % 2 ? 0 : link_dims[f / 2];
  QMatrix kept = apex_subspace(f, ambient, w, id);
  check_monodromy(rep, ambient, kept, id);
  if (f % 2 == 1) kept = QMatrix::identity(link_dims[f / 2]);
  return bundle_dims_from(cone_dims_from(link_dims, f, kept), f, f % 2 ? QMatrix(0, 0) : kept, rep);
}

inline ProvenanceNode refined_node(const StratifiedSpace& space, const Mezzoperversity& m, const std::string& scope) {
  ProvenanceNode node;
  node.path = scope;
  if (space.kind() == SpaceKind::closed) {
    node.rule = "closed: simplicial cohomology";
    node.dims = betti_numbers(space.complex());
    return node;
  }
  const SpacePtr& link = space.link();
  const std::size_t f = link->dimension();
  const std::string id = scope + space.own_stratum_id();
  const std::string link_scope = scope + space.link_prefix();
  ProvenanceNode child = refined_node(*link, m.restricted(space.link_prefix()), link_scope);
  const auto& link_dims = child.dims;
  const std::size_t ambient = f % 2 ? 0 : link_dims[f / 2];
  const QMatrix* w = m.find(space.own_stratum_id());
  QMatrix kept = apex_subspace(f, ambient, w, id);
  if (f % 2 == 1) kept = QMatrix::identity(link_dims[f / 2]);
  if (kept.rows() == 0 && kept.cols() == 0) kept = QMatrix(ambient, 0);
  node.path = id;

  switch (space.kind()) {
    case SpaceKind::cone:
      node.rule = "cone: truncation formula";
      node.dims = cone_dims_from(link_dims, f, kept);
      break;
    case SpaceKind::suspension:
      node.rule = "suspension: Mayer-Vietoris";
      node.dims = suspension_dims_from(link_dims, f, kept, kept);
      break;
    case SpaceKind::flat_cone_bundle:
      check_monodromy(space.monodromy(), ambient, f % 2 ? QMatrix(0, 0) : kept, id);
      node.rule = "flat_cone_bundle: Wang sequence over the circle (circle-base extension of the product formula)";
      node.dims = bundle_dims_from(cone_dims_from(link_dims, f, kept), f, f % 2 ? QMatrix(0, 0) : kept,
                                   space.monodromy());
      break;
    case SpaceKind::closed: break;
  }
  node.children.push_back(std::move(child));
  return node;
}

// ---------------------------------------------------------------------------
// Chain route
// ---------------------------------------------------------------------------

/// Truncation of a link complex C at degree t: C^q below t, d(C^{t-1}) plus
/// cocycle lifts of a basis of V ⊆ H^t(C) in degree t, zero above. It is a
/// subcomplex of C; inclusion[q] holds a basis of R^q in C^q coordinates.
struct TruncatedComplex {
  CochainComplex complex;
  std::vector<QMatrix> inclusion;
  std::size_t truncation_degree = 0;
  std::size_t exact_part = 0;  // leading columns of inclusion[t] spanning d(C^{t-1})
};

inline TruncatedComplex truncate(const CochainComplex& link, std::size_t t, const QMatrix& kept) {
  if (t >= link.length()) throw Error(ErrorKind::range, "truncation degree out of range");
  CohomologyBasis basis = cohomology_basis(link, t);
  if (kept.cols() > 0 && kept.rows() != basis.betti)
    throw Error(ErrorKind::structure, "subspace does not live in degree-" + std::to_string(t) + " cohomology");
  TruncatedComplex r;
  r.truncation_degree = t;
  const std::size_t len = link.length();
  r.inclusion.resize(len);
  for (std::size_t q = 0; q < t; ++q) r.inclusion[q] = QMatrix::identity(link.dims[q]);
  QMatrix exact = column_space(link.incoming(t));
  if (exact.rows() != link.dims[t]) exact = QMatrix(link.dims[t], 0);
  r.exact_part = exact.cols();
  QMatrix lifts = kept.cols() > 0 ? basis.representatives * kept : QMatrix(link.dims[t], 0);
  r.inclusion[t] = hstack(exact, lifts);
  if (r.inclusion[t].rows() != link.dims[t]) r.inclusion[t] = QMatrix(link.dims[t], 0);
  for (std::size_t q = t + 1; q < len; ++q) r.inclusion[q] = QMatrix(link.dims[q], 0);

  for (std::size_t q = 0; q < len; ++q) r.complex.dims.push_back(r.inclusion[q].cols());
  for (std::size_t q = 0; q + 1 < len; ++q) {
    if (q + 1 < t) {
      r.complex.d.push_back(link.d[q]);
    } else if (q + 1 == t) {
      auto x = solve(r.inclusion[t], link.d[q]);
      if (!x) throw Error(ErrorKind::consistency, "truncated complex is not closed under d");
      r.complex.d.push_back(*x);
    } else {
      r.complex.d.push_back(QMatrix(r.complex.dims[q + 1], r.complex.dims[q]));
    }
  }
  return r;
}

namespace detail {

inline std::size_t dim_at(const CochainComplex& c, long q) {
  return (q < 0 || q >= static_cast<long>(c.length())) ? 0 : c.dims[static_cast<std::size_t>(q)];
}

/// d_q of c as a dims(q+1) x dims(q) matrix, zero outside the range.
inline QMatrix d_at(const CochainComplex& c, long q) {
  const std::size_t rows = dim_at(c, q + 1), cols = dim_at(c, q);
  if (q < 0 || q + 1 >= static_cast<long>(c.length())) return QMatrix(rows, cols);
  return c.d[static_cast<std::size_t>(q)];
}

inline QMatrix block_at(const std::vector<QMatrix>& blocks, const CochainComplex& c, const CochainComplex& ambient, long q) {
  if (q < 0 || q >= static_cast<long>(blocks.size())) return QMatrix(dim_at(ambient, q), dim_at(c, q));
  return blocks[static_cast<std::size_t>(q)];
}

inline CochainComplex pad(CochainComplex c, std::size_t length) {
  while (c.length() < length) {
    std::size_t last = c.dims.empty() ? 0 : c.dims.back();
    c.dims.push_back(0);
    if (c.dims.size() > 1) c.d.push_back(QMatrix(0, last));
  }
  return c;
}

}  // namespace detail

CochainComplex chain_model(const StratifiedSpace& space, const Mezzoperversity& m, const std::string& scope = "");

/// Double complex of ΣZ = C₊ ∪ C₋ glued along Z:
/// Tot^k = R₊^k ⊕ R₋^k ⊕ C^{k-1}(Z), D(a, b, c) = (da, db, a − b − dc).
inline CochainComplex mayer_vietoris_complex(const CochainComplex& link, const TruncatedComplex& plus,
                                             const TruncatedComplex& minus) {
  const long f = static_cast<long>(link.length()) - 1;
  const CochainComplex& rp = plus.complex;
  const CochainComplex& rm = minus.complex;
  CochainComplex tot;
  for (long k = 0; k <= f + 1; ++k)
    tot.dims.push_back(detail::dim_at(rp, k) + detail::dim_at(rm, k) + detail::dim_at(link, k - 1));
  for (long k = 0; k <= f; ++k) {
    const std::size_t p1 = detail::dim_at(rp, k + 1), m1 = detail::dim_at(rm, k + 1);
    const std::size_t p0 = detail::dim_at(rp, k), m0 = detail::dim_at(rm, k);
    QMatrix dk(tot.dims[static_cast<std::size_t>(k + 1)], tot.dims[static_cast<std::size_t>(k)]);
    dk.set_block(0, 0, detail::d_at(rp, k));
    dk.set_block(p1, p0, detail::d_at(rm, k));
    dk.set_block(p1 + m1, 0, detail::block_at(plus.inclusion, rp, link, k));
    QMatrix minus_incl = detail::block_at(minus.inclusion, rm, link, k);
    dk.set_block(p1 + m1, p0, Rational(-1) * minus_incl);
    dk.set_block(p1 + m1, p0 + m0, Rational(-1) * detail::d_at(link, k - 1));
    tot.d.push_back(std::move(dk));
  }
  return tot;
}

/// Wang mapping cone of T̃ − I on the truncated cone complex:
/// Tot^k = R^k ⊕ R^{k-1}, D(a, b) = (da, (T̃ − I)a − db). T̃ is the chain map
/// that is the identity off the lifted-W block and acts by T|_W on it.
inline CochainComplex wang_complex(const TruncatedComplex& cone, const QMatrix& restricted_action) {
  const CochainComplex& r = cone.complex;
  const long f = static_cast<long>(r.length()) - 1;
  const long t = static_cast<long>(cone.truncation_degree);
  auto action_minus_identity = [&](long q) {
    const std::size_t n = detail::dim_at(r, q);
    QMatrix a(n, n);
    if (q == t && restricted_action.cols() > 0) {
      QMatrix block = restricted_action - QMatrix::identity(restricted_action.rows());
      a.set_block(cone.exact_part, cone.exact_part, block);
    }
    return a;
  };
  CochainComplex tot;
  for (long k = 0; k <= f + 1; ++k) tot.dims.push_back(detail::dim_at(r, k) + detail::dim_at(r, k - 1));
  for (long k = 0; k <= f; ++k) {
    const std::size_t r1 = detail::dim_at(r, k + 1), r0 = detail::dim_at(r, k);
    QMatrix dk(tot.dims[static_cast<std::size_t>(k + 1)], tot.dims[static_cast<std::size_t>(k)]);
    dk.set_block(0, 0, detail::d_at(r, k));
    dk.set_block(r1, 0, action_minus_identity(k));
    dk.set_block(r1, r0, Rational(-1) * detail::d_at(r, k - 1));
    tot.d.push_back(std::move(dk));
  }
  return tot;
}

/// Apex data computed on the chain route: the kept subspace, validated against
/// the chain-level middle cohomology of the link model.
inline QMatrix chain_apex_subspace(const CochainComplex& link_model, const QMatrix* w, const std::string& id) {
  const std::size_t f = link_model.length() - 1;
  const ConeShape shape = cone_shape(f);
  const std::size_t ambient = cohomology_dims(link_model)[shape.truncation];
  QMatrix kept = apex_subspace(f, shape.has_middle ? ambient : 0, w, id);
  if (!shape.has_middle) kept = QMatrix::identity(ambient);
  if (kept.rows() == 0 && kept.cols() == 0) kept = QMatrix(ambient, 0);
  return kept;
}

inline CochainComplex chain_model(const StratifiedSpace& space, const Mezzoperversity& m, const std::string& scope) {
  if (space.kind() == SpaceKind::closed) return cochain_complex(space.complex());
  const SpacePtr& link = space.link();
  const std::size_t f = link->dimension();
  const std::string id = scope + space.own_stratum_id();
  CochainComplex link_model = chain_model(*link, m.restricted(space.link_prefix()), scope + space.link_prefix());
  QMatrix kept = chain_apex_subspace(link_model, m.find(space.own_stratum_id()), id);
  TruncatedComplex cone = truncate(link_model, cone_shape(f).truncation, kept);

  switch (space.kind()) {
    case SpaceKind::cone: return cone.complex;
    case SpaceKind::suspension: return mayer_vietoris_complex(link_model, cone, cone);
    case SpaceKind::flat_cone_bundle: {
      const MonodromyRep& rep = space.monodromy();
      const std::size_t ambient = cone_shape(f).has_middle ? kept.rows() : 0;
      check_monodromy(rep, ambient, cone_shape(f).has_middle ? kept : QMatrix(0, 0), id);
      if (rep.generators.size() != 1)
        throw Error(ErrorKind::unsupported_base, "flat cone bundles are supported over the circle only");
      QMatrix action = cone_shape(f).has_middle && kept.cols() > 0 ? restrict_to(rep.generators.front(), kept)
                                                                  : QMatrix(0, 0);
      return detail::pad(wang_complex(cone, action), f + 3);
    }
    case SpaceKind::closed: break;
  }
  return {};
}

/// Truncated complex of the cone over a link with apex subspace W (chain route).
inline TruncatedComplex cone_complex(const StratifiedSpace& link, const Mezzoperversity& prior, const QMatrix* w,
                                     const std::string& id = "cone.apex") {
  CochainComplex link_model = chain_model(link, prior, "cone.link.");
  QMatrix kept = chain_apex_subspace(link_model, w, id);
  return truncate(link_model, cone_shape(link.dimension()).truncation, kept);
}

/// Chain-route dimensions, truncated to the reported degree range.
inline std::vector<std::size_t> chain_dims(const StratifiedSpace& space, const Mezzoperversity& m) {
  auto dims = cohomology_dims(chain_model(space, m));
  std::size_t length = space.kind() == SpaceKind::cone ? space.dimension() : space.dimension() + 1;
  return padded(dims, length);
}

/// Suspension with possibly different subspaces at the two poles (chain route).
inline std::vector<std::size_t> suspension_chain_dims(const StratifiedSpace& link, const Mezzoperversity& prior,
                                                      const QMatrix* w_plus, const QMatrix* w_minus) {
  CochainComplex link_model = chain_model(link, prior, "suspension.link.");
  const std::size_t t = cone_shape(link.dimension()).truncation;
  TruncatedComplex plus = truncate(link_model, t, chain_apex_subspace(link_model, w_plus, "suspension.poles"));
  TruncatedComplex minus = truncate(link_model, t, chain_apex_subspace(link_model, w_minus, "suspension.poles"));
  return cohomology_dims(mayer_vietoris_complex(link_model, plus, minus));
}

/// Refined cohomology with the rule tree that produced it.
struct RefinedCohomology {
  std::vector<std::size_t> dims;
  ProvenanceNode provenance;
  bool chain_checked = false;
};

/// Dimension route, cross-checked against the chain route unless disabled.
/// A disagreement between the two is a consistency error.
inline RefinedCohomology refined_cohomology(const StratifiedSpace& space, const Mezzoperversity& m,
                                            bool cross_check = true) {
  RefinedCohomology out;
  out.provenance = refined_node(space, m, "");
  out.dims = out.provenance.dims;
  if (cross_check) {
    auto chain = chain_dims(space, m);
    if (chain != out.dims) throw Error(ErrorKind::consistency, "chain-level and dimension-level refined cohomology disagree");
    out.chain_checked = true;
  }
  return out;
}

}  // namespace mezzo::refined
