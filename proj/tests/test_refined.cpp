#include <numeric>

#include <gtest/gtest.h>

#include "mezzo/catalog.hpp"
#include "mezzo/refined.hpp"
#include "support.hpp"

using namespace mezzo;
using refined::refined_cohomology;

namespace {

SpacePtr closed(const SimplicialComplex& k) { return StratifiedSpace::closed(k); }
SpacePtr torus() { return closed(catalog::torus7()); }

Mezzoperversity assign(const std::string& id, const QMatrix& w) {
  Mezzoperversity m;
  m.assignments[id] = w;
  return m;
}

long euler(const std::vector<std::size_t>& dims) {
  long e = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) e += (k % 2 == 0 ? 1 : -1) * static_cast<long>(dims[k]);
  return e;
}

std::vector<std::size_t> pad(std::vector<std::size_t> v, std::size_t n) {
  v.resize(n, 0);
  return v;
}

// W as columns in cohomology coordinates, lifted to cocycles of the link.
QMatrix lifts_of(const SimplicialComplex& link, std::size_t t, const QMatrix& w) {
  CochainComplex c = cochain_complex(link);
  if (w.cols() == 0) return QMatrix(c.dims[t], 0);
  return cohomology_basis(c, t).representatives * w;
}

// Chain-level T̃ on the oracle truncation: identity except on the lift block.
std::vector<QMatrix> chain_action(const oracle::Truncation& r, std::size_t t, const QMatrix& restricted) {
  std::vector<QMatrix> out;
  for (std::size_t q = 0; q < r.complex.length(); ++q) {
    QMatrix a = QMatrix::identity(r.complex.dims[q]);
    if (q == t && restricted.cols() > 0) a.set_block(r.exact, r.exact, restricted);
    out.push_back(a);
  }
  return out;
}

std::vector<QMatrix> lines_in_plane() {
  return {QMatrix(2, 0), QMatrix::from_int_rows({{1}, {0}}), QMatrix::from_int_rows({{0}, {1}}),
          QMatrix::from_int_rows({{2}, {-3}}), QMatrix::identity(2)};
}

}  // namespace

TEST(ConeFormula, TorusWithLineAndExtremes) {
  auto cone = StratifiedSpace::cone(torus());
  EXPECT_EQ(refined_cohomology(*cone, assign("cone.apex", QMatrix::from_int_rows({{1}, {0}}))).dims,
            (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_EQ(refined_cohomology(*cone, assign("cone.apex", QMatrix(2, 0))).dims, (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(refined_cohomology(*cone, assign("cone.apex", QMatrix::identity(2))).dims,
            (std::vector<std::size_t>{1, 2, 0}));
}

TEST(ConeFormula, OddLinkKeepsMiddleDegree) {
  auto cone = StratifiedSpace::cone(closed(catalog::circle()));
  EXPECT_EQ(refined_cohomology(*cone, {}).dims, (std::vector<std::size_t>{1, 0}));
  auto deep = StratifiedSpace::cone(StratifiedSpace::suspension(torus()));
  auto full = refined_cohomology(*deep, assign("cone.link.suspension.poles", QMatrix::identity(2))).dims;
  EXPECT_EQ(full, (std::vector<std::size_t>{1, 2, 0, 0}));
}

TEST(ConeFormula, AssignmentAtOddLinkIsSuperfluous) {
  auto cone = StratifiedSpace::cone(closed(catalog::circle()));
  try {
    refined_cohomology(*cone, assign("cone.apex", QMatrix::identity(1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::superfluous_assignment);
  }
}

TEST(ConeFormula, AgreesWithOracleTruncationForEveryLine) {
  for (const auto& link : {catalog::torus7(), barycentric_subdivision(catalog::circle())}) {
    const std::size_t f = static_cast<std::size_t>(link.dimension());
    auto cone = StratifiedSpace::cone(closed(link));
    if (f % 2 == 1) {
      auto t = oracle::truncation(cochain_complex(link), f / 2, lifts_of(link, f / 2, QMatrix::identity(betti_numbers(link)[f / 2])));
      EXPECT_EQ(refined_cohomology(*cone, {}).dims, oracle::cohomology_dims(t.complex));
      continue;
    }
    for (const auto& w : lines_in_plane()) {
      auto t = oracle::truncation(cochain_complex(link), f / 2, lifts_of(link, f / 2, w));
      EXPECT_EQ(refined_cohomology(*cone, assign("cone.apex", w)).dims, oracle::cohomology_dims(t.complex));
    }
  }
}

TEST(ConeFormula, MonotoneInTheSubspace) {
  auto cone = StratifiedSpace::cone(closed(catalog::s2_x_s2()));
  const QMatrix small = QMatrix::from_int_rows({{1}, {1}});
  const QMatrix big = QMatrix::identity(2);
  auto a = refined_cohomology(*cone, assign("cone.apex", QMatrix(2, 0))).dims;
  auto b = refined_cohomology(*cone, assign("cone.apex", small)).dims;
  auto c = refined_cohomology(*cone, assign("cone.apex", big)).dims;
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_LE(a[k], b[k]);
    EXPECT_LE(b[k], c[k]);
  }
}

TEST(Suspension, TorusDimensions) {
  auto s = StratifiedSpace::suspension(torus());
  EXPECT_EQ(refined_cohomology(*s, assign("suspension.poles", QMatrix(2, 0))).dims, (std::vector<std::size_t>{1, 0, 2, 1}));
  EXPECT_EQ(refined_cohomology(*s, assign("suspension.poles", QMatrix::from_int_rows({{1}, {0}}))).dims,
            (std::vector<std::size_t>{1, 1, 1, 1}));
  EXPECT_EQ(refined_cohomology(*s, assign("suspension.poles", QMatrix::identity(2))).dims,
            (std::vector<std::size_t>{1, 2, 0, 1}));
}

TEST(Suspension, ZeroSubspaceIsOrdinaryCohomologyOfSimplicialSuspension) {
  for (const auto& link : {catalog::torus7(), catalog::octahedron(), catalog::circle()}) {
    auto s = StratifiedSpace::suspension(closed(link));
    const std::size_t f = static_cast<std::size_t>(link.dimension());
    Mezzoperversity m;
    if (f % 2 == 0 && betti_numbers(link)[f / 2] > 0) m = assign("suspension.poles", QMatrix(betti_numbers(link)[f / 2], 0));
    const int n = static_cast<int>(link.vertices().size());
    auto expected = oracle::betti(oracle::suspension(oracle::raw_maximal(link), n, n + 1));
    EXPECT_EQ(refined_cohomology(*s, m).dims, expected);
  }
}

TEST(Suspension, DifferentPolesMatchOracleDoubleComplex) {
  const auto link = catalog::torus7();
  auto s = closed(link);
  for (const auto& wp : lines_in_plane())
    for (const auto& wm : lines_in_plane()) {
      auto chain = refined::suspension_chain_dims(*s, {}, &wp, &wm);
      auto dims = refined::suspension_cohomology(*s, {}, &wp, &wm);
      EXPECT_EQ(chain, dims);
      // χ(ΣZ) = χ(C₊) + χ(C₋) − χ(Z)
      auto cp = refined::cone_dims_from(betti_numbers(link), 2, wp);
      auto cm = refined::cone_dims_from(betti_numbers(link), 2, wm);
      EXPECT_EQ(euler(dims), euler(cp) + euler(cm) - euler(betti_numbers(link)));
    }
}

TEST(Suspension, DepthTwoConeOverSuspension) {
  auto space = StratifiedSpace::cone(StratifiedSpace::suspension(torus()));
  auto r = refined_cohomology(*space, assign("cone.link.suspension.poles", QMatrix::from_int_rows({{1}, {0}})));
  EXPECT_EQ(r.dims, (std::vector<std::size_t>{1, 1, 0, 0}));
  EXPECT_TRUE(r.chain_checked);
  ASSERT_EQ(r.provenance.children.size(), 1u);
  EXPECT_EQ(r.provenance.path, "cone.apex");
  EXPECT_EQ(r.provenance.children[0].path, "cone.link.suspension.poles");
}

TEST(Suspension, ChainAndDimensionRoutesAgreeOnDepthThreeSpaces) {
  gen::Source src(51);
  auto inner = torus();
  for (int trial = 0; trial < 6; ++trial) {
    QMatrix w = src.subspace(2, static_cast<std::size_t>(src.integer(0, 2)));
    auto space = StratifiedSpace::cone(StratifiedSpace::suspension(StratifiedSpace::suspension(inner)));
    Mezzoperversity m = assign("cone.link.suspension.link.suspension.poles", w);
    // suspending the odd-dimensional ΣT² empties the middle degree, so the apex is Witt
    auto link_dims = refined::refined_dims(*space->link(), m.restricted("cone.link."), "cone.link.");
    EXPECT_EQ(link_dims[2], 0u);
    auto r = refined_cohomology(*space, m);
    EXPECT_TRUE(r.chain_checked);
  }
}

TEST(Bundle, TrivialAndSwapMonodromy) {
  auto trivial = StratifiedSpace::flat_cone_bundle(torus(), MonodromyRep{{QMatrix::identity(2)}});
  auto swap = StratifiedSpace::flat_cone_bundle(torus(), MonodromyRep{{QMatrix::from_int_rows({{0, 1}, {1, 0}})}});
  auto minus = StratifiedSpace::flat_cone_bundle(torus(), MonodromyRep{{QMatrix::from_int_rows({{-1, 0}, {0, -1}})}});
  EXPECT_EQ(refined_cohomology(*trivial, assign("bundle.base", QMatrix::from_int_rows({{1}, {0}}))).dims,
            (std::vector<std::size_t>{1, 2, 1, 0, 0}));
  EXPECT_EQ(refined_cohomology(*swap, assign("bundle.base", QMatrix::from_int_rows({{1}, {1}}))).dims,
            (std::vector<std::size_t>{1, 2, 1, 0, 0}));
  EXPECT_EQ(refined_cohomology(*minus, assign("bundle.base", QMatrix::from_int_rows({{1}, {0}}))).dims,
            (std::vector<std::size_t>{1, 1, 0, 0, 0}));
  EXPECT_EQ(refined_cohomology(*swap, assign("bundle.base", QMatrix::from_int_rows({{1}, {-1}}))).dims,
            (std::vector<std::size_t>{1, 1, 0, 0, 0}));
}

TEST(Bundle, AgreesWithBruteForceWangOverTriangle) {
  const auto link = catalog::torus7();
  const CochainComplex c = cochain_complex(link);
  const std::vector<std::pair<QMatrix, QMatrix>> cases = {
      {QMatrix::identity(2), QMatrix::from_int_rows({{1}, {0}})},
      {QMatrix::identity(2), QMatrix::identity(2)},
      {QMatrix::from_int_rows({{0, 1}, {1, 0}}), QMatrix::from_int_rows({{1}, {1}})},
      {QMatrix::from_int_rows({{0, 1}, {1, 0}}), QMatrix::from_int_rows({{1}, {-1}})},
      {QMatrix::from_int_rows({{0, 1}, {1, 0}}), QMatrix::identity(2)},
      {QMatrix::from_int_rows({{2, 1}, {1, 1}}), QMatrix::identity(2)},
      {QMatrix::from_int_rows({{3, 0}, {0, 1}}), QMatrix::from_int_rows({{1}, {0}})},
      {QMatrix::from_int_rows({{1, 1}, {0, 1}}), QMatrix::from_int_rows({{1}, {0}})},
      {QMatrix::from_int_rows({{-1, 0}, {0, -1}}), QMatrix(2, 0)},
  };
  for (const auto& [t, w] : cases) {
    auto space = StratifiedSpace::flat_cone_bundle(torus(), MonodromyRep{{t}});
    auto dims = refined_cohomology(*space, assign("bundle.base", w)).dims;
    auto r = oracle::truncation(c, 1, lifts_of(link, 1, w));
    QMatrix restricted = w.cols() == 0 ? QMatrix(0, 0) : restrict_to(t, w);
    auto brute = oracle::bundle_over_triangle(r.complex, chain_action(r, 1, restricted));
    EXPECT_EQ(dims, pad(brute, dims.size()));
  }
}

TEST(Bundle, OddLinkIgnoresMonodromyOnEmptyMiddle) {
  auto space = StratifiedSpace::flat_cone_bundle(closed(catalog::circle()), MonodromyRep{{QMatrix(0, 0)}});
  auto dims = refined_cohomology(*space, {}).dims;
  auto r = oracle::truncation(cochain_complex(catalog::circle()), 0, lifts_of(catalog::circle(), 0, QMatrix::identity(1)));
  auto brute = oracle::bundle_over_triangle(r.complex, chain_action(r, 0, QMatrix(0, 0)));
  EXPECT_EQ(dims, pad(brute, dims.size()));
}

TEST(Bundle, TwoGeneratorsIsUnsupportedBase) {
  auto space = StratifiedSpace::flat_cone_bundle(torus(), MonodromyRep{{QMatrix::identity(2), QMatrix::identity(2)}});
  try {
    refined_cohomology(*space, assign("bundle.base", QMatrix::identity(2)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::unsupported_base);
  }
}

TEST(Bundle, NonInvariantSubspaceIsFlatnessError) {
  auto space = StratifiedSpace::flat_cone_bundle(torus(), MonodromyRep{{QMatrix::from_int_rows({{0, 1}, {1, 0}})}});
  try {
    refined_cohomology(*space, assign("bundle.base", QMatrix::from_int_rows({{1}, {0}})));
    FAIL();
  } catch (const FlatnessError& e) {
    EXPECT_EQ(e.generator(), 0u);
  }
}

TEST(Truncation, IsASubcomplexWithExpectedCohomology) {
  gen::Source src(52);
  const CochainComplex c = cochain_complex(catalog::s2_x_s2());
  for (int trial = 0; trial < 5; ++trial) {
    QMatrix w = src.subspace(2, static_cast<std::size_t>(src.integer(0, 2)));
    auto r = refined::truncate(c, 2, w);
    EXPECT_TRUE(r.complex.squares_to_zero());
    for (std::size_t q = 0; q + 1 < c.length(); ++q)
      EXPECT_EQ(c.d[q] * r.inclusion[q], r.inclusion[q + 1] * r.complex.d[q]);
    auto dims = oracle::cohomology_dims(r.complex);
    EXPECT_EQ(dims, (std::vector<std::size_t>{1, 0, w.cols(), 0, 0}));
  }
}
