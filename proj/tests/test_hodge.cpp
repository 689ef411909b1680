#include <cmath>

#include <gtest/gtest.h>

#include "mezzo/catalog.hpp"
#include "mezzo/duality.hpp"
#include "mezzo/hodge.hpp"
#include "support.hpp"

using namespace mezzo;
using hodge::InnerProductFamily;

namespace {

std::vector<SimplicialComplex> closed_fixtures() {
  return {catalog::circle(), catalog::octahedron(), catalog::torus7(), product(catalog::circle(), catalog::circle()),
          barycentric_subdivision(catalog::circle())};
}

InnerProductFamily random_diagonal(gen::Source& src, const CochainComplex& c) {
  return InnerProductFamily::diagonal(src.weights(c.dims));
}

InnerProductFamily random_dense(gen::Source& src, const CochainComplex& c) {
  std::vector<Eigen::MatrixXd> grams;
  for (auto n : c.dims) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = src.real(-0.3, 0.3);
    Eigen::MatrixXd g = a * a.transpose() + Eigen::MatrixXd::Identity(a.rows(), a.cols());
    grams.push_back(g);
  }
  return InnerProductFamily::custom(grams);
}

}  // namespace

TEST(InnerProduct, RejectsNonPositiveWeightsAndIndefiniteGrams) {
  try {
    InnerProductFamily::diagonal({{1.0, 0.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::metric);
  }
  Eigen::MatrixXd bad(2, 2);
  bad << 1, 2, 2, 1;
  EXPECT_THROW(InnerProductFamily::custom({bad}), Error);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.5, 0, 1;
  EXPECT_THROW(InnerProductFamily::custom({asym}), Error);
}

TEST(Laplacian, TriangleDegreeZeroSpectrum) {
  auto row = hodge::spectrum(catalog::circle(), InnerProductFamily::identity({3, 3}), 0);
  ASSERT_EQ(row.eigenvalues.size(), 3u);
  EXPECT_EQ(row.eigenvalues[0], 0.0);
  EXPECT_NEAR(row.eigenvalues[1], 3.0, 1e-12);
  EXPECT_NEAR(row.eigenvalues[2], 3.0, 1e-12);
}

TEST(Laplacian, ConstantsAreHarmonic) {
  gen::Source src(31);
  for (const auto& k : closed_fixtures()) {
    CochainComplex c = cochain_complex(k);
    auto ip = random_diagonal(src, c);
    Eigen::MatrixXd lap = hodge::laplacian(c, ip, 0);
    Eigen::VectorXd one = Eigen::VectorXd::Ones(lap.rows());
    EXPECT_LT((lap * one).norm(), 1e-10);
  }
}

TEST(Laplacian, SelfAdjointWithRespectToInnerProduct) {
  gen::Source src(32);
  for (const auto& k : closed_fixtures()) {
    CochainComplex c = cochain_complex(k);
    auto ip = random_dense(src, c);
    for (std::size_t deg = 0; deg < c.length(); ++deg) {
      Eigen::MatrixXd ml = ip.at(deg) * hodge::laplacian(c, ip, deg);
      EXPECT_LT((ml - ml.transpose()).norm(), 1e-9 * std::max(1.0, ml.norm()));
    }
  }
}

TEST(Laplacian, KernelDimensionIsBettiForManyMetrics) {
  gen::Source src(33);
  for (const auto& k : closed_fixtures()) {
    CochainComplex c = cochain_complex(k);
    const auto betti = oracle::betti(oracle::raw_maximal(k));
    std::vector<InnerProductFamily> ips = {hodge::identity_for(c), random_diagonal(src, c), random_diagonal(src, c),
                                           random_dense(src, c)};
    for (const auto& ip : ips) EXPECT_EQ(hodge::harmonic_dims(c, ip), betti);
  }
  EXPECT_EQ(hodge::harmonic_dims(cochain_complex(catalog::torus7()), hodge::identity_for(cochain_complex(catalog::torus7())))[1], 2u);
}

TEST(Spectrum, OctahedronDegreeOneHasNoZero) {
  CochainComplex c = cochain_complex(catalog::octahedron());
  auto row = hodge::spectrum(c, hodge::identity_for(c), 1);
  EXPECT_EQ(row.zero_count, 0u);
  EXPECT_GT(row.eigenvalues.front(), 1e-6);
}

TEST(Spectrum, UniformScalingKeepsOrderAndZeros) {
  gen::Source src(34);
  CochainComplex c = cochain_complex(catalog::torus7());
  auto ip = random_diagonal(src, c);
  for (double s : {0.5, 3.0}) {
    auto scaled = ip.scaled(s * s);
    auto rescaled = ip.metric_rescaled(s, 2);
    for (std::size_t k = 0; k < c.length(); ++k) {
      auto a = hodge::spectrum(c, ip, k);
      auto b = hodge::spectrum(c, scaled, k);
      auto r = hodge::spectrum(c, rescaled, k);
      EXPECT_EQ(a.zero_count, b.zero_count);
      EXPECT_EQ(a.zero_count, r.zero_count);
      for (std::size_t i = a.zero_count; i < a.eigenvalues.size(); ++i) {
        EXPECT_NEAR(b.eigenvalues[i] / a.eigenvalues[i], 1.0, 1e-9);
        EXPECT_NEAR(r.eigenvalues[i] / a.eigenvalues[i], 1.0 / (s * s), 1e-9);
      }
    }
  }
}

TEST(Spectrum, MismatchedInnerProductIsMetricError) {
  CochainComplex c = cochain_complex(catalog::circle());
  try {
    hodge::spectrum(c, InnerProductFamily::identity({3}), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::metric);
  }
}

TEST(Kodaira, HarmonicAndExactInputsAreFixed) {
  CochainComplex c = cochain_complex(catalog::torus7());
  auto ip = hodge::identity_for(c);
  Eigen::MatrixXd h = hodge::harmonic_basis(c, ip, 1);
  Eigen::VectorXd u = h.col(0) + 2 * h.col(1);
  auto s = hodge::kodaira_decompose(c, ip, 1, u);
  EXPECT_LT((s.harmonic - u).norm(), 1e-10 * u.norm());
  EXPECT_LT(s.exact.norm(), 1e-10 * u.norm());
  EXPECT_LT(s.coexact.norm(), 1e-10 * u.norm());

  Eigen::VectorXd v = Eigen::VectorXd::LinSpaced(7, 1.0, 7.0);
  Eigen::VectorXd dv = c.d[0].to_eigen() * v;
  auto e = hodge::kodaira_decompose(c, ip, 1, dv);
  EXPECT_LT((e.exact - dv).norm(), 1e-10 * dv.norm());
  EXPECT_LT(e.harmonic.norm(), 1e-10 * dv.norm());
  EXPECT_LT(e.coexact.norm(), 1e-10 * dv.norm());
}

TEST(Kodaira, PythagorasAndIdempotenceOnRandomCochains) {
  gen::Source src(35);
  CochainComplex c = cochain_complex(catalog::torus7());
  auto ip = random_diagonal(src, c);
  const Eigen::MatrixXd& g = ip.at(1);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::VectorXd u(static_cast<Eigen::Index>(c.dims[1]));
    for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = src.real(-1, 1);
    auto s = hodge::kodaira_decompose(c, ip, 1, u);
    auto n2 = [&](const Eigen::VectorXd& x) { return x.dot(g * x); };
    EXPECT_NEAR(n2(s.harmonic) + n2(s.exact) + n2(s.coexact), n2(u), 1e-10 * n2(u));
    EXPECT_LT(s.residual, 1e-10);
    EXPECT_LT(s.orthogonality, 1e-10);
    auto again = hodge::kodaira_decompose(c, ip, 1, s.exact);
    EXPECT_LT((again.exact - s.exact).norm(), 1e-9 * std::max(1.0, s.exact.norm()));
  }
}

TEST(HodgeStar, ConstantMapsToPositiveMultipleOfVolume) {
  const auto k = catalog::octahedron();
  CochainComplex c = cochain_complex(k);
  auto star = hodge::hodge_star_matrix(k, hodge::identity_for(c), 0);
  Eigen::VectorXd one = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(c.dims[0]));
  Eigen::VectorXd image = star.matrix * one;
  auto fc = fundamental_class(k);
  double pairing = 0;
  for (std::size_t i = 0; i < fc.coefficients.size(); ++i) pairing += fc.coefficients[i] * image(static_cast<Eigen::Index>(i));
  EXPECT_GT(pairing, 0.0);
  ASSERT_EQ(star.harmonic_map.rows(), 1);
  EXPECT_GT(std::abs(star.harmonic_map(0, 0)), 1e-9);
}

TEST(HodgeStar, TorusMiddleDegreeSquaresToMinusIdentity) {
  gen::Source src(36);
  const auto k = catalog::torus7();
  CochainComplex c = cochain_complex(k);
  for (const auto& ip : {hodge::identity_for(c), random_diagonal(src, c)}) {
    auto star = hodge::hodge_star_matrix(k, ip, 1);
    Eigen::MatrixXd sq = star.harmonic_map * star.harmonic_map;
    EXPECT_LT((sq + Eigen::MatrixXd::Identity(2, 2)).norm(), 1e-9);
  }
}

TEST(HodgeStar, InvolutionAndPositivityInEveryDegree) {
  gen::Source src(37);
  for (const auto& k : {catalog::octahedron(), catalog::torus7(), catalog::cp2_9()}) {
    CochainComplex c = cochain_complex(k);
    auto ip = random_diagonal(src, c);
    const auto n = static_cast<std::size_t>(k.dimension());
    for (std::size_t deg = 0; deg <= n; ++deg) {
      auto s1 = hodge::hodge_star_matrix(k, ip, deg);
      auto s2 = hodge::hodge_star_matrix(k, ip, n - deg);
      if (s1.harmonic_map.size() == 0) continue;
      const double sign = (deg * (n - deg)) % 2 == 0 ? 1.0 : -1.0;
      Eigen::MatrixXd prod = s2.harmonic_map * s1.harmonic_map;
      EXPECT_LT((prod - sign * Eigen::MatrixXd::Identity(prod.rows(), prod.cols())).norm(), 1e-8);
      // ⟨a ⌣ *a, [K]⟩ > 0 through the rational pairing
      auto q = intersection_form(k, deg);
      Eigen::MatrixXd qd = q.matrix.to_eigen();
      Eigen::MatrixXd form = qd * s1.harmonic_map;
      Eigen::MatrixXd sym = 0.5 * (form + form.transpose());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
      EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
    }
  }
}

TEST(HodgeStar, NonOrientableIsOrientabilityError) {
  CochainComplex c = cochain_complex(catalog::rp2_6());
  try {
    hodge::hodge_star_matrix(catalog::rp2_6(), hodge::identity_for(c), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::orientability);
  }
}
