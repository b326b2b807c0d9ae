#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "gcrkit/catalog.hpp"
#include "gcrkit/error.hpp"
#include "gcrkit/geometry.hpp"
#include "support.hpp"

using namespace gcrkit;
using gcrkit::test::Rng;

namespace {

const std::vector<FamilyTag> kTags{
    FamilyTag::hypercylinder_rotational, FamilyTag::conical_hypercylinder, FamilyTag::so2_x_so2,
    FamilyTag::rotational,               FamilyTag::tangent_cone,          FamilyTag::curve_tube,
    FamilyTag::special_sqrt2,            FamilyTag::product_cylinder,
};

int aligned_column(const PrincipalData& pd, int axis) {
  int best = 0;
  for (int i = 1; i < pd.e.cols(); ++i) {
    if (std::abs(pd.e(axis, i)) > std::abs(pd.e(axis, best))) best = i;
  }
  return best;
}

// Sorted spectrum matches sigma * expected for one global sign sigma.
void expect_spectrum_up_to_sign(const Vec& k, std::vector<double> expected, double tol) {
  std::vector<double> got(k.data(), k.data() + k.size());
  bool matched = false;
  for (double sigma : {1.0, -1.0}) {
    std::vector<double> e = expected;
    for (double& v : e) v *= sigma;
    std::sort(e.begin(), e.end());
    bool ok = true;
    for (std::size_t i = 0; i < e.size(); ++i) ok = ok && std::abs(e[i] - got[i]) < tol;
    matched = matched || ok;
  }
  EXPECT_TRUE(matched) << "spectrum " << k.transpose();
}

}  // namespace

TEST(Geometry, HyperplanePatch) {
  const Immersion m = test::hyperplane();
  const std::vector<double> p{1, 2, 3};
  const PointGeometry pg = point_geometry(m, p);
  Mat jac = Mat::Zero(4, 3);
  jac.topRows(3) = Mat::Identity(3, 3);
  EXPECT_EQ(pg.jac, jac);
  for (const Mat& s : pg.second) EXPECT_EQ(s, Mat::Zero(3, 3));
  EXPECT_EQ(pg.metric, Mat::Identity(3, 3));
  Vec n(4);
  n << 0, 0, 0, 1;
  EXPECT_EQ(pg.normal, n);
  EXPECT_EQ(pg.h, Mat::Zero(3, 3));
  EXPECT_EQ(pg.shape, Mat::Zero(3, 3));
  const PrincipalData pd = principal_data(pg);
  EXPECT_EQ(pd.k, Vec::Zero(3));
  EXPECT_EQ(pd.distinct_count, 1);
  EXPECT_EQ(codazzi_residual(m, p), 0.0);
  EXPECT_EQ(gauss_residual(m, p), 0.0);
}

TEST(Geometry, BundleOrderRange) {
  const Immersion m = test::so2_generic();
  const std::vector<double> p{0.7, 1.1, 0.4};
  EXPECT_THROW(geometry_jets(m, p, 1), ArgumentError);
  EXPECT_THROW(geometry_jets(m, p, 5), ArgumentError);
  const GeometryJets a = geometry_jets(m, p, 3), b = geometry_jets(m, p, 4);
  EXPECT_EQ(b.h[0][0].order(), 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(a.h[i][j].value(), b.h[i][j].value(), 1e-14);
      EXPECT_NEAR(a.gamma[0][i][j].grad(1), b.gamma[0][i][j].grad(1), 1e-13);
    }
  EXPECT_NEAR(codazzi_residual(b), 0.0, 1e-10);
}

TEST(Geometry, EvaluateJetsChecksDomain) {
  const Immersion m = test::hyperplane();
  EXPECT_THROW(evaluate_jets(m, std::vector<double>{0, 2, 3}, 2), ArgumentError);
  const auto jets = evaluate_jets(m, std::vector<double>{1, 2, 3}, 3);
  EXPECT_EQ(jets.size(), 4u);
  EXPECT_EQ(jets[1].grad(1), 1.0);
}

TEST(Geometry, DomainErrorCarriesChartPoint) {
  const Immersion m = make_raw("log", {"s", "t", "u"}, test::exprs({"s", "t", "u", "log(s-1)"}, {"s", "t", "u"}),
                               {{0, 2}, {0, 1}, {0, 1}});
  try {
    evaluate_jets(m, std::vector<double>{0.5, 0.5, 0.5}, 2);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.point(), (std::vector<double>{0.5, 0.5, 0.5}));
  }
}

TEST(Geometry, So2PositionAtOrigin) {
  FamilySpec spec;
  spec.tag = FamilyTag::so2_x_so2;
  spec.profile = test::profile("cos(s)", "sin(s)");
  spec.domain = {{-1, 1}, {-1, 1}, {-1, 1}};
  const Immersion m = make_family(spec);
  const Vec x = m.position(std::vector<double>{0, 0, 0});
  EXPECT_EQ(x, (Vec(4) << 1, 0, 0, 0).finished());
}

TEST(Geometry, So2MetricIsDiagonal) {
  const Immersion m = test::so2_torus();
  Rng rng(41);
  for (int i = 0; i < 20; ++i) {
    const auto p = test::random_point(m.domain(), rng);
    const double f = 2 + std::cos(p[0]), g = std::sin(p[0]);
    Mat expected = Mat::Zero(3, 3);
    expected.diagonal() << 1, f * f, g * g;
    EXPECT_LT((point_geometry(m, p).metric - expected).norm(), 1e-13);
  }
}

TEST(Geometry, HypercylinderMetricForUnitSpeedProfile) {
  const Immersion m = test::torus_hypercylinder();
  Rng rng(42);
  for (int i = 0; i < 20; ++i) {
    const auto p = test::random_point(m.domain(), rng);
    const double f = 2 + std::cos(p[0]);
    Mat expected = Mat::Zero(3, 3);
    expected.diagonal() << 1, f * f, 1;
    EXPECT_LT((point_geometry(m, p).metric - expected).norm(), 1e-13);
  }
}

TEST(Geometry, HypercylinderSpectrum) {
  // Unit-speed profile (2 + cos s, sin s): curvature 1, parallel curvature g'/f, flat factor 0.
  const Immersion m = test::torus_hypercylinder();
  for (double s : {0.4, 1.0, 2.5}) {
    const PrincipalData pd = principal_data(point_geometry(m, std::vector<double>{s, 0.7, 0.2}));
    expect_spectrum_up_to_sign(pd.k, {1.0, std::cos(s) / (2 + std::cos(s)), 0.0}, 1e-12);
  }
}

TEST(Geometry, Sqrt2SpectrumIsSymmetric) {
  const Immersion m = test::special_sqrt2();
  const PrincipalData pd = principal_data(point_geometry(m, std::vector<double>{1, 0, 0}));
  EXPECT_NEAR(pd.k(1), 0.0, 1e-14);
  EXPECT_GT(pd.k(2), 0.0);
  EXPECT_NEAR(pd.k(0), -pd.k(2), 1e-14);
}

TEST(Geometry, So2SpectrumAtPiOverThree) {
  // Unit-speed profile f = 2 + cos s, g = sin s has kappa = 1; the other two are -f'/g and g'/f.
  const Immersion m = test::so2_torus();
  const double s = std::numbers::pi / 3;
  const PrincipalData pd = principal_data(point_geometry(m, std::vector<double>{s, 0.4, 0.9}));
  const double f = 2 + std::cos(s), g = std::sin(s), fp = -std::sin(s), gp = std::cos(s);
  expect_spectrum_up_to_sign(pd.k, {1.0, -fp / g, gp / f}, 1e-12);
}

TEST(Geometry, EigenvaluesMatchCharacteristicPolynomialRoots) {
  Rng rng(43);
  for (FamilyTag tag : kTags) {
    const Immersion m = test::random_family(tag, rng);
    for (int i = 0; i < 20; ++i) {
      const auto p = test::random_regular_point(m, rng);
      const PointGeometry pg = point_geometry(m, p);
      const PrincipalData pd = principal_data(pg);
      const Mat& S = pg.shape;
      const double tr = S.trace();
      const double c2 = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0) + S(0, 0) * S(2, 2) - S(0, 2) * S(2, 0) +
                        S(1, 1) * S(2, 2) - S(1, 2) * S(2, 1);
      const auto roots = test::cubic_roots(-tr, c2, -S.determinant());
      // Clustered roots of a cubic are only determined to about sqrt(eps) by its coefficients.
      const double spread = std::min(roots[1] - roots[0], roots[2] - roots[1]);
      const double tol = spread > 1e-3 ? 1e-9 : 1e-7;
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(pd.k(j), roots[j], tol * std::max(1.0, std::abs(roots[j])));
    }
  }
}

TEST(Geometry, PointwiseInvariantsOnEveryFamily) {
  Rng rng(44);
  for (FamilyTag tag : kTags) {
    const Immersion m = test::random_family(tag, rng);
    for (int i = 0; i < 25; ++i) {
      const auto p = test::random_regular_point(m, rng);
      const PointGeometry pg = point_geometry(m, p);
      EXPECT_NEAR(pg.normal.norm(), 1.0, 1e-12);
      for (int a = 0; a < 3; ++a) EXPECT_LT(std::abs(pg.normal.dot(pg.jac.col(a))), 1e-10);
      Mat frame(4, 4);
      frame.leftCols(3) = pg.jac;
      frame.col(3) = pg.normal;
      EXPECT_GT(frame.determinant(), 0.0);
      EXPECT_LT((pg.h - pg.h.transpose()).norm(), 1e-12);
      const Mat gs = pg.metric * pg.shape;
      EXPECT_LT((gs - gs.transpose()).norm(), 1e-10 * std::max(1.0, gs.norm()));

      const PrincipalData pd = principal_data(pg);
      const double scale = std::max(1.0, pd.k.cwiseAbs().maxCoeff());
      for (int j = 0; j < 3; ++j) {
        EXPECT_LT((pg.shape * pd.e.col(j) - pd.k(j) * pd.e.col(j)).norm(), 1e-9 * scale);
      }
      EXPECT_LT((pd.e.transpose() * pg.metric * pd.e - Mat::Identity(3, 3)).norm(), 1e-10);
      const Mat rebuilt = pd.e * pd.k.asDiagonal() * pd.e.inverse();
      EXPECT_LT((rebuilt - pg.shape).norm(), 1e-8 * scale);
    }
  }
}

TEST(Geometry, SignFixMakesLargestComponentPositive) {
  Rng rng(45);
  const Immersion m = test::random_family(FamilyTag::tangent_cone, rng);
  for (int i = 0; i < 20; ++i) {
    const PrincipalData pd = principal_data(point_geometry(m, test::random_regular_point(m, rng)));
    for (int j = 0; j < 3; ++j) {
      Eigen::Index r = 0;
      pd.e.col(j).cwiseAbs().maxCoeff(&r);
      EXPECT_GT(pd.e(r, j), 0.0);
    }
  }
}

TEST(Geometry, CurvatureInvariantsExamples) {
  const std::vector<double> k1{1, 2, 3};
  const auto a = curvature_invariants(k1);
  EXPECT_NEAR(a.s(0), 6, 1e-15);
  EXPECT_NEAR(a.s(1), 11, 1e-15);
  EXPECT_NEAR(a.s(2), 6, 1e-15);
  EXPECT_NEAR(a.H(0), 2, 1e-15);
  EXPECT_NEAR(a.H(1), 11.0 / 3, 1e-15);
  EXPECT_NEAR(a.H(2), 6, 1e-15);

  const double kap = 0.7;
  const std::vector<double> k2{0, kap, -kap};
  const auto b = curvature_invariants(k2);
  EXPECT_NEAR(b.H(0), 0, 1e-15);
  EXPECT_NEAR(b.H(1), -kap * kap / 3, 1e-15);
  EXPECT_NEAR(b.H(2), 0, 1e-15);

  const double c = -1.3;
  const std::vector<double> k3{c, c, c};
  const auto u = curvature_invariants(k3);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(u.H(j), std::pow(c, j + 1), 1e-14);
}

TEST(Geometry, CurvatureInvariantsMatchSubsetProducts) {
  Rng rng(46);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> k;
      for (int i = 0; i < n; ++i) k.push_back(test::uniform(rng, -3, 3));
      const auto inv = curvature_invariants(k);
      const auto s = test::subset_symmetric(k);
      for (int j = 0; j < n; ++j) EXPECT_NEAR(inv.s(j), s[j], 1e-10);
    }
  }
}

TEST(Geometry, SingularPointIsReported) {
  const Immersion m = make_raw("cusp", {"s", "t", "u"}, test::exprs({"s", "t^3", "u", "0"}, {"s", "t", "u"}),
                               {{-1, 1}, {-1, 1}, {-1, 1}});
  try {
    point_geometry(m, std::vector<double>{0.2, 0.0, 0.1});
    FAIL();
  } catch (const SingularPointError& e) {
    EXPECT_EQ(e.point(), (std::vector<double>{0.2, 0.0, 0.1}));
    EXPECT_LE(e.det_metric(), kRegularityThreshold);
  }
}

TEST(Geometry, GaussAndCodazziHoldOnEveryFamily) {
  Rng rng(47);
  for (FamilyTag tag : kTags) {
    const Immersion m = test::random_family(tag, rng);
    for (int i = 0; i < 25; ++i) {
      const auto p = test::random_regular_point(m, rng);
      EXPECT_LT(codazzi_residual(m, p), 1e-6) << to_string(tag);
      EXPECT_LT(gauss_residual(m, p), 1e-6) << to_string(tag);
    }
  }
}

TEST(Geometry, CorruptedSecondFormBreaksCodazzi) {
  const Immersion m = test::so2_generic();
  const std::vector<double> p{0.7, 1.1, 0.4};
  GeometryJets gj = geometry_jets(m, p, 3);
  EXPECT_LT(codazzi_residual(gj), 1e-10);
  gj.h[0][0] += 0.1;
  EXPECT_GT(codazzi_residual(gj), 1e-3);
}

TEST(Geometry, SphereSectionalCurvature) {
  for (double r : {1.0, 2.0}) {
    const Immersion m = test::sphere_about_origin(r);
    Rng rng(48);
    for (int i = 0; i < 10; ++i) {
      const auto p = test::random_regular_point(m, rng);
      const Mat K = sectional_curvatures(m, p);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          if (a != b) EXPECT_NEAR(K(a, b), 1 / (r * r), 1e-8);
    }
  }
}

TEST(Geometry, ConnectionFormsOfSo2Family) {
  // Metric diag(1, f^2, g^2) in s only: nabla_{e_t} e_s = (f'/f) e_t, nabla_{e_u} e_s = (g'/g) e_u,
  // and e_t, e_u never rotate into each other.
  const Immersion m = test::so2_generic();
  for (double s : {0.4, 0.8, 1.1}) {
    const std::vector<double> p{s, 1.2, 0.7};
    const PrincipalData pd = principal_data(point_geometry(m, p));
    ASSERT_GT(pd.gap, 1e-2);
    const ConnectionForms w = frame_connection_forms(m, p, pd);
    const int is = aligned_column(pd, 0), it = aligned_column(pd, 1), iu = aligned_column(pd, 2);
    EXPECT_NEAR(w(is, it, it), -std::sin(s) / (2 + std::cos(s)), 1e-5);
    EXPECT_NEAR(w(is, iu, iu), std::cos(s) / (1.5 + std::sin(s)), 1e-5);
    for (int l = 0; l < 3; ++l) EXPECT_NEAR(w(it, iu, l), 0.0, 1e-5);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) EXPECT_EQ(w(i, j, l), -w(j, i, l));
  }
}

TEST(Geometry, ConnectionFormsOfHypercylinder) {
  // The line factor is parallel: every form involving e_u vanishes.
  const Immersion m = test::torus_hypercylinder();
  const std::vector<double> p{0.7, 1.0, 0.3};
  const PrincipalData pd = principal_data(point_geometry(m, p));
  const ConnectionForms w = frame_connection_forms(m, p, pd);
  const int is = aligned_column(pd, 0), it = aligned_column(pd, 1), iu = aligned_column(pd, 2);
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) EXPECT_NEAR(w(iu, j, l), 0.0, 1e-5);
  EXPECT_NEAR(w(is, it, it), -std::sin(0.7) / (2 + std::cos(0.7)), 1e-5);
}

TEST(Geometry, ConnectionFormsNeedDistinctCurvatures) {
  const Immersion m = test::hyperplane();
  const std::vector<double> p{1, 1, 1};
  const PrincipalData pd = principal_data(point_geometry(m, p));
  EXPECT_THROW(frame_connection_forms(m, p, pd), NearUmbilicError);
}
