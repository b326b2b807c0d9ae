#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "gcrkit/classify.hpp"
#include "gcrkit/error.hpp"
#include "gcrkit/gcr.hpp"
#include "gcrkit/geometry.hpp"
#include "support.hpp"

using namespace gcrkit;
using gcrkit::test::Rng;

namespace {

struct Eval {
  PointGeometry pg;
  PrincipalData pd;
  PositionAngles pa;
};

Eval at(const Immersion& m, const std::vector<double>& p) {
  const GeometryJets gj = geometry_jets(m, p, 3);
  Eval e{point_geometry(gj), {}, {}};
  e.pd = principal_data(e.pg);
  e.pa = position_angles(gj, e.pg);
  return e;
}

std::vector<Immersion> positives() {
  return {test::so2_torus(),         test::so2_generic(),      test::special_sqrt2(),
          test::conical(0.6, 0.8),   test::tangent_cone_clifford(0.3), test::curve_tube_torus_knot(0.3),
          test::spherical_hypercylinder(1.0), test::circular_hypercylinder(1.0), test::rectifying_developable(),
          test::sphere_about_origin(1.0).with_domain({{0.3, 1.2}, {0.3, 1.2}, {0, 3}})};
}

std::vector<double> grid_point(const Immersion& m, int i, int j, int k, int count) {
  return GridSpec{{count, count, count}}.point(m.domain(), static_cast<std::size_t>((i * count + j) * count + k));
}

}  // namespace

TEST(PositionAngles, SphereAboutOriginIsDegenerate) {
  for (double r : {1.0, 2.0}) {
    const Immersion m = test::sphere_about_origin(r);
    const Eval e = at(m, {0.5, 0.7, 1.0});
    EXPECT_NEAR(e.pa.mu, r, 1e-14);
    EXPECT_NEAR(std::abs(e.pa.cos_theta), 1.0, 1e-14);
    EXPECT_LT(e.pa.xT_norm, 1e-12);
    EXPECT_TRUE(e.pa.degenerate);
    EXPECT_THROW(gcr_residual(e.pa, e.pd, e.pg), DegeneratePointError);
  }
}

TEST(PositionAngles, Sqrt2ConeIsRuledThroughOrigin) {
  // x = s x_s exactly, so the position is tangent, mu = 2 s and x^T = s d/ds.
  const Immersion m = test::special_sqrt2();
  Rng rng(51);
  for (int i = 0; i < 20; ++i) {
    const auto p = test::random_point(m.domain(), rng);
    const Eval e = at(m, p);
    EXPECT_NEAR(e.pa.cos_theta, 0.0, 1e-14);
    EXPECT_NEAR(e.pa.theta, std::numbers::pi / 2, 1e-14);
    EXPECT_NEAR(e.pa.mu, 2 * p[0], 1e-14);
    EXPECT_NEAR(e.pa.xT(0), p[0], 1e-13);
    EXPECT_NEAR(e.pa.xT(1), 0.0, 1e-13);
    EXPECT_NEAR(e.pa.xT(2), 0.0, 1e-13);
  }
}

TEST(PositionAngles, ConicalHypercylinderNorm) {
  const double c1 = 0.6, c2 = 0.8;
  const Eval e = at(test::conical(c1, c2), {1, 0, 1});
  EXPECT_NEAR(e.pa.mu * e.pa.mu, (c1 + c2) * (c1 + c2) + c2 * c2 + 1, 1e-13);
}

TEST(PositionAngles, DecompositionInvariants) {
  Rng rng(52);
  for (const Immersion& m : positives()) {
    for (int i = 0; i < 20; ++i) {
      const auto p = test::random_regular_point(m, rng);
      const Eval e = at(m, p);
      const Vec& x = e.pg.position;
      EXPECT_NEAR(e.pa.mu * e.pa.mu, x.dot(x), 1e-10);
      EXPECT_NEAR(e.pa.mu * e.pa.cos_theta, x.dot(e.pg.normal), 1e-10);
      EXPECT_LT((x - e.pg.jac * e.pa.xT - e.pa.mu * e.pa.cos_theta * e.pg.normal).norm(), 1e-8);
      EXPECT_GE(std::sin(e.pa.theta), 0.0);
    }
  }
}

TEST(GcrResidual, So2FamilyIsGcr) {
  const Immersion m = test::so2_torus();
  Rng rng(53);
  for (int i = 0; i < 50; ++i) {
    const Eval e = at(m, test::random_regular_point(m, rng));
    ASSERT_FALSE(e.pa.degenerate);
    EXPECT_LT(gcr_residual(e.pa, e.pd, e.pg).primary, 1e-8);
  }
}

TEST(GcrResidual, GenericHypercylinderIsNot) {
  const Eval e = at(test::torus_hypercylinder(), {std::numbers::pi / 2, 0.5, 0.5});
  EXPECT_GT(gcr_residual(e.pa, e.pd, e.pg).primary, 1e-3);
}

TEST(GcrResidual, Sqrt2ConeIsGcr) {
  const Eval e = at(test::special_sqrt2(), {1.1, 0.4, 2.0});
  EXPECT_LT(gcr_residual(e.pa, e.pd, e.pg).primary, 1e-10);
}

TEST(GcrResidual, PrimaryAndSecondaryVerdictsAgree) {
  std::vector<Immersion> surfaces = positives();
  surfaces.push_back(test::torus_hypercylinder());
  Rng rng(54);
  surfaces.push_back(test::random_family(FamilyTag::hypercylinder_rotational, rng));
  FamilySpec neg;
  neg.tag = FamilyTag::product_cylinder;
  neg.components = test::exprs({"(2+cos(s))*cos(t)", "(2+cos(s))*sin(t)", "sin(s)"}, {"s", "t"});
  surfaces.push_back(make_family(neg));
  int negatives = 0;
  for (const Immersion& m : surfaces) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          const Eval e = at(m, grid_point(m, i, j, k, 4));
          if (e.pa.degenerate) continue;
          const GcrResidual r = gcr_residual(e.pa, e.pd, e.pg);
          EXPECT_EQ(r.primary < 1e-8, r.secondary < 1e-6) << m.label() << " " << r.primary << " " << r.secondary;
          negatives += r.primary >= 1e-8;
        }
  }
  EXPECT_GT(negatives, 50);
}

TEST(GcrResidual, ScaleCovariance) {
  Rng rng(55);
  for (const Immersion& m : {test::so2_torus(), test::torus_hypercylinder(), test::tangent_cone_clifford(0.3)}) {
    const Immersion big = m.scaled(2.0);
    for (int i = 0; i < 20; ++i) {
      const auto p = test::random_regular_point(m, rng);
      const Eval a = at(m, p), b = at(big, p);
      EXPECT_NEAR(b.pa.mu, 2 * a.pa.mu, 1e-12);
      EXPECT_NEAR(b.pa.theta, a.pa.theta, 1e-10);
      EXPECT_EQ(gcr_residual(a.pa, a.pd, a.pg).primary < 1e-8, gcr_residual(b.pa, b.pd, b.pg).primary < 1e-8);
    }
  }
}

TEST(Structural, So2FamilyResiduals) {
  const Immersion m = test::so2_generic();
  Rng rng(56);
  for (int i = 0; i < 10; ++i) {
    const auto p = test::random_regular_point(m, rng);
    const Eval e = at(m, p);
    const StructuralResiduals r = structural_residuals(m, p, e.pg, e.pd, e.pa, {});
    EXPECT_LT(r.r_geodesic, 1e-5);
    EXPECT_LT(r.r_k1, 1e-5);
    EXPECT_LT(r.r_theta_flat, 1e-5);
    EXPECT_LT(r.r_shape_coeff, 1e-5);
    ASSERT_TRUE(r.r_omega.has_value());
    EXPECT_LT(*r.r_omega, 1e-5);
    for (int c = 0; c < 6; ++c) {
      if (e.pd.gap >= kDefaultGapTolerance) ASSERT_TRUE(r.codazzi[c].has_value());
      if (r.codazzi[c]) EXPECT_LT(*r.codazzi[c], 1e-5) << "codazzi " << c;
    }
    if (r.codazzi[6]) EXPECT_LT(*r.codazzi[6], 1e-3);
  }
}

TEST(Structural, TangentConeRulingsAreFlatGeodesics) {
  const Immersion m = test::tangent_cone_clifford(0.3);
  Rng rng(57);
  for (int i = 0; i < 10; ++i) {
    const auto p = test::random_regular_point(m, rng);
    const Eval e = at(m, p);
    const StructuralResiduals r = structural_residuals(m, p, e.pg, e.pd, e.pa, {});
    EXPECT_LT(r.r_geodesic, 1e-6);
    EXPECT_NEAR(e.pd.k(r.k1), 0.0, 1e-9);
  }
}

TEST(Structural, SphericalHypercylinder) {
  for (double radius : {1.0, 2.0}) {
    const Immersion m = test::spherical_hypercylinder(radius);
    const std::vector<double> p{0.8, 1.3, 0.6};
    const Eval e = at(m, p);
    const double inv = 1 / radius;
    const bool plus = std::abs(e.pd.k(2) - inv) < 1e-10 && std::abs(e.pd.k(1) - inv) < 1e-10 && std::abs(e.pd.k(0)) < 1e-10;
    const bool minus = std::abs(e.pd.k(0) + inv) < 1e-10 && std::abs(e.pd.k(1) + inv) < 1e-10 && std::abs(e.pd.k(2)) < 1e-10;
    EXPECT_TRUE(plus || minus) << e.pd.k.transpose();
    const StructuralResiduals r = structural_residuals(m, p, e.pg, e.pd, e.pa, {});
    EXPECT_LT(r.r_k1, 1e-6);
  }
}

TEST(Structural, IntegralCurvesOfE1AreGeodesicLinesOfCurvature) {
  // The ambient acceleration of the e1 field along itself is normal, with normal part k1.
  for (const Immersion& m : positives()) {
    Rng rng(58);
    for (int i = 0; i < 10; ++i) {
      const auto p = test::random_regular_point(m, rng);
      const Eval e = at(m, p);
      if (e.pa.degenerate) continue;
      const double h = 1e-4 * m.extent();
      auto field = [&](double eps) {
        std::vector<double> q = p;
        for (int a = 0; a < 3; ++a) q[a] += eps * e.pa.e1(a);
        return Vec(point_geometry(m, q).jac * unit_tangent_field(m, q));
      };
      const Vec acc = (field(h) - field(-h)) / (2 * h);
      const Vec tangential = e.pg.jac * (e.pg.metric_inverse * (e.pg.jac.transpose() * acc));
      const int k1 = k1_index(e.pa, e.pd, e.pg);
      EXPECT_LT(tangential.norm(), 1e-6) << m.label();
      EXPECT_NEAR(acc.dot(e.pg.normal), e.pd.k(k1), 1e-5) << m.label();
    }
  }
}

TEST(Delta2, Examples) {
  EXPECT_TRUE(delta2_ideal_test(std::vector<double>{1, 2, 3}, 1e-12));
  EXPECT_TRUE(delta2_ideal_test(std::vector<double>{0, 5, -5}, 1e-12));
  EXPECT_FALSE(delta2_ideal_test(std::vector<double>{1, 1, 1}, 1e-12));
  EXPECT_THROW(delta2_ideal_test(std::vector<double>{1, 2}, 1e-12), ArgumentError);
}

TEST(Delta2, AgreesWithPermutationSearch) {
  Rng rng(59);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> k(3);
    const double a = test::uniform(rng, -2, 2), b = test::uniform(rng, -2, 2);
    if (trial % 2 == 0) {
      k = {a, b, a + b + test::uniform(rng, -1e-6, 1e-6)};
      std::shuffle(k.begin(), k.end(), rng);
    } else {
      k = {a, b, test::uniform(rng, -2, 2)};
    }
    const double tol = 5e-7;
    EXPECT_EQ(delta2_ideal_test(k, tol), test::delta2_by_permutations(k, tol));
  }
}
