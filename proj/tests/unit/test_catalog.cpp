#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gcrkit/catalog.hpp"
#include "gcrkit/error.hpp"
#include "support.hpp"

using namespace gcrkit;
using gcrkit::test::Rng;

TEST(Catalog, EightFamiliesWithRoundTripTags) {
  const auto& all = family_catalog();
  EXPECT_EQ(all.size(), 8u);
  std::set<std::string> names;
  for (const FamilyInfo& info : all) {
    const std::string name = to_string(info.tag);
    names.insert(name);
    ASSERT_TRUE(family_from_string(name).has_value());
    EXPECT_EQ(*family_from_string(name), info.tag);
    EXPECT_EQ(info.variables.size(), 3u);
    EXPECT_FALSE(info.formula.empty());
    EXPECT_EQ(&family_info(info.tag), &info);
  }
  EXPECT_EQ(names.size(), 8u);
  EXPECT_FALSE(family_from_string("torus").has_value());
}

TEST(Catalog, ClosedFormPositions) {
  const double s = 0.7, t = 1.1, u = 0.4;
  const std::vector<double> p{s, t, u};
  const double f = 2 + std::cos(s), g = std::sin(s);

  const Vec so2 = test::so2_torus().position(p);
  EXPECT_NEAR(so2(0), f * std::cos(t), 1e-15);
  EXPECT_NEAR(so2(1), f * std::sin(t), 1e-15);
  EXPECT_NEAR(so2(2), g * std::cos(u), 1e-15);
  EXPECT_NEAR(so2(3), g * std::sin(u), 1e-15);

  const Vec hc = test::torus_hypercylinder().position(p);
  EXPECT_NEAR(hc(0), f * std::cos(t), 1e-15);
  EXPECT_NEAR(hc(2), g, 1e-15);
  EXPECT_EQ(hc(3), u);

  const Vec sq = test::special_sqrt2().position(p);
  const double r = std::numbers::sqrt2 * s;
  EXPECT_NEAR(sq(0), r * std::cos(t), 1e-15);
  EXPECT_NEAR(sq(3), r * std::sin(u), 1e-15);

  const Vec con = test::conical(0.6, 0.8).position(p);
  EXPECT_NEAR(con(0), (0.6 * s + 0.8) * std::cos(t), 1e-15);
  EXPECT_NEAR(con(2), 0.8 * s, 1e-15);
  EXPECT_EQ(con(3), u);

  const Vec rot = test::sphere_about_origin(2.0).position(p);
  EXPECT_NEAR(rot(0), 2 * std::cos(s), 1e-15);
  EXPECT_NEAR(rot(1), 2 * std::sin(s) * std::cos(t), 1e-15);
  EXPECT_NEAR(rot(2), 2 * std::sin(s) * std::sin(t) * std::sin(u), 1e-15);
  EXPECT_NEAR(rot(3), 2 * std::sin(s) * std::sin(t) * std::cos(u), 1e-15);
}

TEST(Catalog, UnitProfileStaysOnSphere) {
  FamilySpec spec;
  spec.tag = FamilyTag::so2_x_so2;
  spec.profile = test::profile("cos(s)", "sin(s)");
  const Immersion m = make_family(spec);
  Rng rng(91);
  for (int i = 0; i < 50; ++i) EXPECT_NEAR(m.position(test::random_point(m.domain(), rng)).norm(), 1.0, 1e-14);
}

TEST(Catalog, DevelopableProductUsesRuledForm) {
  const Immersion m = test::rectifying_developable();
  const double s = 0.5, t = 0.6, h = 1e-6;
  const Vec x = m.position(std::vector<double>{s, t, 0.25});
  const double r = 0.6;
  auto gamma = [&](double tt) {
    return Eigen::Vector4d(r * std::cos(tt / r) / std::cos(tt), r * std::sin(tt / r) / std::cos(tt), 0.8 / std::cos(tt), 0);
  };
  const Eigen::Vector4d expect = gamma(t) + s * (gamma(t + h) - gamma(t - h)) / (2 * h);
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(x(a), expect(a), 1e-8);
  EXPECT_EQ(x(3), 0.25);
}

TEST(Catalog, InvalidParametersRejected) {
  FamilySpec tube;
  tube.tag = FamilyTag::curve_tube;
  tube.components = test::exprs({"cos(w)", "sin(w)", "0", "0"}, {"w"});
  tube.c = 0.0;
  EXPECT_THROW(make_family(tube), ArgumentError);
  tube.c = -0.3;
  EXPECT_THROW(make_family(tube), ArgumentError);

  FamilySpec missing;
  missing.tag = FamilyTag::so2_x_so2;
  EXPECT_THROW(make_family(missing), ArgumentError);

  FamilySpec cone;
  cone.tag = FamilyTag::conical_hypercylinder;
  EXPECT_THROW(make_family(cone), ArgumentError);

  FamilySpec wrong_vars;
  wrong_vars.tag = FamilyTag::tangent_cone;
  wrong_vars.components = test::exprs({"cos(s)", "sin(s)", "0", "0"}, {"s"});
  EXPECT_THROW(make_family(wrong_vars), ArgumentError);

  FamilySpec off_sphere;
  off_sphere.tag = FamilyTag::tangent_cone;
  off_sphere.components = test::exprs({"sqrt(2)*cos(v)", "sqrt(2)*sin(v)", "sqrt(2)*cos(w)", "sqrt(2)*sin(w)"}, {"v", "w"});
  EXPECT_THROW(make_family(off_sphere), ArgumentError);
  off_sphere.components = test::exprs({"cos(v)*cos(w)", "cos(v)*sin(w)", "sin(v)*cos(w)", "sin(v)*sin(w)"}, {"v", "w"});
  EXPECT_NO_THROW(make_family(off_sphere));

  EXPECT_THROW(test::profile("cos(t)", "s"), ParseError);
  EXPECT_THROW(Profile::expressions(Expr::parse("t", {"s", "t"}), Expr::parse("s", {"s"})), ArgumentError);

  EXPECT_THROW(make_raw("bad", {"s", "t", "u"}, test::exprs({"s", "t", "u"}, {"s", "t", "u"}), {{0, 1}, {0, 1}, {0, 1}}),
               ArgumentError);
}

TEST(Catalog, DefaultDomainsAndLabels) {
  for (const FamilyInfo& info : family_catalog()) {
    const Domain d = default_domain(info.tag);
    ASSERT_EQ(d.size(), 3u);
    for (const Interval& iv : d) EXPECT_LT(iv.lo, iv.hi);
  }
  EXPECT_EQ(test::special_sqrt2().label(), "special_sqrt2");
  EXPECT_EQ(test::so2_from_ode().label(), "so2_x_so2_ode");
}

TEST(Catalog, ScalingAndDomainOverride) {
  const Immersion m = test::so2_torus();
  const std::vector<double> p{0.5, 1, 2};
  EXPECT_NEAR((m.scaled(3.0).position(p) - 3.0 * m.position(p)).norm(), 0.0, 1e-14);
  const Immersion n = m.with_domain({{0, 1}, {0, 1}, {0, 1}});
  EXPECT_FALSE(n.contains(p));
  EXPECT_TRUE(m.contains(p));
  EXPECT_THROW(evaluate_jets(n, p, 2), ArgumentError);
}
