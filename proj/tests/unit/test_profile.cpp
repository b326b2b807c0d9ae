#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "gcrkit/error.hpp"
#include "gcrkit/profile.hpp"
#include "support.hpp"

using namespace gcrkit;
using gcrkit::test::Rng;
using gcrkit::test::uniform;

namespace {

ProfileCurve integrate(const char* kappa, Interval range, ProfileInit init, double step) {
  return integrate_profile(Expr::parse(kappa, {"s"}), range, init, step);
}

double circle_error(double step) {
  const ProfileCurve c = integrate("1", {0, 2}, {}, step);
  double err = 0;
  for (std::size_t i = 0; i < c.s().size(); ++i) {
    const double s = c.s()[i];
    err = std::max(err, std::hypot(c.f()[i] - std::sin(s), c.g()[i] - (1 - std::cos(s))));
  }
  return err;
}

}  // namespace

TEST(Profile, ZeroCurvatureGivesStraightLine) {
  const double phi = 0.7;
  const ProfileCurve c = integrate("0", {0, 3}, {1, -1, phi}, 0.01);
  for (std::size_t i = 0; i < c.s().size(); ++i) {
    EXPECT_NEAR(c.f()[i], 1 + c.s()[i] * std::cos(phi), 1e-13);
    EXPECT_NEAR(c.g()[i], -1 + c.s()[i] * std::sin(phi), 1e-13);
  }
}

TEST(Profile, UnitCurvatureTracesUnitCircle) {
  const ProfileCurve c = integrate("1", {0, 2 * std::numbers::pi}, {}, 1e-3);
  for (std::size_t i = 0; i < c.s().size(); ++i) {
    const double s = c.s()[i];
    EXPECT_NEAR(c.f()[i], std::sin(s), 1e-9);
    EXPECT_NEAR(c.g()[i], 1 - std::cos(s), 1e-9);
  }
  Rng rng(71);
  for (int i = 0; i < 100; ++i) {
    const double s = uniform(rng, 0, 2 * std::numbers::pi);
    const auto v = c.value(s);
    EXPECT_NEAR(v[0], std::sin(s), 1e-9);
    EXPECT_NEAR(v[1], 1 - std::cos(s), 1e-9);
  }
}

TEST(Profile, FourthOrderUnderStepHalving) {
  const double order = std::log2(circle_error(0.2) / circle_error(0.1));
  EXPECT_GE(order, 3.9);
  EXPECT_LE(order, 4.5);
}

TEST(Profile, RichardsonRatioForLinearCurvature) {
  auto end = [](double step) {
    const ProfileCurve c = integrate("s", {0, 2}, {}, step);
    return std::array<double, 2>{c.f().back(), c.g().back()};
  };
  const auto a = end(0.1), b = end(0.05), c = end(0.025);
  const double ratio = std::hypot(a[0] - b[0], a[1] - b[1]) / std::hypot(b[0] - c[0], b[1] - c[1]);
  EXPECT_NEAR(ratio, 16.0, 1.0);
}

TEST(Profile, StepDividesRangeEvenly) {
  const ProfileCurve c = integrate("1", {0, 1}, {}, 0.3);
  EXPECT_EQ(c.s().size(), 5u);
  EXPECT_NEAR(c.step(), 0.25, 1e-15);
  EXPECT_EQ(c.s().back(), 1.0);
}

TEST(Profile, InterpolantHasUnitSpeed) {
  const ProfileCurve c = integrate("1+0.5*s", {0, 2}, {2, 0.5, 1.0}, 1e-3);
  Rng rng(72);
  for (int i = 0; i < 200; ++i) {
    const auto [f, g] = c.eval(jet_variable(0, uniform(rng, 0, 2), 1, 2));
    EXPECT_NEAR(f.grad(0) * f.grad(0) + g.grad(0) * g.grad(0), 1.0, 1e-8);
  }
}

TEST(Profile, InterpolantCurvatureAtSamples) {
  const ProfileCurve c = integrate("1+0.5*s", {0, 2}, {2, 0.5, 1.0}, 1e-2);
  for (std::size_t i = 0; i + 1 < c.s().size(); i += 17) {
    const auto [f, g] = c.eval(jet_variable(0, c.s()[i], 1, 2));
    EXPECT_NEAR(f.grad(0) * g.hess(0, 0) - g.grad(0) * f.hess(0, 0), 1 + 0.5 * c.s()[i], 1e-10);
  }
}

TEST(Profile, FailureReportsLastGoodArgument) {
  try {
    integrate("log(1-s)", {0, 2}, {}, 0.01);
    FAIL() << "expected IntegrationError";
  } catch (const IntegrationError& e) {
    EXPECT_GT(e.last_good(), 0.9);
    EXPECT_LT(e.last_good(), 1.0);
  }
}

TEST(Profile, RejectsBadArguments) {
  EXPECT_THROW(integrate("1", {0, 1}, {}, 0.0), ArgumentError);
  EXPECT_THROW(integrate("1", {1, 1}, {}, 0.1), ArgumentError);
}
