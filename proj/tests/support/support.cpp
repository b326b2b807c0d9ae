#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "gcrkit/error.hpp"
#include "gcrkit/geometry.hpp"
#include "gcrkit/profile.hpp"

namespace gcrkit::test {
namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string("(") + buf + ")";
}

}  // namespace

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Profile profile(const std::string& f, const std::string& g) {
  return Profile::expressions(Expr::parse(f, {"s"}), Expr::parse(g, {"s"}));
}

std::vector<Expr> exprs(const std::vector<std::string>& texts, const std::vector<std::string>& vars) {
  std::vector<Expr> out;
  for (const auto& t : texts) out.push_back(Expr::parse(t, vars));
  return out;
}

Immersion random_family(FamilyTag tag, Rng& rng) {
  FamilySpec spec;
  spec.tag = tag;
  switch (tag) {
    case FamilyTag::hypercylinder_rotational: {
      const double a = uniform(rng, 2, 3), b = uniform(rng, 0.3, 1), c = uniform(rng, 0.5, 1.5), d = uniform(rng, 0, 0.5);
      spec.profile = profile(num(a) + "+" + num(b) + "*cos(s)", num(c) + "*sin(s)+" + num(d) + "*s");
      break;
    }
    case FamilyTag::conical_hypercylinder:
      spec.c1 = uniform(rng, 0.3, 1);
      spec.c2 = uniform(rng, 0.3, 1);
      break;
    case FamilyTag::so2_x_so2: {
      const double a = uniform(rng, 2, 3), b = uniform(rng, 0.3, 1), c = uniform(rng, 1.5, 2.5), d = uniform(rng, 0.3, 1);
      spec.profile = profile(num(a) + "+" + num(b) + "*cos(s)", num(c) + "+" + num(d) + "*sin(s)");
      break;
    }
    case FamilyTag::rotational: {
      const double a = uniform(rng, 0.5, 1.5), b = uniform(rng, -0.2, 0.2), c = uniform(rng, 1, 2), d = uniform(rng, 0.2, 0.8);
      spec.profile = profile(num(a) + "*s+" + num(b) + "*s^2", num(c) + "+" + num(d) + "*cos(s)");
      break;
    }
    case FamilyTag::tangent_cone: {
      const double beta = uniform(rng, 0.5, 1.0);
      const std::string cb = num(std::cos(beta)), sb = num(std::sin(beta));
      spec.components = exprs({cb + "*cos(v)", cb + "*sin(v)", sb + "*cos(w)", sb + "*sin(w)"}, {"v", "w"});
      spec.c = uniform(rng, -0.25, 0.25);
      break;
    }
    case FamilyTag::curve_tube: {
      const double beta = uniform(rng, 0.3, 1.2);
      const std::string cb = num(std::cos(beta)), sb = num(std::sin(beta));
      spec.components = exprs({cb + "*cos(w)", cb + "*sin(w)", sb + "*cos(2*w)", sb + "*sin(2*w)"}, {"w"});
      spec.c = uniform(rng, 0.1, 0.3);
      break;
    }
    case FamilyTag::special_sqrt2:
      break;
    case FamilyTag::product_cylinder:
      if (uniform(rng, 0, 1) < 0.5) {
        const double a = uniform(rng, -1, 1), b = uniform(rng, -1, 1), c = uniform(rng, -1, 1), d = uniform(rng, -0.5, 0.5);
        spec.components = exprs({"s", "t", num(a) + "*s^2+" + num(b) + "*t^2+" + num(c) + "*s*t+" + num(d) + "*s^3"},
                                {"s", "t"});
      } else {
        const double r = uniform(rng, 0.4, 0.8);
        const std::string rr = num(r), h = num(std::sqrt(1 - r * r));
        spec.components = exprs({rr + "*cos(t/" + rr + ")/cos(t)", rr + "*sin(t/" + rr + ")/cos(t)", h + "/cos(t)"}, {"t"});
        spec.developable = true;
        spec.domain = {{0.2, 1.0}, {0.3, 1.2}, {-1, 1}};
      }
      break;
  }
  return make_family(spec);
}

std::vector<double> random_point(const Domain& d, Rng& rng) {
  std::vector<double> p;
  for (const auto& iv : d) p.push_back(uniform(rng, iv.lo, iv.hi));
  return p;
}

std::vector<double> random_regular_point(const Immersion& m, Rng& rng, double min_det, int max_tries) {
  for (int i = 0; i < max_tries; ++i) {
    auto p = random_point(m.domain(), rng);
    try {
      if (point_geometry(m, p).det_metric > min_det) return p;
    } catch (const SingularPointError&) {
    }
  }
  throw std::runtime_error("no regular point found on " + m.label());
}

Immersion hyperplane() {
  return make_raw("hyperplane", {"s", "t", "u"}, exprs({"s", "t", "u", "0"}, {"s", "t", "u"}),
                  {{0.5, 2}, {0.5, 3}, {0.5, 4}});
}

Immersion sphere_about_origin(double r) {
  FamilySpec spec;
  spec.tag = FamilyTag::rotational;
  spec.profile = profile(num(r) + "*cos(s)", num(r) + "*sin(s)");
  return make_family(spec);
}

Immersion so2_torus() {
  FamilySpec spec;
  spec.tag = FamilyTag::so2_x_so2;
  spec.profile = profile("2+cos(s)", "sin(s)");
  return make_family(spec);
}

Immersion so2_generic() {
  FamilySpec spec;
  spec.tag = FamilyTag::so2_x_so2;
  spec.profile = profile("2+cos(s)", "1.5+sin(s)");
  return make_family(spec);
}

Immersion torus_hypercylinder() {
  FamilySpec spec;
  spec.tag = FamilyTag::hypercylinder_rotational;
  spec.profile = profile("2+cos(s)", "sin(s)");
  spec.domain = {{0.2, 3.0}, {0, 3}, {-1, 1}};
  return make_family(spec);
}

Immersion spherical_hypercylinder(double r) {
  FamilySpec spec;
  spec.tag = FamilyTag::hypercylinder_rotational;
  spec.profile = profile(num(r) + "*sin(s)", num(r) + "*cos(s)");
  spec.domain = {{0.3, 1.3}, {0, 3}, {-1, 1}};
  return make_family(spec);
}

Immersion circular_hypercylinder(double r) {
  FamilySpec spec;
  spec.tag = FamilyTag::product_cylinder;
  spec.components = exprs({num(r) + "*cos(s)", num(r) + "*sin(s)", "t"}, {"s", "t"});
  spec.domain = {{0, 3}, {-1, 1}, {-1, 1}};
  return make_family(spec);
}

Immersion conical(double c1, double c2) {
  FamilySpec spec;
  spec.tag = FamilyTag::conical_hypercylinder;
  spec.c1 = c1;
  spec.c2 = c2;
  return make_family(spec);
}

Immersion special_sqrt2() {
  FamilySpec spec;
  spec.tag = FamilyTag::special_sqrt2;
  return make_family(spec);
}

Immersion tangent_cone_clifford(double c) {
  FamilySpec spec;
  spec.tag = FamilyTag::tangent_cone;
  spec.components = exprs({"cos(v)*cos(w)", "cos(v)*sin(w)", "sin(v)*cos(w)", "sin(v)*sin(w)"}, {"v", "w"});
  spec.c = c;
  return make_family(spec);
}

Immersion curve_tube_great_circle(double c) {
  FamilySpec spec;
  spec.tag = FamilyTag::curve_tube;
  spec.components = exprs({"cos(w)", "sin(w)", "0", "0"}, {"w"});
  spec.c = c;
  return make_family(spec);
}

Immersion curve_tube_torus_knot(double c) {
  FamilySpec spec;
  spec.tag = FamilyTag::curve_tube;
  spec.components = exprs({"0.6*cos(w)", "0.6*sin(w)", "0.8*cos(2*w)", "0.8*sin(2*w)"}, {"w"});
  spec.c = c;
  return make_family(spec);
}

Immersion rectifying_developable() {
  FamilySpec spec;
  spec.tag = FamilyTag::product_cylinder;
  spec.components = exprs({"0.6*cos(t/0.6)/cos(t)", "0.6*sin(t/0.6)/cos(t)", "0.8/cos(t)"}, {"t"});
  spec.developable = true;
  spec.domain = {{0.2, 1.0}, {0.3, 1.2}, {-1, 1}};
  return make_family(spec);
}

Immersion so2_from_ode() {
  auto curve = std::make_shared<const ProfileCurve>(
      integrate_profile(Expr::parse("1+0.5*s", {"s"}), {0.25, 1.25}, {2.0, 0.5, std::numbers::pi / 2}, 1e-3));
  FamilySpec spec;
  spec.tag = FamilyTag::so2_x_so2;
  spec.profile = Profile::curve(curve);
  spec.domain = {{0.3, 1.2}, {0, 3}, {0, 3}};
  spec.label = "so2_x_so2_ode";
  return make_family(spec);
}

double fd_partial(const std::function<double(std::span<const double>)>& f, std::span<const double> p,
                  const std::vector<int>& axes, double h) {
  if (axes.empty()) return f(p);
  const std::vector<int> rest(axes.begin() + 1, axes.end());
  std::vector<double> q(p.begin(), p.end());
  const auto a = static_cast<std::size_t>(axes.front());
  q[a] = p[a] + h;
  const double plus = fd_partial(f, q, rest, h);
  q[a] = p[a] - h;
  const double minus = fd_partial(f, q, rest, h);
  return (plus - minus) / (2 * h);
}

double fd_partial_richardson(const std::function<double(std::span<const double>)>& f, std::span<const double> p,
                             const std::vector<int>& axes, double h) {
  return (4 * fd_partial(f, p, axes, h / 2) - fd_partial(f, p, axes, h)) / 3;
}

std::array<double, 3> cubic_roots(double a, double b, double c) {
  // Depressed cubic y^3 + p y + q with x = y - a/3.
  const double p = b - a * a / 3;
  const double q = 2 * a * a * a / 27 - a * b / 3 + c;
  std::array<double, 3> r{};
  if (std::abs(p) < 1e-300) {
    const double y = std::cbrt(-q);
    r = {y, y, y};
  } else {
    const double m = 2 * std::sqrt(std::max(0.0, -p / 3));
    double arg = m == 0 ? 0 : 3 * q / (p * m);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg) / 3;
    for (int k = 0; k < 3; ++k) r[k] = m * std::cos(phi - 2 * std::numbers::pi * k / 3);
  }
  for (double& x : r) x -= a / 3;
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<double> subset_symmetric(std::span<const double> k) {
  const std::size_t n = k.size();
  std::vector<double> s(n, 0.0);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double prod = 1.0;
    int bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        prod *= k[i];
        ++bits;
      }
    }
    s[static_cast<std::size_t>(bits - 1)] += prod;
  }
  return s;
}

bool delta2_by_permutations(std::vector<double> k, double tol) {
  std::vector<std::size_t> idx(k.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  do {
    const double sum = k[idx[0]] + k[idx[1]];
    bool ok = true;
    for (std::size_t i = 2; i < idx.size(); ++i) ok = ok && std::abs(k[idx[i]] - sum) <= tol;
    if (ok) return true;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return false;
}

}  // namespace gcrkit::test
