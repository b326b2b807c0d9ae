#include "gcrkit/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "gcrkit/error.hpp"

namespace gcrkit {
namespace {

using JetEnv = std::map<std::string, Jet>;

void require_variables(const std::vector<Expr>& exprs, const std::vector<std::string>& allowed, const char* what) {
  for (const Expr& e : exprs) {
    for (const auto& v : e.variables()) {
      if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        throw ArgumentError(std::string(what) + " may only use the variables {" + list + "}, found '" + v + "'");
      }
    }
  }
}

// Chart coordinate jet of one order higher, for families built from first derivatives.
Jet lift(const Jet& coordinate, int axis) {
  if (coordinate.order() + 1 > Jet::kMaxOrder) throw ArgumentError("jet order too high for this family");
  return Jet::variable(axis, coordinate.value(), coordinate.dims(), coordinate.order() + 1);
}

std::array<Jet, 4> spherical_normal(const std::array<Jet, 4>& y, const std::array<Jet, 4>& yv,
                                    const std::array<Jet, 4>& yw) {
  // n_k = (-1)^(k+3) det of the 3x3 minor of [y yv yw] without row k, so {y, yv, yw, n} is positive.
  std::array<Jet, 4> n;
  Jet norm2 = Jet::constant(0.0, y[0].dims(), y[0].order());
  for (int k = 0; k < 4; ++k) {
    int r[3];
    int idx = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != k) r[idx++] = i;
    }
    auto m = [&](int row, int col) -> const Jet& {
      const int a = r[row];
      return col == 0 ? y[a] : (col == 1 ? yv[a] : yw[a]);
    };
    Jet det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
              m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    n[k] = (k % 2 == 1) ? det : -det;
    norm2 += n[k] * n[k];
  }
  const Jet inv = reciprocal(sqrt(norm2));
  for (auto& v : n) v *= inv;
  return n;
}

}  // namespace

const char* to_string(FamilyTag tag) noexcept {
  switch (tag) {
    case FamilyTag::hypercylinder_rotational:
      return "hypercylinder_rotational";
    case FamilyTag::conical_hypercylinder:
      return "conical_hypercylinder";
    case FamilyTag::so2_x_so2:
      return "so2_x_so2";
    case FamilyTag::rotational:
      return "rotational";
    case FamilyTag::tangent_cone:
      return "tangent_cone";
    case FamilyTag::curve_tube:
      return "curve_tube";
    case FamilyTag::special_sqrt2:
      return "special_sqrt2";
    case FamilyTag::product_cylinder:
      return "product_cylinder";
  }
  return "?";
}

std::optional<FamilyTag> family_from_string(std::string_view name) noexcept {
  for (const auto& info : family_catalog()) {
    if (name == to_string(info.tag)) return info.tag;
  }
  return std::nullopt;
}

const std::vector<FamilyInfo>& family_catalog() {
  static const std::vector<FamilyInfo> catalog = {
      {FamilyTag::hypercylinder_rotational, "hypercylinder over a rotational surface",
       "x = (f(s) cos t, f(s) sin t, g(s), u)", {"s", "t", "u"}, {"f, g | kappa"}, {"f0", "g0", "phi0", "s0", "step"}},
      {FamilyTag::conical_hypercylinder, "hypercylinder over a cone",
       "x = ((c1 s + c2) cos t, (c1 s + c2) sin t, c2 s, u)", {"s", "t", "u"}, {"c1", "c2"}, {}},
      {FamilyTag::so2_x_so2, "SO(2) x SO(2)-invariant hypersurface",
       "x = (f(s) cos t, f(s) sin t, g(s) cos u, g(s) sin u)", {"s", "t", "u"}, {"f, g | kappa"}, {"f0", "g0", "phi0", "s0", "step"}},
      {FamilyTag::rotational, "rotational hypersurface",
       "x = (f(s), g(s) cos t, g(s) sin t sin u, g(s) sin t cos u)", {"s", "t", "u"}, {"f, g | kappa"}, {"f0", "g0", "phi0", "s0", "step"}},
      {FamilyTag::tangent_cone, "cone over a spherical surface shifted along its spherical normal",
       "x = s y(v, w) + c n(v, w), y on the unit 3-sphere", {"s", "v", "w"}, {"y", "c"}, {}},
      {FamilyTag::curve_tube, "tube of a spherical curve",
       "x = s alpha(w) + c (cos(v/c) A(w) + sin(v/c) B(w)), c > 0", {"s", "v", "w"}, {"alpha", "c"},
       {"frame_spacing"}},
      {FamilyTag::special_sqrt2, "minimal cone over a product of circles",
       "x = (sqrt2 s cos t, sqrt2 s sin t, sqrt2 s cos u, sqrt2 s sin u)", {"s", "t", "u"}, {}, {}},
      {FamilyTag::product_cylinder, "product of a surface in E^3 with a line",
       "x = (x~(s, t), u), x~ given directly or as gamma(t) + s gamma'(t)", {"s", "t", "u"}, {"surface | curve"},
       {}},
  };
  return catalog;
}

const FamilyInfo& family_info(FamilyTag tag) {
  for (const auto& info : family_catalog()) {
    if (info.tag == tag) return info;
  }
  throw ArgumentError("unknown family tag");
}

Profile Profile::expressions(Expr f, Expr g) {
  require_variables({f, g}, {"s"}, "profile expressions");
  Profile p;
  p.f_ = std::move(f);
  p.g_ = std::move(g);
  return p;
}

Profile Profile::curve(std::shared_ptr<const ProfileCurve> curve) {
  if (!curve) throw ArgumentError("profile curve is null");
  Profile p;
  p.curve_ = std::move(curve);
  return p;
}

std::pair<Jet, Jet> Profile::eval(const Jet& s) const {
  if (curve_) return curve_->eval(s);
  const JetEnv env{{"s", s}};
  return {f_->eval(env), g_->eval(env)};
}

Domain default_domain(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::hypercylinder_rotational:
      return {{0.2, 1.2}, {0.0, 3.0}, {-1.0, 1.0}};
    case FamilyTag::conical_hypercylinder:
      return {{0.5, 1.5}, {0.0, 3.0}, {-1.0, 1.0}};
    case FamilyTag::so2_x_so2:
      return {{0.3, 1.2}, {0.0, 3.0}, {0.0, 3.0}};
    case FamilyTag::rotational:
      return {{0.3, 1.2}, {0.3, 1.2}, {0.0, 3.0}};
    case FamilyTag::tangent_cone:
      return {{0.5, 1.5}, {0.3, 1.2}, {0.3, 1.2}};
    case FamilyTag::curve_tube:
      return {{0.5, 1.5}, {0.0, 1.0}, {0.0, 1.5}};
    case FamilyTag::special_sqrt2:
      return {{0.5, 1.5}, {0.0, 3.0}, {0.0, 3.0}};
    case FamilyTag::product_cylinder:
      return {{0.5, 1.5}, {0.3, 1.2}, {-1.0, 1.0}};
  }
  throw ArgumentError("unknown family tag");
}

namespace {

// Samples y on a 5 x 5 grid of the (v, w) box; points where y is undefined are left to chart evaluation.
void check_on_sphere(const std::vector<Expr>& y, Interval v, Interval w) {
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const std::map<std::string, double> env{{"v", v.lo + v.width() * i / 4.0}, {"w", w.lo + w.width() * j / 4.0}};
      double norm2 = 0.0;
      try {
        for (const Expr& e : y) {
          const double c = e.eval_real(env);
          norm2 += c * c;
        }
      } catch (const DomainError&) {
        continue;
      }
      if (std::abs(std::sqrt(norm2) - 1.0) > 1e-6) {
        throw ArgumentError("tangent_cone y leaves the unit sphere at (v, w) = (" + std::to_string(env.at("v")) + ", " +
                            std::to_string(env.at("w")) + ")");
      }
    }
  }
}

}  // namespace

Immersion make_family(const FamilySpec& spec) {
  const FamilyInfo& info = family_info(spec.tag);
  const Domain domain = spec.domain.empty() ? default_domain(spec.tag) : spec.domain;
  const std::string label = spec.label.empty() ? to_string(spec.tag) : spec.label;
  const std::vector<std::string>& vars = info.variables;

  auto need_profile = [&]() -> Profile {
    if (!spec.profile) throw ArgumentError(std::string(to_string(spec.tag)) + " needs a profile (f, g)");
    return *spec.profile;
  };

  switch (spec.tag) {
    case FamilyTag::hypercylinder_rotational: {
      const Profile prof = need_profile();
      return Immersion(label, vars, domain, [prof](std::span<const Jet> x) {
        const auto [f, g] = prof.eval(x[0]);
        return std::vector<Jet>{f * cos(x[1]), f * sin(x[1]), g, x[2]};
      });
    }
    case FamilyTag::conical_hypercylinder: {
      const double c1 = spec.c1;
      const double c2 = spec.c2;
      if (c1 == 0.0 && c2 == 0.0) throw ArgumentError("conical hypercylinder needs c1 or c2 nonzero");
      return Immersion(label, vars, domain, [c1, c2](std::span<const Jet> x) {
        const Jet a = c1 * x[0] + c2;
        return std::vector<Jet>{a * cos(x[1]), a * sin(x[1]), c2 * x[0], x[2]};
      });
    }
    case FamilyTag::so2_x_so2: {
      const Profile prof = need_profile();
      return Immersion(label, vars, domain, [prof](std::span<const Jet> x) {
        const auto [f, g] = prof.eval(x[0]);
        return std::vector<Jet>{f * cos(x[1]), f * sin(x[1]), g * cos(x[2]), g * sin(x[2])};
      });
    }
    case FamilyTag::rotational: {
      const Profile prof = need_profile();
      return Immersion(label, vars, domain, [prof](std::span<const Jet> x) {
        const auto [f, g] = prof.eval(x[0]);
        const Jet gs = g * sin(x[1]);
        return std::vector<Jet>{f, g * cos(x[1]), gs * sin(x[2]), gs * cos(x[2])};
      });
    }
    case FamilyTag::special_sqrt2: {
      return Immersion(label, vars, domain, [](std::span<const Jet> x) {
        const Jet r = std::numbers::sqrt2 * x[0];
        return std::vector<Jet>{r * cos(x[1]), r * sin(x[1]), r * cos(x[2]), r * sin(x[2])};
      });
    }
    case FamilyTag::tangent_cone: {
      if (spec.components.size() != 4) throw ArgumentError("tangent_cone needs y as four expressions in (v, w)");
      require_variables(spec.components, {"v", "w"}, "tangent_cone y");
      check_on_sphere(spec.components, domain[1], domain[2]);
      const std::vector<Expr> y = spec.components;
      const double c = spec.c;
      return Immersion(label, vars, domain, [y, c](std::span<const Jet> x) {
        const int order = x[0].order();
        const JetEnv env{{"v", lift(x[1], 1)}, {"w", lift(x[2], 2)}};
        std::array<Jet, 4> yl, yv, yw;
        for (int a = 0; a < 4; ++a) {
          const Jet hi = y[a].eval(env);
          yl[a] = hi.truncated(order);
          yv[a] = hi.partial(1);
          yw[a] = hi.partial(2);
        }
        const auto n = spherical_normal(yl, yv, yw);
        std::vector<Jet> out(4);
        for (int a = 0; a < 4; ++a) out[a] = x[0] * yl[a] + c * n[a];
        return out;
      });
    }
    case FamilyTag::curve_tube: {
      if (!(spec.c > 0.0)) throw ArgumentError("curve_tube needs c > 0");
      if (spec.components.size() != 4) throw ArgumentError("curve_tube needs alpha as four expressions in w");
      require_variables(spec.components, {"w"}, "curve_tube alpha");
      const Interval wr = domain[2];
      const double pad = 0.05 * wr.width();
      auto frame = std::make_shared<const NormalFrame>(
          build_normal_frame(spec.components, {wr.lo - pad, wr.hi + pad}, spec.frame_spacing));
      const double c = spec.c;
      return Immersion(label, vars, domain, [frame, c](std::span<const Jet> x) {
        const auto alpha = frame->curve(x[2]);
        const auto [A, B] = frame->frame(x[2], 2);
        const Jet phase = x[1] / c;
        const Jet cv = c * cos(phase);
        const Jet sv = c * sin(phase);
        std::vector<Jet> out(4);
        for (int a = 0; a < 4; ++a) out[a] = x[0] * alpha[a] + cv * A[a] + sv * B[a];
        return out;
      });
    }
    case FamilyTag::product_cylinder: {
      if (spec.components.size() != 3) {
        throw ArgumentError("product_cylinder needs three expressions (surface in s, t or curve in t)");
      }
      const std::vector<Expr> comps = spec.components;
      if (spec.developable) {
        require_variables(comps, {"t"}, "product_cylinder curve");
        return Immersion(label, vars, domain, [comps](std::span<const Jet> x) {
          const int order = x[0].order();
          const JetEnv env{{"t", lift(x[1], 1)}};
          std::vector<Jet> out(4);
          for (int a = 0; a < 3; ++a) {
            const Jet hi = comps[a].eval(env);
            out[a] = hi.truncated(order) + x[0] * hi.partial(1);
          }
          out[3] = x[2];
          return out;
        });
      }
      require_variables(comps, {"s", "t"}, "product_cylinder surface");
      return Immersion(label, vars, domain, [comps](std::span<const Jet> x) {
        const JetEnv env{{"s", x[0]}, {"t", x[1]}};
        return std::vector<Jet>{comps[0].eval(env), comps[1].eval(env), comps[2].eval(env), x[2]};
      });
    }
  }
  throw ArgumentError("unknown family tag");
}

Immersion make_raw(std::string label, std::vector<std::string> variables, std::vector<Expr> components,
                   Domain domain) {
  if (components.size() != variables.size() + 1) {
    throw ArgumentError("raw immersion needs " + std::to_string(variables.size() + 1) + " components, got " +
                        std::to_string(components.size()));
  }
  require_variables(components, variables, "raw components");
  auto names = variables;
  return Immersion(std::move(label), std::move(variables), std::move(domain),
                   [components, names](std::span<const Jet> x) {
                     JetEnv env;
                     for (std::size_t i = 0; i < names.size(); ++i) env.emplace(names[i], x[i]);
                     std::vector<Jet> out;
                     out.reserve(components.size());
                     for (const Expr& e : components) out.push_back(e.eval(env));
                     return out;
                   });
}

}  // namespace gcrkit
