#pragma once

// Constructors for the example families of hypersurfaces in E^4.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gcrkit/expr.hpp"
#include "gcrkit/immersion.hpp"
#include "gcrkit/normal_frame.hpp"
#include "gcrkit/profile.hpp"

namespace gcrkit {

enum class FamilyTag {
  hypercylinder_rotational,
  conical_hypercylinder,
  so2_x_so2,
  rotational,
  tangent_cone,
  curve_tube,
  special_sqrt2,
  product_cylinder,
};

const char* to_string(FamilyTag tag) noexcept;
std::optional<FamilyTag> family_from_string(std::string_view name) noexcept;

struct FamilyInfo {
  FamilyTag tag;
  std::string title;
  std::string formula;
  std::vector<std::string> variables;
  std::vector<std::string> required;  // spec keys that must be present
  std::vector<std::string> optional;
};

/// Every family, in declaration order.
const std::vector<FamilyInfo>& family_catalog();
const FamilyInfo& family_info(FamilyTag tag);

/// Planar profile (f(s), g(s)), from expressions in s or from an integrated curve.
class Profile {
 public:
  static Profile expressions(Expr f, Expr g);
  static Profile curve(std::shared_ptr<const ProfileCurve> curve);

  std::pair<Jet, Jet> eval(const Jet& s) const;
  bool from_ode() const noexcept { return curve_ != nullptr; }
  const ProfileCurve* integrated() const noexcept { return curve_.get(); }

 private:
  std::optional<Expr> f_, g_;
  std::shared_ptr<const ProfileCurve> curve_;
};

struct FamilySpec {
  FamilyTag tag = FamilyTag::special_sqrt2;
  std::optional<Profile> profile;  // hypercylinder_rotational, so2_x_so2, rotational
  double c1 = 0.0;                 // conical_hypercylinder
  double c2 = 0.0;
  double c = 0.0;                  // tangent_cone, curve_tube
  /// tangent_cone: y(v, w) on the unit 3-sphere (4 expressions);
  /// curve_tube: alpha(w) on the unit 3-sphere (4 expressions);
  /// product_cylinder: the surface x~(s, t) (3 expressions), or the curve gamma(t) when `developable`.
  std::vector<Expr> components;
  bool developable = false;
  Domain domain;                   // empty selects default_domain(tag)
  double frame_spacing = 1e-3;     // curve_tube sampling
  std::string label;               // empty selects the tag name
};

Domain default_domain(FamilyTag tag);

/// Throws ArgumentError for invalid parameters (missing profile, curve_tube with c <= 0, ...).
Immersion make_family(const FamilySpec& spec);

/// Hypersurface with n + 1 free component expressions over the chart variables.
Immersion make_raw(std::string label, std::vector<std::string> variables, std::vector<Expr> components, Domain domain);

}  // namespace gcrkit
