#pragma once

// Position-vector decomposition x = mu sin(theta) e1 + mu cos(theta) N and the
// generalized-constant-ratio test built on it.

#include <array>
#include <optional>
#include <span>

#include "gcrkit/geometry.hpp"
#include "gcrkit/immersion.hpp"

namespace gcrkit {

struct PositionAngles {
  double mu = 0.0;
  double cos_theta = 0.0;
  double theta = 0.0;
  Vec xT;              // chart coordinates
  double xT_norm = 0.0;
  bool degenerate = true;
  Vec e1;              // xT / |xT|, zero when degenerate
  Vec dtheta;          // chart gradient of theta, zero when degenerate
  Vec dmu;             // chart gradient of mu, zero when mu vanishes
};

/// Threshold below which x^T (or mu) counts as zero: 1e-8 * max(1, mu).
double tangent_threshold(double mu) noexcept;

PositionAngles position_angles(const GeometryJets& gj, const PointGeometry& pg);
PositionAngles position_angles(const Immersion& m, std::span<const double> p, const PointGeometry& pg);

struct GcrResidual {
  double primary = 0.0;    // |S e1 - <S e1, e1> e1|_g
  double secondary = 0.0;  // max over unit Y orthogonal to e1 of |Y(theta)|
};

/// Throws DegeneratePointError when pa is degenerate.
GcrResidual gcr_residual(const PositionAngles& pa, const PrincipalData& pd, const PointGeometry& pg);

/// Index into pd.k of the curvature whose direction best aligns with e1 (ties to the smaller index).
int k1_index(const PositionAngles& pa, const PrincipalData& pd, const PointGeometry& pg);

/// Unit field e1 = x^T / |x^T| at q. Throws DegeneratePointError where it is undefined.
Vec unit_tangent_field(const Immersion& m, std::span<const double> q);

/// nabla_v e1 at p in chart coordinates: central differences of the e1 field along v
/// plus the Christoffel term.
Vec covariant_derivative_of_e1(const Immersion& m, std::span<const double> p, const PointGeometry& pg, const Vec& v,
                               double step);

struct StructuralOptions {
  double step = 0.0;  // <= 0 selects 1e-4 * domain extent
  double tol_gap = kDefaultGapTolerance;
};

/// Residuals of the structural identities of GCR hypersurfaces. Entries of the
/// four-dimensional system are absent when n != 3 or the eigen-gaps are too small.
struct StructuralResiduals {
  double r_geodesic = 0.0;     // |nabla_{e1} e1|
  double r_k1 = 0.0;           // |k1 - e1(theta) + cos(theta)/mu|
  double r_theta_flat = 0.0;   // max_{i>=2} |e_i(theta)|, |e_i(mu)|
  double r_shape_coeff = 0.0;  // max_{i>=2} |nabla_{e_i} e1 - (1 + mu cos(theta) k_i)/(mu sin(theta)) e_i|
  std::optional<double> r_omega;            // omega_12(e3), omega_13(e2)
  std::array<std::optional<double>, 7> codazzi{};  // system entries a..g
  std::optional<double> r_codazzi_system;   // max over a..f
  int k1 = 0;                  // index of k1 in the ascending spectrum
};

/// Requires a nondegenerate point; throws DegeneratePointError otherwise.
StructuralResiduals structural_residuals(const Immersion& m, std::span<const double> p, const PointGeometry& pg,
                                         const PrincipalData& pd, const PositionAngles& pa,
                                         const StructuralOptions& options = {});

/// True when some ordering of k reads {a, b, a+b, ..., a+b} within tol. Needs k.size() >= 3.
bool delta2_ideal_test(std::span<const double> k, double tol);

}  // namespace gcrkit
