#pragma once

// Per-point geometry of a hypersurface x: U subset R^n -> R^(n+1).
//
// Conventions: g_ij = <x_i, x_j>; N is the normalized generalized cross product of
// x_1..x_n, oriented so that {x_1, ..., x_n, N} is positively oriented;
// h_ij = <x_ij, N>; S = g^{-1} h; Gamma^k_ij from exact jet derivatives of g.

#include <array>
#include <span>
#include <vector>

#include "gcrkit/immersion.hpp"
#include "gcrkit/jet.hpp"
#include "gcrkit/linalg.hpp"

namespace gcrkit {

/// det g at or below this value marks a singular chart point.
inline constexpr double kRegularityThreshold = 1e-10;
inline constexpr double kDefaultGapTolerance = 1e-4;

struct PointGeometry {
  Vec chart;                     // n
  Vec position;                  // n + 1
  Mat jac;                       // (n + 1) x n, column i = x_i
  std::array<Mat, 4> second;     // second[a](i, j) = d^2 x^a / du_i du_j
  Mat metric;                    // n x n
  Mat metric_inverse;            // n x n
  double det_metric = 0.0;
  Vec normal;                    // n + 1, unit
  Mat h;                         // n x n
  std::array<Mat, 3> christoffel;  // christoffel[k](i, j) = Gamma^k_ij
  Mat shape;                     // S = g^{-1} h

  int dim() const noexcept { return static_cast<int>(chart.size()); }
  /// Ambient image of a chart vector.
  Vec push_forward(const Vec& v) const { return jac * v; }
  double inner(const Vec& a, const Vec& b) const { return a.dot(metric * b); }
};

struct PrincipalData {
  Vec k;         // ascending
  Mat e;         // columns: g-orthonormal principal directions in chart coordinates
  double gap = 0.0;  // min pairwise |k_i - k_j|
  int distinct_count = 0;
};

struct CurvatureInvariants {
  Vec s;  // elementary symmetric functions s_1..s_n
  Vec H;  // H_k = s_k / C(n, k)
};

/// Jet-valued derivative bundle at one chart point. Position jets have order `order`;
/// every derived quantity loses one order per chart derivative it contains.
struct GeometryJets {
  using JetVec = std::array<Jet, 4>;
  using JetMat = std::array<std::array<Jet, 3>, 3>;

  int n = 0;
  int order = 0;
  std::vector<double> chart;
  JetVec x;                                  // order
  std::array<JetVec, 3> xi;                  // order - 1
  std::array<std::array<JetVec, 3>, 3> xij;  // order - 2
  JetMat g;                                  // order - 1
  JetMat g_inv;                              // order - 1
  double det_g = 0.0;
  JetVec normal;                             // order - 1
  JetMat h;                                  // order - 2
  std::array<JetMat, 3> gamma;               // gamma[k][i][j], order - 2
};

/// Builds the jet bundle from position jets of the requested order (2..4).
/// Throws SingularPointError when det g <= kRegularityThreshold.
GeometryJets geometry_jets(const Immersion& m, std::span<const double> p, int order);

PointGeometry point_geometry(const GeometryJets& gj);
PointGeometry point_geometry(const Immersion& m, std::span<const double> p);

/// Generalized symmetric eigenproblem h v = k g v via Cholesky reduction and cyclic Jacobi.
/// Eigenvectors are sign-fixed so their largest-magnitude chart component is positive.
PrincipalData principal_data(const PointGeometry& pg, double tol_gap = kDefaultGapTolerance);

CurvatureInvariants curvature_invariants(std::span<const double> k);
CurvatureInvariants curvature_invariants(const PrincipalData& pd, int n);

/// max |(nabla_k h)_ij - (nabla_i h)_kj|; needs a bundle of order >= 3.
double codazzi_residual(const GeometryJets& gj);
double codazzi_residual(const Immersion& m, std::span<const double> p);

/// R_ijkl = <R(d_i, d_j) d_k, d_l> from Christoffel symbols and their derivatives.
using RiemannTensor = std::array<std::array<std::array<std::array<double, 3>, 3>, 3>, 3>;
RiemannTensor riemann_tensor(const GeometryJets& gj);

/// max |R_ijkl - (h_jk h_il - h_ik h_jl)|; needs a bundle of order >= 3.
double gauss_residual(const GeometryJets& gj);
double gauss_residual(const Immersion& m, std::span<const double> p);

/// Intrinsic sectional curvature of the coordinate planes, K(i, j) = R_ijji / (g_ii g_jj - g_ij^2).
Mat sectional_curvatures(const Immersion& m, std::span<const double> p);

/// Connection forms of the principal frame, omega(i, j, l) = <nabla_{e_l} e_i, e_j>.
struct ConnectionForms {
  int n = 0;
  std::array<double, 27> values{};

  double operator()(int i, int j, int l) const { return values[static_cast<std::size_t>((i * 3 + j) * 3 + l)]; }
  double& operator()(int i, int j, int l) { return values[static_cast<std::size_t>((i * 3 + j) * 3 + l)]; }
};

/// Central differences of sign-aligned principal frames along each e_l, with the
/// Christoffel correction, antisymmetrized. `step <= 0` selects 1e-4 * domain extent.
/// Throws NearUmbilicError when pd.gap < tol_gap.
ConnectionForms frame_connection_forms(const Immersion& m, std::span<const double> p, const PrincipalData& pd,
                                       double step = 0.0, double tol_gap = kDefaultGapTolerance);

/// Principal data re-evaluated at q with each eigenvector's sign aligned to `reference`
/// (columns compared through the metric `g_ref`).
PrincipalData aligned_principal_data(const Immersion& m, std::span<const double> q, const Mat& reference,
                                     const Mat& g_ref, double tol_gap = kDefaultGapTolerance);

}  // namespace gcrkit
