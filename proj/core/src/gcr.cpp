#include "gcrkit/gcr.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gcrkit/error.hpp"

namespace gcrkit {
namespace {

struct TangentPart {
  double mu = 0.0;
  Vec xT;
  double norm = 0.0;
};

TangentPart tangent_part(const PointGeometry& pg) {
  TangentPart t;
  t.mu = pg.position.norm();
  const Vec rhs = pg.jac.transpose() * pg.position;
  t.xT = pg.metric_inverse * rhs;
  t.norm = std::sqrt(std::max(0.0, t.xT.dot(pg.metric * t.xT)));
  return t;
}

double g_norm(const PointGeometry& pg, const Vec& v) { return std::sqrt(std::max(0.0, v.dot(pg.metric * v))); }

std::vector<double> displaced(std::span<const double> p, const Vec& v, double h) {
  std::vector<double> q(p.begin(), p.end());
  for (std::size_t a = 0; a < q.size(); ++a) q[a] += h * v(static_cast<Eigen::Index>(a));
  return q;
}

// Central difference of the sorted spectrum along the chart vector v.
Vec spectrum_derivative(const Immersion& m, std::span<const double> p, const Vec& v, double h, double tol_gap) {
  const auto qp = displaced(p, v, h);
  const auto qm = displaced(p, v, -h);
  const Vec kp = principal_data(point_geometry(m, qp), tol_gap).k;
  const Vec km = principal_data(point_geometry(m, qm), tol_gap).k;
  return (kp - km) / (2.0 * h);
}

}  // namespace

double tangent_threshold(double mu) noexcept { return 1e-8 * std::max(1.0, mu); }

PositionAngles position_angles(const GeometryJets& gj, const PointGeometry& pg) {
  const int n = pg.dim();
  const TangentPart t = tangent_part(pg);
  PositionAngles pa;
  pa.mu = t.mu;
  pa.xT = t.xT;
  pa.xT_norm = t.norm;
  pa.e1 = Vec::Zero(n);
  pa.dtheta = Vec::Zero(n);
  pa.dmu = Vec::Zero(n);
  const double eps = tangent_threshold(t.mu);
  pa.degenerate = t.norm < eps || t.mu < eps;

  if (t.mu > 0.0) {
    pa.cos_theta = std::clamp(pg.position.dot(pg.normal) / t.mu, -1.0, 1.0);
    pa.dmu = pg.jac.transpose() * pg.position / t.mu;
  }
  pa.theta = std::acos(pa.cos_theta);
  if (pa.degenerate) return pa;

  pa.e1 = t.xT / t.norm;
  const int low = gj.order - 1;
  Jet dot = Jet::constant(0.0, n, low);
  Jet mu2 = Jet::constant(0.0, n, low);
  for (int a = 0; a <= n; ++a) {
    const Jet xa = gj.x[a].truncated(low);
    dot += xa * gj.normal[a];
    mu2 += xa * xa;
  }
  const Jet cos_theta = dot / sqrt(mu2);
  const double sin_theta = std::sin(pa.theta);
  for (int i = 0; i < n; ++i) pa.dtheta(i) = -cos_theta.grad(i) / sin_theta;
  return pa;
}

PositionAngles position_angles(const Immersion& m, std::span<const double> p, const PointGeometry& pg) {
  return position_angles(geometry_jets(m, p, 2), pg);
}

GcrResidual gcr_residual(const PositionAngles& pa, const PrincipalData& pd, const PointGeometry& pg) {
  (void)pd;
  if (pa.degenerate) {
    throw DegeneratePointError("tangential position vanishes at " + format_point(to_std(pg.chart)));
  }
  GcrResidual r;
  const Vec se1 = pg.shape * pa.e1;
  const Vec off = se1 - pa.e1 * pa.e1.dot(pg.metric * se1);
  r.primary = g_norm(pg, off);
  const Vec grad = pg.metric_inverse * pa.dtheta;
  const Vec perp = grad - pa.e1 * pa.dtheta.dot(pa.e1);
  r.secondary = g_norm(pg, perp);
  return r;
}

int k1_index(const PositionAngles& pa, const PrincipalData& pd, const PointGeometry& pg) {
  const Vec ge1 = pg.metric * pa.e1;
  int best = 0;
  double best_val = -1.0;
  for (int i = 0; i < pd.e.cols(); ++i) {
    const double v = std::abs(pd.e.col(i).dot(ge1));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  return best;
}

Vec unit_tangent_field(const Immersion& m, std::span<const double> q) {
  const PointGeometry pg = point_geometry(m, q);
  const TangentPart t = tangent_part(pg);
  const double eps = tangent_threshold(t.mu);
  if (t.norm < eps || t.mu < eps) throw DegeneratePointError("tangential position vanishes at " + format_point(q));
  return t.xT / t.norm;
}

Vec covariant_derivative_of_e1(const Immersion& m, std::span<const double> p, const PointGeometry& pg, const Vec& v,
                               double step) {
  const int n = pg.dim();
  const Vec ep = unit_tangent_field(m, displaced(p, v, step));
  const Vec em = unit_tangent_field(m, displaced(p, v, -step));
  const Vec e1 = unit_tangent_field(m, p);
  Vec out = (ep - em) / (2.0 * step);
  for (int k = 0; k < n; ++k) out(k) += v.dot(pg.christoffel[k] * e1);
  return out;
}

StructuralResiduals structural_residuals(const Immersion& m, std::span<const double> p, const PointGeometry& pg,
                                         const PrincipalData& pd, const PositionAngles& pa,
                                         const StructuralOptions& options) {
  if (pa.degenerate) {
    throw DegeneratePointError("tangential position vanishes at " + format_point(p));
  }
  const int n = pg.dim();
  const double h = options.step > 0.0 ? options.step : 1e-4 * m.extent();
  const double mu = pa.mu;
  const double cos_t = pa.cos_theta;
  const double sin_t = std::sin(pa.theta);

  StructuralResiduals r;
  r.k1 = k1_index(pa, pd, pg);
  std::vector<int> others;
  for (int i = 0; i < n; ++i) {
    if (i != r.k1) others.push_back(i);
  }
  auto coefficient = [&](double k) { return (1.0 + mu * cos_t * k) / (mu * sin_t); };

  r.r_geodesic = g_norm(pg, covariant_derivative_of_e1(m, p, pg, pa.e1, h));
  const double k1 = pd.k(r.k1);
  r.r_k1 = std::abs(k1 - pa.dtheta.dot(pa.e1) + cos_t / mu);

  // Principal frame adapted to e1: when k1 is a repeated curvature the solver's basis of
  // its eigenspace need not contain e1, so the remaining directions are made g-orthogonal to it.
  Mat frame = pd.e;
  frame.col(r.k1) = pa.e1;
  for (std::size_t a = 0; a < others.size(); ++a) {
    Vec v = pd.e.col(others[a]);
    v -= pa.e1 * pa.e1.dot(pg.metric * v);
    for (std::size_t b = 0; b < a; ++b) {
      const Vec u = frame.col(others[b]);
      v -= u * u.dot(pg.metric * v);
    }
    frame.col(others[a]) = v / g_norm(pg, v);
  }

  std::vector<Vec> nabla_e1(static_cast<std::size_t>(n));
  for (int i : others) {
    const Vec ei = frame.col(i);
    r.r_theta_flat = std::max({r.r_theta_flat, std::abs(pa.dtheta.dot(ei)), std::abs(pa.dmu.dot(ei))});
    nabla_e1[i] = covariant_derivative_of_e1(m, p, pg, ei, h);
    r.r_shape_coeff = std::max(r.r_shape_coeff, g_norm(pg, nabla_e1[i] - coefficient(pd.k(i)) * ei));
  }
  if (n != 3) return r;

  const int i2 = others[0];
  const int i3 = others[1];
  const Vec e2 = frame.col(i2);
  const Vec e3 = frame.col(i3);
  r.r_omega = std::max(std::abs(nabla_e1[i3].dot(pg.metric * e2)), std::abs(nabla_e1[i2].dot(pg.metric * e3)));

  const double k1_gap = std::min(std::abs(k1 - pd.k(i2)), std::abs(k1 - pd.k(i3)));
  const double tol = options.tol_gap;
  std::optional<Vec> dk_e2;
  std::optional<Vec> dk_e3;
  if (k1_gap >= tol) {
    dk_e2 = spectrum_derivative(m, p, e2, h, tol);
    dk_e3 = spectrum_derivative(m, p, e3, h, tol);
    r.codazzi[0] = std::max(std::abs((*dk_e2)(r.k1)), std::abs((*dk_e3)(r.k1)));

    // e1(k1) as a function on the chart, differentiated again along e2 and e3.
    auto e1_k1 = [&](std::span<const double> q) {
      return spectrum_derivative(m, q, unit_tangent_field(m, q), h, tol)(r.k1);
    };
    auto nested = [&](const Vec& v) {
      return (e1_k1(displaced(p, v, h)) - e1_k1(displaced(p, v, -h))) / (2.0 * h);
    };
    r.codazzi[6] = std::max(std::abs(nested(e2)), std::abs(nested(e3)));
  }
  if (pd.gap >= tol) {
    const double k2 = pd.k(i2);
    const double k3 = pd.k(i3);
    const Vec dk_e1 = spectrum_derivative(m, p, pa.e1, h, tol);
    r.codazzi[1] = std::abs(dk_e1(i2) - coefficient(k2) * (k1 - k2));
    r.codazzi[2] = std::abs(dk_e1(i3) - coefficient(k3) * (k1 - k3));
    const ConnectionForms w = frame_connection_forms(m, p, pd, h, tol);
    r.codazzi[3] = std::abs(w(i2, i3, r.k1) * (k2 - k3));
    r.codazzi[4] = std::abs((*dk_e2)(i3) - w(i2, i3, i3) * (k2 - k3));
    r.codazzi[5] = std::abs((*dk_e3)(i2) - w(i2, i3, i2) * (k2 - k3));
  }
  for (int i = 0; i < 6; ++i) {
    if (r.codazzi[i]) r.r_codazzi_system = std::max(r.r_codazzi_system.value_or(0.0), *r.codazzi[i]);
  }
  return r;
}

bool delta2_ideal_test(std::span<const double> k, double tol) {
  const std::size_t n = k.size();
  if (n < 3) throw ArgumentError("delta(2) test needs at least three principal curvatures");
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double sum = k[a] + k[b];
      bool all = true;
      for (std::size_t c = 0; c < n && all; ++c) {
        if (c != a && c != b) all = std::abs(k[c] - sum) <= tol;
      }
      if (all) return true;
    }
  }
  return false;
}

}  // namespace gcrkit
