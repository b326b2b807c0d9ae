#include "gcrkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gcrkit/error.hpp"

namespace gcrkit {
namespace {

// Determinant of an m x m matrix (m <= 3) given by an element accessor.
template <class T, class At>
T small_det(int m, At at) {
  switch (m) {
    case 1:
      return at(0, 0);
    case 2:
      return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
    default:
      return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
             at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
             at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
  }
}

// Minor of an m x m accessor with row r and column c removed.
template <class At>
auto minor_of(At at, int r, int c) {
  return [at, r, c](int i, int j) { return at(i < r ? i : i + 1, j < c ? j : j + 1); };
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return out;
}

}  // namespace

GeometryJets geometry_jets(const Immersion& m, std::span<const double> p, int order) {
  if (order < 2 || order > Jet::kMaxOrder) throw ArgumentError("geometry jets need order 2 to 4");
  const int n = m.dim();
  if (static_cast<int>(p.size()) != n) throw ArgumentError("chart point has wrong dimension");

  GeometryJets gj;
  gj.n = n;
  gj.order = order;
  gj.chart.assign(p.begin(), p.end());

  const std::vector<Jet> comps = m.jets_at(p, order);
  if (static_cast<int>(comps.size()) != n + 1) throw ArgumentError("immersion returned wrong component count");
  for (int a = 0; a <= n; ++a) gj.x[a] = comps[a];
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a <= n; ++a) gj.xi[i][a] = gj.x[a].partial(i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int a = 0; a <= n; ++a) gj.xij[i][j][a] = gj.xi[i][a].partial(j);
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Jet acc = gj.xi[i][0] * gj.xi[j][0];
      for (int a = 1; a <= n; ++a) acc += gj.xi[i][a] * gj.xi[j][a];
      gj.g[i][j] = acc;
      gj.g[j][i] = acc;
    }
  }

  auto g_at = [&gj](int i, int j) { return gj.g[i][j]; };
  const Jet det = small_det<Jet>(n, g_at);
  gj.det_g = det.value();
  if (!(gj.det_g > kRegularityThreshold)) {
    throw SingularPointError("degenerate metric at " + format_point(p) + " (det g = " + std::to_string(gj.det_g) + ")",
                             gj.chart, gj.det_g);
  }
  const Jet inv_det = reciprocal(det);
  if (n == 1) {
    gj.g_inv[0][0] = inv_det;
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        gj.g_inv[i][j] = small_det<Jet>(n - 1, minor_of(g_at, j, i)) * inv_det * sign;
      }
    }
  }

  // Generalized cross product: N_k = (-1)^(k+n) det(X without row k), X(a, i) = x_i^a.
  auto x_at = [&gj](int a, int i) { return gj.xi[i][a]; };
  GeometryJets::JetVec cross;
  Jet norm2 = Jet::constant(0.0, n, order - 1);
  for (int k = 0; k <= n; ++k) {
    const double sign = ((k + n) % 2 == 0) ? 1.0 : -1.0;
    auto rows = [&x_at, k](int r, int c) { return x_at(r < k ? r : r + 1, c); };
    cross[k] = small_det<Jet>(n, rows) * sign;
    norm2 += cross[k] * cross[k];
  }
  const Jet inv_norm = reciprocal(sqrt(norm2));
  for (int k = 0; k <= n; ++k) gj.normal[k] = cross[k] * inv_norm;

  const int low = order - 2;
  GeometryJets::JetVec normal_low;
  for (int a = 0; a <= n; ++a) normal_low[a] = gj.normal[a].truncated(low);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Jet acc = gj.xij[i][j][0] * normal_low[0];
      for (int a = 1; a <= n; ++a) acc += gj.xij[i][j][a] * normal_low[a];
      gj.h[i][j] = acc;
      gj.h[j][i] = acc;
    }
  }

  // dg[l][i][j] = d_l g_ij
  std::array<GeometryJets::JetMat, 3> dg;
  GeometryJets::JetMat g_inv_low;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g_inv_low[i][j] = gj.g_inv[i][j].truncated(low);
      for (int l = 0; l < n; ++l) dg[l][i][j] = gj.g[i][j].partial(l);
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        Jet acc = Jet::constant(0.0, n, low);
        for (int l = 0; l < n; ++l) acc += g_inv_low[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        acc *= 0.5;
        gj.gamma[k][i][j] = acc;
        gj.gamma[k][j][i] = acc;
      }
    }
  }
  return gj;
}

PointGeometry point_geometry(const GeometryJets& gj) {
  const int n = gj.n;
  PointGeometry pg;
  pg.chart = Vec::Map(gj.chart.data(), n);
  pg.position.resize(n + 1);
  pg.normal.resize(n + 1);
  pg.jac.resize(n + 1, n);
  for (int a = 0; a <= n; ++a) {
    pg.position(a) = gj.x[a].value();
    pg.normal(a) = gj.normal[a].value();
    pg.second[a].resize(n, n);
    for (int i = 0; i < n; ++i) {
      pg.jac(a, i) = gj.xi[i][a].value();
      for (int j = 0; j < n; ++j) pg.second[a](i, j) = gj.xij[i][j][a].value();
    }
  }
  pg.metric.resize(n, n);
  pg.metric_inverse.resize(n, n);
  pg.h.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      pg.metric(i, j) = gj.g[i][j].value();
      pg.metric_inverse(i, j) = gj.g_inv[i][j].value();
      pg.h(i, j) = gj.h[i][j].value();
    }
  }
  for (int k = 0; k < n; ++k) {
    pg.christoffel[k].resize(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) pg.christoffel[k](i, j) = gj.gamma[k][i][j].value();
    }
  }
  pg.det_metric = gj.det_g;
  pg.shape = pg.metric_inverse * pg.h;
  return pg;
}

PointGeometry point_geometry(const Immersion& m, std::span<const double> p) {
  return point_geometry(geometry_jets(m, p, 2));
}

PrincipalData principal_data(const PointGeometry& pg, double tol_gap) {
  const Mat h = 0.5 * (pg.h + pg.h.transpose());
  const auto eig = generalized_eigen(h, pg.metric);
  if (!eig) {
    throw SingularPointError("metric is not positive definite at " + format_point(to_std(pg.chart)), to_std(pg.chart),
                             pg.det_metric);
  }
  PrincipalData pd;
  pd.k = eig->values;
  pd.e = eig->vectors;
  const int n = static_cast<int>(pd.k.size());
  for (int c = 0; c < n; ++c) {
    int best = 0;
    for (int r = 1; r < n; ++r) {
      if (std::abs(pd.e(r, c)) > std::abs(pd.e(best, c))) best = r;
    }
    if (pd.e(best, c) < 0.0) pd.e.col(c) *= -1.0;
  }
  pd.gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pd.gap = std::min(pd.gap, std::abs(pd.k(i) - pd.k(j)));
  }
  pd.distinct_count = n > 0 ? 1 : 0;
  for (int i = 1; i < n; ++i) {
    if (pd.k(i) - pd.k(i - 1) > tol_gap) ++pd.distinct_count;
  }
  return pd;
}

CurvatureInvariants curvature_invariants(std::span<const double> k) {
  const int n = static_cast<int>(k.size());
  std::vector<double> e(static_cast<std::size_t>(n) + 1, 0.0);
  e[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j >= 1; --j) e[j] += k[i] * e[j - 1];
  }
  CurvatureInvariants out;
  out.s.resize(n);
  out.H.resize(n);
  for (int j = 1; j <= n; ++j) {
    out.s(j - 1) = e[j];
    out.H(j - 1) = e[j] / binomial(n, j);
  }
  return out;
}

CurvatureInvariants curvature_invariants(const PrincipalData& pd, int n) {
  if (pd.k.size() != n) throw ArgumentError("principal data dimension mismatch");
  return curvature_invariants(std::span<const double>(pd.k.data(), static_cast<std::size_t>(n)));
}

double codazzi_residual(const GeometryJets& gj) {
  if (gj.order < 3) throw ArgumentError("codazzi residual needs order-3 jets");
  const int n = gj.n;
  auto h = [&gj](int i, int j) { return gj.h[i][j].value(); };
  auto gamma = [&gj](int k, int i, int j) { return gj.gamma[k][i][j].value(); };
  // nabla[k][i][j] = (nabla_k h)_ij
  double nabla[3][3][3];
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double v = gj.h[i][j].partial(k).value();
        for (int l = 0; l < n; ++l) v -= gamma(l, k, i) * h(l, j) + gamma(l, k, j) * h(i, l);
        nabla[k][i][j] = v;
      }
    }
  }
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(nabla[k][i][j] - nabla[i][k][j]));
    }
  }
  return worst;
}

double codazzi_residual(const Immersion& m, std::span<const double> p) {
  return codazzi_residual(geometry_jets(m, p, 3));
}

RiemannTensor riemann_tensor(const GeometryJets& gj) {
  if (gj.order < 3) throw ArgumentError("curvature tensor needs order-3 jets");
  const int n = gj.n;
  auto gamma = [&gj](int k, int i, int j) { return gj.gamma[k][i][j].value(); };
  // dgamma[a][m][i][j] = d_a Gamma^m_ij
  double dgamma[3][3][3][3];
  for (int a = 0; a < n; ++a) {
    for (int mm = 0; mm < n; ++mm) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) dgamma[a][mm][i][j] = gj.gamma[mm][i][j].partial(a).value();
      }
    }
  }
  RiemannTensor r{};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double up[3] = {0.0, 0.0, 0.0};
        for (int mm = 0; mm < n; ++mm) {
          double v = dgamma[i][mm][j][k] - dgamma[j][mm][i][k];
          for (int p = 0; p < n; ++p) v += gamma(p, j, k) * gamma(mm, i, p) - gamma(p, i, k) * gamma(mm, j, p);
          up[mm] = v;
        }
        for (int l = 0; l < n; ++l) {
          double v = 0.0;
          for (int mm = 0; mm < n; ++mm) v += gj.g[mm][l].value() * up[mm];
          r[i][j][k][l] = v;
        }
      }
    }
  }
  return r;
}

double gauss_residual(const GeometryJets& gj) {
  const RiemannTensor r = riemann_tensor(gj);
  const int n = gj.n;
  auto h = [&gj](int i, int j) { return gj.h[i][j].value(); };
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          const double rhs = h(j, k) * h(i, l) - h(i, k) * h(j, l);
          worst = std::max(worst, std::abs(r[i][j][k][l] - rhs));
        }
      }
    }
  }
  return worst;
}

double gauss_residual(const Immersion& m, std::span<const double> p) {
  return gauss_residual(geometry_jets(m, p, 3));
}

Mat sectional_curvatures(const Immersion& m, std::span<const double> p) {
  const GeometryJets gj = geometry_jets(m, p, 3);
  const RiemannTensor r = riemann_tensor(gj);
  const int n = gj.n;
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double gii = gj.g[i][i].value();
      const double gjj = gj.g[j][j].value();
      const double gij = gj.g[i][j].value();
      out(i, j) = r[i][j][j][i] / (gii * gjj - gij * gij);
    }
  }
  return out;
}

PrincipalData aligned_principal_data(const Immersion& m, std::span<const double> q, const Mat& reference,
                                     const Mat& g_ref, double tol_gap) {
  PrincipalData pd = principal_data(point_geometry(m, q), tol_gap);
  for (int c = 0; c < pd.e.cols(); ++c) {
    if (pd.e.col(c).dot(g_ref * reference.col(c)) < 0.0) pd.e.col(c) *= -1.0;
  }
  return pd;
}

ConnectionForms frame_connection_forms(const Immersion& m, std::span<const double> p, const PrincipalData& pd,
                                       double step, double tol_gap) {
  if (pd.gap < tol_gap) {
    throw NearUmbilicError("principal curvatures too close at " + format_point(p) +
                           " (gap = " + std::to_string(pd.gap) + ")");
  }
  if (step <= 0.0) step = 1e-4 * m.extent();
  const PointGeometry pg = point_geometry(m, p);
  const int n = pg.dim();

  ConnectionForms w;
  w.n = n;
  std::vector<double> q(p.begin(), p.end());
  for (int l = 0; l < n; ++l) {
    const Vec v = pd.e.col(l);
    for (int a = 0; a < n; ++a) q[a] = p[a] + step * v(a);
    const PrincipalData plus = aligned_principal_data(m, q, pd.e, pg.metric, tol_gap);
    for (int a = 0; a < n; ++a) q[a] = p[a] - step * v(a);
    const PrincipalData minus = aligned_principal_data(m, q, pd.e, pg.metric, tol_gap);

    for (int i = 0; i < n; ++i) {
      const Vec ei = pd.e.col(i);
      Vec cov = (plus.e.col(i) - minus.e.col(i)) / (2.0 * step);
      for (int k = 0; k < n; ++k) cov(k) += v.dot(pg.christoffel[k] * ei);
      const Vec g_cov = pg.metric * cov;
      for (int j = 0; j < n; ++j) w(i, j, l) = g_cov.dot(pd.e.col(j));
    }
  }
  for (int l = 0; l < n; ++l) {
    for (int i = 0; i < n; ++i) {
      w(i, i, l) = 0.0;
      for (int j = i + 1; j < n; ++j) {
        const double a = 0.5 * (w(i, j, l) - w(j, i, l));
        w(i, j, l) = a;
        w(j, i, l) = -a;
      }
    }
  }
  return w;
}

}  // namespace gcrkit
