#include "gcrkit/normal_frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcrkit/error.hpp"
#include "gcrkit/profile.hpp"

namespace gcrkit {
namespace {

using Vec4 = NormalFrame::Vec4;

double dot(const Vec4& a, const Vec4& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

Vec4 axpy(double a, const Vec4& x, const Vec4& y) {
  return {a * x[0] + y[0], a * x[1] + y[1], a * x[2] + y[2], a * x[3] + y[3]};
}

Vec4 scaled(double a, const Vec4& x) { return {a * x[0], a * x[1], a * x[2], a * x[3]}; }

Vec4 normalized(const Vec4& x) { return scaled(1.0 / std::sqrt(dot(x, x)), x); }

// Removes the components along the orthonormal vectors `basis`.
Vec4 reject(Vec4 v, std::initializer_list<const Vec4*> basis) {
  for (const Vec4* b : basis) v = axpy(-dot(v, *b), *b, v);
  return v;
}

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
  const double m[4][4] = {{a[0], b[0], c[0], d[0]}, {a[1], b[1], c[1], d[1]}, {a[2], b[2], c[2], d[2]},
                          {a[3], b[3], c[3], d[3]}};
  double out = 0.0;
  for (int col = 0; col < 4; ++col) {
    double minor[3][3];
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int c2 = 0; c2 < 4; ++c2) {
        if (c2 != col) minor[r - 1][cc++] = m[r][c2];
      }
    }
    const double md = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1]) -
                      minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0]) +
                      minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
    out += ((col % 2 == 0) ? 1.0 : -1.0) * m[0][col] * md;
  }
  return out;
}

struct CurveDerivs {
  Vec4 a, d1, d2, d3;
};

CurveDerivs curve_derivs(const std::vector<Expr>& alpha, double w) {
  const Jet wj = Jet::variable(0, w, 1, 3);
  CurveDerivs c;
  for (int i = 0; i < 4; ++i) {
    const Jet v = alpha[i].eval(std::span<const Jet>(&wj, alpha[i].variables().size()), 1, 3);
    c.a[i] = v.value();
    c.d1[i] = v.grad(0);
    c.d2[i] = v.hess(0, 0);
    c.d3[i] = v.third(0, 0, 0);
  }
  return c;
}

// Frame derivative that keeps A normal to alpha and alpha' without rotating about them.
Vec4 transport(const CurveDerivs& c, const Vec4& x) { return scaled(-dot(x, c.d2) / dot(c.d1, c.d1), c.d1); }

void node_derivatives(const CurveDerivs& c, const Vec4& x, Vec4& dx, Vec4& ddx) {
  const double speed2 = dot(c.d1, c.d1);
  const double lambda = dot(x, c.d2) / speed2;
  dx = scaled(-lambda, c.d1);
  const double dlambda =
      (dot(dx, c.d2) + dot(x, c.d3)) / speed2 - 2.0 * dot(x, c.d2) * dot(c.d1, c.d2) / (speed2 * speed2);
  ddx = axpy(-dlambda, c.d1, scaled(-lambda, c.d2));
}

void orthonormalize(const CurveDerivs& c, Vec4& A, Vec4& B) {
  const Vec4 ah = normalized(c.a);
  const Vec4 t = normalized(reject(c.d1, {&ah}));
  A = normalized(reject(A, {&ah, &t}));
  B = normalized(reject(B, {&ah, &t, &A}));
}

void check_curve(const CurveDerivs& c, double w) {
  if (std::abs(std::sqrt(dot(c.a, c.a)) - 1.0) > 1e-6) {
    throw ArgumentError("curve leaves the unit sphere at w = " + std::to_string(w));
  }
  if (std::sqrt(dot(c.d1, c.d1)) < 1e-9) throw ArgumentError("curve stalls at w = " + std::to_string(w));
}

}  // namespace

NormalFrame::NormalFrame(std::vector<Expr> alpha, std::vector<Sample> samples)
    : alpha_(std::move(alpha)), samples_(std::move(samples)) {
  if (samples_.size() < 2) throw ArgumentError("normal frame needs at least two samples");
  step_ = (samples_.back().w - samples_.front().w) / static_cast<double>(samples_.size() - 1);
}

NormalFrame::JetVec4 NormalFrame::curve(const Jet& w) const {
  JetVec4 out;
  for (int i = 0; i < 4; ++i) {
    out[i] = alpha_[i].eval(std::span<const Jet>(&w, alpha_[i].variables().size()), w.dims(), w.order());
  }
  return out;
}

std::pair<NormalFrame::JetVec4, NormalFrame::JetVec4> NormalFrame::frame(const Jet& w, int axis) const {
  const int order = w.order();
  const int dims = w.dims();
  if (order + 1 > Jet::kMaxOrder) throw ArgumentError("normal frame jets are limited to order 3");
  const Jet w_hi = Jet::variable(axis, w.value(), dims, order + 1);
  const JetVec4 alpha_hi = curve(w_hi);
  JetVec4 ah, t;
  Jet a2 = Jet::constant(0.0, dims, order);
  for (int i = 0; i < 4; ++i) {
    ah[i] = alpha_hi[i].truncated(order);
    t[i] = alpha_hi[i].partial(axis);
    a2 += ah[i] * ah[i];
  }
  const Jet inv_a = reciprocal(sqrt(a2));
  for (auto& v : ah) v *= inv_a;

  auto jdot = [&](const JetVec4& x, const JetVec4& y) {
    Jet acc = x[0] * y[0];
    for (int i = 1; i < 4; ++i) acc += x[i] * y[i];
    return acc;
  };
  auto reject_jet = [&](JetVec4& x, const JetVec4& b) {
    const Jet c = jdot(x, b);
    for (int i = 0; i < 4; ++i) x[i] -= c * b[i];
  };
  auto normalize_jet = [&](JetVec4& x) {
    const Jet inv = reciprocal(sqrt(jdot(x, x)));
    for (auto& v : x) v *= inv;
  };

  reject_jet(t, ah);
  normalize_jet(t);

  const double s0 = samples_.front().w;
  const double r = std::floor((w.value() - s0) / step_);
  const auto i = static_cast<std::size_t>(std::clamp(r, 0.0, static_cast<double>(samples_.size() - 2)));
  const Sample& p = samples_[i];
  const Sample& q = samples_[i + 1];
  const double h = step_;
  const Jet tau = (w - p.w) / h;
  const auto basis = quintic_hermite_basis(tau);
  auto interp = [&](const Vec4& x0, const Vec4& d0, const Vec4& a0, const Vec4& x1, const Vec4& d1, const Vec4& a1) {
    JetVec4 out;
    for (int c = 0; c < 4; ++c) {
      out[c] = basis[0] * x0[c] + basis[1] * (h * d0[c]) + basis[2] * (h * h * a0[c]) + basis[3] * (h * h * a1[c]) +
               basis[4] * (h * d1[c]) + basis[5] * x1[c];
    }
    return out;
  };
  JetVec4 A = interp(p.A, p.dA, p.ddA, q.A, q.dA, q.ddA);
  JetVec4 B = interp(p.B, p.dB, p.ddB, q.B, q.dB, q.ddB);
  reject_jet(A, ah);
  reject_jet(A, t);
  normalize_jet(A);
  reject_jet(B, ah);
  reject_jet(B, t);
  reject_jet(B, A);
  normalize_jet(B);
  return {A, B};
}

std::pair<NormalFrame::Vec4, NormalFrame::Vec4> NormalFrame::frame_value(double w) const {
  const auto [A, B] = frame(Jet::variable(0, w, 1, 0), 0);
  Vec4 a{}, b{};
  for (int i = 0; i < 4; ++i) {
    a[i] = A[i].value();
    b[i] = B[i].value();
  }
  return {a, b};
}

NormalFrame build_normal_frame(std::vector<Expr> alpha, Interval range, double spacing) {
  if (alpha.size() != 4) throw ArgumentError("curve on the 3-sphere needs four components");
  for (const Expr& e : alpha) {
    if (e.variables().size() > 1) throw ArgumentError("curve components must depend on one variable");
  }
  if (!(range.hi > range.lo) || !(spacing > 0.0)) throw ArgumentError("invalid frame range or spacing");

  const double span = range.hi - range.lo;
  const auto steps = static_cast<std::size_t>(std::max(2.0, std::ceil(span / spacing - 1e-9)));
  const double h = span / static_cast<double>(steps);

  CurveDerivs c0 = curve_derivs(alpha, range.lo);
  check_curve(c0, range.lo);
  const Vec4 ah = normalized(c0.a);
  const Vec4 t = normalized(reject(c0.d1, {&ah}));

  Vec4 A{}, B{};
  bool seeded = false;
  for (int a = 0; a < 4 && !seeded; ++a) {
    for (int b = 0; b < 4 && !seeded; ++b) {
      if (b == a) continue;
      Vec4 ea{}, eb{};
      ea[a] = 1.0;
      eb[b] = 1.0;
      const Vec4 u1 = reject(ea, {&ah, &t});
      if (std::sqrt(dot(u1, u1)) < 0.25) continue;
      const Vec4 A0 = normalized(u1);
      const Vec4 u2 = reject(eb, {&ah, &t, &A0});
      if (std::sqrt(dot(u2, u2)) < 0.25) continue;
      A = A0;
      B = normalized(u2);
      seeded = true;
    }
  }
  if (!seeded) throw ArgumentError("no admissible seed pair for the normal frame");
  if (det4(ah, t, A, B) < 0.0) B = scaled(-1.0, B);

  std::vector<NormalFrame::Sample> samples(steps + 1);
  auto record = [&](std::size_t i, double w, const CurveDerivs& c) {
    NormalFrame::Sample& s = samples[i];
    s.w = w;
    s.A = A;
    s.B = B;
    node_derivatives(c, A, s.dA, s.ddA);
    node_derivatives(c, B, s.dB, s.ddB);
  };
  record(0, range.lo, c0);

  for (std::size_t i = 0; i < steps; ++i) {
    const double w0 = range.lo + h * static_cast<double>(i);
    const double w1 = i + 1 == steps ? range.hi : range.lo + h * static_cast<double>(i + 1);
    const CurveDerivs cm = curve_derivs(alpha, w0 + 0.5 * h);
    const CurveDerivs c1 = curve_derivs(alpha, w1);
    check_curve(c1, w1);
    auto rk4 = [&](const Vec4& x) {
      const Vec4 k1 = transport(c0, x);
      const Vec4 k2 = transport(cm, axpy(0.5 * h, k1, x));
      const Vec4 k3 = transport(cm, axpy(0.5 * h, k2, x));
      const Vec4 k4 = transport(c1, axpy(h, k3, x));
      Vec4 out = x;
      for (int j = 0; j < 4; ++j) out[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      return out;
    };
    A = rk4(A);
    B = rk4(B);
    orthonormalize(c1, A, B);
    record(i + 1, w1, c1);
    c0 = c1;
  }
  return NormalFrame(std::move(alpha), std::move(samples));
}

}  // namespace gcrkit
