#include "gcrkit/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gcrkit/error.hpp"

namespace gcrkit {

ProfileCurve::ProfileCurve(std::vector<double> s, std::vector<double> f, std::vector<double> g,
                           std::vector<double> phi, std::vector<double> kappa)
    : s_(std::move(s)), f_(std::move(f)), g_(std::move(g)), phi_(std::move(phi)), kappa_(std::move(kappa)) {
  const std::size_t n = s_.size();
  if (n < 2 || f_.size() != n || g_.size() != n || phi_.size() != n || kappa_.size() != n) {
    throw ArgumentError("profile curve needs at least two consistent samples");
  }
  step_ = (s_.back() - s_.front()) / static_cast<double>(n - 1);
}

std::size_t ProfileCurve::cell(double s) const noexcept {
  const double r = std::floor((s - s_.front()) / step_);
  const double last = static_cast<double>(s_.size() - 2);
  return static_cast<std::size_t>(std::clamp(r, 0.0, last));
}

std::pair<Jet, Jet> ProfileCurve::eval(const Jet& s) const {
  const std::size_t i = cell(s.value());
  const double h = step_;
  const Jet tau = (s - s_[i]) / h;
  const auto w = quintic_hermite_basis(tau);
  auto interp = [&](double p0, double d0, double a0, double p1, double d1, double a1) {
    return w[0] * p0 + w[1] * (h * d0) + w[2] * (h * h * a0) + w[3] * (h * h * a1) + w[4] * (h * d1) + w[5] * p1;
  };
  const std::size_t j = i + 1;
  Jet f = interp(f_[i], std::cos(phi_[i]), -std::sin(phi_[i]) * kappa_[i], f_[j], std::cos(phi_[j]),
                 -std::sin(phi_[j]) * kappa_[j]);
  Jet g = interp(g_[i], std::sin(phi_[i]), std::cos(phi_[i]) * kappa_[i], g_[j], std::sin(phi_[j]),
                 std::cos(phi_[j]) * kappa_[j]);
  return {f, g};
}

std::array<double, 2> ProfileCurve::value(double s) const {
  const auto [f, g] = eval(Jet::constant(s, 1, 0));
  return {f.value(), g.value()};
}

ProfileCurve integrate_profile(const Expr& kappa, Interval range, ProfileInit init, double step) {
  if (!(step > 0.0)) throw ArgumentError("profile step must be positive");
  if (!(range.hi > range.lo)) throw ArgumentError("profile range must be nonempty");
  if (kappa.variables().size() > 1) throw ArgumentError("curvature must be a function of s alone");

  const double span = range.hi - range.lo;
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span / step - 1e-9)));
  const double h = span / static_cast<double>(steps);

  double last_good = range.lo;
  auto k_at = [&](double s) {
    try {
      const double v = kappa.variables().empty() ? kappa.eval_real(std::span<const double>{})
                                                 : kappa.eval_real(std::span<const double>(&s, 1));
      if (!std::isfinite(v)) throw DomainError("curvature is not finite");
      return v;
    } catch (const Error& e) {
      throw IntegrationError("curvature evaluation failed at s = " + std::to_string(s) + ": " + e.what(), last_good);
    }
  };

  std::vector<double> s(steps + 1), f(steps + 1), g(steps + 1), phi(steps + 1), kap(steps + 1);
  s[0] = range.lo;
  f[0] = init.f;
  g[0] = init.g;
  phi[0] = init.phi;
  kap[0] = k_at(range.lo);
  for (std::size_t i = 0; i < steps; ++i) {
    const double s0 = s[i];
    const double sm = s0 + 0.5 * h;
    const double s1 = i + 1 == steps ? range.hi : range.lo + h * static_cast<double>(i + 1);
    const double km = k_at(sm);
    const double k1v = k_at(s1);
    // phi' depends on s only, f' and g' on phi only.
    const double p0 = phi[i];
    const double p2 = p0 + 0.5 * h * kap[i];
    const double p3 = p0 + 0.5 * h * km;
    const double p4 = p0 + h * km;
    phi[i + 1] = p0 + h / 6.0 * (kap[i] + 4.0 * km + k1v);
    f[i + 1] = f[i] + h / 6.0 * (std::cos(p0) + 2.0 * std::cos(p2) + 2.0 * std::cos(p3) + std::cos(p4));
    g[i + 1] = g[i] + h / 6.0 * (std::sin(p0) + 2.0 * std::sin(p2) + 2.0 * std::sin(p3) + std::sin(p4));
    s[i + 1] = s1;
    kap[i + 1] = k1v;
    last_good = s1;
  }
  return ProfileCurve(std::move(s), std::move(f), std::move(g), std::move(phi), std::move(kap));
}

}  // namespace gcrkit
