#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "gcrkit/expr.hpp"
#include "gcrkit/immersion.hpp"
#include "gcrkit/jet.hpp"

namespace gcrkit {

struct ProfileInit {
  double f = 0.0;
  double g = 0.0;
  double phi = 0.0;  // initial tangent angle
};

/// Unit-speed planar curve (f(s), g(s)) with prescribed curvature, sampled on a uniform grid.
/// Between samples it is evaluated by the quintic Hermite interpolant of (f, f', f'') and
/// (g, g', g''), so jets of any order up to the jet limit are available.
class ProfileCurve {
 public:
  ProfileCurve(std::vector<double> s, std::vector<double> f, std::vector<double> g, std::vector<double> phi,
               std::vector<double> kappa);

  const std::vector<double>& s() const noexcept { return s_; }
  const std::vector<double>& f() const noexcept { return f_; }
  const std::vector<double>& g() const noexcept { return g_; }
  const std::vector<double>& phi() const noexcept { return phi_; }
  const std::vector<double>& kappa() const noexcept { return kappa_; }
  Interval range() const noexcept { return {s_.front(), s_.back()}; }
  double step() const noexcept { return step_; }

  /// (f, g) at s. Arguments outside the sampled range use the nearest end cell.
  std::pair<Jet, Jet> eval(const Jet& s) const;
  std::array<double, 2> value(double s) const;

 private:
  std::size_t cell(double s) const noexcept;

  std::vector<double> s_, f_, g_, phi_, kappa_;
  double step_ = 0.0;
};

/// Classical RK4 on phi' = kappa(s), f' = cos(phi), g' = sin(phi) from range.lo to range.hi.
/// The step is shrunk slightly so that it divides the range evenly.
/// Throws IntegrationError when kappa cannot be evaluated.
ProfileCurve integrate_profile(const Expr& kappa, Interval range, ProfileInit init, double step);

/// Quintic Hermite basis on [0, 1]: weights of p0, p0', p0'', p1'', p1', p1 (derivatives
/// already scaled to the unit interval).
template <class T>
std::array<T, 6> quintic_hermite_basis(const T& tau) {
  const T t2 = tau * tau;
  const T t3 = t2 * tau;
  const T t4 = t3 * tau;
  const T t5 = t4 * tau;
  return {1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5,
          tau - 6.0 * t3 + 8.0 * t4 - 3.0 * t5,
          0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5,
          0.5 * t3 - t4 + 0.5 * t5,
          -4.0 * t3 + 7.0 * t4 - 3.0 * t5,
          10.0 * t3 - 15.0 * t4 + 6.0 * t5};
}

}  // namespace gcrkit
