#pragma once

#include <array>
#include <vector>

#include "gcrkit/expr.hpp"
#include "gcrkit/immersion.hpp"
#include "gcrkit/jet.hpp"

namespace gcrkit {

/// Orthonormal frame (A, B) of the normal bundle of a curve alpha on the unit 3-sphere,
/// sampled along w and interpolated between samples.
class NormalFrame {
 public:
  using Vec4 = std::array<double, 4>;
  using JetVec4 = std::array<Jet, 4>;

  struct Sample {
    double w = 0.0;
    Vec4 A{}, B{};
    Vec4 dA{}, dB{};
    Vec4 ddA{}, ddB{};
  };

  NormalFrame(std::vector<Expr> alpha, std::vector<Sample> samples);

  const std::vector<Sample>& samples() const noexcept { return samples_; }
  const std::vector<Expr>& alpha() const noexcept { return alpha_; }
  Interval range() const noexcept { return {samples_.front().w, samples_.back().w}; }

  /// alpha(w) as jets; `w` must be the coordinate jet of some chart axis.
  JetVec4 curve(const Jet& w) const;
  /// (A, B) at w. The interpolant is re-projected onto the normal space of alpha at w, so
  /// the orthonormality constraints hold to rounding at every w and to every jet order.
  /// `w` must be the coordinate jet of chart axis `axis`.
  std::pair<JetVec4, JetVec4> frame(const Jet& w, int axis) const;
  std::pair<Vec4, Vec4> frame_value(double w) const;

 private:
  std::vector<Expr> alpha_;
  std::vector<Sample> samples_;
  double step_ = 0.0;
};

/// Builds the frame on [range.lo, range.hi] with roughly `spacing` between samples.
/// Seeds come from canonical basis pairs Gram-Schmidt-reduced against alpha and alpha'
/// at range.lo; continuation transports the frame without rotation about alpha' and
/// re-orthonormalizes at every sample.
/// Throws ArgumentError when alpha is not 4 expressions in one variable, leaves the unit sphere, or stalls.
NormalFrame build_normal_frame(std::vector<Expr> alpha, Interval range, double spacing = 1e-3);

}  // namespace gcrkit
