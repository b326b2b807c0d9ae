#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gcrkit/jet.hpp"

namespace gcrkit {

using ScalarField = std::function<double(std::span<const double>)>;

/// Central-difference estimate of derivatives through order 3 (truncation O(h^2)).
///
/// Test oracle only. When `step` is empty each derivative order uses its own
/// round-off balanced step eps^(1/(order+2)) scaled by max(1, |p_i|) per axis.
/// When `box` is given, a stencil point outside it raises OracleError.
Jet finite_difference_jet(const ScalarField& f, std::span<const double> point,
                          std::optional<double> step = std::nullopt,
                          const std::vector<std::pair<double, double>>* box = nullptr);

}  // namespace gcrkit
