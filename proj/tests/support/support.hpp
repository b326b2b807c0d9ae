#pragma once

#include <array>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gcrkit/catalog.hpp"
#include "gcrkit/expr.hpp"
#include "gcrkit/immersion.hpp"

namespace gcrkit::test {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);

Profile profile(const std::string& f, const std::string& g);
std::vector<Expr> exprs(const std::vector<std::string>& texts, const std::vector<std::string>& vars);

/// A valid instance of `tag` with randomly drawn parameters.
Immersion random_family(FamilyTag tag, Rng& rng);

/// Uniform point of the domain box.
std::vector<double> random_point(const Domain& d, Rng& rng);
/// Uniform point of the domain box with det g > min_det; gives up after max_tries.
std::vector<double> random_regular_point(const Immersion& m, Rng& rng, double min_det = 1e-6, int max_tries = 1000);

// Fixed surfaces shared by several suites.
Immersion hyperplane();                          // (s, t, u, 0) on [0.5, 2] x [0.5, 3] x [0.5, 4]
Immersion sphere_about_origin(double r);         // rotational family over a circle centred at 0
Immersion so2_torus();                           // so2_x_so2 with f = 2 + cos s, g = sin s
Immersion so2_generic();                         // so2_x_so2 with f = 2 + cos s, g = 1.5 + sin s
Immersion torus_hypercylinder();                 // f = 2 + cos s, g = sin s, not GCR
Immersion spherical_hypercylinder(double r);     // S^2(r) x E
Immersion circular_hypercylinder(double r);      // S^1(r) x E^2
Immersion conical(double c1, double c2);
Immersion special_sqrt2();
Immersion tangent_cone_clifford(double c);
Immersion curve_tube_great_circle(double c);
Immersion curve_tube_torus_knot(double c);
Immersion rectifying_developable();              // tangent developable of a rectifying curve, times a line
Immersion so2_from_ode();                        // so2_x_so2 over an integrated profile

// Independent oracles.

/// Mixed partial derivative by nested central differences with step h.
double fd_partial(const std::function<double(std::span<const double>)>& f, std::span<const double> p,
                  const std::vector<int>& axes, double h);
/// fd_partial at h and h/2 combined by one Richardson step, so the error is O(h^4).
double fd_partial_richardson(const std::function<double(std::span<const double>)>& f, std::span<const double> p,
                             const std::vector<int>& axes, double h);

/// Real roots of x^3 + a x^2 + b x + c = 0 with three real roots, ascending (trigonometric form).
std::array<double, 3> cubic_roots(double a, double b, double c);

/// Elementary symmetric functions by summing products over every subset.
std::vector<double> subset_symmetric(std::span<const double> k);

/// Brute-force delta(2) check: some ordering (a, b, c...) with every remaining entry equal to a + b.
bool delta2_by_permutations(std::vector<double> k, double tol);

}  // namespace gcrkit::test
