#pragma once

// Truncated multivariate Taylor arithmetic ("jets").
//
// A Jet stores the Taylor coefficients of a scalar field about a chart point in
// graded monomial order. Up to three chart variables and derivative order four
// are supported; geometry code requests order 2 (fundamental forms) or 3
// (Gauss/Codazzi residuals), and catalog families whose parametrization is itself
// built from first derivatives of user expressions evaluate those at one order
// higher and take a partial.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>

namespace gcrkit {

enum class Elementary { sin, cos, tan, exp, log, sqrt, abs, atan };

class Jet {
 public:
  static constexpr int kMaxVars = 3;
  static constexpr int kMaxOrder = 4;
  static constexpr int kMaxTerms = 35;  // monomials of degree <= 4 in 3 variables

  /// Order-0 zero in one variable.
  Jet() = default;

  static Jet constant(double value, int dims, int order);
  /// Coordinate function u_index at `value`.
  static Jet variable(int index, double value, int dims, int order);

  int dims() const noexcept { return dims_; }
  int order() const noexcept { return order_; }

  double value() const noexcept { return coeff_[0]; }
  double grad(int i) const;
  double hess(int i, int j) const;
  double third(int i, int j, int k) const;
  double fourth(int i, int j, int k, int l) const;
  /// Mixed partial derivative for an arbitrary list of axes (length <= order).
  double derivative(std::span<const int> axes) const;
  double derivative(std::initializer_list<int> axes) const {
    return derivative(std::span<const int>(axes.begin(), axes.size()));
  }

  /// True when every derivative slot is zero.
  bool is_constant() const noexcept;

  /// d/du_i as a jet of one lower order.
  Jet partial(int axis) const;
  /// Drops derivative information above `order`.
  Jet truncated(int order) const;
  /// Same derivatives, value replaced. Used where a function is locally equal to
  /// another up to an additive constant (atan2).
  Jet with_value(double value) const;

  /// Raw Taylor coefficient of the monomial with exponents `exps` (all other axes zero).
  double taylor_coefficient(const std::array<int, kMaxVars>& exps) const;
  /// Builds a jet from a callback returning the partial derivative for a sorted axis list.
  template <class PartialFn>
  static Jet from_partials(int dims, int order, PartialFn&& partial_of);

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(double rhs);
  Jet& operator-=(double rhs);
  Jet& operator*=(double rhs);
  Jet& operator/=(double rhs);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator/(Jet a, double b) { return a /= b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(double a, const Jet& b) { return (-b) += a; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(double a, const Jet& b);

  /// f(x) given f and its derivatives f^(m)(x.value()) for m = 0..x.order().
  static Jet compose(const Jet& x, std::span<const double> derivatives);

 private:
  void require_compatible(const Jet& other) const;
  void set_taylor(int index, double c) { coeff_[index] = c; }

  std::array<double, kMaxTerms> coeff_{};
  int dims_ = 1;
  int order_ = 0;

  friend Jet reciprocal(const Jet& x);
};

/// Coordinate jet; throws ArgumentError when index is not in [0, dims).
Jet jet_variable(int index, double value, int dims, int order);

Jet reciprocal(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet tan(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet sqrt(const Jet& x);
Jet abs(const Jet& x);
Jet atan(const Jet& x);
Jet atan2(const Jet& y, const Jet& x);
/// Real exponent; base must be positive.
Jet pow(const Jet& x, double exponent);
/// Integer exponent by repeated multiplication; negative exponents need a nonzero base.
Jet pow(const Jet& x, int exponent);

/// Tag dispatch for the unary elementary functions.
Jet jet_elementary(Elementary f, const Jet& x);

const char* to_string(Elementary f) noexcept;

namespace detail {
int monomial_index(const std::array<int, Jet::kMaxVars>& exps);
const std::array<int, Jet::kMaxVars>& monomial_exponents(int index);
int monomial_count(int order);
}  // namespace detail

template <class PartialFn>
Jet Jet::from_partials(int dims, int order, PartialFn&& partial_of) {
  Jet out = Jet::constant(0.0, dims, order);
  for (int idx = 0; idx < detail::monomial_count(order); ++idx) {
    const auto& e = detail::monomial_exponents(idx);
    bool active = true;
    for (int v = dims; v < kMaxVars; ++v) active = active && e[v] == 0;
    if (!active) continue;
    int axes[kMaxOrder];
    int len = 0;
    double factorial = 1.0;
    for (int v = 0; v < kMaxVars; ++v) {
      for (int r = 0; r < e[v]; ++r) {
        axes[len++] = v;
        factorial *= static_cast<double>(r + 1);
      }
    }
    out.coeff_[idx] = partial_of(std::span<const int>(axes, static_cast<std::size_t>(len))) / factorial;
  }
  return out;
}

}  // namespace gcrkit
