#include "gcrkit/jet.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "gcrkit/error.hpp"

namespace gcrkit {
namespace detail {
namespace {

using Exps = std::array<int, Jet::kMaxVars>;

struct ProductTerm {
  int lhs;
  int rhs;
  int out;
};

struct Tables {
  std::array<Exps, Jet::kMaxTerms> exps{};
  std::array<int, Jet::kMaxTerms> degree{};
  std::array<int, Jet::kMaxOrder + 1> count_upto{};
  // raise[idx][axis] -> index of monomial idx * u_axis, or -1 past max order
  std::array<std::array<int, Jet::kMaxVars>, Jet::kMaxTerms> raise{};
  // products[dims - 1][order]
  std::array<std::array<std::vector<ProductTerm>, Jet::kMaxOrder + 1>, Jet::kMaxVars> products;

  Tables() {
    int idx = 0;
    for (int d = 0; d <= Jet::kMaxOrder; ++d) {
      for (int a = d; a >= 0; --a) {
        for (int b = d - a; b >= 0; --b) {
          exps[idx] = {a, b, d - a - b};
          degree[idx] = d;
          ++idx;
        }
      }
      count_upto[d] = idx;
    }
    for (int i = 0; i < Jet::kMaxTerms; ++i) {
      for (int v = 0; v < Jet::kMaxVars; ++v) {
        Exps e = exps[i];
        ++e[v];
        raise[i][v] = (degree[i] + 1 <= Jet::kMaxOrder) ? find(e) : -1;
      }
    }
    for (int dims = 1; dims <= Jet::kMaxVars; ++dims) {
      for (int order = 0; order <= Jet::kMaxOrder; ++order) {
        auto& list = products[dims - 1][order];
        for (int i = 0; i < count_upto[order]; ++i) {
          if (!active(i, dims)) continue;
          for (int j = 0; j < count_upto[order - degree[i]]; ++j) {
            if (!active(j, dims)) continue;
            Exps e{};
            for (int v = 0; v < Jet::kMaxVars; ++v) e[v] = exps[i][v] + exps[j][v];
            list.push_back({i, j, find(e)});
          }
        }
      }
    }
  }

  bool active(int idx, int dims) const {
    for (int v = dims; v < Jet::kMaxVars; ++v) {
      if (exps[idx][v] != 0) return false;
    }
    return true;
  }

  int find(const Exps& e) const {
    for (int i = 0; i < Jet::kMaxTerms; ++i) {
      if (exps[i] == e) return i;
    }
    return -1;
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

int monomial_index(const std::array<int, Jet::kMaxVars>& exps) { return tables().find(exps); }

const std::array<int, Jet::kMaxVars>& monomial_exponents(int index) { return tables().exps[index]; }

int monomial_count(int order) { return tables().count_upto[order]; }

}  // namespace detail

namespace {

void check_shape(int dims, int order) {
  if (dims < 1 || dims > Jet::kMaxVars) {
    throw ArgumentError("jet dimension must be in [1, 3], got " + std::to_string(dims));
  }
  if (order < 0 || order > Jet::kMaxOrder) {
    throw ArgumentError("jet order must be in [0, 4], got " + std::to_string(order));
  }
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace

Jet Jet::constant(double value, int dims, int order) {
  check_shape(dims, order);
  Jet j;
  j.dims_ = dims;
  j.order_ = order;
  j.coeff_[0] = value;
  return j;
}

Jet Jet::variable(int index, double value, int dims, int order) {
  Jet j = constant(value, dims, order);
  if (index < 0 || index >= dims) {
    throw ArgumentError("jet variable index " + std::to_string(index) + " out of range for " +
                        std::to_string(dims) + " chart variables");
  }
  if (order >= 1) {
    std::array<int, kMaxVars> e{};
    e[index] = 1;
    j.coeff_[detail::monomial_index(e)] = 1.0;
  }
  return j;
}

Jet jet_variable(int index, double value, int dims, int order) {
  return Jet::variable(index, value, dims, order);
}

double Jet::derivative(std::span<const int> axes) const {
  if (static_cast<int>(axes.size()) > order_) {
    throw ArgumentError("derivative of order " + std::to_string(axes.size()) +
                        " requested from a jet of order " + std::to_string(order_));
  }
  std::array<int, kMaxVars> e{};
  for (int a : axes) {
    if (a < 0 || a >= dims_) throw ArgumentError("derivative axis out of range");
    ++e[a];
  }
  double mult = 1.0;
  for (int v = 0; v < kMaxVars; ++v) mult *= factorial(e[v]);
  return mult * coeff_[detail::monomial_index(e)];
}

double Jet::grad(int i) const { return derivative({i}); }
double Jet::hess(int i, int j) const { return derivative({i, j}); }
double Jet::third(int i, int j, int k) const { return derivative({i, j, k}); }
double Jet::fourth(int i, int j, int k, int l) const { return derivative({i, j, k, l}); }

double Jet::taylor_coefficient(const std::array<int, kMaxVars>& exps) const {
  int deg = exps[0] + exps[1] + exps[2];
  if (deg > order_) return 0.0;
  return coeff_[detail::monomial_index(exps)];
}

bool Jet::is_constant() const noexcept {
  for (int i = 1; i < detail::monomial_count(order_); ++i) {
    if (coeff_[i] != 0.0) return false;
  }
  return true;
}

Jet Jet::partial(int axis) const {
  if (axis < 0 || axis >= dims_) throw ArgumentError("partial axis out of range");
  if (order_ == 0) throw ArgumentError("cannot differentiate an order-0 jet");
  const auto& t = detail::tables();
  Jet out = constant(0.0, dims_, order_ - 1);
  for (int i = 0; i < t.count_upto[order_ - 1]; ++i) {
    int src = t.raise[i][axis];
    out.coeff_[i] = static_cast<double>(t.exps[i][axis] + 1) * coeff_[src];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  if (order > order_) throw ArgumentError("cannot raise jet order by truncation");
  Jet out = constant(0.0, dims_, order);
  for (int i = 0; i < detail::monomial_count(order); ++i) out.coeff_[i] = coeff_[i];
  return out;
}

Jet Jet::with_value(double value) const {
  Jet out = *this;
  out.coeff_[0] = value;
  return out;
}

void Jet::require_compatible(const Jet& other) const {
  if (dims_ != other.dims_ || order_ != other.order_) {
    throw ArgumentError("jet arithmetic requires equal dimension and order (" + std::to_string(dims_) + "/" +
                        std::to_string(order_) + " vs " + std::to_string(other.dims_) + "/" +
                        std::to_string(other.order_) + ")");
  }
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (int i = 0; i < detail::monomial_count(order_); ++i) out.coeff_[i] = -coeff_[i];
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  require_compatible(rhs);
  for (int i = 0; i < detail::monomial_count(order_); ++i) coeff_[i] += rhs.coeff_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  require_compatible(rhs);
  for (int i = 0; i < detail::monomial_count(order_); ++i) coeff_[i] -= rhs.coeff_[i];
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) { return *this = *this * rhs; }
Jet& Jet::operator/=(const Jet& rhs) { return *this = *this / rhs; }

Jet& Jet::operator+=(double rhs) {
  coeff_[0] += rhs;
  return *this;
}

Jet& Jet::operator-=(double rhs) {
  coeff_[0] -= rhs;
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (int i = 0; i < detail::monomial_count(order_); ++i) coeff_[i] *= rhs;
  return *this;
}

Jet& Jet::operator/=(double rhs) {
  for (int i = 0; i < detail::monomial_count(order_); ++i) coeff_[i] /= rhs;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.require_compatible(b);
  Jet out = Jet::constant(0.0, a.dims_, a.order_);
  for (const auto& term : detail::tables().products[a.dims_ - 1][a.order_]) {
    out.coeff_[term.out] += a.coeff_[term.lhs] * b.coeff_[term.rhs];
  }
  return out;
}

Jet reciprocal(const Jet& x) {
  const double v = x.value();
  if (v == 0.0) throw DomainError("division by zero");
  std::array<double, Jet::kMaxOrder + 1> d{};
  // d^m/dv^m (1/v) = (-1)^m m! / v^(m+1)
  double p = 1.0 / v;
  d[0] = p;
  for (int m = 1; m <= x.order(); ++m) {
    p *= -static_cast<double>(m) / v;
    d[m] = p;
  }
  return Jet::compose(x, std::span<const double>(d.data(), x.order() + 1));
}

Jet operator/(const Jet& a, const Jet& b) {
  a.require_compatible(b);
  Jet out = a * reciprocal(b);
  out.coeff_[0] = a.value() / b.value();
  return out;
}

Jet operator/(double a, const Jet& b) {
  Jet out = reciprocal(b) * a;
  out.coeff_[0] = a / b.value();
  return out;
}

Jet Jet::compose(const Jet& x, std::span<const double> derivatives) {
  const int order = x.order();
  if (static_cast<int>(derivatives.size()) < order + 1) {
    throw ArgumentError("compose needs derivatives up to the jet order");
  }
  if (order == 0) return constant(derivatives[0], x.dims(), 0);
  Jet delta = x;
  delta.coeff_[0] = 0.0;
  // Horner in the displacement: sum_m f^(m) / m! * delta^m
  Jet acc = constant(derivatives[order] / factorial(order), x.dims(), order);
  for (int m = order - 1; m >= 0; --m) {
    acc = acc * delta;
    acc.coeff_[0] = derivatives[m] / factorial(m);
  }
  acc.coeff_[0] = derivatives[0];
  return acc;
}

namespace {

using Derivs = std::array<double, Jet::kMaxOrder + 1>;

Jet apply(const Jet& x, const Derivs& d) {
  return Jet::compose(x, std::span<const double>(d.data(), x.order() + 1));
}

}  // namespace

Jet sin(const Jet& x) {
  const double s = std::sin(x.value());
  const double c = std::cos(x.value());
  return apply(x, {s, c, -s, -c, s});
}

Jet cos(const Jet& x) {
  const double s = std::sin(x.value());
  const double c = std::cos(x.value());
  return apply(x, {c, -s, -c, s, c});
}

Jet tan(const Jet& x) {
  if (std::cos(x.value()) == 0.0) throw DomainError("tan evaluated where cos vanishes");
  const double t = std::tan(x.value());
  const double t2 = t * t;
  return apply(x, {t, 1.0 + t2, 2.0 * t * (1.0 + t2), 2.0 + 8.0 * t2 + 6.0 * t2 * t2,
                   16.0 * t + 40.0 * t2 * t + 24.0 * t2 * t2 * t});
}

Jet exp(const Jet& x) {
  const double e = std::exp(x.value());
  return apply(x, {e, e, e, e, e});
}

Jet log(const Jet& x) {
  const double v = x.value();
  if (!(v > 0.0)) throw DomainError("log of non-positive value " + std::to_string(v));
  Derivs d{};
  d[0] = std::log(v);
  // (-1)^(m-1) (m-1)! / v^m
  double p = 1.0 / v;
  d[1] = p;
  for (int m = 2; m <= Jet::kMaxOrder; ++m) {
    p *= -static_cast<double>(m - 1) / v;
    d[m] = p;
  }
  return apply(x, d);
}

Jet sqrt(const Jet& x) {
  const double v = x.value();
  if (x.order() == 0) {
    if (v < 0.0) throw DomainError("sqrt of negative value " + std::to_string(v));
    return Jet::constant(std::sqrt(v), x.dims(), 0);
  }
  if (!(v > 0.0)) throw DomainError("sqrt derivative at non-positive value " + std::to_string(v));
  Derivs d{};
  d[0] = std::sqrt(v);
  double coef = 1.0;
  for (int m = 1; m <= Jet::kMaxOrder; ++m) {
    coef *= (0.5 - (m - 1));
    d[m] = coef * std::pow(v, 0.5 - m);
  }
  return apply(x, d);
}

Jet abs(const Jet& x) {
  const double v = x.value();
  if (x.order() == 0) return Jet::constant(std::abs(v), x.dims(), 0);
  if (v == 0.0) throw DomainError("abs is not differentiable at 0");
  Jet out = v > 0.0 ? x : -x;
  return out.with_value(std::abs(v));
}

Jet atan(const Jet& x) {
  const double v = x.value();
  Derivs d{};
  d[0] = std::atan(v);
  // d^m atan = (-1)^(m-1) (m-1)! sin(m acot v) / (1 + v^2)^(m/2)
  const double acot = std::atan2(1.0, v);
  const double r = std::sqrt(1.0 + v * v);
  for (int m = 1; m <= Jet::kMaxOrder; ++m) {
    const double sign = (m % 2 == 1) ? 1.0 : -1.0;
    d[m] = sign * factorial(m - 1) * std::sin(m * acot) / std::pow(r, m);
  }
  return apply(x, d);
}

Jet atan2(const Jet& y, const Jet& x) {
  if (y.dims() != x.dims() || y.order() != x.order()) {
    throw ArgumentError("atan2 requires jets of equal dimension and order");
  }
  const double yv = y.value();
  const double xv = x.value();
  if (xv == 0.0 && yv == 0.0) throw DomainError("atan2 undefined at the origin");
  const double value = std::atan2(yv, xv);
  if (y.order() == 0) return Jet::constant(value, y.dims(), 0);
  // Locally atan2 differs from atan(y/x) (or -atan(x/y)) by a constant.
  Jet local = std::abs(xv) >= std::abs(yv) ? atan(y / x) : -atan(x / y);
  return local.with_value(value);
}

Jet pow(const Jet& x, double exponent) {
  const double v = x.value();
  if (!(v > 0.0)) throw DomainError("real power requires a positive base, got " + std::to_string(v));
  Derivs d{};
  d[0] = std::pow(v, exponent);
  double coef = 1.0;
  for (int m = 1; m <= Jet::kMaxOrder; ++m) {
    coef *= (exponent - (m - 1));
    d[m] = coef * std::pow(v, exponent - m);
  }
  return apply(x, d);
}

Jet pow(const Jet& x, int exponent) {
  if (exponent == 0) return Jet::constant(1.0, x.dims(), x.order());
  const int n = exponent > 0 ? exponent : -exponent;
  Jet acc = x;
  for (int i = 1; i < n; ++i) acc = acc * x;
  if (exponent < 0) {
    if (acc.value() == 0.0) throw DomainError("negative power of zero");
    return 1.0 / acc;
  }
  return acc;
}

Jet jet_elementary(Elementary f, const Jet& x) {
  switch (f) {
    case Elementary::sin: return sin(x);
    case Elementary::cos: return cos(x);
    case Elementary::tan: return tan(x);
    case Elementary::exp: return exp(x);
    case Elementary::log: return log(x);
    case Elementary::sqrt: return sqrt(x);
    case Elementary::abs: return abs(x);
    case Elementary::atan: return atan(x);
  }
  throw ArgumentError("unknown elementary function");
}

const char* to_string(Elementary f) noexcept {
  switch (f) {
    case Elementary::sin: return "sin";
    case Elementary::cos: return "cos";
    case Elementary::tan: return "tan";
    case Elementary::exp: return "exp";
    case Elementary::log: return "log";
    case Elementary::sqrt: return "sqrt";
    case Elementary::abs: return "abs";
    case Elementary::atan: return "atan";
  }
  return "?";
}

}  // namespace gcrkit
