#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gcrkit/jet.hpp"
#include "gcrkit/linalg.hpp"

namespace gcrkit {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
};

using Domain = std::vector<Interval>;

/// A parametrization x: U subset R^n -> R^(n+1), evaluable on jets.
///
/// Immutable after construction; copies share the evaluator.
class Immersion {
 public:
  /// Maps n chart jets (all of one order) to n + 1 ambient component jets of that order.
  using Evaluator = std::function<std::vector<Jet>(std::span<const Jet>)>;

  Immersion(std::string label, std::vector<std::string> variables, Domain domain, Evaluator evaluator);

  const std::string& label() const noexcept { return label_; }
  int dim() const noexcept { return static_cast<int>(variables_.size()); }
  int ambient_dim() const noexcept { return dim() + 1; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const Domain& domain() const noexcept { return domain_; }
  /// Largest axis width of the domain box.
  double extent() const noexcept;

  bool contains(std::span<const double> p) const noexcept;

  /// Component jets at p with chart variables seeded as coordinate jets. No domain check,
  /// so finite-difference stencils may step slightly outside the box.
  std::vector<Jet> jets_at(std::span<const double> p, int order) const;
  /// Plain position.
  Vec position(std::span<const double> p) const;

  /// x -> lambda x.
  Immersion scaled(double lambda) const;
  Immersion with_domain(Domain domain) const;

 private:
  std::string label_;
  std::vector<std::string> variables_;
  Domain domain_;
  std::shared_ptr<const Evaluator> evaluator_;
};

/// Domain-checked jet evaluation of every ambient component.
/// Throws ArgumentError when p is outside the domain and DomainError (with the
/// chart point attached) when an expression cannot be evaluated there.
std::vector<Jet> evaluate_jets(const Immersion& m, std::span<const double> p, int order);

std::vector<double> to_std(const Vec& v);
std::string format_point(std::span<const double> p);

}  // namespace gcrkit
