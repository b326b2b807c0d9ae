#include "gcrkit/immersion.hpp"

#include <algorithm>
#include <cstdio>

#include "gcrkit/error.hpp"

namespace gcrkit {

Immersion::Immersion(std::string label, std::vector<std::string> variables, Domain domain, Evaluator evaluator)
    : label_(std::move(label)),
      variables_(std::move(variables)),
      domain_(std::move(domain)),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))) {
  if (dim() < 1 || dim() > Jet::kMaxVars) {
    throw ArgumentError("immersion chart dimension must be 1..3, got " + std::to_string(dim()));
  }
  if (domain_.size() != variables_.size()) throw ArgumentError("immersion domain must have one interval per variable");
  for (const auto& iv : domain_) {
    if (!(iv.lo < iv.hi)) throw ArgumentError("immersion domain intervals must satisfy lo < hi");
  }
}

double Immersion::extent() const noexcept {
  double e = 0.0;
  for (const auto& iv : domain_) e = std::max(e, iv.width());
  return e;
}

bool Immersion::contains(std::span<const double> p) const noexcept {
  if (p.size() != domain_.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!domain_[i].contains(p[i])) return false;
  }
  return true;
}

std::vector<Jet> Immersion::jets_at(std::span<const double> p, int order) const {
  if (static_cast<int>(p.size()) != dim()) throw ArgumentError("chart point has the wrong dimension");
  std::vector<Jet> chart;
  chart.reserve(p.size());
  for (int i = 0; i < dim(); ++i) chart.push_back(Jet::variable(i, p[static_cast<std::size_t>(i)], dim(), order));
  std::vector<Jet> out;
  try {
    out = (*evaluator_)(chart);
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + " at chart point " + format_point(p),
                      std::vector<double>(p.begin(), p.end()));
  }
  if (static_cast<int>(out.size()) != ambient_dim()) {
    throw ArgumentError("immersion evaluator returned " + std::to_string(out.size()) + " components, expected " +
                        std::to_string(ambient_dim()));
  }
  return out;
}

Vec Immersion::position(std::span<const double> p) const {
  auto jets = jets_at(p, 0);
  Vec x(ambient_dim());
  for (int a = 0; a < ambient_dim(); ++a) x(a) = jets[static_cast<std::size_t>(a)].value();
  return x;
}

Immersion Immersion::scaled(double lambda) const {
  auto inner = evaluator_;
  return Immersion(label_ + " (scaled)", variables_, domain_, [inner, lambda](std::span<const Jet> chart) {
    auto out = (*inner)(chart);
    for (auto& j : out) j *= lambda;
    return out;
  });
}

Immersion Immersion::with_domain(Domain domain) const {
  Immersion copy = *this;
  if (domain.size() != variables_.size()) throw ArgumentError("domain dimension mismatch");
  for (const auto& iv : domain) {
    if (!(iv.lo < iv.hi)) throw ArgumentError("immersion domain intervals must satisfy lo < hi");
  }
  copy.domain_ = std::move(domain);
  return copy;
}

std::vector<Jet> evaluate_jets(const Immersion& m, std::span<const double> p, int order) {
  if (!m.contains(p)) throw ArgumentError("chart point " + format_point(p) + " is outside the domain");
  return m.jets_at(p, order);
}

std::vector<double> to_std(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::string format_point(std::span<const double> p) {
  std::string s = "(";
  char buf[32];
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10g", p[i]);
    if (i > 0) s += ", ";
    s += buf;
  }
  return s + ")";
}

}  // namespace gcrkit
