#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcrkit {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad index, mismatched shapes, bad parameters).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An elementary function was evaluated outside its domain (log of a non-positive value, ...).
/// When raised from chart evaluation the offending chart point is attached.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, std::vector<double> point = {})
      : Error(what), point_(std::move(point)) {}

  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

class ParseError : public Error {
 public:
  enum class Kind { syntax, unknown_identifier, arity };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : Error(what), kind_(kind), offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  /// Byte offset into the parsed text.
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

/// The metric is degenerate at a chart point (det g <= regularity threshold).
class SingularPointError : public Error {
 public:
  SingularPointError(const std::string& what, std::vector<double> point, double det_metric)
      : Error(what), point_(std::move(point)), det_metric_(det_metric) {}

  const std::vector<double>& point() const noexcept { return point_; }
  double det_metric() const noexcept { return det_metric_; }

 private:
  std::vector<double> point_;
  double det_metric_;
};

/// Principal curvatures are too close for eigenvector fields to be differentiated.
class NearUmbilicError : public Error {
 public:
  using Error::Error;
};

/// x^T vanishes at the point, so the GCR condition is vacuous there.
class DegeneratePointError : public Error {
 public:
  using Error::Error;
};

/// Every sampled point was singular or degenerate.
class EmptyReportError : public Error {
 public:
  using Error::Error;
};

/// An ODE right-hand side could not be evaluated; the curve is valid up to last_good().
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double last_good) : Error(what), last_good_(last_good) {}

  double last_good() const noexcept { return last_good_; }

 private:
  double last_good_;
};

/// Finite-difference oracle failure (stencil left the admissible box).
class OracleError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcrkit
