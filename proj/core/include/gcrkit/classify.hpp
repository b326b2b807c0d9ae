#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcrkit/gcr.hpp"
#include "gcrkit/geometry.hpp"
#include "gcrkit/immersion.hpp"

namespace gcrkit {

/// Inclusive tensor grid over the immersion's domain box; counts[i] samples on axis i.
/// The first axis varies slowest.
struct GridSpec {
  std::vector<int> counts;

  std::size_t size() const noexcept;
  /// Chart point number `index` in enumeration order.
  std::vector<double> point(const Domain& domain, std::size_t index) const;
};

struct Tolerances {
  double gcr = 1e-7;
  double const_rel = 1e-6;   // constancy: range < const_rel * (1 + |mean|)
  double gap = kDefaultGapTolerance;
  double delta2_rel = 1e-6;  // delta(2) matching: tol = delta2_rel * (1 + max |k|)
  double fd_step = 0.0;      // <= 0 selects 1e-4 * domain extent
  bool structural = true;    // evaluate structural residuals at GCR points
};

enum class PointStatus { ok, degenerate, singular, failed };

const char* to_string(PointStatus s) noexcept;

struct PointRecord {
  std::vector<double> point;
  PointStatus status = PointStatus::ok;
  std::string reason;  // set for singular and failed points

  double det_metric = 0.0;
  std::vector<double> k;
  std::vector<double> H;
  double mu = 0.0;
  double theta = 0.0;
  int distinct_count = 0;
  std::optional<bool> delta2;  // n >= 3
  double codazzi = 0.0;
  double gauss = 0.0;
  std::optional<double> gcr_primary;    // nondegenerate points only
  std::optional<double> gcr_secondary;
  std::optional<StructuralResiduals> structural;
  std::string structural_note;  // why structural residuals are missing, if they are

  bool has_curvature() const noexcept { return status == PointStatus::ok || status == PointStatus::degenerate; }
};

struct ResidualSummary {
  std::optional<double> max;
  double mean = 0.0;
  std::size_t count = 0;

  void add(double v);
  void finish();
};

struct SurfaceReport {
  std::string label;
  std::vector<std::string> variables;
  Domain domain;
  GridSpec grid;
  Tolerances tolerances;
  std::vector<PointRecord> points;

  std::size_t evaluated = 0;   // points with curvature data
  std::size_t nondegenerate = 0;
  std::size_t degenerate = 0;
  std::size_t singular = 0;
  std::size_t failed = 0;

  ResidualSummary gcr_primary;
  ResidualSummary gcr_secondary;
  ResidualSummary codazzi;
  ResidualSummary gauss;
  std::map<std::string, ResidualSummary> structural;  // keyed by residual name

  std::vector<double> k_min, k_max;  // per sorted index
  double h1_min = 0.0, h1_max = 0.0;
  double max_abs_h3 = 0.0;

  bool is_gcr = false;
  bool is_isoparametric = false;
  bool is_cmc = false;
  std::optional<bool> is_3_minimal;     // n == 3
  std::optional<bool> is_delta2_ideal;  // n >= 3
  int distinct_curvature_count = 0;     // modal value, ties to the smaller count
  std::map<int, std::size_t> distinct_histogram;

  double fraction_degenerate() const noexcept;
};

/// Names of the structural residual summaries in report order.
const std::vector<std::string>& structural_residual_names();

/// Evaluates one chart point. Never throws for library errors; the status records them.
PointRecord evaluate_point(const Immersion& m, std::span<const double> p, const Tolerances& tols);

/// Evaluates every grid point (on `threads` workers, 0 = hardware concurrency) and
/// aggregates. The result does not depend on the worker count.
/// Throws EmptyReportError when no point is both regular and nondegenerate.
SurfaceReport classify_surface(const Immersion& m, const GridSpec& grid, const Tolerances& tols, int threads = 0);

/// Aggregation step of classify_surface, exposed for reports assembled elsewhere.
void aggregate(SurfaceReport& report, int n);

}  // namespace gcrkit
