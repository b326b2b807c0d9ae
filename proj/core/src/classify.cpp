#include "gcrkit/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "gcrkit/error.hpp"

namespace gcrkit {

std::size_t GridSpec::size() const noexcept {
  if (counts.empty()) return 0;
  std::size_t total = 1;
  for (int c : counts) total *= static_cast<std::size_t>(std::max(c, 0));
  return total;
}

std::vector<double> GridSpec::point(const Domain& domain, std::size_t index) const {
  const std::size_t n = counts.size();
  std::vector<double> p(n);
  for (std::size_t r = n; r-- > 0;) {
    const auto c = static_cast<std::size_t>(counts[r]);
    const std::size_t i = index % c;
    index /= c;
    const Interval& iv = domain[r];
    p[r] = c == 1 ? 0.5 * (iv.lo + iv.hi)
                  : iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / static_cast<double>(c - 1);
    if (i + 1 == c && c > 1) p[r] = iv.hi;
  }
  return p;
}

const char* to_string(PointStatus s) noexcept {
  switch (s) {
    case PointStatus::ok:
      return "ok";
    case PointStatus::degenerate:
      return "degenerate";
    case PointStatus::singular:
      return "singular";
    case PointStatus::failed:
      return "failed";
  }
  return "?";
}

void ResidualSummary::add(double v) {
  max = std::max(max.value_or(v), v);
  mean += v;
  ++count;
}

void ResidualSummary::finish() {
  if (count > 0) mean /= static_cast<double>(count);
}

double SurfaceReport::fraction_degenerate() const noexcept {
  return evaluated == 0 ? 0.0 : static_cast<double>(degenerate) / static_cast<double>(evaluated);
}

const std::vector<std::string>& structural_residual_names() {
  static const std::vector<std::string> names = {
      "geodesic",   "k1",         "theta_flat", "shape_coeff", "omega",      "codazzi_a",     "codazzi_b",
      "codazzi_c",  "codazzi_d",  "codazzi_e",  "codazzi_f",   "codazzi_g",  "codazzi_system"};
  return names;
}

namespace {

std::vector<std::pair<std::string, std::optional<double>>> structural_entries(const StructuralResiduals& s) {
  std::vector<std::pair<std::string, std::optional<double>>> out = {
      {"geodesic", s.r_geodesic}, {"k1", s.r_k1}, {"theta_flat", s.r_theta_flat}, {"shape_coeff", s.r_shape_coeff},
      {"omega", s.r_omega}};
  const char* letters = "abcdefg";
  for (int i = 0; i < 7; ++i) out.emplace_back(std::string("codazzi_") + letters[i], s.codazzi[i]);
  out.emplace_back("codazzi_system", s.r_codazzi_system);
  return out;
}

}  // namespace

PointRecord evaluate_point(const Immersion& m, std::span<const double> p, const Tolerances& tols) {
  PointRecord rec;
  rec.point.assign(p.begin(), p.end());
  try {
    const GeometryJets gj = geometry_jets(m, p, 3);
    const PointGeometry pg = point_geometry(gj);
    const PrincipalData pd = principal_data(pg, tols.gap);
    const int n = pg.dim();
    rec.det_metric = pg.det_metric;
    rec.k = to_std(pd.k);
    rec.H = to_std(curvature_invariants(pd, n).H);
    rec.distinct_count = pd.distinct_count;
    rec.codazzi = codazzi_residual(gj);
    rec.gauss = gauss_residual(gj);
    if (n >= 3) {
      double kmax = 0.0;
      for (double v : rec.k) kmax = std::max(kmax, std::abs(v));
      rec.delta2 = delta2_ideal_test(rec.k, tols.delta2_rel * (1.0 + kmax));
    }
    const PositionAngles pa = position_angles(gj, pg);
    rec.mu = pa.mu;
    rec.theta = pa.theta;
    if (pa.degenerate) {
      rec.status = PointStatus::degenerate;
      rec.structural_note = "degenerate point";
      return rec;
    }
    const GcrResidual r = gcr_residual(pa, pd, pg);
    rec.gcr_primary = r.primary;
    rec.gcr_secondary = r.secondary;
    if (!tols.structural) {
      rec.structural_note = "disabled";
    } else if (r.primary >= tols.gcr) {
      rec.structural_note = "not a GCR point";
    } else {
      try {
        StructuralOptions opts;
        opts.step = tols.fd_step;
        opts.tol_gap = tols.gap;
        rec.structural = structural_residuals(m, p, pg, pd, pa, opts);
      } catch (const Error& e) {
        rec.structural_note = e.what();
      }
    }
  } catch (const SingularPointError& e) {
    rec.status = PointStatus::singular;
    rec.reason = e.what();
    rec.det_metric = e.det_metric();
  } catch (const Error& e) {
    rec.status = PointStatus::failed;
    rec.reason = e.what();
  }
  return rec;
}

void aggregate(SurfaceReport& report, int n) {
  report.evaluated = report.nondegenerate = report.degenerate = report.singular = report.failed = 0;
  report.gcr_primary = report.gcr_secondary = report.codazzi = report.gauss = {};
  report.structural.clear();
  report.distinct_histogram.clear();
  report.k_min.assign(static_cast<std::size_t>(n), 0.0);
  report.k_max.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> k_sum(static_cast<std::size_t>(n), 0.0);
  double h1_sum = 0.0;
  report.max_abs_h3 = 0.0;
  bool all_delta2 = true;
  bool all_gcr = true;

  for (const PointRecord& rec : report.points) {
    switch (rec.status) {
      case PointStatus::singular:
        ++report.singular;
        continue;
      case PointStatus::failed:
        ++report.failed;
        continue;
      case PointStatus::degenerate:
        ++report.degenerate;
        break;
      case PointStatus::ok:
        ++report.nondegenerate;
        break;
    }
    const bool first = report.evaluated == 0;
    ++report.evaluated;
    for (int i = 0; i < n; ++i) {
      const double k = rec.k[i];
      report.k_min[i] = first ? k : std::min(report.k_min[i], k);
      report.k_max[i] = first ? k : std::max(report.k_max[i], k);
      k_sum[i] += k;
    }
    const double h1 = rec.H[0];
    report.h1_min = first ? h1 : std::min(report.h1_min, h1);
    report.h1_max = first ? h1 : std::max(report.h1_max, h1);
    h1_sum += h1;
    if (n >= 3) report.max_abs_h3 = std::max(report.max_abs_h3, std::abs(rec.H[2]));
    if (rec.delta2) all_delta2 = all_delta2 && *rec.delta2;
    ++report.distinct_histogram[rec.distinct_count];
    report.codazzi.add(rec.codazzi);
    report.gauss.add(rec.gauss);
    if (rec.gcr_primary) {
      report.gcr_primary.add(*rec.gcr_primary);
      report.gcr_secondary.add(*rec.gcr_secondary);
      all_gcr = all_gcr && *rec.gcr_primary < report.tolerances.gcr;
    }
    if (rec.structural) {
      for (const auto& [name, value] : structural_entries(*rec.structural)) {
        if (value) report.structural[name].add(*value);
      }
    }
  }
  report.gcr_primary.finish();
  report.gcr_secondary.finish();
  report.codazzi.finish();
  report.gauss.finish();
  for (auto& [name, s] : report.structural) s.finish();

  if (report.nondegenerate == 0) {
    throw EmptyReportError("no regular nondegenerate point on the grid for " + report.label);
  }

  const double count = static_cast<double>(report.evaluated);
  const double rel = report.tolerances.const_rel;
  report.is_isoparametric = true;
  for (int i = 0; i < n; ++i) {
    const double mean = k_sum[i] / count;
    report.is_isoparametric =
        report.is_isoparametric && (report.k_max[i] - report.k_min[i]) < rel * (1.0 + std::abs(mean));
  }
  report.is_cmc = (report.h1_max - report.h1_min) < rel * (1.0 + std::abs(h1_sum / count));
  report.is_gcr = all_gcr;
  report.is_3_minimal.reset();
  report.is_delta2_ideal.reset();
  if (n == 3) report.is_3_minimal = report.max_abs_h3 < report.tolerances.gcr;
  if (n >= 3) report.is_delta2_ideal = all_delta2;

  report.distinct_curvature_count = 0;
  std::size_t best = 0;
  for (const auto& [value, freq] : report.distinct_histogram) {
    if (freq > best) {
      best = freq;
      report.distinct_curvature_count = value;
    }
  }
}

SurfaceReport classify_surface(const Immersion& m, const GridSpec& grid, const Tolerances& tols, int threads) {
  if (static_cast<int>(grid.counts.size()) != m.dim()) throw ArgumentError("grid dimension does not match the chart");
  for (int c : grid.counts) {
    if (c < 1) throw ArgumentError("grid counts must be positive");
  }
  SurfaceReport report;
  report.label = m.label();
  report.variables = m.variables();
  report.domain = m.domain();
  report.grid = grid;
  report.tolerances = tols;

  const std::size_t total = grid.size();
  report.points.resize(total);
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(total, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    try {
      for (std::size_t i = next++; i < total && !failed; i = next++) {
        const std::vector<double> p = grid.point(m.domain(), i);
        report.points[i] = evaluate_point(m, p, tols);
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  aggregate(report, m.dim());
  return report;
}

}  // namespace gcrkit
