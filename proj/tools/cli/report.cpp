#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unistd.h>

namespace gcrkit::cli {
namespace {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write(const json& v, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(key).dump() + ": ";
        write(item, out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const auto& item : v) scalars = scalars && !item.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          write(v[i], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(v[i], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json summary_json(const ResidualSummary& s) {
  json out;
  out["max"] = optional_number(s.max);
  out["mean"] = s.count ? json(s.mean) : json(nullptr);
  out["count"] = s.count;
  return out;
}

json structural_json(const StructuralResiduals& s) {
  json out;
  out["geodesic"] = s.r_geodesic;
  out["k1"] = s.r_k1;
  out["theta_flat"] = s.r_theta_flat;
  out["shape_coeff"] = s.r_shape_coeff;
  out["omega"] = optional_number(s.r_omega);
  const char* letters = "abcdefg";
  for (int i = 0; i < 7; ++i) out[std::string("codazzi_") + letters[i]] = optional_number(s.codazzi[i]);
  out["codazzi_system"] = optional_number(s.r_codazzi_system);
  out["k1_index"] = s.k1;
  return out;
}

json point_json(const PointRecord& p) {
  json out;
  out["point"] = p.point;
  out["status"] = to_string(p.status);
  if (!p.reason.empty()) out["reason"] = p.reason;
  out["det_metric"] = p.det_metric;
  if (!p.has_curvature()) return out;
  out["k"] = p.k;
  out["H"] = p.H;
  out["mu"] = p.mu;
  out["theta"] = p.theta;
  out["distinct_count"] = p.distinct_count;
  out["delta2_ideal"] = p.delta2 ? json(*p.delta2) : json(nullptr);
  out["codazzi"] = p.codazzi;
  out["gauss"] = p.gauss;
  out["gcr_primary"] = optional_number(p.gcr_primary);
  out["gcr_secondary"] = optional_number(p.gcr_secondary);
  out["structural"] = p.structural ? structural_json(*p.structural) : json(nullptr);
  if (!p.structural_note.empty()) out["structural_note"] = p.structural_note;
  return out;
}

}  // namespace

std::string dump_json(const json& value) {
  std::string out;
  write(value, out, 0);
  out += "\n";
  return out;
}

json report_json(const SurfaceSpec& spec, const SurfaceReport& report, bool full) {
  const int n = static_cast<int>(report.variables.size());
  json out;
  out["schema_version"] = kSchemaVersion;
  out["surface"] = spec.echo;

  json summary;
  summary["points"] = report.points.size();
  summary["evaluated"] = report.evaluated;
  summary["nondegenerate"] = report.nondegenerate;
  summary["degenerate"] = report.degenerate;
  summary["singular"] = report.singular;
  summary["failed"] = report.failed;
  summary["fraction_degenerate"] = report.fraction_degenerate();
  out["summary"] = summary;

  json flags;
  flags["is_gcr"] = report.is_gcr;
  flags["is_isoparametric"] = report.is_isoparametric;
  flags["is_cmc"] = report.is_cmc;
  flags["is_delta2_ideal"] = report.is_delta2_ideal ? json(*report.is_delta2_ideal) : json(nullptr);
  flags["is_3_minimal"] = report.is_3_minimal ? json(*report.is_3_minimal) : json(nullptr);
  out["flags"] = flags;

  out["distinct_curvature_count"] = report.distinct_curvature_count;
  json hist = json::object();
  for (const auto& [count, freq] : report.distinct_histogram) hist[std::to_string(count)] = freq;
  out["distinct_curvature_histogram"] = hist;

  json residuals;
  residuals["gcr_primary"] = summary_json(report.gcr_primary);
  residuals["gcr_secondary"] = summary_json(report.gcr_secondary);
  residuals["codazzi"] = summary_json(report.codazzi);
  residuals["gauss"] = summary_json(report.gauss);
  json structural = json::object();
  for (const auto& name : structural_residual_names()) {
    auto it = report.structural.find(name);
    structural[name] = summary_json(it == report.structural.end() ? ResidualSummary{} : it->second);
  }
  residuals["structural"] = structural;
  out["residuals"] = residuals;

  json ranges;
  json k = json::array();
  for (int i = 0; i < n; ++i) k.push_back(json::array({report.k_min[i], report.k_max[i]}));
  ranges["k"] = k;
  ranges["H1"] = json::array({report.h1_min, report.h1_max});
  ranges["max_abs_H3"] = n >= 3 ? json(report.max_abs_h3) : json(nullptr);
  out["curvature_ranges"] = ranges;

  json skipped = json::array();
  for (const auto& p : report.points) {
    if (p.has_curvature()) continue;
    json s;
    s["point"] = p.point;
    s["status"] = to_string(p.status);
    s["reason"] = p.reason;
    skipped.push_back(s);
  }
  out["skipped"] = skipped;

  if (full) {
    json pts = json::array();
    for (const auto& p : report.points) pts.push_back(point_json(p));
    out["per_point"] = pts;
  }

  json engine;
  engine["name"] = "gcrkit";
  engine["version"] = "0.1.0";
  engine["jet_order"] = 3;
  json tol;
  tol["gcr"] = report.tolerances.gcr;
  tol["const_rel"] = report.tolerances.const_rel;
  tol["gap"] = report.tolerances.gap;
  tol["delta2_rel"] = report.tolerances.delta2_rel;
  tol["fd_step"] = report.tolerances.fd_step;
  tol["regularity"] = kRegularityThreshold;
  tol["tangent"] = 1e-8;
  engine["tolerances"] = tol;
  engine["seed"] = 0;
  out["engine"] = engine;
  return out;
}

std::string report_csv(const SurfaceReport& report) {
  const std::size_t n = report.variables.size();
  std::string out;
  for (const auto& v : report.variables) out += v + ",";
  out += "status,det_metric";
  for (std::size_t i = 1; i <= n; ++i) out += ",k" + std::to_string(i);
  for (std::size_t i = 1; i <= n; ++i) out += ",H" + std::to_string(i);
  out += ",mu,theta,gcr_primary,gcr_secondary,codazzi,gauss,distinct_count,delta2_ideal\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& p : report.points) {
    if (!p.has_curvature()) continue;
    for (double x : p.point) out += format_double(x) + ",";
    out += std::string(to_string(p.status)) + "," + format_double(p.det_metric);
    for (double k : p.k) out += "," + format_double(k);
    for (double h : p.H) out += "," + format_double(h);
    out += "," + format_double(p.mu) + "," + format_double(p.theta) + "," + opt(p.gcr_primary) + "," +
           opt(p.gcr_secondary) + "," + format_double(p.codazzi) + "," + format_double(p.gauss) + "," +
           std::to_string(p.distinct_count) + "," + (p.delta2 ? (*p.delta2 ? "true" : "false") : "") + "\n";
  }
  return out;
}

void write_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open \"" + tmp.string() + "\" for writing");
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed writing \"" + tmp.string() + "\"");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot move report into place at \"" + path + "\"");
  }
}

}  // namespace gcrkit::cli
