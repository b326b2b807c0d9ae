#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "gcrkit/error.hpp"
#include "gcrkit/gcr.hpp"
#include "gcrkit/geometry.hpp"
#include "report.hpp"
#include "spec_file.hpp"

namespace gcrkit::cli {
namespace {

using json = nlohmann::ordered_json;

json vec_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json mat_json(const Mat& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vec_json(m.row(i).transpose()));
  return out;
}

int worker_count(std::ostream& err) {
  const char* env = std::getenv("GCRKIT_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) {
    err << "gcrkit: ignoring GCRKIT_THREADS=\"" << env << "\" (expected a positive integer)\n";
    return 0;
  }
  return static_cast<int>(v);
}

struct CheckArgs {
  std::string spec;
  std::string grid;
  std::optional<double> tol_gcr;
  bool full = false;
  std::string out;
  std::string format = "json";
};

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  SurfaceSpec spec = load_spec(a.spec);
  if (!a.grid.empty()) {
    spec.grid = parse_grid(a.grid, spec.immersion.variables());
    json g = json::object();
    for (std::size_t i = 0; i < spec.grid.counts.size(); ++i) g[spec.immersion.variables()[i]] = spec.grid.counts[i];
    spec.echo["grid"] = g;
  }
  if (a.tol_gcr) {
    if (!(*a.tol_gcr > 0.0)) throw SpecError("--tol-gcr: must be positive");
    spec.tolerances.gcr = *a.tol_gcr;
    spec.echo["tolerances"]["gcr"] = *a.tol_gcr;
  }

  SurfaceReport report;
  try {
    report = classify_surface(spec.immersion, spec.grid, spec.tolerances, worker_count(err));
  } catch (const EmptyReportError& e) {
    err << "gcrkit check: " << e.what() << "\n";
    return kExitSingular;
  }

  for (const auto& p : report.points) {
    if (p.has_curvature()) continue;
    const std::size_t skipped = report.singular + report.failed;
    err << "gcrkit check: " << skipped << " of " << report.points.size() << " points skipped; first at "
        << format_point(p.point) << ": " << p.reason << "\n";
    break;
  }

  const std::string body =
      a.format == "csv" ? report_csv(report) : dump_json(report_json(spec, report, a.full));
  if (a.out.empty()) {
    out << body;
  } else {
    write_atomically(a.out, body);
  }
  return kExitOk;
}

int cmd_eval(const std::string& spec_path, const std::string& point_text, std::ostream& out, std::ostream& err) {
  const SurfaceSpec spec = load_spec(spec_path);
  const Immersion& m = spec.immersion;
  const std::vector<double> p = parse_point(point_text);
  if (static_cast<int>(p.size()) != m.dim()) {
    throw SpecError("--point: expected " + std::to_string(m.dim()) + " coordinates, got " + std::to_string(p.size()));
  }
  if (!m.contains(p)) throw SpecError("--point: " + format_point(p) + " is outside the domain");

  GeometryJets gj;
  try {
    gj = geometry_jets(m, p, 3);
  } catch (const SingularPointError& e) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", e.det_metric());
    err << "gcrkit eval: singular point " << format_point(p) << " (det g = " << buf << ")\n";
    return kExitSingular;
  }
  const PointGeometry pg = point_geometry(gj);
  const PrincipalData pd = principal_data(pg, spec.tolerances.gap);
  const CurvatureInvariants inv = curvature_invariants(pd, pg.dim());
  const PositionAngles pa = position_angles(gj, pg);

  json doc;
  doc["surface"] = spec.name;
  doc["point"] = p;
  doc["position"] = vec_json(pg.position);
  doc["g"] = mat_json(pg.metric);
  doc["det_g"] = pg.det_metric;
  doc["N"] = vec_json(pg.normal);
  doc["h"] = mat_json(pg.h);
  doc["k"] = vec_json(pd.k);
  doc["principal_directions"] = mat_json(pd.e.transpose());
  doc["H"] = vec_json(inv.H);
  doc["distinct_count"] = pd.distinct_count;
  doc["mu"] = pa.mu;
  doc["theta"] = pa.theta;
  doc["degenerate"] = pa.degenerate;
  if (pa.degenerate) {
    doc["gcr_residual"] = nullptr;
  } else {
    const GcrResidual r = gcr_residual(pa, pd, pg);
    json g;
    g["primary"] = r.primary;
    g["secondary"] = r.secondary;
    doc["gcr_residual"] = g;
  }
  doc["codazzi_residual"] = codazzi_residual(gj);
  doc["gauss_residual"] = gauss_residual(gj);
  out << dump_json(doc);
  return kExitOk;
}

int cmd_families(bool as_json, std::ostream& out) {
  if (as_json) {
    json arr = json::array();
    for (const auto& f : family_catalog()) {
      json item;
      item["tag"] = to_string(f.tag);
      item["title"] = f.title;
      item["formula"] = f.formula;
      item["variables"] = f.variables;
      item["required"] = f.required;
      item["optional"] = f.optional;
      arr.push_back(item);
    }
    out << dump_json(arr);
    return kExitOk;
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s.empty() ? std::string("-") : s;
  };
  for (const auto& f : family_catalog()) {
    out << to_string(f.tag) << "\n"
        << "  " << f.title << "\n"
        << "  " << f.formula << "   on (" << join(f.variables) << ")\n"
        << "  required: " << join(f.required) << "\n";
    if (!f.optional.empty()) out << "  optional: " << join(f.optional) << "\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature and generalized-constant-ratio checks for parametrized hypersurfaces", "gcrkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gcrkit 0.1.0");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Classify a surface over a sample grid and write a report");
  c->add_option("spec", check.spec, "Surface spec file (JSON)")->required();
  c->add_option("--grid", check.grid, "Samples per axis: N or s=N,t=M,...");
  c->add_option("--tol-gcr", check.tol_gcr, "GCR residual tolerance");
  c->add_flag("--full", check.full, "Include per-point records");
  c->add_option("--out,-o", check.out, "Report path (default: standard output)");
  c->add_option("--format", check.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  std::string eval_spec;
  std::string eval_point;
  auto* e = app.add_subcommand("eval", "Dump the curvature data at one chart point");
  e->add_option("spec", eval_spec, "Surface spec file (JSON)")->required();
  e->add_option("--point,-p", eval_point, "Chart point, comma separated")->required();

  bool families_json = false;
  auto* f = app.add_subcommand("families", "List the built-in families");
  f->add_flag("--json", families_json, "Machine-readable listing");

  // CLI11 consumes arguments from the back.
  std::vector<std::string> rest;
  if (!args.empty()) rest.assign(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "gcrkit 0.1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "gcrkit: " << ex.what() << "\n";
    err << "run 'gcrkit --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (c->parsed()) return cmd_check(check, out, err);
    if (e->parsed()) return cmd_eval(eval_spec, eval_point, out, err);
    return cmd_families(families_json, out);
  } catch (const SpecError& ex) {
    err << "gcrkit: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& ex) {
    err << "gcrkit: " << ex.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "gcrkit: internal error: " << ex.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace gcrkit::cli
