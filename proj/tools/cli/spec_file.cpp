#include "spec_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "gcrkit/error.hpp"

namespace gcrkit::cli {
namespace {

using json = nlohmann::ordered_json;

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(where + ": missing \"" + key + "\"");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw SpecError(where + ": expected a number");
  return v.get<double>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) throw SpecError(where + ": expected a string");
  return v.get<std::string>();
}

void allow_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw SpecError(where + ": unknown key \"" + key + "\"");
  }
}

Expr expression(const json& v, const std::vector<std::string>& vars, const std::string& where) {
  const std::string src = text(v, where);
  try {
    return Expr::parse(src, vars);
  } catch (const ParseError& e) {
    std::ostringstream msg;
    msg << where << ": " << e.what() << " in \"" << src << "\"";
    throw SpecError(msg.str());
  }
}

std::vector<Expr> expressions(const json& v, std::size_t count, const std::vector<std::string>& vars,
                              const std::string& where) {
  if (!v.is_array() || v.size() != count) {
    throw SpecError(where + ": expected an array of " + std::to_string(count) + " expressions");
  }
  std::vector<Expr> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(expression(v[i], vars, where + "[" + std::to_string(i) + "]"));
  return out;
}

Domain parse_domain(const json& v, const std::vector<std::string>& vars, const Domain& fallback) {
  if (!v.is_object()) throw SpecError("domain: expected an object");
  Domain out = fallback;
  if (fallback.empty()) out.assign(vars.size(), Interval{});
  std::set<std::string> names(vars.begin(), vars.end());
  allow_keys(v, names, "domain");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto it = v.find(vars[i]);
    if (it == v.end()) {
      if (fallback.empty()) throw SpecError("domain: missing interval for \"" + vars[i] + "\"");
      continue;
    }
    const std::string where = "domain." + vars[i];
    if (!it->is_array() || it->size() != 2) throw SpecError(where + ": expected [lo, hi]");
    out[i] = {number((*it)[0], where), number((*it)[1], where)};
    if (!(out[i].lo < out[i].hi)) throw SpecError(where + ": need lo < hi");
  }
  return out;
}

GridSpec parse_grid_object(const json& v, const std::vector<std::string>& vars) {
  if (!v.is_object()) throw SpecError("grid: expected an object");
  std::set<std::string> names(vars.begin(), vars.end());
  allow_keys(v, names, "grid");
  GridSpec g;
  for (const auto& name : vars) {
    auto it = v.find(name);
    int count = kDefaultGridCount;
    if (it != v.end()) {
      if (!it->is_number_integer()) throw SpecError("grid." + name + ": expected an integer");
      count = it->get<int>();
    }
    if (count < 2) throw SpecError("grid." + name + ": need at least 2 samples");
    g.counts.push_back(count);
  }
  return g;
}

Tolerances parse_tolerances(const json& v) {
  if (!v.is_object()) throw SpecError("tolerances: expected an object");
  allow_keys(v, {"gcr", "const_rel", "gap", "delta2_rel", "fd_step"}, "tolerances");
  Tolerances t;
  auto get = [&](const char* key, double& slot) {
    auto it = v.find(key);
    if (it == v.end()) return;
    slot = number(*it, std::string("tolerances.") + key);
    if (!(slot > 0.0)) throw SpecError(std::string("tolerances.") + key + ": must be positive");
  };
  get("gcr", t.gcr);
  get("const_rel", t.const_rel);
  get("gap", t.gap);
  get("delta2_rel", t.delta2_rel);
  get("fd_step", t.fd_step);
  return t;
}

json tolerances_json(const Tolerances& t) {
  json out;
  out["gcr"] = t.gcr;
  out["const_rel"] = t.const_rel;
  out["gap"] = t.gap;
  out["delta2_rel"] = t.delta2_rel;
  out["fd_step"] = t.fd_step;
  return out;
}

Profile parse_profile(const json& params, const Domain& domain) {
  const bool has_fg = params.contains("f") || params.contains("g");
  const bool has_kappa = params.contains("kappa");
  if (has_fg == has_kappa) throw SpecError("parameters: give either \"f\" and \"g\" or \"kappa\"");
  if (has_fg) {
    return Profile::expressions(expression(require(params, "f", "parameters"), {"s"}, "parameters.f"),
                                expression(require(params, "g", "parameters"), {"s"}, "parameters.g"));
  }
  const Expr kappa = expression(params["kappa"], {"s"}, "parameters.kappa");
  auto opt = [&](const char* key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : number(*it, std::string("parameters.") + key);
  };
  const Interval s = domain[0];
  const double pad = 0.05 * s.width();
  const double s0 = opt("s0", s.lo - pad);
  const double step = opt("step", 1e-3);
  if (s0 > s.lo) throw SpecError("parameters.s0: profile must start at or before the domain");
  try {
    auto curve = std::make_shared<const ProfileCurve>(
        integrate_profile(kappa, {s0, s.hi + pad}, {opt("f0", 0.0), opt("g0", 0.0), opt("phi0", 0.0)}, step));
    return Profile::curve(std::move(curve));
  } catch (const Error& e) {
    throw SpecError(std::string("parameters.kappa: ") + e.what());
  }
}

}  // namespace

SurfaceSpec parse_spec(const json& doc) {
  if (!doc.is_object()) throw SpecError("spec: expected a JSON object");
  allow_keys(doc, {"name", "family", "components", "variables", "parameters", "domain", "grid", "tolerances"}, "spec");
  const std::string name = text(require(doc, "name", "spec"), "name");
  const bool has_family = doc.contains("family");
  const bool has_components = doc.contains("components");
  if (has_family == has_components) throw SpecError("spec: give exactly one of \"family\" and \"components\"");

  const json params = doc.contains("parameters") ? doc["parameters"] : json::object();
  if (!params.is_object()) throw SpecError("parameters: expected an object");

  json echo;
  echo["name"] = name;
  std::optional<FamilyTag> family;
  std::vector<std::string> vars;
  Domain domain;

  if (has_family) {
    const std::string tag = text(doc["family"], "family");
    family = family_from_string(tag);
    if (!family) throw SpecError("family: unknown family \"" + tag + "\"");
    vars = family_info(*family).variables;
    if (doc.contains("variables")) {
      std::vector<std::string> given;
      for (const auto& v : doc["variables"]) given.push_back(text(v, "variables"));
      if (given != vars) throw SpecError("variables: family " + tag + " uses fixed chart variables");
    }
    domain = doc.contains("domain") ? parse_domain(doc["domain"], vars, default_domain(*family))
                                    : default_domain(*family);
    echo["family"] = tag;
  } else {
    const json& v = require(doc, "variables", "spec");
    if (!v.is_array() || v.empty() || v.size() > 3) throw SpecError("variables: expected 1 to 3 names");
    for (const auto& x : v) vars.push_back(text(x, "variables"));
    domain = parse_domain(require(doc, "domain", "spec"), vars, {});
    echo["components"] = doc["components"];
  }
  echo["variables"] = vars;

  FamilySpec fs;
  std::optional<Immersion> immersion;
  try {
    if (!family) {
      const std::vector<Expr> comps = expressions(doc["components"], vars.size() + 1, vars, "components");
      allow_keys(params, {}, "parameters");
      immersion = make_raw(name, vars, comps, domain);
    } else {
      fs.tag = *family;
      fs.domain = domain;
      fs.label = name;
      std::set<std::string> allowed;
      switch (*family) {
        case FamilyTag::hypercylinder_rotational:
        case FamilyTag::so2_x_so2:
        case FamilyTag::rotational:
          allowed = {"f", "g", "kappa", "f0", "g0", "phi0", "s0", "step"};
          allow_keys(params, allowed, "parameters");
          fs.profile = parse_profile(params, domain);
          break;
        case FamilyTag::conical_hypercylinder:
          allow_keys(params, {"c1", "c2"}, "parameters");
          fs.c1 = number(require(params, "c1", "parameters"), "parameters.c1");
          fs.c2 = number(require(params, "c2", "parameters"), "parameters.c2");
          break;
        case FamilyTag::tangent_cone:
          allow_keys(params, {"y", "c"}, "parameters");
          fs.components = expressions(require(params, "y", "parameters"), 4, {"v", "w"}, "parameters.y");
          fs.c = number(require(params, "c", "parameters"), "parameters.c");
          break;
        case FamilyTag::curve_tube:
          allow_keys(params, {"alpha", "c", "frame_spacing"}, "parameters");
          fs.components = expressions(require(params, "alpha", "parameters"), 4, {"w"}, "parameters.alpha");
          fs.c = number(require(params, "c", "parameters"), "parameters.c");
          if (params.contains("frame_spacing")) {
            fs.frame_spacing = number(params["frame_spacing"], "parameters.frame_spacing");
          }
          break;
        case FamilyTag::special_sqrt2:
          allow_keys(params, {}, "parameters");
          break;
        case FamilyTag::product_cylinder:
          allow_keys(params, {"surface", "curve"}, "parameters");
          if (params.contains("surface") == params.contains("curve")) {
            throw SpecError("parameters: give exactly one of \"surface\" and \"curve\"");
          }
          if (params.contains("surface")) {
            fs.components = expressions(params["surface"], 3, {"s", "t"}, "parameters.surface");
          } else {
            fs.components = expressions(params["curve"], 3, {"t"}, "parameters.curve");
            fs.developable = true;
          }
          break;
      }
      immersion = make_family(fs);
    }
  } catch (const ArgumentError& e) {
    throw SpecError(std::string("spec: ") + e.what());
  }
  echo["parameters"] = params;
  json dom = json::object();
  for (std::size_t i = 0; i < vars.size(); ++i) dom[vars[i]] = {domain[i].lo, domain[i].hi};
  echo["domain"] = dom;

  GridSpec grid = doc.contains("grid") ? parse_grid_object(doc["grid"], vars)
                                       : GridSpec{std::vector<int>(vars.size(), kDefaultGridCount)};
  Tolerances tols = doc.contains("tolerances") ? parse_tolerances(doc["tolerances"]) : Tolerances{};
  json g = json::object();
  for (std::size_t i = 0; i < vars.size(); ++i) g[vars[i]] = grid.counts[i];
  echo["grid"] = g;
  echo["tolerances"] = tolerances_json(tols);

  return SurfaceSpec{name, family, *immersion, grid, tols, echo};
}

SurfaceSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read spec file \"" + path + "\"");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError("spec file \"" + path + "\" is not valid JSON: " + e.what());
  }
  return parse_spec(doc);
}

GridSpec parse_grid(const std::string& text, const std::vector<std::string>& variables) {
  auto count_of = [](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw SpecError("--grid: \"" + s + "\" is not an integer");
    if (v < 2) throw SpecError("--grid: need at least 2 samples per axis");
    return v;
  };
  GridSpec g;
  if (text.find('=') == std::string::npos) {
    g.counts.assign(variables.size(), count_of(text));
    return g;
  }
  g.counts.assign(variables.size(), kDefaultGridCount);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw SpecError("--grid: expected axis=count, got \"" + item + "\"");
    const std::string axis = item.substr(0, eq);
    auto it = std::find(variables.begin(), variables.end(), axis);
    if (it == variables.end()) throw SpecError("--grid: unknown axis \"" + axis + "\"");
    g.counts[static_cast<std::size_t>(it - variables.begin())] = count_of(item.substr(eq + 1));
  }
  return g;
}

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size() || item.empty()) throw SpecError("--point: \"" + item + "\" is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw SpecError("--point: empty point");
  return out;
}

}  // namespace gcrkit::cli
