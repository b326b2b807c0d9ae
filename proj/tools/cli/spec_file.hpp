#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "gcrkit/catalog.hpp"
#include "gcrkit/classify.hpp"

namespace gcrkit::cli {

/// Malformed or invalid surface spec; maps to exit code 2.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SurfaceSpec {
  std::string name;
  std::optional<FamilyTag> family;  // empty for raw components
  Immersion immersion;
  GridSpec grid;
  Tolerances tolerances;
  nlohmann::ordered_json echo;      // normalized copy of the input, echoed in reports
};

inline constexpr int kDefaultGridCount = 10;

SurfaceSpec parse_spec(const nlohmann::ordered_json& doc);
SurfaceSpec load_spec(const std::string& path);

/// "10" (every axis) or "s=10,t=8,u=6".
GridSpec parse_grid(const std::string& text, const std::vector<std::string>& variables);

/// "1,2,3" -> {1, 2, 3}.
std::vector<double> parse_point(const std::string& text);

}  // namespace gcrkit::cli
