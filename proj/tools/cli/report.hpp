#pragma once

#include <string>

#include "json.hpp"

#include "gcrkit/classify.hpp"
#include "spec_file.hpp"

namespace gcrkit::cli {

inline constexpr int kSchemaVersion = 1;

/// Pretty JSON with fixed key order and every floating-point number printed with 17
/// significant digits; non-finite numbers become null.
std::string dump_json(const nlohmann::ordered_json& value);

nlohmann::ordered_json report_json(const SurfaceSpec& spec, const SurfaceReport& report, bool full);

/// One row per point with curvature data (singular and failed points are omitted).
std::string report_csv(const SurfaceReport& report);

/// Writes through a temporary file in the same directory followed by a rename.
void write_atomically(const std::string& path, const std::string& contents);

}  // namespace gcrkit::cli
