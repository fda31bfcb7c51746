#pragma once

#include <ostream>
#include <string>

#include "tasks.hpp"

namespace cli {

inline constexpr const char* kVersion = "0.1.0";

/// RFC-4180: CRLF line ends, fields quoted when they hold a comma, quote or line break.
std::string csv_field(const Cell& c);
void write_csv(std::ostream& os, const RunResult& r);

/// Resolved config, version and per-point errors. Carries nothing run-dependent (no timings,
/// no worker count), so reruns give identical sidecars too.
json sidecar(const ScanConfig& cfg, const RunResult& r);

/// Writes <out>.csv and <out>.json; returns the CSV path.
std::string write_outputs(const std::string& out, const ScanConfig& cfg, const RunResult& r);

}  // namespace cli
