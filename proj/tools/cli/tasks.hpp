#pragma once

#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace cli {

using Cell = std::variant<double, std::string>;
using Row = std::vector<Cell>;

struct PointError {
  std::size_t point = 0;
  std::string message;
};

struct RunResult {
  std::vector<std::string> columns;
  std::vector<Row> rows;              // grid order
  std::vector<PointError> errors;     // failed points, NaN rows in the table
  std::size_t points = 0;
};

/// Validates the task section (SchemaError) and runs every scan point on `workers` threads.
/// Rows are assembled in grid order, so the table does not depend on the worker count.
RunResult run_task(ScanConfig& cfg, int workers);

}  // namespace cli
