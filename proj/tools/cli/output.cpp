#include "output.hpp"

#include <fmt/format.h>

#include <cmath>
#include <filesystem>
#include <fstream>

namespace cli {

std::string csv_field(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isnan(*d)) return "NaN";
    if (std::isinf(*d)) return *d > 0 ? "Inf" : "-Inf";
    // -0 and 0 must print the same regardless of which thread produced them
    return fmt::format("{:.10e}", *d == 0.0 ? 0.0 : *d);
  }
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

void write_csv(std::ostream& os, const RunResult& r) {
  const auto line = [&](const auto& cells, auto&& fmt_cell) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << fmt_cell(cells[i]);
    os << "\r\n";
  };
  line(r.columns, [](const std::string& s) { return csv_field(Cell{s}); });
  for (const auto& row : r.rows) line(row, [](const Cell& c) { return csv_field(c); });
}

json sidecar(const ScanConfig& cfg, const RunResult& r) {
  json j;
  j["version"] = kVersion;
  j["task"] = cfg.task;
  j["source"] = cfg.source;
  j["config"] = cfg.resolved;
  j["columns"] = r.columns;
  j["points"] = r.points;
  j["rows"] = r.rows.size();
  json errs = json::array();
  for (const auto& e : r.errors) errs.push_back({{"point", e.point}, {"message", e.message}});
  j["errors"] = errs;
  return j;
}

std::string write_outputs(const std::string& out, const ScanConfig& cfg, const RunResult& r) {
  const std::filesystem::path base(out);
  if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
  const std::string csv = out + ".csv";
  {
    std::ofstream f(csv, std::ios::binary);
    write_csv(f, r);
    if (!f) throw std::runtime_error("cannot write " + csv);
  }
  std::ofstream f(out + ".json", std::ios::binary);
  f << sidecar(cfg, r).dump(2) << '\n';
  if (!f) throw std::runtime_error("cannot write " + out + ".json");
  return csv;
}

}  // namespace cli
