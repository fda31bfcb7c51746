#pragma once

#include <yaml-cpp/yaml.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "casimir/friction.hpp"
#include "casimir/lifshitz.hpp"
#include "json.hpp"

namespace cli {

using json = nlohmann::json;

/// Config problems, reported as "<file>:<line>:<col>: <field>: <what>".
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// YAML node plus its dotted path. Every value read through it is echoed into `resolved`,
/// defaults included, so the sidecar records exactly what ran.
class Field {
 public:
  Field(YAML::Node node, std::string path, std::string source, json* resolved);

  bool has(const std::string& key) const;
  Field operator[](const std::string& key) const;  // must exist
  Field at(std::size_t i) const;
  std::size_t size() const;
  bool is_sequence() const { return node_.IsSequence(); }
  bool is_map() const { return node_.IsMap(); }

  double number() const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  std::string text() const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::string choice(const std::string& key, const std::vector<std::string>& options,
                     const std::string& fallback) const;
  std::vector<std::string> keys() const;

  [[noreturn]] void fail(const std::string& what) const;
  const std::string& path() const { return path_; }
  json& echo() const { return *resolved_; }

 private:
  YAML::Node node_;
  std::string path_;
  std::string source_;
  json* resolved_;
};

struct Grid {
  std::string name;
  std::vector<double> values;
};

struct ScanConfig {
  std::string source;
  std::string task;
  std::string output = "out/scan";
  int workers = 1;
  bool fail_on_point_error = true;
  std::map<std::string, double> tolerances;
  std::map<std::string, casimir::PermittivityModel> materials;
  std::map<std::string, casimir::LayerStack> stacks;

  YAML::Node root;
  json resolved = json::object();

  double tol(const std::string& key) const;
  /// Field view of the document root for task-specific sections.
  Field field();
};

inline const std::vector<std::string>& task_names() {
  static const std::vector<std::string> t{"energy",     "decompose", "eddy",     "entropy",
                                          "modes",      "oscillator", "friction", "rI"};
  return t;
}

ScanConfig load_config(const std::string& path);
ScanConfig parse_config(const std::string& text, const std::string& source);

/// "rel_tol=1e-6" style overrides; unknown keys are schema errors.
void apply_tolerance_overrides(ScanConfig& cfg, const std::vector<std::string>& kv);

/// A grid: explicit `values`, or spacing {linear, log} with min, max, count >= 2.
/// `unit: lambda_p` scales by `lambda_p`, `scale: x` by x.
Grid read_grid(const Field& f, const std::string& name, double lambda_p = 0.0);

/// Plate or substrate by name: a material, a stack, or `perfect_mirror`.
casimir::Plate resolve_plate(const ScanConfig& cfg, const Field& f, const std::string& key);

}  // namespace cli
