#include "config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "casimir/error.hpp"

namespace cli {

using namespace casimir;

namespace {

const std::map<std::string, double> kDefaultTolerances{
    {"rel_tol", 1e-8},       // Lifshitz and spectral quadrature
    {"decompose_tol", 1e-6}, // mode decomposition
    {"friction_tol", 1e-6},  // nested friction quadrature
};

std::string where(const YAML::Node& n, const std::string& source) {
  const auto m = n.Mark();
  if (m.line < 0) return source;
  return fmt::format("{}:{}:{}", source, m.line + 1, m.column + 1);
}

json& child(json* j, const std::string& key) { return (*j)[key]; }

}  // namespace

Field::Field(YAML::Node node, std::string path, std::string source, json* resolved)
    : node_(std::move(node)), path_(std::move(path)), source_(std::move(source)), resolved_(resolved) {}

void Field::fail(const std::string& what) const {
  throw SchemaError(fmt::format("{}: {}: {}", where(node_, source_), path_.empty() ? "<root>" : path_, what));
}

bool Field::has(const std::string& key) const { return node_.IsMap() && node_[key].IsDefined(); }

Field Field::operator[](const std::string& key) const {
  if (!node_.IsMap()) fail("expected a mapping");
  const YAML::Node c = node_[key];
  const std::string p = path_.empty() ? key : path_ + "." + key;
  if (!c.IsDefined()) fail(fmt::format("missing required field '{}'", key));
  return Field(c, p, source_, &child(resolved_, key));
}

Field Field::at(std::size_t i) const {
  if (!node_.IsSequence()) fail("expected a list");
  if (!resolved_->is_array()) *resolved_ = json::array();
  while (resolved_->size() <= i) resolved_->push_back(nullptr);
  return Field(node_[i], fmt::format("{}[{}]", path_, i), source_, &(*resolved_)[i]);
}

std::size_t Field::size() const { return node_.IsSequence() ? node_.size() : 0; }

std::vector<std::string> Field::keys() const {
  if (!node_.IsMap()) fail("expected a mapping");
  std::vector<std::string> out;
  for (const auto& kv : node_) out.push_back(kv.first.as<std::string>());
  return out;
}

double Field::number() const {
  double v = 0.0;
  try {
    v = node_.as<double>();
  } catch (const YAML::Exception&) {
    fail("expected a number");
  }
  if (!std::isfinite(v)) fail("expected a finite number");
  *resolved_ = v;
  return v;
}

double Field::number(const std::string& key) const { return (*this)[key].number(); }

double Field::number(const std::string& key, double fallback) const {
  if (has(key)) return number(key);
  child(resolved_, key) = fallback;
  return fallback;
}

int Field::integer(const std::string& key, int fallback) const {
  if (!has(key)) {
    child(resolved_, key) = fallback;
    return fallback;
  }
  const Field f = (*this)[key];
  const double v = f.number();
  if (v != std::floor(v) || std::abs(v) > 1e9) f.fail("expected an integer");
  *f.resolved_ = int(v);
  return int(v);
}

std::string Field::text() const {
  if (!node_.IsScalar()) fail("expected a string");
  const auto s = node_.as<std::string>();
  *resolved_ = s;
  return s;
}

std::string Field::text(const std::string& key) const { return (*this)[key].text(); }

std::string Field::text(const std::string& key, const std::string& fallback) const {
  if (has(key)) return text(key);
  child(resolved_, key) = fallback;
  return fallback;
}

std::string Field::choice(const std::string& key, const std::vector<std::string>& options,
                          const std::string& fallback) const {
  const std::string v = fallback.empty() ? text(key) : text(key, fallback);
  for (const auto& o : options)
    if (o == v) return v;
  std::string all;
  for (const auto& o : options) all += (all.empty() ? "" : ", ") + o;
  (has(key) ? (*this)[key] : *this).fail(fmt::format("'{}' is not one of {{{}}}", v, all));
}

double ScanConfig::tol(const std::string& key) const {
  const auto it = tolerances.find(key);
  if (it == tolerances.end()) throw SchemaError("unknown tolerance '" + key + "'");
  return it->second;
}

Field ScanConfig::field() { return Field(root, "", source, &resolved); }

namespace {

PermittivityModel read_material(const Field& f) {
  const std::string kind = f.choice("kind", {"vacuum", "constant", "plasma", "drude"}, "");
  const double eps = kind == "constant" ? f.number("eps") : 1.0;
  const double wp = kind == "plasma" || kind == "drude" ? f.number("omega_p") : 0.0;
  const double gamma = kind == "drude" ? f.number("gamma") : 0.0;
  const int power = kind == "drude" ? f.integer("m", 0) : 0;
  const double t_ref = kind == "drude" ? f.number("T_ref", 300.0) : 300.0;
  PermittivityModel m;
  try {
    if (kind == "vacuum") m = PermittivityModel::vacuum();
    if (kind == "constant") m = PermittivityModel::constant(eps);
    if (kind == "plasma") m = PermittivityModel::plasma(wp);
    if (kind == "drude") m = PermittivityModel::drude(wp, gamma, power, t_ref);
    m.validate();
  } catch (const casimir::Error& e) {
    f.fail(e.what());
  }
  return m;
}

LayerStack read_stack(const ScanConfig& cfg, const Field& f) {
  const auto material = [&](const Field& g) {
    const std::string name = g.text();
    const auto it = cfg.materials.find(name);
    if (it == cfg.materials.end()) g.fail(fmt::format("unknown material '{}'", name));
    return it->second;
  };
  LayerStack s;
  const std::string term = f.choice("termination", {"half_space", "periodic", "vacuum"}, "half_space");
  s.termination = term == "periodic" ? Termination::PeriodicRepeat
                  : term == "vacuum" ? Termination::Vacuum
                                     : Termination::HalfSpace;
  const Field layers = f["layers"];
  if (!layers.is_sequence()) layers.fail("expected a list of {material, thickness}");
  const int repeat = f.integer("repeat", 1);
  if (repeat < 1) f["repeat"].fail("must be >= 1");
  std::vector<Layer> one;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const Field l = layers.at(i);
    one.push_back({material(l["material"]), l.number("thickness")});
  }
  for (int r = 0; r < repeat; ++r) s.layers.insert(s.layers.end(), one.begin(), one.end());
  if (s.termination == Termination::HalfSpace) s.substrate = material(f["substrate"]);
  try {
    s.validate();
  } catch (const casimir::Error& e) {
    f.fail(e.what());
  }
  return s;
}

}  // namespace

ScanConfig parse_config(const std::string& text, const std::string& source) {
  ScanConfig cfg;
  cfg.source = source;
  try {
    cfg.root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw SchemaError(fmt::format("{}:{}:{}: {}", source, e.mark.line + 1, e.mark.column + 1, e.msg));
  }
  Field root = cfg.field();
  if (!cfg.root.IsMap()) root.fail("expected a mapping at the top level");

  static const std::vector<std::string> top{"task",      "output", "workers", "on_point_error",
                                            "tolerances", "materials", "stacks", "cavity",
                                            "scan",       "options", "atom",    "substrate",
                                            "oscillator", "stack"};
  for (const auto& k : root.keys())
    if (std::find(top.begin(), top.end(), k) == top.end()) root[k].fail("unknown top-level field");

  cfg.task = root.choice("task", task_names(), "");
  cfg.output = root.text("output", cfg.output);
  cfg.workers = root.integer("workers", 1);
  if (cfg.workers < 1) root["workers"].fail("must be >= 1");
  cfg.fail_on_point_error = root.choice("on_point_error", {"fail", "continue"}, "fail") == "fail";

  cfg.tolerances = kDefaultTolerances;
  if (root.has("tolerances")) {
    const Field t = root["tolerances"];
    for (const auto& k : t.keys()) {
      if (!kDefaultTolerances.count(k)) t[k].fail("unknown tolerance");
      const double v = t.number(k);
      if (!(v > 0.0)) t[k].fail("tolerances must be > 0");
      cfg.tolerances[k] = v;
    }
  }
  for (const auto& [k, v] : cfg.tolerances) cfg.resolved["tolerances"][k] = v;

  if (root.has("materials")) {
    const Field m = root["materials"];
    for (const auto& name : m.keys()) cfg.materials[name] = read_material(m[name]);
  }
  if (root.has("stacks")) {
    const Field s = root["stacks"];
    for (const auto& name : s.keys()) {
      if (cfg.materials.count(name)) s[name].fail("stack name shadows a material");
      cfg.stacks[name] = read_stack(cfg, s[name]);
    }
  }
  return cfg;
}

ScanConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

void apply_tolerance_overrides(ScanConfig& cfg, const std::vector<std::string>& kv) {
  for (const auto& item : kv) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw SchemaError("tolerance override '" + item + "': expected key=value");
    const std::string key = item.substr(0, eq);
    if (!cfg.tolerances.count(key)) throw SchemaError("tolerance override: unknown tolerance '" + key + "'");
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw SchemaError("tolerance override '" + item + "': not a number");
    }
    if (!(v > 0.0)) throw SchemaError("tolerance override '" + item + "': must be > 0");
    cfg.tolerances[key] = v;
    cfg.resolved["tolerances"][key] = v;
  }
}

Grid read_grid(const Field& f, const std::string& name, double lambda_p) {
  Grid g;
  g.name = name;
  double scale = f.number("scale", 1.0);
  const std::string unit = f.choice("unit", {"si", "lambda_p"}, "si");
  if (unit == "lambda_p") {
    if (!(lambda_p > 0.0)) f["unit"].fail("lambda_p needs a plasma or Drude first plate");
    scale *= lambda_p;
  }
  if (f.has("values")) {
    const Field v = f["values"];
    if (!v.is_sequence() || v.size() < 1) v.fail("expected a non-empty list");
    for (std::size_t i = 0; i < v.size(); ++i) g.values.push_back(v.at(i).number() * scale);
  } else {
    const std::string spacing = f.choice("spacing", {"linear", "log"}, "linear");
    const double lo = f.number("min"), hi = f.number("max");
    const int n = f.integer("count", 0);
    if (n < 2) f["count"].fail("grids need count >= 2");
    if (!(hi > lo)) f.fail("max must exceed min");
    if (spacing == "log" && !(lo > 0.0)) f["min"].fail("log grids need min > 0");
    for (int i = 0; i < n; ++i) {
      const double t = double(i) / (n - 1);
      g.values.push_back(scale * (spacing == "log" ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t));
    }
  }
  f.echo()["resolved_values"] = g.values;
  return g;
}

Plate resolve_plate(const ScanConfig& cfg, const Field& f, const std::string& key) {
  const Field g = f[key];
  const std::string name = g.text();
  if (name == "perfect_mirror") return PerfectMirror{};
  if (const auto it = cfg.materials.find(name); it != cfg.materials.end()) return it->second;
  if (const auto it = cfg.stacks.find(name); it != cfg.stacks.end()) return it->second;
  g.fail(fmt::format("unknown material or stack '{}'", name));
}

}  // namespace cli
