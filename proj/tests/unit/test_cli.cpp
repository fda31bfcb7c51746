#include <sstream>

#include "config.hpp"
#include "output.hpp"
#include "support.hpp"
#include "tasks.hpp"

using namespace cli;

namespace {

const char* kEnergy = R"(task: energy
materials:
  gold: {kind: plasma, omega_p: 1.37e16}
cavity: {plate1: gold, plate2: gold}
scan:
  L: {values: [1.0e-7, 1.0e-6, 1.0e-5]}
)";

std::string csv_of(const RunResult& r) {
  std::ostringstream os;
  write_csv(os, r);
  return os.str();
}

std::string schema_error(const std::string& text) {
  try {
    auto cfg = parse_config(text, "t.yaml");
    run_task(cfg, 1);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("energy smoke") {
  auto cfg = parse_config(kEnergy, "t.yaml");
  const auto r = run_task(cfg, 2);
  CHECK(r.columns == std::vector<std::string>{"L", "E", "err"});
  REQUIRE(r.rows.size() == 3);
  for (const auto& row : r.rows) {
    CHECK(std::get<double>(row[1]) < 0.0);
    CHECK(std::get<double>(row[2]) >= 0.0);
  }
  const auto j = sidecar(cfg, r);
  CHECK(j["version"] == kVersion);
  CHECK(j["config"]["scan"]["L"]["resolved_values"].size() == 3);
  CHECK(j["config"]["tolerances"]["rel_tol"] == 1e-8);
  CHECK(j["errors"].empty());
}

TEST_CASE("worker count does not change the table") {
  auto cfg = parse_config(kEnergy, "t.yaml");
  const auto a = csv_of(run_task(cfg, 1));
  CHECK(a == csv_of(run_task(cfg, 3)));
  CHECK(a == csv_of(run_task(cfg, 8)));
}

TEST_CASE("schema errors name line and field") {
  std::string bad = kEnergy;
  bad.replace(bad.find("plate1: gold"), 12, "plate1: silv");
  const auto e = schema_error(bad);
  CHECK(e.find("t.yaml:4:") != std::string::npos);
  CHECK(e.find("cavity.plate1") != std::string::npos);
  CHECK(e.find("silv") != std::string::npos);

  CHECK(schema_error("task: energy\nbogus: 1\n").find("bogus") != std::string::npos);
  CHECK(schema_error("task: nothing\n").find("task") != std::string::npos);
  CHECK(schema_error("task: energy\nmaterials:\n  x: {kind: plasma}\n").find("omega_p") != std::string::npos);
  CHECK(schema_error("task: energy\nmaterials:\n  x: {kind: constant, eps: 0.5}\n").find("materials.x") !=
        std::string::npos);
  std::string one = kEnergy;
  one.replace(one.find("{values"), std::string::npos, "{spacing: log, min: 1e-7, max: 1e-6, count: 1}\n");
  CHECK(schema_error(one).find("scan.L.count") != std::string::npos);
  CHECK(schema_error("task: [\n").find("t.yaml:") != std::string::npos);
}

TEST_CASE("tolerance overrides") {
  auto cfg = parse_config(kEnergy, "t.yaml");
  apply_tolerance_overrides(cfg, {"rel_tol=1e-6"});
  CHECK(cfg.tol("rel_tol") == 1e-6);
  CHECK(cfg.resolved["tolerances"]["rel_tol"] == 1e-6);
  CHECK_THROWS_AS(apply_tolerance_overrides(cfg, {"nope=1"}), SchemaError);
  CHECK_THROWS_AS(apply_tolerance_overrides(cfg, {"rel_tol=-1"}), SchemaError);
  CHECK_THROWS_AS(apply_tolerance_overrides(cfg, {"rel_tol=1e-6x"}), SchemaError);
}

TEST_CASE("grids") {
  auto log = parse_config("task: energy\nscan: {spacing: log, min: 1, max: 100, count: 3}\n", "g.yaml");
  const auto lg = read_grid(Field(log.root["scan"], "scan", "g.yaml", &log.resolved), "g");
  REQUIRE(lg.values.size() == 3);
  CHECK(lg.values[1] == doctest::Approx(10.0));
  auto lp = parse_config("task: energy\nscan: {values: [1, 2], unit: lambda_p}\n", "g.yaml");
  const auto lv = read_grid(Field(lp.root["scan"], "scan", "g.yaml", &lp.resolved), "g", 0.5);
  CHECK(lv.values == std::vector<double>{0.5, 1.0});
}

TEST_CASE("csv quoting") {
  CHECK(csv_field(std::string("plain")) == "plain");
  CHECK(csv_field(std::string("a,b")) == "\"a,b\"");
  CHECK(csv_field(std::string("say \"hi\"")) == "\"say \"\"hi\"\"\"");
  CHECK(csv_field(std::string("two\nlines")) == "\"two\nlines\"");
  CHECK(csv_field(1.5) == "1.5000000000e+00");
  CHECK(csv_field(-0.0) == csv_field(0.0));
  CHECK(csv_field(std::nan("")) == "NaN");
  RunResult r;
  r.columns = {"x", "label"};
  r.rows = {{1.0, std::string("a,b")}};
  CHECK(csv_of(r) == "x,label\r\n1.0000000000e+00,\"a,b\"\r\n");
}

TEST_CASE("failed points become NaN rows") {
  auto cfg = parse_config(R"(task: oscillator
oscillator: {omega_a: 1.0}
scan:
  Gamma: {values: [0.1, 3.0]}
  tau_c: {values: [0.01]}
)", "t.yaml");
  const auto r = run_task(cfg, 2);
  REQUIRE(r.rows.size() == 2);
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].point == 1);
  CHECK(r.errors[0].message.find("imaginary poles") != std::string::npos);
  CHECK(std::get<double>(r.rows[1][0]) == 3.0);
  CHECK(std::isnan(std::get<double>(r.rows[1][2])));
  CHECK(!std::isnan(std::get<double>(r.rows[0][2])));
  CHECK(sidecar(cfg, r)["errors"].size() == 1);
  CHECK(cfg.fail_on_point_error);
}

}  // TEST_SUITE
