#include <fmt/format.h>

#include <iostream>

#include "CLI11.hpp"
#include "output.hpp"

// Exit codes: 0 ok, 1 runtime failure, 2 config/schema error, 3 point failures under
// on_point_error: fail (the table is still written, with NaN rows).
int main(int argc, char** argv) {
  CLI::App app{"Casimir and quantum-friction parameter scans"};
  std::string config, out;
  int workers = 0;
  std::vector<std::string> overrides;
  app.add_option("--config", config, "YAML scan description")->required();
  app.add_option("--out", out, "output stem; writes <out>.csv and <out>.json (default: config 'output')");
  app.add_option("--workers", workers, "worker threads (default: config 'workers')")->check(CLI::PositiveNumber);
  app.add_option("--seed-tolerance-overrides", overrides, "key=value tolerance overrides, e.g. rel_tol=1e-6")
      ->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  try {
    cli::ScanConfig cfg = cli::load_config(config);
    cli::apply_tolerance_overrides(cfg, overrides);
    if (workers == 0) workers = cfg.workers;
    const std::string stem = out.empty() ? cfg.output : out;
    const auto res = cli::run_task(cfg, workers);
    const auto csv = cli::write_outputs(stem, cfg, res);
    std::cerr << fmt::format("{}: {} rows, {} failed points -> {}\n", cfg.task, res.rows.size(),
                             res.errors.size(), csv);
    for (const auto& e : res.errors) std::cerr << fmt::format("  point {}: {}\n", e.point, e.message);
    return res.errors.empty() || !cfg.fail_on_point_error ? 0 : 3;
  } catch (const cli::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
