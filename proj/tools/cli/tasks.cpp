#include "tasks.hpp"

#include <fmt/format.h>

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <thread>

#include "casimir/dissipative.hpp"
#include "casimir/eddy.hpp"
#include "casimir/error.hpp"
#include "casimir/modes.hpp"
#include "casimir/oscillator.hpp"

namespace cli {

using namespace casimir;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// One scan: the table layout, a point evaluator, the row written when a point fails, and an
// optional pass over the assembled table (local slopes need all points).
struct Plan {
  std::vector<std::string> columns;
  std::size_t points = 0;
  std::function<std::vector<Row>(std::size_t)> eval;
  std::function<Row(std::size_t)> failed_row;
  std::function<void(std::vector<Row>&)> finish;
};

Row nan_row(std::size_t width, std::vector<Cell> lead) {
  Row r(std::move(lead));
  while (r.size() < width) r.emplace_back(kNaN);
  return r;
}

double num(const Cell& c) { return std::get<double>(c); }

double plate_lambda_p(const Plate& p) {
  if (const auto* m = std::get_if<PermittivityModel>(&p))
    if (m->kind == MaterialKind::Plasma || m->kind == MaterialKind::Drude) return m->plasma_wavelength();
  return 0.0;
}

CavityConfig read_cavity(ScanConfig& cfg, const Field& root) {
  const Field c = root["cavity"];
  CavityConfig cav;
  cav.plate1 = resolve_plate(cfg, c, "plate1");
  cav.plate2 = c.has("plate2") ? resolve_plate(cfg, c, "plate2") : cav.plate1;
  if (!c.has("plate2")) c.echo()["plate2"] = c.echo()["plate1"];
  cav.L = c.number("L", 1e-6);
  cav.T = c.number("T", 0.0);
  cav.area = c.number("area", 1.0);
  try {
    cav.validate();
  } catch (const casimir::Error& e) {
    c.fail(e.what());
  }
  return cav;
}

// Log-log slope column `col_slope` from column `col_y` against column 0.
void fill_slopes(std::vector<Row>& rows, std::size_t col_y, std::size_t col_slope) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(num(r[0]));
    y.push_back(num(r[col_y]));
  }
  bool ok = true;
  for (double v : y) ok = ok && std::isfinite(v) && v != 0.0;
  if (!ok) return;
  const auto s = local_slopes(x, y, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i][col_slope] = s[i];
}

void require_slope_density(const Field& f, const Grid& g) {
  try {
    local_slopes(g.values, std::vector<double>(g.values.size(), 1.0));
  } catch (const casimir::Error& e) {
    f.fail(e.what());
  }
}

Plan plan_energy(ScanConfig& cfg) {
  Field root = cfg.field();
  const CavityConfig cav = read_cavity(cfg, root);
  const Field scan = root["scan"];
  const Grid g = read_grid(scan["L"], "L", plate_lambda_p(cav.plate1));
  bool force = false, split = false;
  if (root.has("options")) {
    const Field o = root["options"];
    force = o.choice("quantity", {"energy", "force"}, "energy") == "force";
    split = o.choice("polarizations", {"sum", "split"}, "sum") == "split";
  } else {
    cfg.resolved["options"] = {{"quantity", "energy"}, {"polarizations", "sum"}};
  }
  LifshitzOptions opt;
  opt.rel_tol = cfg.tol("rel_tol");
  opt.force = force;
  const std::string q = force ? "F" : "E";
  Plan p;
  p.columns = {"L", q};
  if (split) p.columns.insert(p.columns.end(), {q + "_TE", q + "_TM"});
  p.columns.push_back("err");
  const std::size_t width = p.columns.size();
  p.points = g.values.size();
  p.eval = [=](std::size_t i) {
    const auto r = lifshitz_free_energy(cav.at(g.values[i]), opt);
    Row row{g.values[i], r.value};
    if (split) row.insert(row.end(), {r.te, r.tm});
    row.emplace_back(r.error);
    return std::vector<Row>{row};
  };
  p.failed_row = [=](std::size_t i) { return nan_row(width, {g.values[i]}); };
  return p;
}

Plan plan_decompose(ScanConfig& cfg) {
  Field root = cfg.field();
  const CavityConfig cav = read_cavity(cfg, root);
  try {
    identical_plasma_frequency(cav);
  } catch (const casimir::Error& e) {
    root["cavity"].fail(e.what());
  }
  if (cav.T != 0.0) root["cavity"]["T"].fail("the decomposition is implemented at T = 0");
  const Grid g = read_grid(root["scan"]["L"], "L", plate_lambda_p(cav.plate1));
  DecompositionOptions opt;
  opt.rel_tol = cfg.tol("decompose_tol");
  Plan p;
  p.columns = {"L", "E_pl", "E_ph", "E_Lif", "defect", "err"};
  p.points = g.values.size();
  p.eval = [=](std::size_t i) {
    const auto e = mode_decomposition(cav.at(g.values[i]), opt);
    return std::vector<Row>{{g.values[i], e.plasmonic, e.photonic, e.total, e.identity_defect(), e.error}};
  };
  p.failed_row = [=](std::size_t i) { return nan_row(6, {g.values[i]}); };
  return p;
}

Plan plan_eddy(ScanConfig& cfg) {
  Field root = cfg.field();
  const CavityConfig cav = read_cavity(cfg, root);
  try {
    identical_drude(cav);
  } catch (const casimir::Error& e) {
    root["cavity"].fail(e.what());
  }
  const Grid g = read_grid(root["scan"]["L"], "L", plate_lambda_p(cav.plate1));
  std::string regime = "ground";
  double tau_c = 1e-18;
  if (root.has("options")) {
    const Field o = root["options"];
    regime = o.choice("regime", {"ground", "high_T"}, "ground");
    tau_c = o.number("tau_c", tau_c);
    if (!(tau_c > 0.0)) o["tau_c"].fail("must be > 0");
  } else {
    cfg.resolved["options"] = {{"regime", regime}, {"tau_c", tau_c}};
  }
  Plan p;
  p.columns = {"L", "eddy_TE", "eddy_TM", "eddy", "err"};
  p.points = g.values.size();
  p.eval = [=](std::size_t i) {
    const auto c = cav.at(g.values[i]);
    const auto r = regime == "ground" ? eddy_energy(c, tau_c) : eddy_free_energy_highT(c);
    return std::vector<Row>{{g.values[i], r.te, r.tm, r.value, r.error}};
  };
  p.failed_row = [=](std::size_t i) { return nan_row(5, {g.values[i]}); };
  return p;
}

Plan plan_entropy(ScanConfig& cfg) {
  Field root = cfg.field();
  const CavityConfig cav = read_cavity(cfg, root);
  const Field scan = root["scan"];
  const Grid g = read_grid(scan["T"], "T");
  for (double t : g.values)
    if (!(t > 0.0)) scan.fail("temperatures must be > 0");
  const double step = root.has("options") ? root["options"].number("rel_step", 0.1) : 0.1;
  if (!(step > 0.0 && step < 0.5)) root["options"]["rel_step"].fail("must lie in (0, 0.5)");
  cfg.resolved["options"]["rel_step"] = step;
  Plan p;
  p.columns = {"T", "S", "err"};
  p.points = g.values.size();
  p.eval = [=](std::size_t i) {
    const double t[] = {g.values[i]};
    const auto s = casimir_entropy(cav, t, step).front();
    return std::vector<Row>{{s.T, s.S, s.error}};
  };
  p.failed_row = [=](std::size_t i) { return nan_row(3, {g.values[i]}); };
  return p;
}

Plan plan_modes(ScanConfig& cfg) {
  Field root = cfg.field();
  const CavityConfig cav = read_cavity(cfg, root);
  const auto* m = std::get_if<PermittivityModel>(&cav.plate1);
  const auto* m2 = std::get_if<PermittivityModel>(&cav.plate2);
  if (!m || !m2 || m->kind != m2->kind || m->omega_p != m2->omega_p || m->gamma0 != m2->gamma0 ||
      (m->kind != MaterialKind::Plasma && m->kind != MaterialKind::Drude))
    root["cavity"].fail("mode spectra need two identical plasma or Drude plates");
  const Grid g = read_grid(root["scan"]["k"], "k");
  for (double k : g.values)
    if (!(k > 0.0)) root["scan"].fail("k must be > 0");
  const double wp = m->omega_p, L = cav.L, gam = m->gamma(cav.T);
  const bool plasma = m->kind == MaterialKind::Plasma || gam == 0.0;
  Plan p;
  p.columns = {"k", "branch", "re_omega", "im_omega", "propagating", "err"};
  p.points = g.values.size();
  p.eval = [=](std::size_t i) {
    const double k = g.values[i];
    std::vector<Row> rows;
    if (plasma) {
      const auto pr = plasmonic_pair(wp, L, k);
      const double tol = 1e-12 * wp;
      rows.push_back({k, std::string("plasmonic_minus"), pr.omega_minus, 0.0, 0.0, tol});
      rows.push_back({k, std::string("plasmonic_plus"), pr.omega_plus, 0.0, pr.plus_propagating ? 1.0 : 0.0, tol});
      rows.push_back({k, std::string("surface_plasmon"), pr.omega_sp, 0.0, 0.0, tol});
      return rows;
    }
    for (const auto& r : quasi_static_modes(wp, gam, k, L))
      rows.push_back({k, std::string(r.kind == RootKind::Zero ? "dissipative_zero" : "dissipative_pole"),
                      r.location.real(), r.location.imag(), 0.0, r.residual});
    return rows;
  };
  p.failed_row = [=](std::size_t i) { return nan_row(6, {g.values[i], std::string("failed")}); };
  return p;
}

Plan plan_oscillator(ScanConfig& cfg) {
  Field root = cfg.field();
  const Field o = root["oscillator"];
  const double omega_a = o.number("omega_a");
  const Field scan = root["scan"];
  const Grid gam = read_grid(scan["Gamma"], "Gamma");
  const Grid tau = read_grid(scan["tau_c"], "tau_c");
  for (double t : tau.values)
    if (!(t > 0.0)) scan["tau_c"].fail("tau_c must be > 0 (the tau_c = 0 energy needs a cutoff)");
  Plan p;
  p.columns = {"Gamma", "tau_c", "E_closed", "E_integral", "defect", "err"};
  p.points = gam.values.size() * tau.values.size();
  const std::size_t nt = tau.values.size();
  p.eval = [=](std::size_t i) {
    OscillatorConfig c{omega_a, gam.values[i / nt], tau.values[i % nt]};
    const auto e = ground_energy(c);
    return std::vector<Row>{{c.Gamma, c.tau_c, e.closed, e.integral, e.difference(), e.integral_error}};
  };
  p.failed_row = [=](std::size_t i) { return nan_row(6, {gam.values[i / nt], tau.values[i % nt]}); };
  return p;
}

Plan plan_friction(ScanConfig& cfg) {
  Field root = cfg.field();
  const Field atom = root["atom"];
  MovingAtomConfig base;
  base.alpha0 = atom.number("alpha0");
  base.v = atom.number("v", 0.0);
  base.z_a = atom.number("z_a", 1e-9);
  base.Lambda = atom.number("Lambda", builtin_bulk_lambda());
  {
    const Field s = root["substrate"];
    const std::string name = s.text();
    if (const auto it = cfg.materials.find(name); it != cfg.materials.end()) base.substrate = it->second;
    else if (const auto jt = cfg.stacks.find(name); jt != cfg.stacks.end()) base.substrate = jt->second;
    else s.fail(fmt::format("unknown material or stack '{}'", name));
  }
  const Field scan = root["scan"];
  const std::string var = scan.choice("variable", {"z_a", "v"}, "");
  const Grid g = read_grid(scan[var], var);
  require_slope_density(scan[var], g);
  for (double x : g.values)
    if (!(x > 0.0)) scan.fail("friction scans need positive grid values");
  try {
    (var == "z_a" ? base.at_height(g.values.front()) : base.at_velocity(g.values.front())).validate();
    base.rho();
  } catch (const casimir::Error& e) {
    root["substrate"].fail(e.what());
  }
  bool superlattice = false;
  try {
    threshold_velocity(base);
    superlattice = true;
  } catch (const casimir::InvalidArgument&) {
  }
  const double tol = cfg.tol("friction_tol");
  Plan p;
  p.columns = {var, "F", "err", "slope", "F_bulk_asymptote"};
  if (superlattice) {
    p.columns.push_back("F_ema_asymptote");
    p.columns.push_back("v_star");
  }
  const std::size_t width = p.columns.size();
  p.points = g.values.size();
  p.eval = [=](std::size_t i) {
    const auto c = var == "z_a" ? base.at_height(g.values[i]) : base.at_velocity(g.values[i]);
    const auto r = friction_force_general(c, builtin_inputs(c), tol);
    Row row{g.values[i], r.force, r.error, kNaN, force_bulk_asymptote(c)};
    if (superlattice) {
      row.emplace_back(force_ema_asymptote(c));
      row.emplace_back(threshold_velocity(c));
    }
    return std::vector<Row>{row};
  };
  p.failed_row = [=](std::size_t i) { return nan_row(width, {g.values[i]}); };
  p.finish = [](std::vector<Row>& rows) { fill_slopes(rows, 1, 3); };
  return p;
}

Plan plan_rI(ScanConfig& cfg) {
  Field root = cfg.field();
  const Field s = root["stack"];
  const std::string name = s.text();
  LayerStack st;
  if (const auto it = cfg.stacks.find(name); it != cfg.stacks.end()) st = it->second;
  else if (const auto jt = cfg.materials.find(name); jt != cfg.materials.end()) st = LayerStack::half_space(jt->second);
  else s.fail(fmt::format("unknown material or stack '{}'", name));
  const Field scan = root["scan"];
  const Grid ks = read_grid(scan["k"], "k");
  const Grid ws = read_grid(scan["omega"], "omega");
  require_slope_density(scan["omega"], ws);
  for (double w : ws.values)
    if (!(w > 0.0)) scan["omega"].fail("omega must be > 0");
  // Error estimate: a periodic stack written with a doubled period has the same fixed point.
  LayerStack twice = st;
  if (st.termination == Termination::PeriodicRepeat)
    twice.layers.insert(twice.layers.end(), st.layers.begin(), st.layers.end());
  const std::size_t nw = ws.values.size();
  Plan p;
  p.columns = {"k", "omega", "r_I", "slope", "err"};
  p.points = ks.values.size();
  p.eval = [=](std::size_t i) {
    const double k = ks.values[i];
    std::vector<double> r;
    std::vector<Row> rows;
    for (double w : ws.values) r.push_back(reflection_im_tm(st, w, k));
    std::vector<double> sl(nw, kNaN);
    bool positive = true;
    for (double v : r) positive = positive && v > 0.0;
    if (positive) sl = local_slopes(ws.values, r, 0.0);
    for (std::size_t j = 0; j < nw; ++j) {
      const double e = st.termination == Termination::PeriodicRepeat
                           ? std::abs(reflection_im_tm(twice, ws.values[j], k) - r[j])
                           : 0.0;
      rows.push_back({k, ws.values[j], r[j], sl[j], e});
    }
    return rows;
  };
  p.failed_row = [=](std::size_t i) { return nan_row(5, {ks.values[i]}); };
  return p;
}

Plan make_plan(ScanConfig& cfg) {
  const auto& t = cfg.task;
  if (t == "energy") return plan_energy(cfg);
  if (t == "decompose") return plan_decompose(cfg);
  if (t == "eddy") return plan_eddy(cfg);
  if (t == "entropy") return plan_entropy(cfg);
  if (t == "modes") return plan_modes(cfg);
  if (t == "oscillator") return plan_oscillator(cfg);
  if (t == "friction") return plan_friction(cfg);
  return plan_rI(cfg);
}

}  // namespace

RunResult run_task(ScanConfig& cfg, int workers) {
  Plan plan = make_plan(cfg);
  const std::size_t n = plan.points;
  std::vector<std::optional<std::vector<Row>>> out(n);
  std::vector<std::string> failure(n);

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = plan.eval(i);
      } catch (const std::exception& e) {
        failure[i] = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < std::min<int>(workers, int(n)); ++w) pool.emplace_back(work);
    work();
  }

  RunResult res;
  res.columns = plan.columns;
  res.points = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (out[i]) {
      for (auto& r : *out[i]) res.rows.push_back(std::move(r));
    } else {
      res.rows.push_back(plan.failed_row(i));
      res.errors.push_back({i, failure[i]});
    }
  }
  if (plan.finish) plan.finish(res.rows);
  return res;
}

}  // namespace cli
