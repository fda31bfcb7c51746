// Acceptance run: one PASS/FAIL line per criterion. Exit status is 0 unless --strict is given
// and some criterion failed (or --only names an unknown criterion).
#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/dissipative.hpp"
#include "casimir/eddy.hpp"
#include "casimir/error.hpp"
#include "casimir/friction.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/modes.hpp"
#include "casimir/oscillator.hpp"
#include "casimir/spectra.hpp"

using namespace casimir;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "" : "!") + what);
  }
};

std::string fmt(const char* f, auto... a) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Least-squares slope of ln|y| against ln x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::log(x[i]), b = std::log(std::abs(y[i]));
    sx += a; sy += b; sxx += a * a; sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> logspace(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a * std::pow(b / a, double(i) / (n - 1)));
  return v;
}

CavityConfig pair_of(const PermittivityModel& m, double L, double T = 0.0) {
  CavityConfig c;
  c.plate1 = m;
  c.plate2 = m;
  c.L = L;
  c.T = T;
  return c;
}

constexpr double wp_gold = 1.37e16;

// 1. Perfect conductors.
void perfect_conductor(Outcome& o) {
  for (double L : {1e-7, 1e-6, 1e-5}) {
    CavityConfig c;
    c.L = L;
    const double ref = -pi * pi * phys::hbar * phys::c / (720.0 * L * L * L);
    const double d = rel(lifshitz_free_energy(c).value, ref);
    o.check(d < 1e-6, fmt("L=%gum rel %.1e", L * 1e6, d));
  }
}

// 2. Plasma short-distance slope and long-distance ratio.
void plasma_limits(Outcome& o) {
  const auto m = PermittivityModel::plasma(wp_gold);
  const double lp = m.plasma_wavelength();
  std::vector<double> x = logspace(0.01, 0.05, 7), y;
  for (double t : x) y.push_back(lifshitz_free_energy(pair_of(m, t * lp)).value);
  const double s = loglog_slope(x, y);
  o.check(std::abs(s + 2.0) <= 0.05, fmt("slope %.3f (want -2.00 +- 0.05)", s));
  const double L = 50.0 * lp;
  const double r = lifshitz_free_energy(pair_of(m, L)).value / perfect_conductor_energy(L);
  o.check(std::abs(r - 1.0) <= 0.02, fmt("E/E_PC(50 lp) %.4f", r));
}

// 3. Plasmonic/photonic decomposition.
void decomposition(Outcome& o) {
  const auto m = PermittivityModel::plasma(wp_gold);
  const double lp = m.plasma_wavelength();
  double worst = 0.0;
  for (double x : {0.05, 0.2, 1.0, 5.0}) {
    const auto e = mode_decomposition(pair_of(m, x * lp));
    worst = std::max(worst, std::abs(e.identity_defect() / e.total));
  }
  o.check(worst < 1e-3, fmt("|E_pl+E_ph-E_Lif|/|E_Lif| max %.1e", worst));
  const double a = plasmonic_alpha(wp_gold);
  o.check(rel(a, 1.790) <= 0.02, fmt("alpha %.4f (1.790 +- 2%%)", a));
  const double z = plasmonic_force_zero(pair_of(m, lp), 0.1 * lp, 0.25 * lp) / lp;
  o.check(std::abs(z - 0.16) <= 0.02, fmt("F_pl zero at %.4f lp", z));
}

// 4. Single-interface surface plasmon.
void surface_plasmon(Outcome& o) {
  const double wp = 1e16;
  double worst = 0.0;
  for (double kc : logspace(0.1, 10.0, 21)) {
    const double k = kc * wp / phys::c;
    // eps(w) kappa_0 + kappa_m = 0, in units of wp
    const auto g = [kc](double w) {
      const double k0 = std::sqrt(kc * kc - w * w), km = std::sqrt(kc * kc + 1.0 - w * w);
      return (1.0 - 1.0 / (w * w)) * k0 + km;
    };
    const double top = std::min(kc, 1.0 / std::sqrt(2.0)) * (1.0 - 1e-14);
    const auto roots = find_real_modes(g, 1e-3 * kc, top);
    if (roots.size() != 1) {
      o.check(false, fmt("k=%g: %zu roots", kc, roots.size()));
      return;
    }
    const double q = kc * kc;
    const double closed = std::sqrt(0.5 + q - std::sqrt(0.25 + q * q));
    worst = std::max({worst, rel(roots[0], closed), rel(spp_frequency(wp, k) / wp, closed)});
  }
  o.check(worst < 1e-8, fmt("root vs closed form max rel %.1e", worst));
  const double lim = rel(spp_frequency(wp, 1e6 * wp / phys::c), wp / std::sqrt(2.0));
  o.check(lim < 1e-6, fmt("k->inf rel to wp/sqrt2 %.1e", lim));
}

// 5. Dissipative oscillator.
void oscillator(Outcome& o) {
  double vieta = 0.0, integral = 0.0, imag = 0.0;
  for (double G : {0.1, 0.5, 1.0})
    for (double tau : {0.01, 0.1, 1.0}) {
      OscillatorConfig c{1.0, G, tau};
      const auto p = poles_and_zero(c);
      const cplx a = p.omega_1, b = p.omega_m1, d = p.omega_0;
      // zeta^3 + (i/tau) zeta^2 - (Gamma + tau wa^2)/tau zeta - i wa^2/tau
      const double s1 = 1.0 / tau, s2 = (G + tau) / tau, s3 = 1.0 / tau;
      vieta = std::max({vieta, std::abs(a + b + d + I * s1) / s1,
                        std::abs(a * b + a * d + b * d + s2) / s2, std::abs(a * b * d - I * s3) / s3});
      const auto e = ground_energy(c);
      integral = std::max(integral, std::abs(e.difference() / e.closed));
      const cplx sum = 0.25 * phys::hbar * (pole_weight(a, tau) + pole_weight(b, tau) + pole_weight(d, tau));
      imag = std::max(imag, std::abs(sum.imag() / sum.real()));
    }
  o.check(vieta < 1e-12, fmt("Vieta max rel %.1e", vieta));
  o.check(integral < 1e-6, fmt("closed vs integral max rel %.1e", integral));
  o.check(imag < 1e-12, fmt("Im/Re of pole sum %.1e", imag));
}

// 6 and 7 share the Drude mode sums.
struct DrudeRuns {
  ShortDistanceFit fit;
  double tau = 0.0, sum_rule = 0.0;
};

const DrudeRuns& drude_runs() {
  static const DrudeRuns r = [] {
    DrudeRuns out;
    const double lp = PermittivityModel::plasma(wp_gold).plasma_wavelength();
    std::vector<ShortDistanceSample> s;
    for (double x : {0.01, 0.02, 0.05})
      for (double g : {1e-3, 3e-3, 1e-2}) {
        const auto c = pair_of(PermittivityModel::drude(wp_gold, g * wp_gold), x * lp);
        const auto e = dissipative_mode_energy(c);
        s.push_back({c.L, g * wp_gold, e.energy});
        out.tau = std::max(out.tau, e.tau_defect);
        out.sum_rule = std::max(out.sum_rule, e.sum_rule_defect);
      }
    out.fit = fit_short_distance(wp_gold, s);
    return out;
  }();
  return r;
}

void short_distance(Outcome& o) {
  const auto& f = drude_runs().fit;
  const double beta0 = 15.0 * zeta3 / std::pow(pi, 4);
  o.check(rel(f.alpha, 1.193) <= 0.02, fmt("alpha %.4f (1.193 +- 2%%)", f.alpha));
  o.check(rel(f.beta, beta0) <= 0.05, fmt("beta %.4f vs %.4f (5%%)", f.beta, beta0));
}

void mode_sum_checks(Outcome& o) {
  const auto& r = drude_runs();
  o.check(r.sum_rule < 1e-6, fmt("sum rule defect %.1e", r.sum_rule));
  o.check(r.tau < 1e-6, fmt("tau_c -> 10 tau_c shift %.1e", r.tau));
}

// 8. High-temperature TE and entropy.
void thermal(Outcome& o) {
  {
    const double L = 5e-6, T = 300.0;
    const auto d = lifshitz_free_energy(pair_of(PermittivityModel::drude(wp_gold, 1e-3 * wp_gold), L, T));
    const auto p = lifshitz_free_energy(pair_of(PermittivityModel::plasma(wp_gold), L, T));
    const double r = d.te / p.te;
    o.check(std::abs(r) < 0.02, fmt("F_TE Drude/plasma %.4f", r));
  }
  const double L = 1e-6;
  const double S0 = static_te_entropy(wp_gold, L);
  {
    const auto c = pair_of(PermittivityModel::drude(wp_gold, 5.32e13, 1, 300.0), L, 1.0);
    const double T[] = {1.0};
    const auto s = casimir_entropy(c, T);
    const bool ok = std::isfinite(s[0].S) && std::abs(s[0].S) > 10.0 * s[0].error &&
                    std::abs(s[0].S / S0) > 0.1;
    o.check(ok, fmt("Drude S(1K)/S_static %.3f, err/|S| %.1e", s[0].S / S0, s[0].error / std::abs(s[0].S)));
  }
  {
    const auto c = pair_of(PermittivityModel::plasma(wp_gold), L, 1.0);
    const double T[] = {0.5, 2.0};
    const auto s = casimir_entropy(c, T);
    const double p = std::log(s[1].S / s[0].S) / std::log(4.0);
    const double small = std::abs(s[0].S / S0);
    o.check(p > 1.5 && small < 1e-3, fmt("plasma S ~ T^%.2f, S(0.5K)/S_static %.1e", p, small));
  }
}

// 9. Quantum friction.
double force(const MovingAtomConfig& c) { return friction_force_general(c, builtin_inputs(c)).force; }

void friction(Outcome& o) {
  const auto A = PermittivityModel::drude(1e15, 1e14), B = PermittivityModel::constant(11.7);
  MovingAtomConfig bulk;
  bulk.alpha0 = 1e-40;
  bulk.v = 3000.0;
  bulk.z_a = 1e-9;
  bulk.substrate = A;
  bulk.Lambda = builtin_bulk_lambda();
  auto v_slope = [](const MovingAtomConfig& c, const std::vector<double>& vs) {
    std::vector<double> f;
    for (double v : vs) f.push_back(force(c.at_velocity(v)));
    return loglog_slope(vs, f);
  };
  auto z_slope = [](const MovingAtomConfig& c, const std::vector<double>& zs) {
    std::vector<double> f;
    for (double z : zs) f.push_back(force(c.at_height(z)));
    return loglog_slope(zs, f);
  };
  const double sb = v_slope(bulk, logspace(100.0, 1000.0, 6));
  o.check(std::abs(sb - 3.0) <= 0.1, fmt("bulk v-slope %.3f", sb));

  MovingAtomConfig sl = bulk;
  sl.substrate = LayerStack::superlattice(A, 20e-9, B, 20e-9);
  const double z_b = z_slope(sl, logspace(1e-9, 3e-9, 4));
  const double z_s = z_slope(sl, logspace(1e-7, 1e-6, 4));
  const double z_e = z_slope(sl, logspace(1e-2, 1e-1, 4));
  o.check(std::abs(z_b + 10.0) <= 0.2, fmt("z-slope bulk %.3f", z_b));
  o.check(std::abs(z_s + 8.0) <= 0.2, fmt("slab %.3f", z_s));
  o.check(std::abs(z_e + 9.0) <= 0.2, fmt("EMA %.3f", z_e));

  const auto far = sl.at_height(1e-3);
  const double vs = threshold_velocity(far);
  std::vector<double> lo = logspace(1e-2 * vs, 1e-1 * vs, 4), hi = logspace(30.0 * vs, 300.0 * vs, 4);
  std::vector<double> flo, fhi;
  for (double v : lo) flo.push_back(force(far.at_velocity(v)));
  for (double v : hi) fhi.push_back(force(far.at_velocity(v)));
  const double se = loglog_slope(hi, fhi);
  o.check(std::abs(se - 2.0) <= 0.1, fmt("EMA v-slope %.3f", se));
  // Fixed-exponent prefactors on each side; their ratio is the crossover velocity.
  double a3 = 0.0, a2 = 0.0;
  for (std::size_t i = 0; i < lo.size(); ++i) a3 += std::log(std::abs(flo[i]) / std::pow(lo[i], 3)) / lo.size();
  for (std::size_t i = 0; i < hi.size(); ++i) a2 += std::log(std::abs(fhi[i]) / std::pow(hi[i], 2)) / hi.size();
  const double vc = std::exp(a2 - a3) / vs;
  o.check(vc > 1.0 / 3.0 && vc < 3.0, fmt("crossover %.2f v*", vc));

  MovingAtomConfig e = far;
  e.v = 250.0;
  const double rho = e.rho(), epsB = 11.7;
  const double ref = -(6.0 / (pi * pi)) * phys::hbar * e.alpha0 * e.alpha0 * rho / (phys::eps0 * epsB) *
                     (20e-9 / 20e-9) * e.v * e.v / std::pow(2.0 * e.z_a, 9);
  const double dp = rel(force_ema_asymptote(e), ref);
  o.check(dp < 1e-14, fmt("EMA prefactor rel %.1e", dp));

  const auto st = std::get<LayerStack>(sl.substrate);
  std::vector<double> w = logspace(1e6, 1e8, 11), r;
  for (double x : w) r.push_back(reflection_im_tm(st, x, 100.0));
  const double sr = loglog_slope(w, r);
  o.check(std::abs(sr - 0.5) <= 0.02, fmt("r_I slope %.3f", sr));
}

// 10. Root engine.
void engine(Outcome& o) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double wp = 1e16, L = 2e-8;
  int contours = 0, mismatched = 0;
  bool symmetric = true;
  for (int t = 0; t < 6; ++t) {
    const double g = wp * std::pow(10.0, -3.0 + 2.0 * u(rng)), k = std::pow(10.0, -1.0 + 2.0 * u(rng)) / L;
    const auto roots = quasi_static_modes(wp, g, k, L);
    for (const auto& r : roots) {
      const cplx m = -std::conj(r.location);
      const bool found = std::any_of(roots.begin(), roots.end(), [&](const ComplexRoot& q) {
        return q.kind == r.kind && q.multiplicity == r.multiplicity && std::abs(q.location - m) < 1e-9 * wp;
      });
      symmetric = symmetric && found;
    }
    const double e = std::exp(-k * L);
    DispersionFunction f;
    f.numerator = [=](cplx z) {
      const cplx s = z * (z + I * g);
      return (2.0 * s - wp * wp) * (2.0 * s - wp * wp) - wp * wp * wp * wp * e * e;
    };
    for (int j = 0; j < 4; ++j) {
      const Rect box{-wp * (0.2 + u(rng)), wp * (0.2 + u(rng)), -g * (0.2 + 2.0 * u(rng)), wp * 0.3 * u(rng) + 1e-3 * wp};
      int inside = 0;
      for (const auto& r : roots)
        if (r.kind == RootKind::Zero && box.contains(r.location)) inside += r.multiplicity;
      try {
        ++contours;
        if (winding_count(f, box) != inside) ++mismatched;
      } catch (const NonIntegerWinding&) {
        ++mismatched;
      } catch (const RootOnContour&) {
        --contours;
      }
    }
  }
  for (double G : {0.2, 0.7})
    for (double tau : {0.05, 0.5}) {
      const auto p = poles_and_zero(OscillatorConfig{1.0, G, tau});
      symmetric = symmetric && std::abs(p.omega_m1 + std::conj(p.omega_1)) < 1e-12 &&
                  std::abs(p.omega_0.real()) < 1e-12;
    }
  o.check(mismatched == 0, fmt("%d/%d random contours give the enclosed integer count", contours - mismatched, contours));
  o.check(symmetric, "root sets closed under z -> -conj(z)");

  int recovered = 0, fixtures = 0;
  for (int t = 0; t < 12; ++t) {
    std::vector<std::pair<cplx, int>> roots;
    int degree = 0;
    const int target = 1 + t % 6;
    while (degree < target) {
      const int m = std::min(1 + int(u(rng) * 3.0), target - degree);
      cplx z;
      bool far;
      do {
        z = cplx(-0.8 + 1.6 * u(rng), -0.8 + 1.6 * u(rng));
        far = std::all_of(roots.begin(), roots.end(), [&](auto& r) { return std::abs(r.first - z) > 0.15; });
      } while (!far);
      roots.push_back({z, m});
      degree += m;
    }
    DispersionFunction f;
    f.numerator = [roots](cplx z) {
      cplx p = 1.0;
      for (auto [r, m] : roots) p *= std::pow(z - r, m);
      return p;
    };
    const auto found = find_complex_modes(f, Rect{-1.03, 1.01, -1.02, 1.04});
    bool ok = found.size() == roots.size();
    for (auto [r, m] : roots)
      ok = ok && std::any_of(found.begin(), found.end(), [&](const ComplexRoot& c) {
             return std::abs(c.location - r) < 1e-7 && c.multiplicity == m;
           });
    ++fixtures;
    recovered += ok;
  }
  o.check(recovered == fixtures, fmt("%d/%d polynomial fixtures (degree <= 6)", recovered, fixtures));

  const auto A = PermittivityModel::drude(1.37e16, 5.32e13), B = PermittivityModel::constant(11.7);
  const auto bloch = LayerStack::superlattice(A, 20e-9, B, 20e-9);
  const auto fin = LayerStack::finite_superlattice(A, 20e-9, B, 20e-9, 200);
  const auto longer = LayerStack::finite_superlattice(A, 20e-9, B, 20e-9, 6400);
  double worst = 0.0, worst_long = 0.0;
  int bad = 0;
  for (int t = 0; t < 50; ++t) {
    const double w = 1.37e16 * std::pow(10.0, -3.0 + 3.0 * u(rng));
    const double k = w / phys::c * std::pow(10.0, 0.05 + 2.0 * u(rng));
    const auto pol = t % 2 ? Polarization::TE : Polarization::TM;
    const cplx a = stack_reflection(pol, w, k, bloch, 0.0), b = stack_reflection(pol, w, k, fin, 0.0);
    const double d = std::abs(a - b);
    worst = std::max(worst, d);
    if (d >= 1e-3) {
      // A weakly damped band: is the gap truncation or the Bloch coefficient?
      ++bad;
      worst_long = std::max(worst_long, std::abs(a - stack_reflection(pol, w, k, longer, 0.0)));
    }
  }
  std::string msg = fmt("Bloch vs 200 periods max |dr| %.1e, %d/50 points >= 1e-3", worst, bad);
  if (bad) msg += fmt(" (those vs 6400 periods: %.1e)", worst_long);
  o.check(worst < 1e-3, msg);
}

// 11. Golden tables through the CLI.
struct GoldenSetup {
  std::string cli, configs, golden, work;
};
GoldenSetup golden_setup;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void determinism(Outcome& o) {
  const auto& g = golden_setup;
  if (g.cli.empty()) {
    o.check(false, "no --cli given");
    return;
  }
  fs::create_directories(g.work);
  int tables = 0, same = 0;
  for (const auto& e : fs::directory_iterator(g.golden)) {
    if (e.path().extension() != ".csv") continue;
    const std::string name = e.path().stem().string();
    const std::string ref = slurp(e.path());
    bool ok = !ref.empty();
    for (const char* w : {"1", "1", "4"}) {
      const fs::path out = fs::path(g.work) / (name + "_w" + w);
      const std::string cmd = "\"" + g.cli + "\" --config \"" + (fs::path(g.configs) / (name + ".yaml")).string() +
                              "\" --out \"" + out.string() + "\" --workers " + w + " 2>/dev/null";
      ok = ok && std::system(cmd.c_str()) == 0 && slurp(out.string() + ".csv") == ref;
    }
    ++tables;
    same += ok;
  }
  o.check(tables > 0 && same == tables, fmt("%d/%d tables byte-identical (w=1 twice, w=4)", same, tables));
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  bool strict = false;
  std::vector<int> only;
  app.add_flag("--strict", strict, "exit nonzero when a criterion fails");
  app.add_option("--only", only, "criteria to run")->delimiter(',');
  app.add_option("--cli", golden_setup.cli, "casimir-scan executable");
  app.add_option("--configs", golden_setup.configs, "directory of example configs");
  app.add_option("--golden", golden_setup.golden, "directory of golden CSVs");
  app.add_option("--work", golden_setup.work, "scratch directory");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all{
      {1, "perfect-conductor prefactor", perfect_conductor},
      {2, "plasma short/long-distance limits", plasma_limits},
      {3, "plasmonic/photonic decomposition", decomposition},
      {4, "surface plasmon dispersion", surface_plasmon},
      {5, "dissipative oscillator", oscillator},
      {6, "Drude short-distance coefficients", short_distance},
      {7, "mode-sum sum rule and tau_c independence", mode_sum_checks},
      {8, "high-T TE and entropy", thermal},
      {9, "quantum friction scalings", friction},
      {10, "root engine properties", engine},
      {11, "golden tables deterministic", determinism},
  };
  const std::set<int> pick(only.begin(), only.end());
  for (int id : pick)
    if (id < 1 || id > int(all.size())) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
  int failed = 0, run = 0;
  for (const auto& c : all) {
    if (!pick.empty() && !pick.count(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string detail;
    for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
    std::printf("%s %2d %-42s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.title, detail.c_str(), dt);
    std::fflush(stdout);
    ++run;
    failed += !o.pass;
  }
  std::printf("%d/%d criteria pass\n", run - failed, run);
  return strict && failed ? 1 : 0;
}
