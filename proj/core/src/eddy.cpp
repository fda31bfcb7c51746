#include "casimir/eddy.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <limits>

#include "casimir/dissipative.hpp"
#include "casimir/error.hpp"

namespace casimir {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

const PermittivityModel& drude_plate(const CavityConfig& cfg) {
  identical_drude(cfg);
  return std::get<PermittivityModel>(cfg.plate1);
}

// Integral over the continuum at fixed k of w(xi) * Theta(xi), both polarizations.
template <class W>
std::pair<double, double> cut_integral(const CavityConfig& cfg, double k, W&& w, double rel_tol) {
  const auto& m = drude_plate(cfg);
  const double g = m.gamma(cfg.T);
  const double x0 = eddy_branch_point(m.omega_p, g, k);
  double out[2];
  const Polarization pols[2] = {Polarization::TE, Polarization::TM};
  // x0 ~ k^2 can sit many decades below gamma: integrate in ln xi.
  const double span = std::log(g / x0);
  for (int p = 0; p < 2; ++p) {
    const auto f = [&](double u) {
      const double xi = x0 * std::exp(span * u);
      return w(xi) * eddy_phase(pols[p], xi, k, cfg) * xi * span;
    };
    out[p] = integrate(f, 0.0, 1.0, rel_tol, 14).value;
  }
  return {out[0], out[1]};
}

template <class W>
EddyResult k_integral(const CavityConfig& cfg, W&& w, double rel_tol) {
  const double L = cfg.L;
  EddyResult r;
  const double pts[] = {0.0, 0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 30.0};
  double parts[2] = {0.0, 0.0};
  for (int p = 0; p < 2; ++p) {
    const auto f = [&](double x) {
      const double k = x / L;
      const auto [te, tm] = cut_integral(cfg, k, w, rel_tol);
      return x / (L * L) / (2.0 * pi) * (p == 0 ? te : tm);
    };
    const auto q = integrate_pieces(f, pts, rel_tol, 12);
    parts[p] = q.value * cfg.area;
    r.error += q.error * cfg.area;
  }
  r.te = parts[0];
  r.tm = parts[1];
  r.value = r.te + r.tm;
  return r;
}

}  // namespace

double eddy_branch_point(double omega_p, double gamma, double k) {
  if (!(gamma > 0.0)) throw InvalidArgument("eddy continuum needs gamma > 0");
  const double ck2 = phys::c * phys::c * k * k;
  const auto f = [&](double xi) { return omega_p * omega_p * xi - (ck2 + xi * xi) * (gamma - xi); };
  if (ck2 == 0.0) return 0.0;
  std::uintmax_t it = 200;
  auto [lo, hi] = boost::math::tools::toms748_solve(
      f, 0.0, gamma, f(0.0), f(gamma),
      [](double a, double b) { return std::abs(a - b) <= 1e-15 * std::abs(b); }, it);
  return 0.5 * (lo + hi);
}

double eddy_phase(Polarization pol, double xi, double k, const CavityConfig& cfg) {
  const auto& m = drude_plate(cfg);
  // Just left of the cut. The offset scales with xi: near the lower branch point xi ~ k^2 is tiny.
  const cplx zeta(-1e-9 * xi, -xi);
  const cplx r = fresnel(pol, zeta, k, m, cfg.T);
  const cplx kap = kappa(zeta, k, 1.0);
  return std::arg(1.0 - r * r * std::exp(-2.0 * kap * cfg.L));
}

double eddy_density(Polarization pol, double xi, double k, const CavityConfig& cfg) {
  const double h = 1e-4 * xi;
  return (eddy_phase(pol, xi + h, k, cfg) - eddy_phase(pol, xi - h, k, cfg)) / (2.0 * h * pi);
}

EddyResult eddy_energy(const CavityConfig& cfg, double tau_c) {
  if (!(tau_c > 0.0)) throw InvalidArgument("tau_c must be > 0");
  // -(hbar/2pi) int xi ln(xi tau) dTheta/pi, integrated by parts (Theta vanishes at both ends).
  const auto w = [tau_c](double xi) {
    return phys::hbar / (2.0 * pi * pi) * (std::log(xi * tau_c) + 1.0);
  };
  return k_integral(cfg, w, 1e-8);
}

EddyResult eddy_free_energy_highT(const CavityConfig& cfg) {
  if (!(cfg.T > 0.0)) throw InvalidArgument("high-temperature form needs T > 0");
  const double kT = phys::kB * cfg.T;
  // (kB T / 2) ln(hbar xi / kB T) per mode, integrated by parts against dTheta / pi.
  const auto w = [kT](double xi) { return -kT / (2.0 * pi * xi); };
  return k_integral(cfg, w, 1e-8);
}

double overdamped_ground_energy(double xi, double tau_c) {
  return -phys::hbar * xi / (2.0 * pi) * std::log(xi * tau_c);
}

double overdamped_thermal_free_energy(double xi, double T) {
  if (!(xi > 0.0) || !(T > 0.0)) throw InvalidArgument("need xi > 0 and T > 0");
  // kB T [y ln y - y + ln(2 pi y)/2 - ln Gamma(1 + y)], y = hbar xi / (2 pi kB T)
  const double y = phys::hbar * xi / (2.0 * pi * phys::kB * T);
  return phys::kB * T * (y * std::log(y) - y + 0.5 * std::log(2.0 * pi * y) - std::lgamma(1.0 + y));
}

double overdamped_thermal_quantum(double xi, double T) {
  return -pi * phys::kB * phys::kB * T * T / (6.0 * phys::hbar * xi);
}

double overdamped_thermal_classical(double xi, double T) {
  return 0.5 * phys::kB * T * std::log(phys::hbar * xi / (phys::kB * T));
}

std::vector<EntropyPoint> casimir_entropy(const CavityConfig& cfg, std::span<const double> T_grid,
                                          double rel_step) {
  if (!(rel_step > 0.0 && rel_step < 0.5)) throw InvalidArgument("relative step must be in (0, 0.5)");
  for (std::size_t i = 1; i < T_grid.size(); ++i)
    if (!(T_grid[i] > T_grid[i - 1])) throw InvalidArgument("temperature grid must increase");
  std::vector<EntropyPoint> out;
  for (double T : T_grid) {
    if (!(T > 0.0)) throw InvalidArgument("entropy needs T > 0");
    const double h = rel_step * T;
    const auto F = [&](double t) { return lifshitz_free_energy(cfg.at_temperature(t)).value; };
    const double d1 = (F(T + h) - F(T - h)) / (2.0 * h);
    const double d2 = (F(T + 0.5 * h) - F(T - 0.5 * h)) / h;
    EntropyPoint p;
    p.T = T;
    p.S = -(4.0 * d2 - d1) / 3.0;
    p.error = std::abs(d2 - d1) / 3.0;
    out.push_back(p);
  }
  return out;
}

double static_te_entropy(double omega_p, double L, double area) {
  const auto m = PermittivityModel::plasma(omega_p);
  const auto f = [&](double x) {
    const double k = x / L;
    const double r = fresnel_imaginary(Polarization::TE, 0.0, k, m, 0.0);
    return x / (L * L) / (2.0 * pi) * std::log1p(-r * r * std::exp(-2.0 * x));
  };
  return 0.5 * phys::kB * integrate(f, 0.0, inf, 1e-12, 16).value * area;
}

}  // namespace casimir
