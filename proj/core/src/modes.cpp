#include "casimir/modes.hpp"

#include <algorithm>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "casimir/error.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/spectra.hpp"

namespace casimir {

namespace {

constexpr double c0 = phys::c;

// Evanescent TM condition times omega^2: N e^{-kappa L} - s D with N, D = eps kappa -/+ kappa_m,
// written with expm1 so that nothing cancels as kappa L -> 0. The s = -1 branch vanishes
// trivially at the light cone, so it is divided by kappa.
double h_evanescent(double wp, double L, double k, double w, int s) {
  const double kap = std::sqrt(std::max(k * k - w * w / (c0 * c0), 0.0));
  const double km = std::sqrt(k * k + (wp * wp - w * w) / (c0 * c0));
  const double e2 = w * w - wp * wp;
  const double N = e2 * kap - w * w * km;
  if (s > 0) return N * std::expm1(-kap * L) - 2.0 * w * w * km;
  const double em_by_kap = kap * L > 1e-300 ? std::expm1(-kap * L) / kap : -L;
  return N * em_by_kap + 2.0 * e2;
}

double omega_of_q(double k, double q) { return c0 * std::sqrt(k * k + q * q); }

// Plasma reflection on the propagating side, kappa = -i q, written in q so that nothing
// cancels near the light cone: kappa_m^2 = omega_p^2 / c^2 - q^2.
cplx reflection_q(double wp, Polarization pol, double k, double q) {
  const cplx kap(0.0, -q);
  const double a = wp * wp / (c0 * c0) - q * q;
  const cplx km = a >= 0.0 ? cplx(std::sqrt(a), 0.0) : cplx(0.0, -std::sqrt(-a));
  if (pol == Polarization::TE) return (kap - km) / (kap + km);
  const double eps = 1.0 - wp * wp / (c0 * c0 * (k * k + q * q));
  return (eps * kap - km) / (eps * kap + km);
}

// r e^{i q L}
cplx half_round_trip(const PermittivityModel& m, Polarization pol, double L, double k, double q) {
  return reflection_q(m.omega_p, pol, k, q) * std::exp(cplx(0.0, q * L));
}

// int f over [q_e, q_far] (side > 0) or [q_far, q_e] (side < 0) with a square-root branch
// point at q_e: q = q_e + side s^2.
template <class F>
double sqrt_endpoint_integral(F&& f, double q_far, double q_e, double side, double rel_tol) {
  const auto g = [&](double t) { return 2.0 * t * f(q_e + side * t * t); };
  return integrate(g, 0.0, std::sqrt(std::abs(q_far - q_e)), rel_tol, 16).value;
}

struct Sector {
  std::vector<double> zeros;  // cavity zeros in q, ascending
  double q_eps = 0.0;         // q at omega = omega_p (0 if omega_p < c k)
  double q_tr = 0.0;          // end of total reflection, kappa_m = 0
};

Sector propagating_zeros(const PermittivityModel& m, Polarization pol, double L, double k) {
  Sector s;
  const double wp = m.omega_p;
  s.q_tr = wp / c0;
  if (wp > c0 * k) s.q_eps = std::sqrt(wp * wp / (c0 * c0) - k * k);
  const auto G = [&](double q) { return half_round_trip(m, pol, L, k, q).imag() / q; };
  RealModeOptions o;
  o.samples_per_piece = std::max(400, int(40.0 * s.q_tr * L / pi));
  // Between omega_p and the end of total reflection the TM phase turns by pi within a sliver.
  if (s.q_eps > 0.0) o.breakpoints = {s.q_eps};
  s.zeros = find_real_modes(G, 1e-9 * s.q_tr, s.q_tr * (1.0 - 1e-12), o);
  return s;
}

// int_{ck}^inf Phi(omega) d omega for one polarization, Phi the continuous argument of
// 1 - r^2 e^{-2 kappa L} along omega + i0. phi_at_cone is Phi just above the light cone.
double argument_integral(const PermittivityModel& m, Polarization pol, double L, double k,
                         const Sector& sec, double phi_at_cone, double rel_tol) {
  const auto arg_f = [&](double q) {
    const cplx u = half_round_trip(m, pol, L, k, q);
    return std::arg(1.0 - u * u);
  };
  const auto jac = [&](double q) { return c0 * q / std::sqrt(k * k + q * q); };
  // Re f >= 0 on this sector, so the principal argument only jumps at cavity zeros. Track the
  // 2 pi offset downward from omega -> infinity, where Phi -> 0.
  const std::size_t n = sec.zeros.size();
  std::vector<int> M(n + 1, 0);  // M[j]: offset on the segment below zero j; M[n] above all
  for (std::size_t j = n; j-- > 0;) {
    const double qz = sec.zeros[j];
    const double d = 1e-7 * qz;
    const double gp = half_round_trip(m, pol, L, k, qz + d).imag() -
                      half_round_trip(m, pol, L, k, qz - d).imag();
    const double re = half_round_trip(m, pol, L, k, qz).real();
    // The phase of u^2 decreasing through a zero makes the principal argument jump up.
    M[j] = M[j + 1] + (gp * re < 0.0 ? 1 : 0);
  }
  // f is linear in kappa only while |eps kappa| << kappa_m at the cone.
  const double wc2 = c0 * c0 * k * k;
  const double eps_c = std::abs(1.0 - m.omega_p * m.omega_p / wc2);
  const double km_c = std::sqrt(m.omega_p * m.omega_p / (c0 * c0));
  double q_probe = std::min(1.0 / L, km_c / std::max(eps_c, 1.0));
  if (!sec.zeros.empty()) q_probe = std::min(q_probe, sec.zeros.front());
  q_probe *= 1e-6;
  const double expected = (phi_at_cone - arg_f(q_probe)) / (2.0 * pi);
  if (std::abs(expected - M[0]) > 0.25)
    throw Error("argument continuation mismatch at the light cone (expected offset " +
                std::to_string(expected) + ", tracked " + std::to_string(M[0]) + ")");

  double total = 0.0;
  std::vector<double> pts{0.0};
  pts.insert(pts.end(), sec.zeros.begin(), sec.zeros.end());
  if (sec.q_eps > 0.0) pts.push_back(sec.q_eps);
  // The Jacobian d omega / dq bends on the scale q ~ k.
  for (double t : {0.25, 1.0, 4.0, 16.0})
    if (t * k < 0.5 * sec.q_tr) pts.push_back(t * k);
  pts.push_back(sec.q_tr);
  std::sort(pts.begin(), pts.end());
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    const double mid = 0.5 * (pts[j] + pts[j + 1]);
    const auto below = std::lower_bound(sec.zeros.begin(), sec.zeros.end(), mid) - sec.zeros.begin();
    const double off = 2.0 * pi * M[below];
    const auto f = [&](double q) { return (arg_f(q) + off) * jac(q); };
    total += j + 2 == pts.size() ? sqrt_endpoint_integral(f, pts[j], sec.q_tr, -1.0, rel_tol)
                                 : integrate(f, pts[j], pts[j + 1], rel_tol, 16).value;
  }
  // Oscillatory tail: one period of e^{2 i q L} per panel.
  const double panel = pi / L;
  const auto f = [&](double q) { return arg_f(q) * jac(q); };
  double q = pts.back();
  int quiet = 0;
  // Each panel spans one full period, so the panel sums decay like r^2 ~ omega^-4 and the
  // smooth integrand needs only a fixed rule.
  // Light-cone structure (r -> -1 as q -> 0) lives on the scale omega_p / c: adaptive there.
  const double q_adaptive = std::max(q, 2.0 * m.omega_p / c0);
  for (int i = 0; i < 2000000; ++i) {
    const double v = i == 0          ? sqrt_endpoint_integral(f, q + panel, sec.q_tr, 1.0, rel_tol)
                     : q < q_adaptive ? integrate(f, q, q + panel, rel_tol, 12).value
                                    : gauss_legendre(f, q, q + panel, 20);
    total += v;
    q += panel;
    const bool far = omega_of_q(k, q) > 4.0 * m.omega_p;
    if (far && std::abs(v) <= 0.1 * rel_tol * std::abs(total)) {
      if (++quiet >= 3) return total;
    } else {
      quiet = 0;
    }
  }
  throw BudgetExhausted("propagating-sector tail did not converge");
}

double mode_energy(double w, double T) {
  double e = 0.5 * phys::hbar * w;
  if (T > 0.0) e += phys::kB * T * std::log1p(-std::exp(-phys::hbar * w / (phys::kB * T)));
  return e;
}

}  // namespace

double spp_frequency(double omega_p, double k) {
  const double x = c0 * k / omega_p;
  const double x2 = x * x;
  // x^2 + 1/2 - sqrt(x^4 + 1/4), rationalized to avoid cancellation.
  return omega_p * std::sqrt(x2 / (x2 + 0.5 + std::sqrt(x2 * x2 + 0.25)));
}

PlasmonicPair plasmonic_pair(double omega_p, double L, double k) {
  if (!(k > 0.0)) throw InvalidArgument("plasmonic pair needs k > 0");
  PlasmonicPair p;
  p.k = k;
  p.omega_sp = spp_frequency(omega_p, k);
  const double b = std::min(c0 * k * (1.0 - 1e-12), omega_p);
  RealModeOptions o;
  o.samples_per_piece = 200;
  std::vector<double> roots;
  for (int s : {+1, -1}) {
    const auto h = [&](double w) { return h_evanescent(omega_p, L, k, w, s); };
    for (double r : find_real_modes(h, 0.0, b, o)) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  if (roots.size() == 2) {
    p.omega_minus = roots[0];
    p.omega_plus = roots[1];
    return p;
  }
  if (roots.size() != 1) throw LostBranch("expected one or two evanescent TM modes");
  p.omega_minus = roots[0];
  const auto sec = propagating_zeros(PermittivityModel::plasma(omega_p), Polarization::TM, L, k);
  if (sec.zeros.empty()) throw LostBranch("upper plasmonic mode not found above the light cone");
  p.omega_plus = omega_of_q(k, sec.zeros.front());
  p.plus_propagating = true;
  return p;
}

KResolved k_resolved_energy(double omega_p, double L, double k, double rel_tol) {
  const auto m = PermittivityModel::plasma(omega_p);
  const auto pair = plasmonic_pair(omega_p, L, k);
  KResolved out;
  out.plasmonic = phys::hbar * (0.5 * (pair.omega_plus + pair.omega_minus) - pair.omega_sp);

  // TE: no evanescent zeros or poles, so Phi = -pi/2 just above the cone.
  const auto te = propagating_zeros(m, Polarization::TE, L, k);
  out.photonic_te = phys::hbar / (2.0 * pi) *
                    argument_integral(m, Polarization::TE, L, k, te, -0.5 * pi, rel_tol);
  // TM: each evanescent zero lowers Phi by pi, the double pole at omega_sp raises it by 2 pi.
  const int n_ev = pair.plus_propagating ? 1 : 2;
  const double phi_tm = -pi * n_ev + 2.0 * pi - 0.5 * pi;
  const auto tm = propagating_zeros(m, Polarization::TM, L, k);
  double e_tm = phys::hbar / (2.0 * pi) * argument_integral(m, Polarization::TM, L, k, tm, phi_tm, rel_tol);
  if (pair.plus_propagating) e_tm -= 0.5 * phys::hbar * (pair.omega_plus - c0 * k);
  out.photonic_tm = e_tm;
  return out;
}

double identical_plasma_frequency(const CavityConfig& cfg) {
  const auto* a = std::get_if<PermittivityModel>(&cfg.plate1);
  const auto* b = std::get_if<PermittivityModel>(&cfg.plate2);
  if (!a || !b || a->kind != MaterialKind::Plasma || b->kind != MaterialKind::Plasma ||
      a->omega_p != b->omega_p)
    throw InvalidArgument("mode decomposition needs two identical plasma plates");
  return a->omega_p;
}

namespace {

// int_0^inf k dk / 2pi g(k), in x = k L with breakpoints near the plasma scale. g is smooth
// between them but carries quadrature noise far out, so fixed rules replace adaptivity; the
// difference of two orders estimates the error.
struct KIntegral {
  double value = 0.0, error = 0.0;
};

template <class F>
KIntegral k_integral(double omega_p, double L, F&& g) {
  const double xp = omega_p * L / c0;
  // x_c: the upper TM mode leaves the light cone there, a kink in the photonic integrand.
  const double xc = xp / std::sqrt(1.0 + 0.5 * xp);
  std::vector<double> pts{0.0, 0.25 * xp, 0.5 * xp, xc, xp, 2.0 * xp, 0.5, 1.0, 2.0, 3.5, 5.0, 7.5, 10.0, 15.0, 20.0, 30.0, 45.0};
  std::sort(pts.begin(), pts.end());
  pts.erase(std::remove_if(pts.begin(), pts.end(), [](double x) { return x > 45.0; }), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const auto f = [&](double x) { return x * g(x / L) / (2.0 * pi * L * L); };
  KIntegral out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double v[2];
    for (int j : {0, 1}) {
      const auto rule = gauss_legendre_rule(j == 0 ? 20 : 30, pts[i], pts[i + 1]);
      v[j] = 0.0;
      for (std::size_t n = 0; n < rule.x.size(); ++n) v[j] += rule.w[n] * f(rule.x[n]);
    }
    out.value += v[1];
    out.error += std::abs(v[1] - v[0]);
  }
  return out;
}

}  // namespace

EnergyBreakdown mode_decomposition(const CavityConfig& cfg, const DecompositionOptions& opt) {
  cfg.validate();
  if (cfg.T != 0.0) throw InvalidArgument("full decomposition is implemented at T = 0");
  const double wp = identical_plasma_frequency(cfg);
  const double L = cfg.L;
  EnergyBreakdown e;
  e.method = "real-axis argument principle";
  std::map<double, KResolved> cache;  // both integrals visit the same nodes
  const auto at = [&](double k) -> const KResolved& {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, k_resolved_energy(wp, L, k, 0.01 * opt.rel_tol)).first;
    return it->second;
  };
  const auto pl = k_integral(wp, L, [&](double k) { return at(k).plasmonic; });
  const auto ph = k_integral(wp, L, [&](double k) {
    const auto& r = at(k);
    return r.photonic_te + r.photonic_tm;
  });
  e.plasmonic = pl.value * cfg.area;
  e.photonic = ph.value * cfg.area;
  e.real_axis_total = e.plasmonic + e.photonic;
  if (opt.with_total) {
    const auto lif = lifshitz_free_energy(cfg);
    e.total = lif.value;
    e.error = lif.error + (pl.error + ph.error) * cfg.area;
  } else {
    e.total = e.real_axis_total;
  }
  return e;
}

double plasmonic_energy(const CavityConfig& cfg) {
  cfg.validate();
  const double wp = identical_plasma_frequency(cfg);
  const double L = cfg.L, T = cfg.T;
  return k_integral(wp, L, [&](double k) {
    const auto p = plasmonic_pair(wp, L, k);
    return mode_energy(p.omega_plus, T) + mode_energy(p.omega_minus, T) - 2.0 * mode_energy(p.omega_sp, T);
  }).value * cfg.area;
}

double plasmonic_alpha(double omega_p) {
  const auto pl = PermittivityModel::plasma(omega_p);
  const double lp = pl.plasma_wavelength();
  CavityConfig cfg;
  cfg.plate1 = pl;
  cfg.plate2 = pl;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double xs[] = {0.0025, 0.005, 0.01};
  for (double x : xs) {
    cfg.L = x * lp;
    const double y = plasmonic_energy(cfg) / (perfect_conductor_energy(cfg.L) * x);
    sx += x * x; sy += y; sxx += x * x * x * x; sxy += x * x * y;
  }
  const double n = 3.0;
  return (sy * sxx - sx * sxy) / (n * sxx - sx * sx);
}

double plasmonic_force(const CavityConfig& cfg, double h) {
  const double L = cfg.L;
  return -(plasmonic_energy(cfg.at(L * (1.0 + h))) - plasmonic_energy(cfg.at(L * (1.0 - h)))) /
         (2.0 * h * L);
}

double plasmonic_force_zero(const CavityConfig& cfg, double L_lo, double L_hi) {
  const auto f = [&](double L) { return plasmonic_force(cfg.at(L)); };
  const double a = f(L_lo), b = f(L_hi);
  if (a * b > 0.0) throw InvalidArgument("plasmonic force does not change sign in the bracket");
  std::uintmax_t it = 60;
  auto [lo, hi] = boost::math::tools::toms748_solve(
      f, L_lo, L_hi, a, b, [](double u, double v) { return std::abs(u - v) < 1e-6 * u; }, it);
  return 0.5 * (lo + hi);
}

}  // namespace casimir
