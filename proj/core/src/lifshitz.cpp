#include "casimir/lifshitz.hpp"

#include <cmath>
#include <limits>

#include "casimir/error.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
// Stacks have no closed-form static limit; 1 rad/s is far below every material scale.
constexpr double stack_static_xi = 1.0;
}  // namespace

std::string describe(const Plate& p) {
  if (std::holds_alternative<PerfectMirror>(p)) return "perfect_mirror";
  if (const auto* m = std::get_if<PermittivityModel>(&p)) return m->describe();
  return std::get<LayerStack>(p).describe();
}

void CavityConfig::validate() const {
  if (!(L > 0.0) || !std::isfinite(L)) throw InvalidArgument("gap L must be positive");
  if (!(T >= 0.0)) throw InvalidArgument("temperature must be >= 0");
  if (!(area > 0.0)) throw InvalidArgument("area must be positive");
  for (const Plate* p : {&plate1, &plate2}) {
    if (const auto* m = std::get_if<PermittivityModel>(p)) m->validate();
    if (const auto* s = std::get_if<LayerStack>(p)) s->validate();
  }
}

CavityConfig CavityConfig::at(double L_new) const {
  CavityConfig c = *this;
  c.L = L_new;
  return c;
}

CavityConfig CavityConfig::at_temperature(double T_new) const {
  CavityConfig c = *this;
  c.T = T_new;
  return c;
}

cplx plate_reflection(Polarization pol, const Plate& p, cplx omega, double k, double T) {
  if (std::holds_alternative<PerfectMirror>(p)) return pol == Polarization::TE ? -1.0 : 1.0;
  if (const auto* m = std::get_if<PermittivityModel>(&p)) return fresnel(pol, omega, k, *m, T);
  return stack_reflection(pol, omega, k, std::get<LayerStack>(p), T);
}

double plate_reflection_imag(Polarization pol, const Plate& p, double xi, double k, double T) {
  if (std::holds_alternative<PerfectMirror>(p)) return pol == Polarization::TE ? -1.0 : 1.0;
  if (const auto* m = std::get_if<PermittivityModel>(&p))
    return fresnel_imaginary(pol, xi, k, *m, T);
  const double x = xi > 0.0 ? xi : stack_static_xi;
  return stack_reflection(pol, cplx(0.0, x), k, std::get<LayerStack>(p), T).real();
}

double xi_integrand(const CavityConfig& cfg, Polarization pol, double xi, bool force,
                    double rel_tol) {
  const double L = cfg.L, q0 = xi / phys::c;
  const double e0 = std::exp(-2.0 * q0 * L);
  if (e0 == 0.0) return 0.0;
  const auto f = [&](double u) {
    const double kap = q0 + u / (2.0 * L);
    const double k = std::sqrt(std::max(kap * kap - q0 * q0, 0.0));
    const double R = plate_reflection_imag(pol, cfg.plate1, xi, k, cfg.T) *
                     plate_reflection_imag(pol, cfg.plate2, xi, k, cfg.T);
    const double re = R * e0 * std::exp(-u);
    const double jac = kap / (2.0 * L);
    if (force) return -jac * 2.0 * kap * re / (1.0 - re);
    return jac * std::log1p(-re);
  };
  return integrate(f, 0.0, inf, rel_tol, 18).value / (2.0 * pi);
}

double matsubara_term(const CavityConfig& cfg, Polarization pol, int n, bool force) {
  const double xi = 2.0 * pi * n * phys::kB * cfg.T / phys::hbar;
  const double w = n == 0 ? 0.5 : 1.0;
  return w * phys::kB * cfg.T * xi_integrand(cfg, pol, xi, force) * cfg.area;
}

LifshitzResult lifshitz_free_energy(const CavityConfig& cfg, const LifshitzOptions& opt) {
  cfg.validate();
  LifshitzResult res;
  const Polarization pols[2] = {Polarization::TE, Polarization::TM};
  double parts[2] = {0.0, 0.0};
  if (cfg.T == 0.0) {
    // xi = c y / (2L); the integrand decays like e^{-y}.
    const double L = cfg.L;
    for (int p = 0; p < 2; ++p) {
      const auto g = [&](double y) {
        return xi_integrand(cfg, pols[p], phys::c * y / (2.0 * L), opt.force, 0.1 * opt.rel_tol);
      };
      const auto q = integrate(g, 0.0, inf, opt.rel_tol, 16);
      const double pref = phys::hbar / (2.0 * pi) * phys::c / (2.0 * L) * cfg.area;
      parts[p] = pref * q.value;
      res.error += std::abs(pref) * q.error;
    }
  } else {
    const double xi1 = 2.0 * pi * phys::kB * cfg.T / phys::hbar;
    const double tol = opt.rel_tol;
    for (int p = 0; p < 2; ++p) {
      double sum = 0.0, prev = 0.0, tail = 0.0;
      int n = 0, quiet = 0;
      for (; n <= opt.max_matsubara; ++n) {
        const double w = n == 0 ? 0.5 : 1.0;
        const double term = w * xi_integrand(cfg, pols[p], n * xi1, opt.force, 0.1 * tol);
        sum += term;
        // Terms fall off like q^n with q ~ exp(-2 xi_1 L / c), which is close to 1 at low T:
        // the neglected tail is term q/(1-q), not term.
        const double q = n > 1 && prev != 0.0 ? std::abs(term / prev) : 1.0;
        tail = q < 1.0 ? term * q / (1.0 - q) : term;
        prev = term;
        if (n > 1 && std::abs(tail) <= tol * std::abs(sum)) {
          if (++quiet >= 3) break;
        } else {
          quiet = 0;
        }
      }
      sum += tail;
      if (n > opt.max_matsubara) throw BudgetExhausted("Matsubara sum did not converge");
      res.matsubara_terms = std::max(res.matsubara_terms, n + 1);
      parts[p] = phys::kB * cfg.T * sum * cfg.area;
      res.error += tol * std::abs(parts[p]);
    }
  }
  res.te = parts[0];
  res.tm = parts[1];
  res.value = parts[0] + parts[1];
  return res;
}

LifshitzResult lifshitz_force(const CavityConfig& cfg, LifshitzOptions opt) {
  opt.force = true;
  return lifshitz_free_energy(cfg, opt);
}

double perfect_conductor_energy(double L) {
  if (!(L > 0.0)) throw InvalidArgument("gap L must be positive");
  return -pi * pi * phys::hbar * phys::c / (720.0 * L * L * L);
}

double perfect_conductor_force(double L) {
  if (!(L > 0.0)) throw InvalidArgument("gap L must be positive");
  return -pi * pi * phys::hbar * phys::c / (240.0 * L * L * L * L);
}

}  // namespace casimir
