#include "casimir/oscillator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "casimir/error.hpp"

namespace casimir {

void OscillatorConfig::validate() const {
  if (!(omega_a > 0.0)) throw InvalidArgument("omega_a must be > 0");
  if (!(Gamma >= 0.0)) throw InvalidArgument("Gamma must be >= 0");
  if (!(tau_c >= 0.0)) throw InvalidArgument("tau_c must be >= 0");
}

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

cplx denom(const OscillatorConfig& c, cplx w) {
  return c.omega_a * c.omega_a - w * w - I * w * c.Gamma / (1.0 - I * w * c.tau_c);
}

cplx denom_prime(const OscillatorConfig& c, cplx w) {
  const cplx s = 1.0 - I * w * c.tau_c;
  return -2.0 * w - I * c.Gamma / (s * s);
}

// Roots of a y^3 + b y^2 + c y + d with complex Cardano, then Newton polish.
std::array<cplx, 3> cubic_roots(double a, double b, double c, double d) {
  const cplx B = b / a, C = c / a, D = d / a;
  const cplx p = C - B * B / 3.0;
  const cplx q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
  const cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  cplx u = std::pow(-q / 2.0 + disc, 1.0 / 3.0);
  if (std::abs(u) < 1e-300) u = std::pow(-q / 2.0 - disc, 1.0 / 3.0);
  const cplx w(-0.5, std::sqrt(3.0) / 2.0);
  std::array<cplx, 3> r;
  for (int k = 0; k < 3; ++k) {
    const cplx uk = u * std::pow(w, k);
    const cplx vk = std::abs(uk) > 0.0 ? -p / (3.0 * uk) : cplx(0.0);
    r[k] = uk + vk - B / 3.0;
  }
  for (auto& y : r)
    for (int it = 0; it < 8; ++it) {
      const cplx f = ((a * y + b) * y + c) * y + d;
      const cplx fp = (3.0 * a * y + 2.0 * b) * y + c;
      if (fp == 0.0) break;
      y -= f / fp;
    }
  return r;
}

}  // namespace

cplx susceptibility(const OscillatorConfig& cfg, cplx zeta) {
  cfg.validate();
  if (cfg.tau_c > 0.0 && 1.0 - I * zeta * cfg.tau_c == 0.0) return 0.0;
  // Cleared of the memory factor, the denominator is a cubic; a pole is where it vanishes
  // to rounding against its largest term.
  const cplx s = 1.0 - I * zeta * cfg.tau_c;
  const double wa2 = cfg.omega_a * cfg.omega_a, z2 = std::norm(zeta);
  const double scale = std::max({wa2, z2, z2 * std::abs(zeta) * cfg.tau_c, std::abs(zeta) * cfg.Gamma});
  if (std::abs((wa2 - zeta * zeta) * s - I * zeta * cfg.Gamma) <= 64.0 * eps * scale)
    throw SingularFrequency("susceptibility evaluated at a pole");
  return 1.0 / denom(cfg, zeta);
}

std::vector<cplx> OscillatorPoles::poles() const {
  if (three_pole) return {omega_m1, omega_0, omega_1};
  return {omega_m1, omega_1};
}

OscillatorPoles poles_and_zero(const OscillatorConfig& cfg) {
  cfg.validate();
  const double wa = cfg.omega_a, G = cfg.Gamma, tau = cfg.tau_c;
  OscillatorPoles out;
  if (tau == 0.0) {
    const double disc = wa * wa - 0.25 * G * G;
    if (disc <= 0.0) throw RegimeViolation("overdamped oscillator: both poles are imaginary");
    out.omega_1 = {std::sqrt(disc), -0.5 * G};
    out.omega_m1 = -std::conj(out.omega_1);
    out.omega_0 = 0.0;
    out.zero = {0.0, -std::numeric_limits<double>::infinity()};
    return out;
  }
  // zeta = -i y: -tau y^3 + y^2 - (wa^2 tau + Gamma) y + wa^2 = 0
  auto ys = cubic_roots(-tau, 1.0, -(wa * wa * tau + G), wa * wa);
  std::vector<cplx> real_y, cplx_y;
  for (const auto& y : ys) {
    if (std::abs(y.imag()) <= 1e-9 * std::abs(y)) real_y.push_back({y.real(), 0.0});
    else cplx_y.push_back(y);
  }
  if (real_y.size() != 1 || cplx_y.size() != 2) {
    std::ostringstream os;
    os << "expected one imaginary pole and a resonant pair, found " << real_y.size()
       << " imaginary poles";
    throw RegimeViolation(os.str());
  }
  // y = b + i a  ->  zeta = -i y = a - i b
  const cplx y1 = cplx_y[0].imag() < 0.0 ? cplx_y[0] : cplx_y[1];
  out.omega_1 = -I * y1;
  if (out.omega_1.real() < 0.0) out.omega_1 = -std::conj(out.omega_1);
  out.omega_m1 = -std::conj(out.omega_1);
  out.omega_0 = -I * real_y[0];
  out.zero = {0.0, -1.0 / tau};
  out.three_pole = true;
  for (const auto& p : out.poles())
    if (!(p.imag() < 0.0)) throw RegimeViolation("pole outside the lower half-plane");
  return out;
}

cplx pole_weight(cplx omega, double tau_c) {
  return omega - (2.0 * I / pi) * omega * std::log(omega * tau_c);
}

double ground_energy_closed(const OscillatorConfig& cfg) {
  if (!(cfg.tau_c > 0.0)) throw InvalidArgument("closed-form energy needs tau_c > 0");
  const auto p = poles_and_zero(cfg);
  // Crossing pairs contribute equally; the imaginary pole enters with half weight.
  const double e = 0.5 * pole_weight(p.omega_1, cfg.tau_c).real() +
                   0.25 * pole_weight(p.omega_0, cfg.tau_c).real();
  return phys::hbar * e;
}

QuadResult ground_energy_integral(const OscillatorConfig& cfg, double rel_tol) {
  cfg.validate();
  if (!(cfg.tau_c > 0.0)) throw InvalidArgument("spectral integral needs tau_c > 0");
  const double wa = cfg.omega_a, G = cfg.Gamma, wt = 1.0 / cfg.tau_c;
  const auto f = [&cfg](double w) {
    return -w * (denom_prime(cfg, w) / denom(cfg, w)).imag() / (2.0 * pi);
  };
  std::vector<double> pts{0.0};
  const double width = std::max(G, 1e-6 * wa);
  for (double s : {-8.0, -2.0, -0.5, 0.0, 0.5, 2.0, 8.0}) {
    const double w = wa + s * width;
    if (w > 0.0) pts.push_back(w);
  }
  for (double s : {0.1, 1.0, 10.0, 100.0}) pts.push_back(s * wt);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  QuadResult r = integrate_pieces(f, pts, rel_tol, 20);
  r += integrate(f, pts.back(), std::numeric_limits<double>::infinity(), rel_tol, 20);
  r.value *= phys::hbar;
  r.error *= phys::hbar;
  return r;
}

GroundEnergy ground_energy(const OscillatorConfig& cfg) {
  GroundEnergy g;
  g.closed = ground_energy_closed(cfg);
  const auto q = ground_energy_integral(cfg);
  g.integral = q.value;
  g.integral_error = q.error;
  return g;
}

}  // namespace casimir
