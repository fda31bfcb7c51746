#pragma once

#include <span>
#include <vector>

#include "casimir/lifshitz.hpp"
#include "casimir/spectra.hpp"

namespace casimir {

/// Surface-plasmon spectrum of two identical Drude half-spaces in the quasi-static limit.
/// With s = zeta (zeta + i gamma) the mode condition is (2s - wp^2)^2 = wp^4 e^{-2kL} and the
/// L -> infinity reference is the double root 2s = wp^2. Zeros and poles come from the
/// complex root finder; the set is closed under zeta -> -conj(zeta).
std::vector<ComplexRoot> quasi_static_modes(double omega_p, double gamma, double k, double L);

/// (hbar/4) Re[sum_zeros phi - sum_poles phi], phi(W) = W - (2i/pi) W ln(W tau_c).
/// Imaginary-axis roots thus carry half the weight of each resonant pair member.
double mode_sum_energy(std::span<const ComplexRoot> roots, double tau_c);

struct DissipativeOptions {
  double tau_c = 1e-18;      // s
  double kL_max = 24.0;
  bool include_eddy = false;  // add the overdamped TE/TM continuum from eddy_energy
};

struct DissipativeResult {
  double energy = 0.0;          // J (times area)
  double energy_tau10 = 0.0;    // same with tau_c -> 10 tau_c
  double error = 0.0;           // quadrature estimate
  double tau_defect = 0.0;      // relative change
  double sum_rule_defect = 0.0; // max_k |Im sum'[Omega]| / sum'|Omega|
  double eddy = 0.0;
};

/// Mode-sum energy of two identical Drude plates (quasi-static plasmon spectrum).
DissipativeResult dissipative_mode_energy(const CavityConfig& cfg, const DissipativeOptions& opt = {});

/// gamma = 0 reference: sum over k of (hbar/2)(w+ + w- - 2 w_sp) with w_pm = wp sqrt((1 +- e^{-kL})/2).
double quasi_static_plasma_energy(double omega_p, double L, double area = 1.0);

struct ShortDistanceFit {
  double alpha = 0.0;  // coefficient of L / lambda_p
  double beta = 0.0;   // coefficient of -gamma L / c
  double rms = 0.0;
};

/// Least-squares fit of E / (1.5 E_PC) = alpha L/lambda_p - beta gamma L / c.
struct ShortDistanceSample {
  double L, gamma, energy;
};
ShortDistanceFit fit_short_distance(double omega_p, std::span<const ShortDistanceSample> samples);

/// Identical Drude plates: (omega_p, gamma(T)). Throws otherwise.
std::pair<double, double> identical_drude(const CavityConfig& cfg);

}  // namespace casimir
