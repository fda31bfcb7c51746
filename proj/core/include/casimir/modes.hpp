#pragma once

#include <string>

#include "casimir/lifshitz.hpp"

namespace casimir {

/// Single-interface surface plasmon-polariton of a plasma half-space.
double spp_frequency(double omega_p, double k);

/// Coupled surface modes of two identical plasma half-spaces at in-plane wavenumber k.
struct PlasmonicPair {
  double k = 0.0;
  double omega_minus = 0.0;  // lower, always evanescent
  double omega_plus = 0.0;   // upper; may sit above the light cone at small k
  double omega_sp = 0.0;     // L -> infinity limit of both
  bool plus_propagating = false;
};

PlasmonicPair plasmonic_pair(double omega_p, double L, double k);

/// Per-k contributions, in J (already multiplied by hbar), before the d^2k/(2pi)^2 integral.
struct KResolved {
  double plasmonic = 0.0;
  double photonic_te = 0.0;
  double photonic_tm = 0.0;
  double real_axis_total() const { return plasmonic + photonic_te + photonic_tm; }
};

/// Real-frequency evaluation at one k: argument of 1 - r^2 e^{-2 kappa L} along omega + i0.
KResolved k_resolved_energy(double omega_p, double L, double k, double rel_tol = 1e-10);

struct EnergyBreakdown {
  double total = 0.0;      // imaginary-axis Lifshitz value
  double plasmonic = 0.0;
  double photonic = 0.0;
  double eddy = 0.0;
  double real_axis_total = 0.0;  // plasmonic + photonic + eddy
  double error = 0.0;
  std::string method;
  double identity_defect() const { return real_axis_total - total; }
};

struct DecompositionOptions {
  double rel_tol = 1e-6;
  bool with_total = true;  // also evaluate the imaginary-axis total for the identity check
};

/// E_pl + E_ph decomposition for two identical plasma plates at T = 0.
EnergyBreakdown mode_decomposition(const CavityConfig& cfg, const DecompositionOptions& opt = {});

/// Plasmonic part only. At T > 0 each mode carries hbar w/2 + kB T ln(1 - e^{-hbar w / kB T}).
double plasmonic_energy(const CavityConfig& cfg);

/// alpha in E_pl ~ alpha (L / lambda_p) E_PC for L -> 0: E_pl / (E_PC L/lambda_p) = alpha + c (L/lambda_p)^2
/// fitted at L/lambda_p in {0.0025, 0.005, 0.01}. The (L/lambda_p)^2 term is the near-constant
/// energy of the k < omega_p / c region, where omega_+ is propagating.
double plasmonic_alpha(double omega_p);

/// -dE_pl/dL by a centered difference with relative step h.
double plasmonic_force(const CavityConfig& cfg, double h = 1e-3);

/// Separation in [L_lo, L_hi] where the plasmonic force changes sign.
double plasmonic_force_zero(const CavityConfig& cfg, double L_lo, double L_hi);

/// Plasma model parameter of a pair of identical plasma plates; throws otherwise.
double identical_plasma_frequency(const CavityConfig& cfg);

}  // namespace casimir
