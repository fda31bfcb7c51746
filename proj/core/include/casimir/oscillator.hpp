#pragma once

#include <vector>

#include "casimir/constants.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// Oscillator of bare frequency omega_a coupled to a bath with Drude-like memory tau_c.
struct OscillatorConfig {
  double omega_a = 1.0;  // rad/s
  double Gamma = 0.0;    // rad/s
  double tau_c = 0.0;    // s

  void validate() const;
};

/// alpha(zeta) = 1 / (omega_a^2 - zeta^2 - i zeta Gamma / (1 - i zeta tau_c)).
cplx susceptibility(const OscillatorConfig& cfg, cplx zeta);

struct OscillatorPoles {
  cplx omega_1;       // Re > 0
  cplx omega_m1;      // -conj(omega_1)
  cplx omega_0;       // -i xi_0; only meaningful when three_pole
  cplx zero;          // -i / tau_c
  bool three_pole = false;

  std::vector<cplx> poles() const;
};

/// Closed-form roots of the pole cubic (quadratic for tau_c = 0), Newton polished.
/// Throws RegimeViolation when the pole set is not {pair, one imaginary} (e.g. overdamped).
OscillatorPoles poles_and_zero(const OscillatorConfig& cfg);

/// Omega - (2i/pi) Omega ln(Omega tau_c), principal log.
cplx pole_weight(cplx omega, double tau_c);

struct GroundEnergy {
  double closed = 0.0;      // J
  double integral = 0.0;    // J
  double integral_error = 0.0;
  double difference() const { return integral - closed; }
};

/// Pole-sum form; requires tau_c > 0.
double ground_energy_closed(const OscillatorConfig& cfg);

/// Real-axis spectral integral -int (hbar w / 2 pi) Im d/dw ln D(w) dw.
QuadResult ground_energy_integral(const OscillatorConfig& cfg, double rel_tol = 1e-11);

GroundEnergy ground_energy(const OscillatorConfig& cfg);

}  // namespace casimir
