#pragma once

#include <span>
#include <vector>

#include "casimir/lifshitz.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// Lower end xi_0(k) of the overdamped continuum on the negative imaginary axis:
/// c^2 k^2 + xi^2 = wp^2 xi / (gamma - xi), xi in (0, gamma).
double eddy_branch_point(double omega_p, double gamma, double k);

/// Im ln[1 - r^2 e^{-2 kappa L}] at zeta = -i xi - 0+, identical Drude plates.
double eddy_phase(Polarization pol, double xi, double k, const CavityConfig& cfg);

/// (1/pi) d/dxi of eddy_phase: density of overdamped modes (L-subtracted).
double eddy_density(Polarization pol, double xi, double k, const CavityConfig& cfg);

struct EddyResult {
  double value = 0.0;  // J (times area)
  double te = 0.0;
  double tm = 0.0;
  double error = 0.0;
};

/// Ground-state energy of the overdamped continuum, sum of -(hbar xi / 2pi) ln(xi tau_c).
EddyResult eddy_energy(const CavityConfig& cfg, double tau_c);

/// Classical-limit free energy of the continuum, -sum int (dxi/2pi)(kB T/xi) Im ln[...].
EddyResult eddy_free_energy_highT(const CavityConfig& cfg);

/// -(hbar xi / 2pi) ln(xi tau_c): zero-point energy of one overdamped mode.
double overdamped_ground_energy(double xi, double tau_c);

/// Thermal part of the free energy of one overdamped mode, exact in hbar xi / kB T.
double overdamped_thermal_free_energy(double xi, double T);
/// Its asymptotes: -pi kB^2 T^2 / (6 hbar xi) and (kB T / 2) ln(hbar xi / kB T).
double overdamped_thermal_quantum(double xi, double T);
double overdamped_thermal_classical(double xi, double T);

struct EntropyPoint {
  double T = 0.0;
  double S = 0.0;      // J / (K m^2), times area
  double error = 0.0;  // Richardson difference estimate
};

/// S = -dF/dT by centered differences with one Richardson step, h = rel_step * T.
std::vector<EntropyPoint> casimir_entropy(const CavityConfig& cfg, std::span<const double> T_grid,
                                          double rel_step = 0.1);

/// (kB / 2) int k dk / 2pi ln(1 - r_TE(0,k)^2 e^{-2kL}) for plasma plates: the zero-temperature
/// entropy offset carried by the static TE term.
double static_te_entropy(double omega_p, double L, double area = 1.0);

}  // namespace casimir
