#pragma once

#include <variant>

#include "casimir/materials.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

struct PerfectMirror {};

using Plate = std::variant<PerfectMirror, PermittivityModel, LayerStack>;

std::string describe(const Plate& p);

/// Two plates facing each other across a vacuum gap L.
struct CavityConfig {
  Plate plate1 = PerfectMirror{};
  Plate plate2 = PerfectMirror{};
  double L = 1e-6;     // m
  double T = 0.0;      // K
  double area = 1.0;   // m^2; results are multiplied by it

  void validate() const;
  /// Same cavity at a different separation / temperature.
  CavityConfig at(double L_new) const;
  CavityConfig at_temperature(double T_new) const;
};

/// Plate reflection at a general complex frequency.
cplx plate_reflection(Polarization pol, const Plate& p, cplx omega, double k, double T);

/// Plate reflection at omega = i xi, xi >= 0 (xi = 0 by the per-model limit).
double plate_reflection_imag(Polarization pol, const Plate& p, double xi, double k, double T);

struct LifshitzOptions {
  double rel_tol = 1e-10;
  int max_matsubara = 400000;
  bool force = false;  // return -dF/dL instead of F
};

struct LifshitzResult {
  double value = 0.0;  // J (or N), scaled by area
  double error = 0.0;
  double te = 0.0;
  double tm = 0.0;
  int matsubara_terms = 0;  // 0 for T = 0
};

/// Free energy (or force with opt.force) on the imaginary-frequency axis.
LifshitzResult lifshitz_free_energy(const CavityConfig& cfg, const LifshitzOptions& opt = {});

LifshitzResult lifshitz_force(const CavityConfig& cfg, LifshitzOptions opt = {});

/// (1/2pi) int_{xi/c}^inf kappa dkappa ln(1 - r1 r2 e^{-2 kappa L}) for one polarization,
/// per unit area. With force = true the L-derivative (times -1) is returned instead.
double xi_integrand(const CavityConfig& cfg, Polarization pol, double xi, bool force = false,
                    double rel_tol = 1e-10);

/// Single Matsubara term kB T * (weight) * xi_integrand, weight 1/2 for n = 0.
double matsubara_term(const CavityConfig& cfg, Polarization pol, int n, bool force = false);

/// -pi^2 hbar c / (720 L^3) per unit area.
double perfect_conductor_energy(double L);
/// -dE/dL = -pi^2 hbar c / (240 L^4).
double perfect_conductor_force(double L);

}  // namespace casimir
