#pragma once

#include <string>

#include "casimir/constants.hpp"

namespace casimir {

enum class MaterialKind { Vacuum, Constant, Plasma, Drude };

/// Local, nonmagnetic permittivity model.
///
/// Drude damping may follow a Bloch-Grueneisen-like power law
/// gamma(T) = gamma0 * (T / damping_ref_temperature)^m; m = 0 keeps gamma
/// temperature independent.
struct PermittivityModel {
  MaterialKind kind = MaterialKind::Vacuum;
  double eps_const = 1.0;
  double omega_p = 0.0;
  double gamma0 = 0.0;
  int damping_exponent = 0;
  double damping_ref_temperature = 300.0;

  static PermittivityModel vacuum();
  static PermittivityModel constant(double eps);
  static PermittivityModel plasma(double omega_p);
  static PermittivityModel drude(double omega_p, double gamma0, int m = 0, double t_ref = 300.0);

  /// Throws InvalidArgument when the invariants of the chosen kind do not hold.
  void validate() const;

  /// Damping rate at temperature T (0 for non-Drude kinds).
  double gamma(double T) const;

  /// lambda_p = 2 pi c / omega_p.
  double plasma_wavelength() const;

  /// Resistivity rho = gamma / (eps0 omega_p^2) of a Drude metal.
  double resistivity(double T) const;

  bool is_lossless(double T) const;
  std::string describe() const;
};

/// epsilon(zeta) at a general complex frequency.
cplx eval_permittivity(const PermittivityModel& model, cplx zeta, double T);

/// epsilon(i xi) for xi > 0; always real.
double eval_at_imaginary_frequency(const PermittivityModel& model, double xi, double T);

/// epsilon(i xi) * xi^2, finite (and well defined) down to xi = 0.
double eps_xi2_imaginary(const PermittivityModel& model, double xi, double T);

}  // namespace casimir
