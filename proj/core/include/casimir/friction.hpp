#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "casimir/reflection.hpp"

namespace casimir {

/// Diagonal of a 3x3 tensor in the (x, y, z) frame: x along the motion, z the surface normal.
/// Planar, isotropic-in-plane substrates and an isotropic atom need nothing else here.
using Diag3 = std::array<double, 3>;

inline double trace_product(const Diag3& a, const Diag3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

using Substrate = std::variant<PermittivityModel, LayerStack>;

struct MovingAtomConfig {
  double alpha0 = 0.0;  // C m^2 / V
  double v = 0.0;       // m/s
  double z_a = 0.0;     // m
  Substrate substrate;
  double Lambda = 1.0;  // model coefficient of the bulk law

  void validate() const;
  LayerStack stack() const;
  /// Resistivity of the Drude material touching vacuum.
  double rho() const;

  MovingAtomConfig at_height(double z) const;
  MovingAtomConfig at_velocity(double u) const;
};

/// Inputs of the late-time force integral. S_v takes the argument -omega_q^- = q v - omega;
/// G_Im takes (q, omega) and already contains the k_y integral at the atom position.
/// Both are assumed negligible beyond |q| > q_cut and omega > omega_cut, and S_v smooth
/// apart from a step at s = 0 (the only breakpoint the omega integral knows about).
struct SpectralInputs {
  std::function<Diag3(double)> power_spectrum;
  std::function<Diag3(double, double)> green_tensor_im;
  double q_cut = 0.0;      // 1/m
  double omega_cut = 0.0;  // rad/s
};

struct FrictionResult {
  double force = 0.0;  // N
  double error = 0.0;
};

/// F = -2 int_0^inf d omega int dq/2pi q Tr[S_v(q v - omega) G_Im^T(q, omega)].
FrictionResult friction_force_general(const MovingAtomConfig& cfg, const SpectralInputs& in,
                                      double rel_tol = 1e-6);

/// Imaginary part of the TM reflection coefficient of the substrate.
double reflection_im_tm(const LayerStack& s, double omega, double k);

/// Built-in APPROXIMATE inputs (non-retarded near field):
///   G_Im(q, w)  = (1/2pi) int dk_y (k / 2 eps0) r_I(w, k) e^{-2 k z_a} diag(q^2/k^2, k_y^2/k^2, 1)
///   S_v(s)      = theta(s) (hbar/pi) alpha0^2 Im G(R_a, R_a, s),
///   Im G(R_a, R_a, s) = (1/4 pi eps0) int dk k^2 r_I(s, k) e^{-2 k z_a} diag(1/2, 1/2, 1),
/// i.e. the dipole spectrum of the atom dressed once by its own image, with the static
/// polarizability alpha0.
SpectralInputs builtin_inputs(const MovingAtomConfig& cfg);

/// Lambda hbar alpha0^2 rho^2 v^3 / (2 z_a)^10, opposing the motion.
double force_bulk_asymptote(const MovingAtomConfig& cfg);

/// -(6/pi^2) hbar alpha0^2 (rho / eps0 eps_B) (d_B/d_A) v|v| / (2 z_a)^9.
double force_ema_asymptote(const MovingAtomConfig& cfg);

/// d_A d_B / (2 rho eps0 eps_B z_a).
double threshold_velocity(const MovingAtomConfig& cfg);

/// Lambda of the built-in inputs over an Ohmic half-space, 135 / (4 pi^3); the slab
/// (z_a >> d_A) and sub-Ohmic (EMA) analogues follow from the same integrals.
double builtin_bulk_lambda();
double builtin_slab_lambda();  // F = -L_s hbar alpha0^2 rho^2 v^3 / (d_A^2 (2 z_a)^8)
double builtin_ema_lambda();   // F = -L_e hbar alpha0^2 (rho/eps0 eps_B)(d_B/d_A) v|v| / (2z_a)^9

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Centered log-log slopes (one-sided at the ends). Throws when fewer than
/// `min_per_decade` points per decade are available.
std::vector<double> local_slopes(std::span<const double> x, std::span<const double> y,
                                 double min_per_decade = 5.0);

/// Columns: k, omega, r_I, slope (d ln r_I / d ln omega at fixed k).
Table scan_rI(const LayerStack& s, std::span<const double> k_list, std::span<const double> omega_grid);

/// Columns: z_a, F, err, slope.
Table scan_distance(const MovingAtomConfig& cfg, std::span<const double> z_grid,
                    double rel_tol = 1e-6);

/// Columns: v, F, err, slope.
Table scan_velocity(const MovingAtomConfig& cfg, std::span<const double> v_grid,
                    double rel_tol = 1e-6);

/// Power-law fit y = A x^p by least squares in log-log over the points with x in [lo, hi].
struct PowerFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;  // ln A
  int points = 0;
};
PowerFit fit_power_law(std::span<const double> x, std::span<const double> y, double lo, double hi);

}  // namespace casimir
