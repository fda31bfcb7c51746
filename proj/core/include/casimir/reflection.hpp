#pragma once

#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/materials.hpp"

namespace casimir {

enum class Polarization { TE, TM };

inline const char* to_string(Polarization p) { return p == Polarization::TE ? "TE" : "TM"; }

/// sqrt(k^2 - eps omega^2 / c^2) on the branch Re >= 0, with Im <= 0 when Re == 0.
cplx kappa(cplx omega, double k, cplx eps);

/// Vacuum/half-space Fresnel coefficient.
cplx fresnel(Polarization pol, cplx omega, double k, const PermittivityModel& model, double T);

/// Fresnel coefficient at omega = i xi (real). xi = 0 is taken as the per-model limit:
/// r_TM -> 1 for Plasma/Drude, r_TE -> 0 for Drude with gamma > 0 but finite for Plasma.
double fresnel_imaginary(Polarization pol, double xi, double k, const PermittivityModel& model,
                         double T);

struct Layer {
  PermittivityModel material;
  double thickness = 0.0;  // m
};

enum class Termination { HalfSpace, PeriodicRepeat, Vacuum };

/// Planar structure seen from vacuum. The first entry of `layers` touches the vacuum gap.
/// With PeriodicRepeat, `layers` is one period, repeated without end.
struct LayerStack {
  std::vector<Layer> layers;
  Termination termination = Termination::HalfSpace;
  PermittivityModel substrate;  // used by HalfSpace only

  static LayerStack half_space(const PermittivityModel& m);
  static LayerStack slab(const PermittivityModel& m, double d,
                         const PermittivityModel& below = PermittivityModel::vacuum());
  /// Semi-infinite A/B superlattice, A touching vacuum.
  static LayerStack superlattice(const PermittivityModel& a, double d_a, const PermittivityModel& b,
                                 double d_b);
  /// N explicit A/B periods on top of `below`.
  static LayerStack finite_superlattice(const PermittivityModel& a, double d_a,
                                        const PermittivityModel& b, double d_b, int periods,
                                        const PermittivityModel& below = PermittivityModel::vacuum());

  void validate() const;
  /// d_A / (d_A + d_B) for a two-layer period.
  double filling_factor() const;
  std::string describe() const;
};

/// Reflection coefficient of the structure seen from vacuum. For PeriodicRepeat the
/// semi-infinite coefficient is the attracting fixed point of the single-period map,
/// i.e. the decaying Bloch branch. Throws BlochAmbiguity when both multipliers are unimodular.
cplx stack_reflection(Polarization pol, cplx omega, double k, const LayerStack& stack, double T);

/// Ratio of the two single-period transfer eigenvalues, |lambda| <= 1; the decay per period
/// of the selected Bloch wave.
cplx bloch_multiplier(Polarization pol, cplx omega, double k, const LayerStack& stack, double T);

/// Uniaxial effective medium, optic axis along the stack normal.
struct EmaPermittivity {
  cplx eps_perp;  // in-plane
  cplx eps_par;   // along the stack axis
};

EmaPermittivity ema_permittivity(cplx eps_a, cplx eps_b, double f);

/// Half-space reflection of the uniaxial medium. TE sees eps_perp only.
cplx ema_reflection(Polarization pol, cplx omega, double k, const EmaPermittivity& ema);

/// Re(eps_perp) * Re(eps_par) < 0: extraordinary waves propagate for any in-plane k.
bool ema_is_hyperbolic(const EmaPermittivity& ema);

/// Extraordinary-wave normal wavenumber sqrt(eps_perp/eps_par k^2 - eps_perp omega^2/c^2).
cplx ema_kappa_tm(cplx omega, double k, const EmaPermittivity& ema);

}  // namespace casimir
