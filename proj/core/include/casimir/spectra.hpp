#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

using ComplexFn = std::function<cplx(cplx)>;

/// Complex function to be searched for zeros. When `denominator` is set, `numerator`
/// is taken to be analytic and the poles of numerator/denominator are the zeros of
/// `denominator`; winding counts then report zeros - poles.
struct DispersionFunction {
  ComplexFn numerator;
  ComplexFn derivative;    // optional, d numerator / dz
  ComplexFn denominator;   // optional
  std::vector<std::pair<cplx, cplx>> cuts;  // excluded segments
  std::string name;

  cplx operator()(cplx z) const;
  /// Distance from z to the nearest declared cut segment.
  double distance_to_cut(cplx z) const;
};

struct Rect {
  double re_min, re_max, im_min, im_max;
  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  cplx center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
  bool contains(cplx z, double pad = 0.0) const;
};

struct Circle {
  cplx center;
  double radius;
};

using Contour = std::variant<Rect, Circle>;

/// Net number of zeros minus poles inside the contour (argument principle).
/// Sampling starts at n_samples points and is refined until every phase step is below pi/2.
/// Throws RootOnContour when |f| on the contour drops below root_tol * max|f|, and
/// NonIntegerWinding when the accumulated phase is not a multiple of 2 pi.
int winding_count(const DispersionFunction& f, const Contour& contour, int n_samples = 64,
                  double root_tol = 1e-11);

/// Phase-based count for a bare analytic function.
int winding_count(const ComplexFn& f, const Contour& contour, int n_samples = 64,
                  double root_tol = 1e-11);

enum class RootKind { Zero, Pole };

struct ComplexRoot {
  cplx location;
  int multiplicity = 1;
  double residual = 0.0;  // |f(root)| relative to the |f| scale on the isolating cell
  RootKind kind = RootKind::Zero;
};

struct RealModeOptions {
  std::vector<double> breakpoints;  // cut-aware subdivision points (light cone, band edges)
  int samples_per_piece = 400;
  double rel_tol = 1e-12;           // on the root location, relative to the interval scale
};

/// All roots of a real function on (a, b). Each is validated by a sign change or,
/// for touching roots, by a local minimum of |g| that reaches numerical zero.
std::vector<double> find_real_modes(const std::function<double(double)>& g, double a, double b,
                                    const RealModeOptions& opt = {});

struct ComplexModeOptions {
  int max_cells = 20000;
  double min_cell = 1e-9;     // stop subdividing below this width relative to the region
  double newton_tol = 1e-14;  // on |dz| relative to the region size
  double residual_tol = 1e-10;
  int contour_samples = 32;
};

/// Zeros (and poles, when a denominator is declared) inside the rectangle, sorted by (Re, Im).
std::vector<ComplexRoot> find_complex_modes(const DispersionFunction& f, const Rect& region,
                                            const ComplexModeOptions& opt = {});

enum class BranchType { Cavity, Bulk, PlasmonicPlus, PlasmonicMinus, Eddy, Other };

const char* to_string(BranchType t);

struct ModeBranch {
  Polarization pol = Polarization::TM;
  BranchType type = BranchType::Other;
  std::vector<std::pair<double, cplx>> samples;  // (k, Omega)
  std::vector<double> residuals;
  bool terminated = false;  // left the region or hit a cut before the last k
  std::string note;
};

using FamilyFn = std::function<cplx(double k, cplx z)>;

struct TraceOptions {
  Rect region{-1e300, 1e300, -1e300, 1e300};
  std::vector<std::pair<cplx, cplx>> cuts;
  double cut_margin = 0.0;
  double max_rel_jump = 0.2;  // corrector may not move further than this from the predictor
  int max_halvings = 30;
  double newton_tol = 1e-14;
};

/// Predictor-corrector continuation of one root over k_grid. Halves the k step on Newton
/// failure; throws LostBranch (message carries the last good sample) when halving runs out.
ModeBranch trace_branch(const FamilyFn& f, cplx seed, std::span<const double> k_grid,
                        const TraceOptions& opt = {});

/// Sum of poles minus sum of zeros, multiplicity weighted.
cplx sum_rule_defect(std::span<const ComplexRoot> roots);

/// Newton polish of a single root; returns false if it does not converge.
bool newton_polish(const ComplexFn& f, const ComplexFn& df, cplx& z, int multiplicity,
                   double tol_abs, int max_iter = 100);

}  // namespace casimir
