#include "casimir/reflection.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "casimir/error.hpp"

namespace casimir {

namespace {

struct Medium {
  cplx eps;
  cplx kap;
};

Medium medium(const PermittivityModel& m, cplx omega, double k, double T) {
  const cplx e = eval_permittivity(m, omega, T);
  return {e, kappa(omega, k, e)};
}

cplx interface_r(Polarization pol, const Medium& a, const Medium& b) {
  cplx num, den;
  if (pol == Polarization::TE) {
    num = a.kap - b.kap;
    den = a.kap + b.kap;
  } else {
    num = b.eps * a.kap - a.eps * b.kap;
    den = b.eps * a.kap + a.eps * b.kap;
  }
  if (den == 0.0) throw SingularFrequency("interface reflection has a pole here");
  return num / den;
}

// Stacks are handled through the surface impedance W (TE: kappa, TM: kappa / eps), for which
// r = (W0 - W) / (W0 + W) and a layer acts as the unimodular Moebius map
//   W -> (c W + W_j s) / ((s / W_j) W + c),  c, s = cosh, sinh(kappa_j d_j),
// here scaled by e^{-kappa_j d_j}. Unlike products of Airy maps with |r| ~ 1, nothing
// cancels for thin, highly conducting layers.
using Mat2 = std::array<cplx, 4>;  // row major

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

cplx apply(const Mat2& m, cplx W) { return (m[0] * W + m[1]) / (m[2] * W + m[3]); }

Mat2 normalized(Mat2 m) {
  double s = 0.0;
  for (const auto& v : m) s = std::max(s, std::abs(v));
  if (s > 0.0)
    for (auto& v : m) v /= s;
  return m;
}

cplx expm1c(cplx z) {
  const double x = z.real(), y = z.imag();
  const double sh = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y)};
}

cplx impedance(Polarization pol, const Medium& m) {
  if (pol == Polarization::TE) return m.kap;
  if (m.eps == 0.0) throw SingularFrequency("eps = 0 inside a layer");
  return m.kap / m.eps;
}

struct LayerFactors {
  cplx c, s;    // scaled cosh and sinh
  cplx w_s;     // W_j s
  cplx s_by_w;  // s / W_j
};

LayerFactors layer_factors(Polarization pol, const Medium& m, double d) {
  const cplx x = m.kap * d;
  const cplx em = expm1c(-2.0 * x);  // p - 1
  LayerFactors f;
  f.s = -0.5 * em;
  f.c = 1.0 + 0.5 * em;
  // s / kappa = d (1 - p) / (2 kappa d), finite at kappa = 0
  const cplx s_by_kap = std::abs(x) < 1e-8 ? cplx(d) * (1.0 - x) : f.s / m.kap;
  if (pol == Polarization::TE) {
    f.w_s = m.kap * f.s;
    f.s_by_w = s_by_kap;
  } else {
    if (m.eps == 0.0) throw SingularFrequency("eps = 0 inside a layer");
    f.w_s = m.kap * f.s / m.eps;
    f.s_by_w = s_by_kap * m.eps;
  }
  return f;
}

Mat2 layer_matrix(const LayerFactors& f) { return {f.c, f.w_s, f.s_by_w, f.c}; }

cplx reflection_from_impedance(cplx w0, cplx w) {
  const cplx den = w0 + w;
  if (den == 0.0) throw SingularFrequency("reflection coefficient has a pole here");
  return (w0 - w) / den;
}

// One period, first layer on top: W_top = P(W_next_period).
Mat2 period_matrix(Polarization pol, cplx omega, double k, const LayerStack& st, double T) {
  Mat2 m{1.0, 0.0, 0.0, 1.0};
  for (const auto& l : st.layers)
    m = normalized(mul(m, layer_matrix(layer_factors(pol, medium(l.material, omega, k, T), l.thickness))));
  return m;
}

struct Eigen {
  cplx big, small;
  cplx fixed_point;  // eigenvector ratio of the larger-modulus eigenvalue
};

// Two-layer period with the diagonal difference written out, so that h = (P00 - P11)/2 keeps
// full relative accuracy when both layers are thin.
Mat2 two_layer_period(Polarization pol, cplx omega, double k, const LayerStack& st, double T, cplx& h) {
  const auto& A = st.layers[0];
  const auto& B = st.layers[1];
  const Medium ma = medium(A.material, omega, k, T), mb = medium(B.material, omega, k, T);
  const LayerFactors fa = layer_factors(pol, ma, A.thickness), fb = layer_factors(pol, mb, B.thickness);
  const Mat2 m = mul(layer_matrix(fa), layer_matrix(fb));
  // P00 - P11 = s_a s_b (W_a / W_b - W_b / W_a) = w_s_a s_by_w_b - s_by_w_a w_s_b
  h = 0.5 * (fa.w_s * fb.s_by_w - fa.s_by_w * fb.w_s);
  return m;
}

Eigen attracting(const Mat2& m, cplx h) {
  // Eigenvalues tr/2 +- d with d^2 = h^2 + m1 m2, h = (m0 - m3)/2: no tr^2 - 4 det cancellation
  // when the multipliers are nearly degenerate (thin layers, small k).
  const cplx half_tr = 0.5 * (m[0] + m[3]);
  cplx d = std::sqrt(h * h + m[1] * m[2]);
  if (std::abs(half_tr - d) > std::abs(half_tr + d)) d = -d;
  const cplx mu1 = half_tr + d, mu2 = half_tr - d;
  const double a1 = std::abs(mu1), a2 = std::abs(mu2);
  if (a1 == 0.0 || std::abs(a1 - a2) <= 1e-12 * a1)
    throw BlochAmbiguity("both Bloch multipliers have the same modulus");
  // Eigenvector ratio R = (h + d) / m2 = -m1 / (h - d); take the uncancelled form.
  const cplx hp = h + d, hm = h - d;
  cplx R;
  if (std::abs(hp) >= std::abs(hm)) {
    if (m[2] == 0.0) throw BlochAmbiguity("Bloch fixed point at infinity");
    R = hp / m[2];
  } else {
    if (hm == 0.0) throw BlochAmbiguity("Bloch fixed point at infinity");
    R = -m[1] / hm;
  }
  return {mu1, mu2, R};
}

Eigen period_eigen(Polarization pol, cplx omega, double k, const LayerStack& st, double T) {
  if (st.layers.size() == 2) {
    cplx h;
    const Mat2 m = two_layer_period(pol, omega, k, st, T, h);
    return attracting(m, h);
  }
  const Mat2 m = period_matrix(pol, omega, k, st, T);
  return attracting(m, 0.5 * (m[0] - m[3]));
}

}  // namespace

cplx kappa(cplx omega, double k, cplx eps) {
  const cplx arg = k * k - eps * omega * omega / (phys::c * phys::c);
  cplx s = std::sqrt(arg);
  if (s.real() < 0.0) s = -s;
  if (s.real() == 0.0 && s.imag() > 0.0) s = -s;
  return s;
}

cplx fresnel(Polarization pol, cplx omega, double k, const PermittivityModel& model, double T) {
  if (k < 0.0) throw InvalidArgument("in-plane wavenumber must be >= 0");
  const Medium vac{1.0, kappa(omega, k, 1.0)};
  return interface_r(pol, vac, medium(model, omega, k, T));
}

double fresnel_imaginary(Polarization pol, double xi, double k, const PermittivityModel& model,
                         double T) {
  if (k < 0.0) throw InvalidArgument("in-plane wavenumber must be >= 0");
  const double c2 = phys::c * phys::c;
  const double ex2 = eps_xi2_imaginary(model, xi, T);  // eps * xi^2
  const double k0 = std::sqrt(k * k + xi * xi / c2);
  const double km = std::sqrt(k * k + ex2 / c2);
  if (pol == Polarization::TE) {
    if (k0 + km == 0.0) return 0.0;
    return (k0 - km) / (k0 + km);
  }
  if (xi == 0.0) {
    switch (model.kind) {
      case MaterialKind::Vacuum: return 0.0;
      case MaterialKind::Constant: return (model.eps_const - 1.0) / (model.eps_const + 1.0);
      case MaterialKind::Plasma:
      case MaterialKind::Drude: return 1.0;
    }
  }
  const double x2 = xi * xi;
  return (ex2 * k0 - x2 * km) / (ex2 * k0 + x2 * km);
}

LayerStack LayerStack::half_space(const PermittivityModel& m) {
  LayerStack s;
  s.termination = Termination::HalfSpace;
  s.substrate = m;
  return s;
}

LayerStack LayerStack::slab(const PermittivityModel& m, double d, const PermittivityModel& below) {
  LayerStack s;
  s.layers.push_back({m, d});
  s.termination = Termination::HalfSpace;
  s.substrate = below;
  s.validate();
  return s;
}

LayerStack LayerStack::superlattice(const PermittivityModel& a, double d_a,
                                    const PermittivityModel& b, double d_b) {
  LayerStack s;
  s.layers = {{a, d_a}, {b, d_b}};
  s.termination = Termination::PeriodicRepeat;
  s.validate();
  return s;
}

LayerStack LayerStack::finite_superlattice(const PermittivityModel& a, double d_a,
                                           const PermittivityModel& b, double d_b, int periods,
                                           const PermittivityModel& below) {
  if (periods < 1) throw InvalidArgument("need at least one period");
  LayerStack s;
  for (int i = 0; i < periods; ++i) {
    s.layers.push_back({a, d_a});
    s.layers.push_back({b, d_b});
  }
  s.termination = Termination::HalfSpace;
  s.substrate = below;
  s.validate();
  return s;
}

void LayerStack::validate() const {
  for (const auto& l : layers) {
    if (!(l.thickness > 0.0) || !std::isfinite(l.thickness))
      throw InvalidArgument("layer thickness must be positive and finite");
    l.material.validate();
  }
  if (termination == Termination::PeriodicRepeat && layers.empty())
    throw InvalidArgument("periodic stack needs at least one layer per period");
  substrate.validate();
}

double LayerStack::filling_factor() const {
  if (layers.size() < 2) throw InvalidArgument("filling factor needs two layers");
  return layers[0].thickness / (layers[0].thickness + layers[1].thickness);
}

std::string LayerStack::describe() const {
  std::ostringstream os;
  os << (termination == Termination::PeriodicRepeat ? "periodic[" : "stack[");
  for (std::size_t i = 0; i < layers.size(); ++i)
    os << (i ? ", " : "") << layers[i].material.describe() << " d=" << layers[i].thickness;
  os << "]";
  if (termination == Termination::HalfSpace) os << " on " << substrate.describe();
  if (termination == Termination::Vacuum) os << " in vacuum";
  return os.str();
}

cplx stack_reflection(Polarization pol, cplx omega, double k, const LayerStack& st, double T) {
  if (k < 0.0) throw InvalidArgument("in-plane wavenumber must be >= 0");
  const Medium vac{1.0, kappa(omega, k, 1.0)};
  const cplx w0 = impedance(pol, vac);
  if (st.termination == Termination::PeriodicRepeat)
    return reflection_from_impedance(w0, period_eigen(pol, omega, k, st, T).fixed_point);
  const Medium sub = st.termination == Termination::Vacuum ? vac : medium(st.substrate, omega, k, T);
  if (st.layers.empty()) return interface_r(pol, vac, sub);
  cplx w = impedance(pol, sub);
  for (std::size_t j = st.layers.size(); j-- > 0;) {
    const auto& l = st.layers[j];
    w = apply(layer_matrix(layer_factors(pol, medium(l.material, omega, k, T), l.thickness)), w);
  }
  return reflection_from_impedance(w0, w);
}

cplx bloch_multiplier(Polarization pol, cplx omega, double k, const LayerStack& st, double T) {
  if (st.termination != Termination::PeriodicRepeat)
    throw InvalidArgument("Bloch multiplier needs a periodic stack");
  const auto e = period_eigen(pol, omega, k, st, T);
  return e.small / e.big;
}

EmaPermittivity ema_permittivity(cplx eps_a, cplx eps_b, double f) {
  if (!(f > 0.0 && f < 1.0)) throw InvalidArgument("filling factor must lie in (0, 1)");
  const cplx inv = f / eps_a + (1.0 - f) / eps_b;
  if (inv == 0.0) throw SingularFrequency("eps_par diverges");
  return {f * eps_a + (1.0 - f) * eps_b, 1.0 / inv};
}

cplx ema_kappa_tm(cplx omega, double k, const EmaPermittivity& ema) {
  const cplx arg =
      ema.eps_perp * (k * k / ema.eps_par - omega * omega / (phys::c * phys::c));
  cplx s = std::sqrt(arg);
  if (s.real() < 0.0) s = -s;
  if (s.real() == 0.0 && s.imag() > 0.0) s = -s;
  return s;
}

cplx ema_reflection(Polarization pol, cplx omega, double k, const EmaPermittivity& ema) {
  const cplx k0 = kappa(omega, k, 1.0);
  if (pol == Polarization::TE) {
    const cplx ke = kappa(omega, k, ema.eps_perp);
    return (k0 - ke) / (k0 + ke);
  }
  const cplx kt = ema_kappa_tm(omega, k, ema);
  const cplx den = ema.eps_perp * k0 + kt;
  if (den == 0.0) throw SingularFrequency("uniaxial reflection has a pole here");
  return (ema.eps_perp * k0 - kt) / den;
}

bool ema_is_hyperbolic(const EmaPermittivity& ema) {
  return ema.eps_perp.real() * ema.eps_par.real() < 0.0;
}

}  // namespace casimir
