#include "casimir/friction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "casimir/error.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

namespace {

const PermittivityModel& top_material(const LayerStack& s) {
  return s.layers.empty() ? s.substrate : s.layers.front().material;
}

struct SuperlatticeParams {
  double d_a, d_b, eps_b;
};

SuperlatticeParams superlattice_params(const MovingAtomConfig& cfg) {
  const auto* s = std::get_if<LayerStack>(&cfg.substrate);
  if (!s || s->layers.size() != 2 || s->termination != Termination::PeriodicRepeat)
    throw InvalidArgument("needs a periodic two-layer superlattice substrate");
  const auto& b = s->layers[1].material;
  if (b.kind != MaterialKind::Constant && b.kind != MaterialKind::Vacuum)
    throw InvalidArgument("the B layer of the superlattice must be a constant dielectric");
  return {s->layers[0].thickness, s->layers[1].thickness, b.kind == MaterialKind::Vacuum ? 1.0 : b.eps_const};
}

}  // namespace

void MovingAtomConfig::validate() const {
  if (!(alpha0 > 0.0)) throw InvalidArgument("alpha0 must be > 0");
  if (!(z_a > 0.0)) throw InvalidArgument("z_a must be > 0");
  if (!std::isfinite(v)) throw InvalidArgument("v must be finite");
  stack().validate();
}

LayerStack MovingAtomConfig::stack() const {
  if (const auto* m = std::get_if<PermittivityModel>(&substrate)) return LayerStack::half_space(*m);
  return std::get<LayerStack>(substrate);
}

double MovingAtomConfig::rho() const {
  const auto s = stack();
  const auto& m = top_material(s);
  if (m.kind != MaterialKind::Drude) throw InvalidArgument("resistivity needs a Drude surface material");
  return m.resistivity(0.0);
}

MovingAtomConfig MovingAtomConfig::at_height(double z) const {
  auto c = *this;
  c.z_a = z;
  return c;
}

MovingAtomConfig MovingAtomConfig::at_velocity(double u) const {
  auto c = *this;
  c.v = u;
  return c;
}

FrictionResult friction_force_general(const MovingAtomConfig& cfg, const SpectralInputs& in,
                                      double rel_tol) {
  if (!(cfg.z_a > 0.0)) throw InvalidArgument("z_a must be > 0");
  if (!in.power_spectrum || !in.green_tensor_im) throw InvalidArgument("spectral inputs are incomplete");
  if (!(in.q_cut > 0.0) || !(in.omega_cut > 0.0)) throw InvalidArgument("tabulation range must be > 0");
  const double v = cfg.v;
  const double w_cut = in.omega_cut;

  const auto inner = [&](double q) {
    const auto f = [&](double w) {
      const Diag3 s = in.power_spectrum(q * v - w);
      if (s[0] == 0.0 && s[1] == 0.0 && s[2] == 0.0) return 0.0;
      return trace_product(s, in.green_tensor_im(q, w));
    };
    std::vector<double> pts{0.0};
    const double qv = q * v;
    if (qv > 0.0 && qv < w_cut) pts.push_back(qv);
    pts.push_back(w_cut);
    return q * integrate_pieces(f, pts, 0.1 * rel_tol, 16).value;
  };

  // The integrand is concentrated at |q| ~ 1/z_a.
  const double z = cfg.z_a;
  std::vector<double> pts{0.0};
  for (double t : {0.25, 1.0, 3.0, 8.0, 20.0})
    if (t / z < in.q_cut) pts.push_back(t / z);
  pts.push_back(in.q_cut);

  QuadResult tot;
  for (double sign : {1.0, -1.0}) {
    const auto g = [&](double u) { return inner(sign * u); };
    const auto r = integrate_pieces(g, pts, rel_tol, 14);
    const double tail = std::abs(g(in.q_cut)) * in.q_cut / 20.0;
    if (tail > rel_tol * std::max(std::abs(r.value), 1e-300) && tail > 0.0) {
      std::ostringstream os;
      os << "tabulation range too short: q tail estimate " << tail << " vs integral " << r.value;
      throw QuadratureFailure(os.str());
    }
    tot += r;
  }
  // dq/2pi with the factor -2
  return {-tot.value / pi, tot.error / pi};
}

double reflection_im_tm(const LayerStack& s, double omega, double k) {
  return stack_reflection(Polarization::TM, cplx(omega, 0.0), k, s, 0.0).imag();
}

SpectralInputs builtin_inputs(const MovingAtomConfig& cfg) {
  cfg.validate();
  const LayerStack st = cfg.stack();
  const double z = cfg.z_a, a0 = cfg.alpha0;
  const double inner_tol = 1e-8;

  SpectralInputs in;
  // Im G(R_a, R_a, s) with t = 2 k z_a.
  in.power_spectrum = [st, z, a0, inner_tol](double s) -> Diag3 {
    if (!(s > 0.0)) return {0.0, 0.0, 0.0};
    const auto f = [&](double t) { return t * t * reflection_im_tm(st, s, t / (2.0 * z)) * std::exp(-t); };
    static constexpr double br[] = {0.0, 1.0, 3.0, 8.0, 20.0, 80.0};
    const double g = integrate_pieces(f, br, inner_tol, 14).value / (4.0 * pi * phys::eps0 * std::pow(2.0 * z, 3));
    const double pref = phys::hbar / pi * a0 * a0 * g;
    return {0.5 * pref, 0.5 * pref, pref};
  };
  // k_y = |q| sinh u, k = |q| cosh u.
  in.green_tensor_im = [st, z, inner_tol](double q, double w) -> Diag3 {
    const double aq = std::abs(q);
    if (aq == 0.0 || !(w > 0.0)) return {0.0, 0.0, 0.0};
    const double u_max = std::acosh(1.0 + 40.0 / (aq * z));
    Diag3 out{};
    // The three diagonal entries share r_I; integrate them in one pass per entry weight.
    const auto base = [&](double u) {
      const double ch = std::cosh(u), k = aq * ch;
      return aq * ch * k / (2.0 * phys::eps0) * reflection_im_tm(st, w, k) * std::exp(-2.0 * k * z);
    };
    const auto fx = [&](double u) { const double ch = std::cosh(u); return base(u) / (ch * ch); };
    const auto fz = [&](double u) { return base(u); };
    const double ix = integrate(fx, 0.0, u_max, inner_tol, 14).value;
    const double iz = integrate(fz, 0.0, u_max, inner_tol, 14).value;
    // diag(q^2/k^2, k_y^2/k^2, 1) = diag(1/cosh^2, 1 - 1/cosh^2, 1), times (1/2pi) * 2 (even in k_y)
    out = {ix / pi, (iz - ix) / pi, iz / pi};
    return out;
  };
  in.q_cut = 60.0 / z;
  in.omega_cut = std::max(std::abs(cfg.v), 1e-300) * in.q_cut;
  return in;
}

double force_bulk_asymptote(const MovingAtomConfig& cfg) {
  const double r = cfg.rho();
  const double v = cfg.v;
  return -cfg.Lambda * phys::hbar * cfg.alpha0 * cfg.alpha0 * r * r * v * v * v / std::pow(2.0 * cfg.z_a, 10);
}

double force_ema_asymptote(const MovingAtomConfig& cfg) {
  const auto p = superlattice_params(cfg);
  const double v = cfg.v;
  return -6.0 / (pi * pi) * phys::hbar * cfg.alpha0 * cfg.alpha0 * cfg.rho() / (phys::eps0 * p.eps_b) *
         (p.d_b / p.d_a) * v * std::abs(v) / std::pow(2.0 * cfg.z_a, 9);
}

double threshold_velocity(const MovingAtomConfig& cfg) {
  const auto p = superlattice_params(cfg);
  return p.d_a * p.d_b / (2.0 * cfg.rho() * phys::eps0 * p.eps_b * cfg.z_a);
}

double builtin_bulk_lambda() { return 135.0 / (4.0 * pi * pi * pi); }
double builtin_slab_lambda() { return 45.0 / (16.0 * pi * pi * pi); }
double builtin_ema_lambda() { return 15.0 / (2.0 * pi * pi * pi); }

std::vector<double> local_slopes(std::span<const double> x, std::span<const double> y,
                                 double min_per_decade) {
  const std::size_t n = x.size();
  if (n != y.size()) throw InvalidArgument("grid and values differ in length");
  if (n < 2) throw InvalidArgument("slope fits need at least two points");
  for (std::size_t i = 0; i < n; ++i)
    if (!(x[i] > 0.0)) throw InvalidArgument("log-log slopes need positive abscissae");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x[i] > x[i - 1])) throw InvalidArgument("grid must increase");
  const double decades = std::log10(x[n - 1] / x[0]);
  if (double(n - 1) < min_per_decade * decades * (1.0 - 1e-9)) {
    std::ostringstream os;
    os << "grid too coarse for slope fits: " << (n - 1) / decades << " points per decade, need "
       << min_per_decade;
    throw InvalidArgument(os.str());
  }
  const auto ly = [&](std::size_t i) { return std::log(std::abs(y[i])); };
  std::vector<double> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1, b = i + 1 == n ? i : i + 1;
    s[i] = (ly(b) - ly(a)) / std::log(x[b] / x[a]);
  }
  return s;
}

Table scan_rI(const LayerStack& s, std::span<const double> k_list, std::span<const double> omega_grid) {
  s.validate();
  Table t{{"k", "omega", "r_I", "slope"}, {}};
  for (double k : k_list) {
    std::vector<double> r;
    for (double w : omega_grid) r.push_back(reflection_im_tm(s, w, k));
    const auto sl = local_slopes(omega_grid, r);
    for (std::size_t i = 0; i < omega_grid.size(); ++i) t.rows.push_back({k, omega_grid[i], r[i], sl[i]});
  }
  return t;
}

namespace {

template <class Make>
Table force_scan(std::span<const double> grid, const char* name, Make&& make, double rel_tol) {
  std::vector<double> f, e;
  for (double x : grid) {
    const auto c = make(x);
    const auto r = friction_force_general(c, builtin_inputs(c), rel_tol);
    f.push_back(r.force);
    e.push_back(r.error);
  }
  const auto sl = local_slopes(grid, f);
  Table t{{name, "F", "err", "slope"}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], f[i], e[i], sl[i]});
  return t;
}

}  // namespace

Table scan_distance(const MovingAtomConfig& cfg, std::span<const double> z_grid, double rel_tol) {
  local_slopes(z_grid, std::vector<double>(z_grid.size(), 1.0));
  return force_scan(z_grid, "z_a", [&](double z) { return cfg.at_height(z); }, rel_tol);
}

Table scan_velocity(const MovingAtomConfig& cfg, std::span<const double> v_grid, double rel_tol) {
  local_slopes(v_grid, std::vector<double>(v_grid.size(), 1.0));
  return force_scan(v_grid, "v", [&](double v) { return cfg.at_velocity(v); }, rel_tol);
}

PowerFit fit_power_law(std::span<const double> x, std::span<const double> y, double lo, double hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo || x[i] > hi) continue;
    const double a = std::log(x[i]), b = std::log(std::abs(y[i]));
    sx += a; sy += b; sxx += a * a; sxy += a * b;
    ++n;
  }
  if (n < 2) throw InvalidArgument("power-law fit needs two points in the window");
  PowerFit p;
  p.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  p.log_prefactor = (sy - p.exponent * sx) / n;
  p.points = n;
  return p;
}

}  // namespace casimir
