#include "casimir/spectra.hpp"

#include <algorithm>
#include <array>
#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <sstream>

#include "casimir/error.hpp"

namespace casimir {

cplx DispersionFunction::operator()(cplx z) const {
  const cplx n = numerator(z);
  if (!denominator) return n;
  return n / denominator(z);
}

double DispersionFunction::distance_to_cut(cplx z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : cuts) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    double t = len2 > 0.0 ? ((z - a) * std::conj(ab)).real() / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    d = std::min(d, std::abs(z - (a + t * ab)));
  }
  return d;
}

bool Rect::contains(cplx z, double pad) const {
  return z.real() >= re_min - pad && z.real() <= re_max + pad && z.imag() >= im_min - pad &&
         z.imag() <= im_max + pad;
}

const char* to_string(BranchType t) {
  switch (t) {
    case BranchType::Cavity: return "cavity";
    case BranchType::Bulk: return "bulk";
    case BranchType::PlasmonicPlus: return "plasmonic_plus";
    case BranchType::PlasmonicMinus: return "plasmonic_minus";
    case BranchType::Eddy: return "eddy";
    case BranchType::Other: return "other";
  }
  return "other";
}

namespace {

cplx contour_point(const Contour& c, double t) {
  if (const auto* ci = std::get_if<Circle>(&c))
    return ci->center + ci->radius * std::exp(cplx(0.0, 2.0 * pi * t));
  const auto& r = std::get<Rect>(c);
  const double w = r.width(), h = r.height(), per = 2.0 * (w + h);
  double s = t * per;
  if (s < w) return {r.re_min + s, r.im_min};
  s -= w;
  if (s < h) return {r.re_max, r.im_min + s};
  s -= h;
  if (s < w) return {r.re_max - s, r.im_max};
  s -= w;
  return {r.re_min, r.im_max - s};
}

struct PhaseWalker {
  const ComplexFn& f;
  const Contour& c;
  double floor = 0.0;

  cplx eval(double t) const {
    const cplx v = f(contour_point(c, t));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw RootOnContour("non-finite value on the contour (pole or cut)");
    if (std::abs(v) <= floor) throw RootOnContour("|f| vanishes on the contour");
    return v;
  }

  // Accept a segment only when its phase step is small and agrees with the two half steps;
  // a lone endpoint comparison aliases when a (multiple) root sits close to the edge.
  // Phase checks alone miss a full turn inside one half step (two roots next to the edge),
  // so ln|f| must also be close to linear: a root nearby shows up as a dip.
  double segment(double t0, cplx v0, double t1, cplx v1, int depth) const {
    const double d = std::arg(v1 / v0);
    const double tm = 0.5 * (t0 + t1);
    const cplx vm = eval(tm);
    const double d1 = std::arg(vm / v0), d2 = std::arg(v1 / vm);
    const double dip = std::log(std::abs(vm)) - 0.5 * (std::log(std::abs(v0)) + std::log(std::abs(v1)));
    if (std::abs(d) < 0.5 * pi && std::abs(d1) < 0.25 * pi && std::abs(d2) < 0.25 * pi &&
        std::abs(d1 + d2 - d) < 1e-3 && std::abs(dip) < 0.1)
      return d;
    if (depth > 48) throw RootOnContour("phase does not resolve on the contour");
    return segment(t0, v0, tm, vm, depth + 1) + segment(tm, vm, t1, v1, depth + 1);
  }

  double total(int n) const {
    std::vector<cplx> v(n + 1);
    for (int i = 0; i < n; ++i) v[i] = eval(double(i) / n);
    v[n] = v[0];
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += segment(double(i) / n, v[i], double(i + 1) / n, v[i + 1], 0);
    return s / (2.0 * pi);
  }
};

int winding_impl(const ComplexFn& f, const Contour& c, int n, double root_tol) {
  n = std::max(n, 8);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(f(contour_point(c, double(i) / n))));
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw RootOnContour("|f| scale on the contour is zero or non-finite");
  PhaseWalker w{f, c, root_tol * scale};
  const double a = w.total(n);
  const double b = w.total(2 * n);
  const long ra = std::lround(a), rb = std::lround(b);
  if (ra != rb || std::abs(a - ra) > 1e-6 || std::abs(b - rb) > 1e-6) {
    const double d = w.total(8 * n);
    const long rd = std::lround(d);
    if (std::abs(d - rd) > 1e-6 || rd != rb) {
      std::ostringstream os;
      os << "non-integer winding " << d << " after refinement";
      throw NonIntegerWinding(os.str());
    }
    return int(rd);
  }
  return int(ra);
}

cplx num_derivative(const ComplexFn& f, cplx z, double h) {
  return (f(z + h) - f(z - h)) / (2.0 * h);
}

double cell_scale(const ComplexFn& f, const Rect& r) {
  double s = 0.0;
  for (int i = 0; i < 16; ++i) s = std::max(s, std::abs(f(contour_point(Contour{r}, i / 16.0))));
  return s;
}

struct Searcher {
  const ComplexFn& g;
  const ComplexFn& dg;  // may be empty
  const ComplexModeOptions& opt;
  double region_size;
  RootKind kind;
  int cells = 0;
  std::vector<ComplexRoot> out;

  ComplexFn deriv() const {
    if (dg) return dg;
    const double h = 1e-7 * region_size;
    return [this, h](cplx z) { return num_derivative(g, z, h); };
  }

  bool try_newton(const Rect& r, int mult) {
    cplx z = r.center();
    if (!newton_polish(g, deriv(), z, mult, opt.newton_tol * region_size)) return false;
    const double pad = 1e-9 * std::max(r.width(), r.height());
    if (!r.contains(z, pad)) return false;
    const double sc = cell_scale(g, r);
    out.push_back({z, mult, sc > 0.0 ? std::abs(g(z)) / sc : 0.0, kind});
    return true;
  }

  void process(const Rect& r, int n) {
    if (n == 0) return;
    if (n < 0) throw NonIntegerWinding("negative zero count for an analytic function");
    if (++cells > opt.max_cells) throw BudgetExhausted("complex root search exceeded its cell budget");
    const bool tiny = std::max(r.width(), r.height()) < opt.min_cell * region_size;
    if (tiny) {
      if (n > 3) throw NonIntegerWinding("root multiplicity above 3 in an isolated cell");
      if (!try_newton(r, n)) {
        // Accept the cell center; it is already within min_cell of the root.
        const cplx z = r.center();
        const double sc = cell_scale(g, r);
        out.push_back({z, n, sc > 0.0 ? std::abs(g(z)) / sc : 0.0, kind});
      }
      return;
    }
    if (n == 1 && try_newton(r, 1)) return;
    // Clustered count in a small cell: try a multiple root before subdividing further.
    if (n <= 3 && std::max(r.width(), r.height()) < 1e-4 * region_size) {
      cplx z = r.center();
      if (newton_polish(g, deriv(), z, n, opt.newton_tol * region_size) && r.contains(z)) {
        const double rad = 1e-3 * std::max(r.width(), r.height());
        int w = -1;
        try {
          w = winding_impl(g, Contour{Circle{z, rad}}, opt.contour_samples, 1e-13);
        } catch (const Error&) {
        }
        if (w == n) {
          const double sc = cell_scale(g, r);
          out.push_back({z, n, sc > 0.0 ? std::abs(g(z)) / sc : 0.0, kind});
          return;
        }
      }
    }
    static constexpr std::array<double, 6> fr{0.5, 0.4713, 0.5289, 0.4417, 0.5573, 0.3971};
    for (double s : fr) {
      const double xm = r.re_min + s * r.width();
      const double ym = r.im_min + s * r.height();
      const std::array<Rect, 4> kids{Rect{r.re_min, xm, r.im_min, ym}, Rect{xm, r.re_max, r.im_min, ym},
                                     Rect{r.re_min, xm, ym, r.im_max}, Rect{xm, r.re_max, ym, r.im_max}};
      std::array<int, 4> cnt{};
      try {
        int tot = 0;
        for (int i = 0; i < 4; ++i) {
          cnt[i] = winding_impl(g, Contour{kids[i]}, opt.contour_samples, 1e-13);
          tot += cnt[i];
        }
        if (tot != n) continue;
      } catch (const RootOnContour&) {
        continue;
      } catch (const NonIntegerWinding&) {
        continue;
      }
      for (int i = 0; i < 4; ++i) process(kids[i], cnt[i]);
      return;
    }
    throw NonIntegerWinding("could not split cell consistently");
  }
};

void search(const ComplexFn& g, const ComplexFn& dg, const Rect& region,
            const ComplexModeOptions& opt, RootKind kind, std::vector<ComplexRoot>& out) {
  Searcher s{g, dg, opt, std::max(region.width(), region.height()), kind, 0, {}};
  const int n = winding_impl(g, Contour{region}, opt.contour_samples, 1e-13);
  s.process(region, n);
  out.insert(out.end(), s.out.begin(), s.out.end());
}

}  // namespace

int winding_count(const DispersionFunction& f, const Contour& contour, int n_samples,
                  double root_tol) {
  return winding_impl([&f](cplx z) { return f(z); }, contour, n_samples, root_tol);
}

int winding_count(const ComplexFn& f, const Contour& contour, int n_samples, double root_tol) {
  return winding_impl(f, contour, n_samples, root_tol);
}

bool newton_polish(const ComplexFn& f, const ComplexFn& df, cplx& z, int multiplicity,
                   double tol_abs, int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    const cplx v = f(z);
    if (v == 0.0) return true;
    const cplx d = df(z);
    if (d == 0.0 || !std::isfinite(std::abs(d))) return false;
    const cplx step = double(multiplicity) * v / d;
    if (!std::isfinite(std::abs(step))) return false;
    z -= step;
    if (std::abs(step) <= tol_abs) return true;
  }
  return false;
}

std::vector<ComplexRoot> find_complex_modes(const DispersionFunction& f, const Rect& region,
                                            const ComplexModeOptions& opt) {
  if (!(region.width() > 0.0 && region.height() > 0.0))
    throw InvalidArgument("search region must have positive area");
  for (const auto& [a, b] : f.cuts)
    for (int i = 0; i <= 256; ++i)
      if (region.contains(a + (b - a) * (i / 256.0)))
        throw InvalidArgument("search region intersects a declared cut");
  std::vector<ComplexRoot> out;
  search(f.numerator, f.derivative, region, opt, RootKind::Zero, out);
  if (f.denominator) search(f.denominator, {}, region, opt, RootKind::Pole, out);
  std::sort(out.begin(), out.end(), [](const ComplexRoot& a, const ComplexRoot& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return out;
}

std::vector<double> find_real_modes(const std::function<double(double)>& g, double a, double b,
                                    const RealModeOptions& opt) {
  if (!(b > a)) throw InvalidArgument("empty search interval");
  const double ga = g(a), gb = g(b);
  if (!std::isfinite(ga) || !std::isfinite(gb))
    throw InvalidArgument("search interval endpoint lies on a cut");
  std::vector<double> pts{a};
  for (double p : opt.breakpoints)
    if (p > a && p < b) pts.push_back(p);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const double scale = b - a;
  std::vector<double> roots;
  auto tol = [&](double x, double y) { return std::abs(x - y) <= opt.rel_tol * scale; };
  for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
    const int n = std::max(opt.samples_per_piece, 8);
    const double x0 = pts[p], x1 = pts[p + 1];
    std::vector<double> xs(n + 1), ys(n + 1);
    for (int i = 0; i <= n; ++i) {
      xs[i] = x0 + (x1 - x0) * i / n;
      ys[i] = g(xs[i]);
    }
    double fscale = 0.0;
    for (double y : ys)
      if (std::isfinite(y)) fscale = std::max(fscale, std::abs(y));
    for (int i = 0; i < n; ++i) {
      const double y0 = ys[i], y1 = ys[i + 1];
      if (!std::isfinite(y0) || !std::isfinite(y1)) continue;
      if (y0 == 0.0) {
        roots.push_back(xs[i]);
        continue;
      }
      if (y0 * y1 < 0.0) {
        std::uintmax_t it = 200;
        auto [lo, hi] = boost::math::tools::toms748_solve(
            g, xs[i], xs[i + 1], y0, y1,
            [&](double u, double v) { return tol(u, v); }, it);
        const double r = 0.5 * (lo + hi);
        // Reject sign flips through a pole: |g| must shrink towards the root.
        const double gr = std::abs(g(r));
        if (gr <= 1e-6 * std::max(std::abs(y0), std::abs(y1)) || gr <= 1e-9 * fscale)
          roots.push_back(r);
        continue;
      }
      // Touching root: local minimum of |g| without a sign change.
      if (i > 0 && std::abs(y0) < std::abs(ys[i - 1]) && std::abs(y0) < std::abs(y1)) {
        double lo = xs[i - 1], hi = xs[i + 1];
        for (int k = 0; k < 200 && hi - lo > opt.rel_tol * scale; ++k) {
          const double m1 = lo + (hi - lo) * 0.381966, m2 = lo + (hi - lo) * 0.618034;
          if (std::abs(g(m1)) < std::abs(g(m2))) hi = m2; else lo = m1;
        }
        const double r = 0.5 * (lo + hi);
        if (std::abs(g(r)) <= 1e-10 * fscale) roots.push_back(r);
      }
    }
    if (ys[n] == 0.0 && p + 2 == pts.size()) roots.push_back(xs[n]);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(), tol), roots.end());
  return roots;
}

ModeBranch trace_branch(const FamilyFn& f, cplx seed, std::span<const double> k_grid,
                        const TraceOptions& opt) {
  ModeBranch br;
  if (k_grid.empty()) return br;
  auto polish = [&](double k, cplx& z) {
    const auto fk = [&](cplx w) { return f(k, w); };
    const double h = 1e-7 * std::max(std::abs(z), 1e-300);
    const auto dk = [&](cplx w) { return num_derivative(fk, w, h); };
    return newton_polish(fk, dk, z, 1, opt.newton_tol * std::max(std::abs(z), 1e-300));
  };
  auto residual = [&](double k, cplx z) {
    const double d = 1e-3 * std::abs(z);
    const double ref = std::max(std::abs(f(k, z + d)), std::abs(f(k, z - d)));
    return ref > 0.0 ? std::abs(f(k, z)) / ref : 0.0;
  };
  auto outside = [&](cplx z) {
    if (!opt.region.contains(z)) return true;
    DispersionFunction probe;
    probe.cuts = opt.cuts;
    return !opt.cuts.empty() && probe.distance_to_cut(z) <= opt.cut_margin;
  };

  cplx z = seed;
  if (!polish(k_grid[0], z)) throw LostBranch("seed does not converge at the first k");
  br.samples.push_back({k_grid[0], z});
  br.residuals.push_back(residual(k_grid[0], z));
  double k_prev = k_grid[0], k_pp = k_prev;
  cplx z_prev = z, z_pp = z;
  bool have_slope = false;

  for (std::size_t i = 1; i < k_grid.size(); ++i) {
    const double target = k_grid[i];
    double kt = target;
    int halvings = 0;
    while (true) {
      cplx pred = z_prev;
      if (have_slope) pred += (z_prev - z_pp) / (k_prev - k_pp) * (kt - k_prev);
      cplx zc = pred;
      const bool ok = polish(kt, zc) &&
                      std::abs(zc - pred) <= opt.max_rel_jump * std::max(std::abs(pred), 1e-300);
      if (!ok) {
        if (++halvings > opt.max_halvings) {
          std::ostringstream os;
          os << "lost branch after k = " << k_prev << ", Omega = " << z_prev.real() << " + "
             << z_prev.imag() << "i";
          throw LostBranch(os.str());
        }
        kt = k_prev + 0.5 * (kt - k_prev);
        continue;
      }
      k_pp = k_prev;
      z_pp = z_prev;
      k_prev = kt;
      z_prev = zc;
      have_slope = true;
      if (kt == target) break;
      kt = target;
    }
    if (outside(z_prev)) {
      br.terminated = true;
      br.note = "root left the region or reached a cut";
      break;
    }
    br.samples.push_back({target, z_prev});
    br.residuals.push_back(residual(target, z_prev));
  }
  return br;
}

cplx sum_rule_defect(std::span<const ComplexRoot> roots) {
  cplx s = 0.0;
  for (const auto& r : roots) s += (r.kind == RootKind::Pole ? 1.0 : -1.0) * double(r.multiplicity) * r.location;
  return s;
}

}  // namespace casimir
