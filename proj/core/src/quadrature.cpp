#include "casimir/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "casimir/error.hpp"

namespace casimir {

namespace bq = boost::math::quadrature;

QuadResult integrate(const RealFn& f, double a, double b, double rel_tol, unsigned max_depth) {
  if (a == b) return {};
  double err = 0.0;
  double l1 = 0.0;
  const double v = bq::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, rel_tol, &err, &l1);
  if (!std::isfinite(v)) throw QuadratureFailure("non-finite integral");
  return {v, err};
}

QuadResult integrate_pieces(const RealFn& f, std::span<const double> points, double rel_tol,
                            unsigned max_depth) {
  QuadResult out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1] <= points[i]) continue;
    out += integrate(f, points[i], points[i + 1], rel_tol, max_depth);
  }
  return out;
}

double gauss_legendre(const RealFn& f, double a, double b, int n) {
  switch (n) {
    case 10: return bq::gauss<double, 10>::integrate(f, a, b);
    case 20: return bq::gauss<double, 20>::integrate(f, a, b);
    case 30: return bq::gauss<double, 30>::integrate(f, a, b);
    case 40: return bq::gauss<double, 40>::integrate(f, a, b);
    default: throw InvalidArgument("gauss_legendre supports n in {10, 20, 30, 40}");
  }
}

namespace {

template <int N>
GaussRule mapped_rule(double a, double b) {
  const auto& xs = bq::gauss<double, N>::abscissa();
  const auto& ws = bq::gauss<double, N>::weights();
  const double m = 0.5 * (a + b), h = 0.5 * (b - a);
  GaussRule r;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    r.x.push_back(m - h * xs[i]);
    r.w.push_back(h * ws[i]);
    if (xs[i] != 0.0) {
      r.x.push_back(m + h * xs[i]);
      r.w.push_back(h * ws[i]);
    }
  }
  return r;
}

}  // namespace

GaussRule gauss_legendre_rule(int n, double a, double b) {
  switch (n) {
    case 10: return mapped_rule<10>(a, b);
    case 20: return mapped_rule<20>(a, b);
    case 30: return mapped_rule<30>(a, b);
    case 40: return mapped_rule<40>(a, b);
    default: throw InvalidArgument("gauss_legendre supports n in {10, 20, 30, 40}");
  }
}

}  // namespace casimir
