#pragma once

#include <functional>
#include <span>
#include <vector>

namespace casimir {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    error += o.error;
    return *this;
  }
};

using RealFn = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (G15/K31) over [a, b]; b may be +infinity.
/// rel_tol is relative to the L1 norm of the integrand on the interval.
QuadResult integrate(const RealFn& f, double a, double b, double rel_tol = 1e-10,
                     unsigned max_depth = 18);

/// Same, with the interval split at every interior breakpoint (points must be sorted).
QuadResult integrate_pieces(const RealFn& f, std::span<const double> points, double rel_tol = 1e-10,
                            unsigned max_depth = 18);

/// Fixed n-point Gauss-Legendre rule on [a, b] (n in {10, 20, 30, 40}).
/// Node positions do not depend on the integrand, which keeps finite differences smooth.
double gauss_legendre(const RealFn& f, double a, double b, int n = 20);

/// Nodes and weights of the same rule mapped to [a, b], for integrands that are expensive to
/// evaluate and shared between several integrals.
struct GaussRule {
  std::vector<double> x, w;
};
GaussRule gauss_legendre_rule(int n, double a, double b);

}  // namespace casimir
