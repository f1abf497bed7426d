#pragma once

#include <schcalc/types.hpp>

#include <functional>
#include <vector>

namespace schcalc {

/// Nodes and weights of a 1-D quadrature rule on some interval.
struct QuadratureRule {
  Vector nodes;
  Vector weights;
};

/// Trapezoidal rule on a log-uniform grid over [lo, hi], 0 < lo < hi.
/// Weights include the jacobian, so sum_i w_i g(x_i) approximates
/// the integral of g(x) dx. Integrands that are analytic and decaying in
/// log coordinates converge spectrally under this rule.
QuadratureRule log_trapezoid(double lo, double hi, int points);

/// Gauss-Legendre rule on [a, b]. Nodes are computed by Newton iteration
/// on the Legendre recurrence; deterministic for fixed (n, a, b).
QuadratureRule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre over [a, b], splitting into chunks of length
/// at most max_chunk so the per-panel order stays effective.
QuadratureRule chunked_gauss_legendre(int n, double a, double b, double max_chunk);

/// Integrate scalar g over [lo, hi] with a log-uniform trapezoid of the
/// given point count.
double integrate_log(const std::function<double(double)>& g, double lo, double hi, int points);

}  // namespace schcalc
