#include <schcalc/quadrature.hpp>

#include <cmath>

namespace schcalc {

QuadratureRule log_trapezoid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_trapezoid: need 0 < lo < hi");
  if (points < 2) throw std::invalid_argument("log_trapezoid: need at least 2 points");
  QuadratureRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const double vlo = std::log(lo);
  const double dv = (std::log(hi) - vlo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double x = std::exp(vlo + i * dv);
    rule.nodes[i] = x;
    const double endpoint = (i == 0 || i == points - 1) ? 0.5 : 1.0;
    rule.weights[i] = endpoint * dv * x;  // jacobian dx = x dv
  }
  return rule;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int pairs = (n + 1) / 2;
  for (int i = 0; i < pairs; ++i) {
    // Chebyshev-style initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

QuadratureRule chunked_gauss_legendre(int n, double a, double b, double max_chunk) {
  if (!(b > a)) throw std::invalid_argument("chunked_gauss_legendre: need a < b");
  if (!(max_chunk > 0.0)) throw std::invalid_argument("chunked_gauss_legendre: bad chunk size");
  const int chunks = std::max(1, static_cast<int>(std::ceil((b - a) / max_chunk)));
  QuadratureRule rule;
  rule.nodes.resize(static_cast<Index>(chunks) * n);
  rule.weights.resize(static_cast<Index>(chunks) * n);
  const double step = (b - a) / chunks;
  for (int c = 0; c < chunks; ++c) {
    const QuadratureRule panel = gauss_legendre(n, a + c * step, a + (c + 1) * step);
    rule.nodes.segment(static_cast<Index>(c) * n, n) = panel.nodes;
    rule.weights.segment(static_cast<Index>(c) * n, n) = panel.weights;
  }
  return rule;
}

double integrate_log(const std::function<double(double)>& g, double lo, double hi, int points) {
  const QuadratureRule rule = log_trapezoid(lo, hi, points);
  double sum = 0.0;
  for (Index i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * g(rule.nodes[i]);
  return sum;
}

}  // namespace schcalc
