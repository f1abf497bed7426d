#include <schcalc/calculus.hpp>

#include <schcalc/quadrature.hpp>

#include <cmath>

namespace schcalc {

GridFunction make_grid_function(const PeriodicGrid& grid, ComplexVector samples) {
  if (samples.size() != grid.n_points)
    throw std::invalid_argument("make_grid_function: sample count does not match grid");
  return GridFunction{grid, std::move(samples)};
}

GridFunction constant_function(const PeriodicGrid& grid, Complex value) {
  return GridFunction{grid, ComplexVector::Constant(grid.n_points, value)};
}

SpectralDecomposition eigendecompose(const SchrodingerOperator& op, double tol) {
  const int n = op.grid.n_points;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(op.matrix);
  if (solver.info() != Eigen::Success)
    throw EigenSolverError("eigendecompose: solver did not converge");

  SpectralDecomposition spec;
  spec.grid = op.grid;
  spec.potential = op.potential;
  spec.eigenvalues = solver.eigenvalues();
  const double h = op.grid.spacing();
  spec.eigenvectors = solver.eigenvectors() / std::sqrt(h);

  const double scale = std::max(1.0, std::abs(spec.eigenvalues[n - 1]));
  for (int k = 0; k < n; ++k) {
    // Roundoff can push the free operator's zero mode slightly negative.
    if (spec.eigenvalues[k] < 0.0 && spec.eigenvalues[k] > -1e-10 * scale)
      spec.eigenvalues[k] = 0.0;
    // Deterministic sign: largest-magnitude component positive.
    Index imax = 0;
    spec.eigenvectors.col(k).cwiseAbs().maxCoeff(&imax);
    if (spec.eigenvectors(imax, k) < 0.0) spec.eigenvectors.col(k) = -spec.eigenvectors.col(k);
  }

  const Matrix resid = op.matrix * spec.eigenvectors -
                       spec.eigenvectors * spec.eigenvalues.asDiagonal();
  spec.residual = std::sqrt(h) * resid.colwise().norm().maxCoeff();
  Matrix gram = h * (spec.eigenvectors.transpose() * spec.eigenvectors);
  gram.diagonal().array() -= 1.0;
  spec.gram_deviation = gram.cwiseAbs().maxCoeff();

  if (spec.residual > tol * scale)
    throw EigenSolverError("eigendecompose: residual " + std::to_string(spec.residual) +
                           " exceeds tolerance");
  return spec;
}

ComplexVector spectral_coefficients(const SpectralDecomposition& spec, const GridFunction& f) {
  if (!(f.grid == spec.grid))
    throw std::invalid_argument("spectral_coefficients: grid mismatch");
  const double h = spec.grid.spacing();
  const Vector re = h * (spec.eigenvectors.transpose() * f.samples.real().matrix());
  const Vector im = h * (spec.eigenvectors.transpose() * f.samples.imag().matrix());
  ComplexVector c(re.size());
  c.real() = re;
  c.imag() = im;
  return c;
}

GridFunction synthesize(const SpectralDecomposition& spec, const ComplexVector& coefficients) {
  const Vector re = spec.eigenvectors * coefficients.real().matrix();
  const Vector im = spec.eigenvectors * coefficients.imag().matrix();
  ComplexVector out(re.size());
  out.real() = re;
  out.imag() = im;
  return GridFunction{spec.grid, std::move(out)};
}

namespace {

ComplexVector evaluate_multiplier(const SpectralDecomposition& spec,
                                  const std::function<Complex(double)>& phi) {
  ComplexVector m(spec.eigenvalues.size());
  for (Index k = 0; k < m.size(); ++k) {
    const Complex value = phi(spec.eigenvalues[k]);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
      throw std::domain_error("apply_function: phi not finite at eigenvalue " +
                              std::to_string(spec.eigenvalues[k]));
    m[k] = value;
  }
  return m;
}

GridFunction apply_multiplier(const SpectralDecomposition& spec, const ComplexVector& m,
                              const GridFunction& f) {
  const ComplexVector c = spectral_coefficients(spec, f);
  return synthesize(spec, m.cwiseProduct(c));
}

Matrix spectral_kernel(const SpectralDecomposition& spec, const Vector& weights) {
  return spec.eigenvectors * weights.asDiagonal() * spec.eigenvectors.transpose();
}

double sqrt_nonneg(double lambda) { return std::sqrt(std::max(lambda, 0.0)); }

}  // namespace

GridFunction apply_function(const SpectralDecomposition& spec,
                            const std::function<Complex(double)>& phi, const GridFunction& f) {
  return apply_multiplier(spec, evaluate_multiplier(spec, phi), f);
}

GridFunction heat_apply(const SpectralDecomposition& spec, double t, const GridFunction& f) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat_apply: need t >= 0");
  return apply_function(spec, [t](double l) { return std::exp(-t * l); }, f);
}

Matrix heat_kernel(const SpectralDecomposition& spec, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel: need t > 0");
  return spectral_kernel(spec, (-t * spec.eigenvalues.array()).exp().matrix());
}

GridFunction poisson_spectral(const SpectralDecomposition& spec, double t,
                              const GridFunction& f) {
  if (!(t >= 0.0)) throw std::invalid_argument("poisson_spectral: need t >= 0");
  return apply_function(spec, [t](double l) { return std::exp(-t * sqrt_nonneg(l)); }, f);
}

GridFunction classical_poisson_apply(const SpectralDecomposition& free_spec, double t,
                                     const GridFunction& f) {
  return poisson_spectral(free_spec, t, f);
}

Matrix poisson_kernel(const SpectralDecomposition& spec, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("poisson_kernel: need t > 0");
  Vector w(spec.eigenvalues.size());
  for (Index k = 0; k < w.size(); ++k) w[k] = std::exp(-t * sqrt_nonneg(spec.eigenvalues[k]));
  return spectral_kernel(spec, w);
}

Matrix q_kernel(const SpectralDecomposition& spec, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("q_kernel: need t > 0");
  Vector w(spec.eigenvalues.size());
  for (Index k = 0; k < w.size(); ++k) {
    const double l = spec.eigenvalues[k];
    w[k] = -t * t * l * std::exp(-t * t * l);
  }
  return spectral_kernel(spec, w);
}

GridFunction poisson_subordination(const SpectralDecomposition& spec, double t,
                                   const GridFunction& f, int quad_points, double accuracy) {
  if (!(t > 0.0)) throw std::invalid_argument("poisson_subordination: need t > 0");
  const double lambda0 = std::max(spec.eigenvalues[0], 0.0);
  // Tail budgets: e^{-u} past u_hi, heat decay e^{-(t^2/4u) lambda_0} below u_lo.
  const double u_lo = std::clamp(t * t * lambda0 / 180.0, 1e-24, 0.25);
  const double u_hi = 50.0;
  const QuadratureRule rule = log_trapezoid(u_lo, u_hi, quad_points);

  const double inv_sqrt_pi = 1.0 / std::sqrt(kPi);
  ComplexVector m(spec.eigenvalues.size());
  double worst = 0.0;
  for (Index k = 0; k < m.size(); ++k) {
    const double l = std::max(spec.eigenvalues[k], 0.0);
    double sum = 0.0;
    for (Index i = 0; i < rule.nodes.size(); ++i) {
      const double u = rule.nodes[i];
      sum += rule.weights[i] * inv_sqrt_pi * std::exp(-u - t * t * l / (4.0 * u)) /
             std::sqrt(u);
    }
    const double exact = std::exp(-t * std::sqrt(l));
    worst = std::max(worst, std::abs(sum - exact));
    m[k] = Complex(sum, 0.0);
  }
  if (worst > accuracy)
    throw QuadratureError("poisson_subordination: deviation " + std::to_string(worst) +
                          " from the spectral oracle exceeds declared accuracy");
  return apply_multiplier(spec, m, f);
}

FractionalOrder fractional_order(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("fractional_order: need beta > 0");
  FractionalOrder order;
  order.beta = beta;
  order.m = static_cast<int>(std::floor(beta)) + 1;
  double int_part = 0.0;
  if (std::modf(beta, &int_part) == 0.0)
    order.phase = Complex((static_cast<long long>(int_part) % 2 == 0) ? 1.0 : -1.0, 0.0);
  else
    order.phase = std::polar(1.0, kPi * beta);
  return order;
}

GridFunction frac_deriv_poisson_spectral(const SpectralDecomposition& spec,
                                         const FractionalOrder& order, double t,
                                         const GridFunction& f) {
  if (!(t > 0.0)) throw std::invalid_argument("frac_deriv_poisson_spectral: need t > 0");
  const double beta = order.beta;
  const Complex phase = order.phase;
  return apply_function(
      spec,
      [beta, phase, t](double l) {
        const double a = sqrt_nonneg(l);
        return phase * std::pow(l < 0.0 ? 0.0 : l, 0.5 * beta) * std::exp(-t * a);
      },
      f);
}

GridFunction frac_deriv_quadrature(const SpectralDecomposition& spec,
                                   const FractionalOrder& order, double t, const GridFunction& f,
                                   int quad_points, double accuracy) {
  if (!(t > 0.0)) throw std::invalid_argument("frac_deriv_quadrature: need t > 0");
  const double mb = order.m - order.beta;
  if (mb >= 1.0 - 1e-14) return frac_deriv_poisson_spectral(spec, order, t, f);

  double a_min_pos = 0.0, a_max = 0.0;
  for (Index k = 0; k < spec.eigenvalues.size(); ++k) {
    const double a = sqrt_nonneg(spec.eigenvalues[k]);
    a_max = std::max(a_max, a);
    if (a > 0.0 && (a_min_pos == 0.0 || a < a_min_pos)) a_min_pos = a;
  }
  if (a_max == 0.0) return GridFunction{spec.grid, ComplexVector::Zero(spec.grid.n_points)};

  // Low end sized so the truncated r^{m-beta} mass is negligible for every
  // mode; high end from the slowest exponential decay.
  const double r_lo = std::pow(1e-12 * mb * std::tgamma(mb), 1.0 / mb) / a_max;
  const double r_hi = 50.0 / a_min_pos + 10.0 * t;
  const QuadratureRule rule = log_trapezoid(r_lo, r_hi, quad_points);

  const Complex prefactor =
      std::polar(1.0, -kPi * mb) / std::tgamma(mb) * std::pow(-1.0, order.m);
  ComplexVector m(spec.eigenvalues.size());
  double worst = 0.0;
  for (Index k = 0; k < m.size(); ++k) {
    const double l = std::max(spec.eigenvalues[k], 0.0);
    const double a = std::sqrt(l);
    double sum = 0.0;
    if (a > 0.0) {
      // integrand d_t^m P_{t+r}: (-a)^m e^{-(t+r)a}; the (-1)^m sits in the
      // prefactor above.
      const double am = std::pow(a, order.m);
      for (Index i = 0; i < rule.nodes.size(); ++i) {
        const double r = rule.nodes[i];
        sum += rule.weights[i] * std::pow(r, mb - 1.0) * am * std::exp(-(t + r) * a);
      }
    }
    const Complex approx = prefactor * sum;
    const Complex exact = order.phase * std::pow(l, 0.5 * order.beta) * std::exp(-t * a);
    worst = std::max(worst, std::abs(approx - exact));
    m[k] = approx;
  }
  if (worst > accuracy)
    throw QuadratureError("frac_deriv_quadrature: deviation " + std::to_string(worst) +
                          " from the spectral oracle exceeds declared accuracy");
  return apply_multiplier(spec, m, f);
}

GridFunction frac_power_neg(const SpectralDecomposition& spec, double sigma,
                            const GridFunction& f, int quad_points, double accuracy) {
  if (!(sigma > 0.0 && sigma < 2.0))
    throw std::invalid_argument("frac_power_neg: need sigma in (0, 2)");
  const double lambda0 = spec.eigenvalues[0];
  if (!(lambda0 > 1e-12))
    throw std::invalid_argument("frac_power_neg: lambda_0 too small, the s tail diverges");
  const double a_min = std::sqrt(lambda0);
  const double a_max = std::sqrt(spec.eigenvalues[spec.eigenvalues.size() - 1]);

  const double s_lo = std::pow(1e-12 * sigma * std::tgamma(sigma), 1.0 / sigma) / a_max;
  const double s_hi = 60.0 / a_min;
  const QuadratureRule rule = log_trapezoid(s_lo, s_hi, quad_points);

  const double inv_gamma = 1.0 / std::tgamma(sigma);
  ComplexVector m(spec.eigenvalues.size());
  double worst = 0.0, scale = 0.0;
  for (Index k = 0; k < m.size(); ++k) {
    const double a = std::sqrt(spec.eigenvalues[k]);
    double sum = 0.0;
    for (Index i = 0; i < rule.nodes.size(); ++i) {
      const double s = rule.nodes[i];
      sum += rule.weights[i] * std::pow(s, sigma - 1.0) * std::exp(-s * a);
    }
    const double approx = inv_gamma * sum;
    const double exact = std::pow(a, -sigma);
    scale = std::max(scale, std::abs(exact));
    worst = std::max(worst, std::abs(approx - exact));
    m[k] = Complex(approx, 0.0);
  }
  if (worst > accuracy * std::max(1.0, scale))
    throw QuadratureError("frac_power_neg: deviation " + std::to_string(worst) +
                          " from the spectral oracle exceeds declared accuracy");
  return apply_multiplier(spec, m, f);
}

GridFunction frac_power_pos(const SpectralDecomposition& spec, double sigma,
                            const GridFunction& f, int quad_points, double accuracy) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("frac_power_pos: need sigma in (0, 1)");
  const double lambda0 = spec.eigenvalues[0];
  if (!(lambda0 > 1e-12))
    throw std::invalid_argument("frac_power_pos: lambda_0 too small, the s tail diverges");
  const double a_min = std::sqrt(lambda0);
  const double a_max = std::sqrt(spec.eigenvalues[spec.eigenvalues.size() - 1]);

  const double gamma_neg = std::tgamma(-sigma);  // negative on (0, 1)
  const double s_lo =
      std::pow(1e-12 * (1.0 - sigma) * std::abs(gamma_neg), 1.0 / (1.0 - sigma)) / a_max;
  // The -1 part of the integrand decays only like s^{-sigma}, so the upper
  // cutoff must sit where that has died, not merely past the semigroup.
  const double s_hi = std::max(std::pow(10.0, 10.0 / sigma), 40.0 / a_min);
  const QuadratureRule rule = log_trapezoid(s_lo, s_hi, quad_points);
  // Past s_hi the integrand is -f s^{-1-sigma} up to exponentially small
  // terms; that tail integrates to -f s_hi^{-sigma}/sigma.
  const double tail = -std::pow(s_hi, -sigma) / sigma;

  ComplexVector m(spec.eigenvalues.size());
  double worst = 0.0, scale = 0.0;
  for (Index k = 0; k < m.size(); ++k) {
    const double a = std::sqrt(spec.eigenvalues[k]);
    double sum = tail;
    for (Index i = 0; i < rule.nodes.size(); ++i) {
      const double s = rule.nodes[i];
      sum += rule.weights[i] * std::pow(s, -1.0 - sigma) * std::expm1(-s * a);
    }
    const double approx = sum / gamma_neg;
    const double exact = std::pow(a, sigma);
    scale = std::max(scale, std::abs(exact));
    worst = std::max(worst, std::abs(approx - exact));
    m[k] = Complex(approx, 0.0);
  }
  if (worst > accuracy * std::max(1.0, scale))
    throw QuadratureError("frac_power_pos: deviation " + std::to_string(worst) +
                          " from the spectral oracle exceeds declared accuracy");
  return apply_multiplier(spec, m, f);
}

GridFunction laplace_multiplier(const SpectralDecomposition& spec, const LaplaceSymbol& symbol,
                                const GridFunction& f, int quad_points, double accuracy) {
  if (!symbol.a) throw std::invalid_argument("laplace_multiplier: empty symbol");
  const double lambda0 = spec.eigenvalues[0];
  if (!(lambda0 > 1e-12)) throw std::invalid_argument("laplace_multiplier: need lambda_0 > 0");
  const double a_min = std::sqrt(lambda0);

  const Index n = spec.eigenvalues.size();
  ComplexVector m(n);
  double worst = 0.0;
  for (Index k = 0; k < n; ++k) {
    const double root = std::sqrt(spec.eigenvalues[k]);

    // Route 1: substitute w = s sqrt(lambda); m = int_0^inf e^{-w} a(w/root) dw
    // on pieces split at the declared jumps, chunked Gauss-Legendre per piece.
    const double w_cap = 45.0;
    std::vector<double> w_edges{0.0};
    for (double b : symbol.breakpoints) {
      const double w = b * root;
      if (w > 0.0 && w < w_cap) w_edges.push_back(w);
    }
    w_edges.push_back(w_cap);
    std::sort(w_edges.begin(), w_edges.end());
    double route1 = 0.0;
    for (std::size_t p = 0; p + 1 < w_edges.size(); ++p) {
      if (w_edges[p + 1] - w_edges[p] < 1e-300) continue;
      const QuadratureRule rule = chunked_gauss_legendre(24, w_edges[p], w_edges[p + 1], 4.0);
      for (Index i = 0; i < rule.nodes.size(); ++i)
        route1 += rule.weights[i] * std::exp(-rule.nodes[i]) * symbol.a(rule.nodes[i] / root);
    }

    // Route 2: -int d/ds P_s a(s) ds = int root e^{-s root} a(s) ds on an
    // independent per-piece log-trapezoid in s.
    std::vector<double> s_edges;
    const double s_hi = 50.0 / a_min;
    s_edges.push_back(std::min(1e-10 / root, s_hi * 1e-12));
    for (double b : symbol.breakpoints)
      if (b > s_edges.front() && b < s_hi) s_edges.push_back(b);
    s_edges.push_back(s_hi);
    std::sort(s_edges.begin(), s_edges.end());
    const int pieces = static_cast<int>(s_edges.size()) - 1;
    double route2 = 0.0;
    for (int p = 0; p < pieces; ++p) {
      const int pts = std::max(quad_points, 128);
      const double dv = std::log(s_edges[p + 1] / s_edges[p]) / (pts - 1);
      const double v0 = std::log(s_edges[p]);
      Vector g(pts);  // log-space integrand s * root * e^{-s root} a(s)
      for (int i = 0; i < pts; ++i) {
        const double s = std::exp(v0 + i * dv);
        // sample the symbol strictly inside the piece so a jump sitting on
        // the edge is attributed to exactly one side
        double s_eval = s;
        if (i == 0) s_eval = s * (1.0 + 1e-9);
        if (i == pts - 1) s_eval = s * (1.0 - 1e-9);
        g[i] = s * root * std::exp(-s * root) * symbol.a(s_eval);
      }
      double sum = 0.5 * (g[0] + g[pts - 1]);
      for (int i = 1; i < pts - 1; ++i) sum += g[i];
      // Gregory endpoint correction: the piece edges carry nonzero integrand
      // (a jump may sit right there), so correct the h^2 Euler-Maclaurin term.
      const double dleft = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * dv);
      const double dright = (3.0 * g[pts - 1] - 4.0 * g[pts - 2] + g[pts - 3]) / (2.0 * dv);
      route2 += dv * sum - dv * dv / 12.0 * (dright - dleft);
    }

    worst = std::max(worst, std::abs(route1 - route2));
    m[k] = Complex(route1, 0.0);
  }
  if (worst > accuracy * std::max(1.0, symbol.sup_bound))
    throw QuadratureError("laplace_multiplier: routes disagree by " + std::to_string(worst));
  return apply_multiplier(spec, m, f);
}

TimeGrid log_time_grid(double t_min, double t_max, int count) {
  if (!(t_min > 0.0) || !(t_max > t_min))
    throw std::invalid_argument("log_time_grid: need 0 < t_min < t_max");
  if (count < 2) throw std::invalid_argument("log_time_grid: need at least 2 points");
  TimeGrid grid;
  grid.points.resize(count);
  grid.dlog = std::log(t_max / t_min) / (count - 1);
  for (int i = 0; i < count; ++i) grid.points[i] = t_min * std::exp(i * grid.dlog);
  grid.points[count - 1] = t_max;
  return grid;
}

TimeGrid default_time_grid(const PeriodicGrid& grid) {
  const double scale = grid.period / (2.0 * kPi);
  return log_time_grid(1e-3 * scale, 10.0 * scale, 64);
}

double ConstantPotentialSpectrum::mode_eigenvalue(long q) const {
  const double h = grid.spacing();
  const double s = std::sin(kPi * static_cast<double>(q) / grid.n_points);
  return 4.0 / (h * h) * s * s + mu;
}

ComplexVector ConstantPotentialSpectrum::coefficients(const ComplexVector& f) const {
  const int n = grid.n_points;
  if (f.size() != n)
    throw std::invalid_argument("ConstantPotentialSpectrum: sample count mismatch");
  const double w = grid.spacing() / std::sqrt(grid.period);
  ComplexVector c(n);
  for (Index i = 0; i < n; ++i) {
    const long q = mode_of_index(i);
    Complex sum{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      const double angle = -2.0 * kPi * q * grid.coordinate(j) / grid.period;
      sum += f[j] * std::polar(1.0, angle);
    }
    c[i] = w * sum;
  }
  return c;
}

ComplexVector ConstantPotentialSpectrum::synthesize(const ComplexVector& coefficients) const {
  const int n = grid.n_points;
  const double norm = 1.0 / std::sqrt(grid.period);
  ComplexVector f = ComplexVector::Zero(n);
  for (Index i = 0; i < coefficients.size(); ++i) {
    const long q = mode_of_index(i);
    if (coefficients[i] == Complex(0.0, 0.0)) continue;
    for (int j = 0; j < n; ++j) {
      const double angle = 2.0 * kPi * q * grid.coordinate(j) / grid.period;
      f[j] += coefficients[i] * norm * std::polar(1.0, angle);
    }
  }
  return f;
}

Complex ConstantPotentialSpectrum::apply_at(const std::function<Complex(double)>& phi,
                                            const ComplexVector& coefficients,
                                            int point_index) const {
  const double x = grid.coordinate(point_index);
  const double norm = 1.0 / std::sqrt(grid.period);
  Complex sum{0.0, 0.0};
  for (Index i = 0; i < coefficients.size(); ++i) {
    const long q = mode_of_index(i);
    const double angle = 2.0 * kPi * q * x / grid.period;
    sum += phi(mode_eigenvalue(q)) * coefficients[i] * norm * std::polar(1.0, angle);
  }
  return sum;
}

}  // namespace schcalc
