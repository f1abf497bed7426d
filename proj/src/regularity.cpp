#include <schcalc/regularity.hpp>

#include <schcalc/parallel.hpp>
#include <schcalc/quadrature.hpp>

#include <cmath>

namespace schcalc {

double holder_seminorm(const GridFunction& f, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("holder_seminorm: need alpha in (0, 1]");
  const int n = f.grid.n_points;
  Vector row_sup = Vector::Zero(n);
  parallel_for(n, [&](long i) {
    double local = 0.0;
    const double xi = f.grid.coordinate(static_cast<int>(i));
    for (int j = 0; j < static_cast<int>(i); ++j) {
      const double d = f.grid.periodic_distance(xi, f.grid.coordinate(j));
      if (d <= 0.0) continue;
      local = std::max(local, std::abs(f.samples[i] - f.samples[j]) / std::pow(d, alpha));
    }
    row_sup[i] = local;
  });
  return n ? row_sup.maxCoeff() : 0.0;
}

double rho_growth_seminorm(const GridFunction& f, double alpha, const CriticalRadiusField& rho) {
  if (rho.values.size() != f.grid.n_points)
    throw std::invalid_argument("rho_growth_seminorm: field does not match grid");
  double sup = 0.0;
  for (Index j = 0; j < f.samples.size(); ++j)
    sup = std::max(sup, std::pow(rho.values[j], -alpha) * std::abs(f.samples[j]));
  return sup;
}

HolderReport holder_report(const GridFunction& f, double alpha, const CriticalRadiusField& rho) {
  HolderReport report;
  const int n = f.grid.n_points;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      const double d = f.grid.periodic_distance(f.grid.coordinate(i), f.grid.coordinate(j));
      if (d <= 0.0) continue;
      const double r = std::abs(f.samples[i] - f.samples[j]) / std::pow(d, alpha);
      if (r > report.holder_seminorm) {
        report.holder_seminorm = r;
        report.attaining_pair_i = i;
        report.attaining_pair_j = j;
      }
    }
    const double g = std::pow(rho.values[i], -alpha) * std::abs(f.samples[i]);
    if (g > report.growth_seminorm) {
      report.growth_seminorm = g;
      report.attaining_point = i;
    }
  }
  report.total = report.holder_seminorm + report.growth_seminorm;
  return report;
}

Complex ball_mean(const GridFunction& f, const Ball& ball) {
  const double measure = std::min(2.0 * ball.radius, f.grid.period);
  return ball_integral(f.grid, f.samples, ball) / measure;
}

double bmo_alpha_norm(const GridFunction& f, double alpha, const BallFamily& balls,
                      const CriticalRadiusField& rho) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("bmo_alpha_norm: need alpha in [0, 1]");
  if (balls.balls.empty()) throw std::invalid_argument("bmo_alpha_norm: empty family");
  const Index count = static_cast<Index>(balls.balls.size());
  Vector values = Vector::Zero(count);
  parallel_for(count, [&](long b) {
    const Ball& ball = balls.balls[b];
    const double measure = std::min(2.0 * ball.radius, f.grid.period);
    const double size_factor = std::pow(measure, alpha);
    const Complex mean = ball_integral(f.grid, f.samples, ball) / measure;
    const Vector osc = (f.samples.array() - mean).abs().matrix();
    double v = ball_integral(f.grid, osc, ball) / measure / size_factor;
    if (ball.radius >= rho.values[ball.center_index]) {
      const Vector mod = f.samples.cwiseAbs();
      v = std::max(v, ball_integral(f.grid, mod, ball) / measure / size_factor);
    }
    values[b] = v;
  });
  return values.maxCoeff();
}

SpacetimeField poisson_derivative_field(const SpectralDecomposition& spec,
                                        const FractionalOrder& order, const GridFunction& f,
                                        const TimeGrid& tgrid) {
  SpacetimeField field;
  field.grid = spec.grid;
  field.times = tgrid;
  field.order_beta = order.beta;
  field.values.resize(spec.grid.n_points, tgrid.count());

  const ComplexVector c = spectral_coefficients(spec, f);
  const Index n = spec.eigenvalues.size();
  Vector roots(n), powers(n);
  for (Index k = 0; k < n; ++k) {
    const double l = std::max(spec.eigenvalues[k], 0.0);
    roots[k] = std::sqrt(l);
    powers[k] = std::pow(l, 0.5 * order.beta);
  }
  for (int i = 0; i < tgrid.count(); ++i) {
    const double t = tgrid.points[i];
    const double tb = std::pow(t, order.beta);
    ComplexVector weighted(n);
    for (Index k = 0; k < n; ++k)
      weighted[k] = order.phase * tb * powers[k] * std::exp(-t * roots[k]) * c[k];
    field.values.col(i) = synthesize(spec, weighted).samples;
  }
  return field;
}

double sup_growth_constant(const SpacetimeField& field, double alpha) {
  if (!(field.order_beta > alpha))
    throw std::invalid_argument("sup_growth_constant: need field order beta > alpha");
  double sup = 0.0;
  for (int i = 0; i < field.times.count(); ++i) {
    const double t = field.times.points[i];
    sup = std::max(sup, std::pow(t, -alpha) * field.values.col(i).cwiseAbs().maxCoeff());
  }
  return sup;
}

CarlesonReport carleson_functional(const SpacetimeField& field, double alpha, double beta,
                                   const BallFamily& balls) {
  if (std::abs(field.order_beta - beta) > 1e-12)
    throw std::invalid_argument("carleson_functional: field order does not match beta");
  CarlesonReport report;
  report.per_ball.resize(balls.balls.size());
  const double h = field.grid.spacing();
  const double dlog = field.times.dlog;
  const Index count = static_cast<Index>(balls.balls.size());

  parallel_for(count, [&](long b) {
    const Ball& ball = balls.balls[b];
    CarlesonBallValue out;
    out.ball = ball;
    int t_count = 0;
    while (t_count < field.times.count() && field.times.points[t_count] <= ball.radius)
      ++t_count;
    if (t_count == 0) {
      out.tent_empty = true;
      report.per_ball[b] = out;
      return;
    }
    const double xc = field.grid.coordinate(ball.center_index);
    double sum = 0.0;
    for (int j = 0; j < field.grid.n_points; ++j) {
      if (field.grid.periodic_distance(field.grid.coordinate(j), xc) > ball.radius) continue;
      for (int i = 0; i < t_count; ++i) sum += std::norm(field.values(j, i)) * h * dlog;
    }
    const double measure = 2.0 * ball.radius;
    out.value = std::sqrt(sum / measure) / std::pow(measure, alpha);
    report.per_ball[b] = out;
  });

  for (const CarlesonBallValue& v : report.per_ball) {
    if (v.tent_empty) {
      ++report.skipped_balls;
      continue;
    }
    if (v.value >= report.supremum) {
      report.supremum = std::max(report.supremum, v.value);
      if (v.value == report.supremum) report.attaining_ball = v.ball;
    }
  }
  return report;
}

GridFunction square_function_gbeta(const SpectralDecomposition& spec, double beta,
                                   const GridFunction& f, const TimeGrid& tgrid) {
  const SpacetimeField field =
      poisson_derivative_field(spec, fractional_order(beta), f, tgrid);
  Vector acc = Vector::Zero(spec.grid.n_points);
  for (int i = 0; i < tgrid.count(); ++i)
    acc += field.values.col(i).cwiseAbs2() * tgrid.dlog;
  ComplexVector out(acc.size());
  out.real() = acc.cwiseSqrt();
  out.imag().setZero();
  return GridFunction{spec.grid, std::move(out)};
}

GridFunction area_function_sbeta(const SpectralDecomposition& spec, double beta,
                                 const GridFunction& f, const TimeGrid& tgrid) {
  const SpacetimeField field =
      poisson_derivative_field(spec, fractional_order(beta), f, tgrid);
  const int n = spec.grid.n_points;
  const double h = spec.grid.spacing();
  Vector acc = Vector::Zero(n);
  for (int i = 0; i < tgrid.count(); ++i) {
    const double t = tgrid.points[i];
    // strict aperture-1 cone: |z - y| < t, so k h < t on each side
    const int half = std::min(static_cast<int>(std::ceil(t / h)) - 1, n / 2);
    const int width = std::min(2 * half + 1, n);
    const Vector sq = field.values.col(i).cwiseAbs2();
    // windowed periodic sums via a prefix sum
    Vector prefix(n + 1);
    prefix[0] = 0.0;
    for (int j = 0; j < n; ++j) prefix[j + 1] = prefix[j] + sq[j];
    const double total = prefix[n];
    const double weight = h * tgrid.dlog / (2.0 * t);
    for (int z = 0; z < n; ++z) {
      const int lo = z - half;
      const int hi = z + half;  // inclusive
      double window;
      if (width >= n) {
        window = total;
      } else if (lo < 0) {
        window = (prefix[hi + 1] - prefix[0]) + (prefix[n] - prefix[lo + n]);
      } else if (hi >= n) {
        window = (prefix[n] - prefix[lo]) + (prefix[hi - n + 1] - prefix[0]);
      } else {
        window = prefix[hi + 1] - prefix[lo];
      }
      acc[z] += weight * window;
    }
  }
  ComplexVector out(n);
  out.real() = acc.cwiseSqrt();
  out.imag().setZero();
  return GridFunction{spec.grid, std::move(out)};
}

double gbeta_mode_integral(double beta, double lambda, double a, double b) {
  if (!(beta > 0.0)) throw std::invalid_argument("gbeta_mode_integral: need beta > 0");
  if (lambda <= 0.0) return 0.0;
  const double root = std::sqrt(lambda);
  // integrand in t: t^{2 beta - 1} lambda^beta e^{-2 t root}
  const double lo_full = std::pow(1e-14 * 2.0 * beta * std::tgamma(2.0 * beta),
                                  1.0 / (2.0 * beta)) /
                         (2.0 * root);
  const double hi_full = (60.0 + 10.0 * beta) / (2.0 * root);
  const double lo = std::max(a, lo_full);
  const double hi = std::isfinite(b) ? std::min(b, hi_full) : hi_full;
  if (!(hi > lo)) return 0.0;
  const double pow_l = std::pow(lambda, beta);
  return integrate_log(
      [&](double t) { return std::pow(t, 2.0 * beta - 1.0) * pow_l * std::exp(-2.0 * t * root); },
      lo, hi, 1024);
}

double gbeta_mode_profile(double beta, double lambda, const TimeGrid& tgrid) {
  const double l = std::max(lambda, 0.0);
  if (l == 0.0) return 0.0;
  const double root = std::sqrt(l);
  const double pow_l = std::pow(l, beta);
  // trapezoid on the grid, exact-by-quadrature tails outside it
  double mode = 0.0;
  for (int i = 0; i < tgrid.count(); ++i) {
    const double t = tgrid.points[i];
    const double endpoint = (i == 0 || i == tgrid.count() - 1) ? 0.5 : 1.0;
    mode += endpoint * std::pow(t, 2.0 * beta) * pow_l * std::exp(-2.0 * t * root) * tgrid.dlog;
  }
  mode += gbeta_mode_integral(beta, l, 0.0, tgrid.t_min());
  mode += gbeta_mode_integral(beta, l, tgrid.t_max(), std::numeric_limits<double>::infinity());
  return mode;
}

double gbeta_isometry_ratio(const SpectralDecomposition& spec, double beta,
                            const GridFunction& f, const TimeGrid& tgrid) {
  const ComplexVector c = spectral_coefficients(spec, f);
  const double denom = c.squaredNorm();
  if (denom == 0.0) return 0.0;
  double num = 0.0;
  for (Index k = 0; k < c.size(); ++k)
    num += std::norm(c[k]) * gbeta_mode_profile(beta, spec.eigenvalues[k], tgrid);
  return num / denom;
}

std::vector<int> dyadic_strides(const PeriodicGrid& grid) {
  std::vector<int> strides;
  for (int s = 1; s <= grid.n_points / 4; s *= 2) strides.push_back(s);
  return strides;
}

double max_difference_ratio(const GridFunction& f, double alpha,
                            const std::vector<int>& strides) {
  const int n = f.grid.n_points;
  const double h = f.grid.spacing();
  double sup = 0.0;
  for (int s : strides) {
    const double y = s * h;
    if (y > 0.5 * f.grid.period) continue;
    const double denom = std::pow(y, alpha);
    Vector per_start = Vector::Zero(n);
    parallel_for(n, [&](long j) {
      per_start[j] = std::abs(f.samples[f.grid.wrap_index(j + s)] - f.samples[j]) / denom;
    });
    sup = std::max(sup, per_start.maxCoeff());
  }
  return sup;
}

double max_second_difference_ratio(const GridFunction& f, double alpha,
                                   const std::vector<int>& strides) {
  const int n = f.grid.n_points;
  const double h = f.grid.spacing();
  double sup = 0.0;
  for (int s : strides) {
    const double y = s * h;
    if (y > 0.25 * f.grid.period) continue;
    const double denom = std::pow(y, alpha);
    Vector per_start = Vector::Zero(n);
    parallel_for(n, [&](long j) {
      per_start[j] = std::abs(f.samples[f.grid.wrap_index(j + s)] +
                              f.samples[f.grid.wrap_index(j - s)] - 2.0 * f.samples[j]) /
                     denom;
    });
    sup = std::max(sup, per_start.maxCoeff());
  }
  return sup;
}

}  // namespace schcalc
