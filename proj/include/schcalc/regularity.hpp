#pragma once

#include <schcalc/calculus.hpp>

#include <limits>
#include <vector>

namespace schcalc {

/// Adapted Hoelder data of one function: the classical seminorm, the
/// rho-growth seminorm, and their sum.
struct HolderReport {
  double holder_seminorm = 0.0;
  double growth_seminorm = 0.0;
  double total = 0.0;
  int attaining_pair_i = 0;  // pair attaining the Hoelder sup
  int attaining_pair_j = 0;
  int attaining_point = 0;  // point attaining the growth sup
};

/// sup over grid pairs at periodic distance in (0, P/2] of
/// |f(x) - f(y)| / dist^alpha. Complex inputs contribute the modulus of
/// the difference.
double holder_seminorm(const GridFunction& f, double alpha);

/// max_j rho_j^{-alpha} |f_j|.
double rho_growth_seminorm(const GridFunction& f, double alpha, const CriticalRadiusField& rho);

HolderReport holder_report(const GridFunction& f, double alpha, const CriticalRadiusField& rho);

/// f_B: overlap-weighted midpoint average over the ball, |B| = 2r.
Complex ball_mean(const GridFunction& f, const Ball& ball);

/// Campanato norm with the rho cutoff: the oscillation condition
/// avg_B |f - f_B| <= C |B|^alpha on every ball, and the size condition
/// avg_B |f| <= C |B|^alpha on balls with r >= rho(center). Returns the
/// smallest such C over the family (n = 1, so |B|^{alpha/n} = (2r)^alpha).
double bmo_alpha_norm(const GridFunction& f, double alpha, const BallFamily& balls,
                      const CriticalRadiusField& rho);

/// F(x, t) = t^beta d_t^beta P_t f(x) sampled over grid x time grid.
SpacetimeField poisson_derivative_field(const SpectralDecomposition& spec,
                                        const FractionalOrder& order, const GridFunction& f,
                                        const TimeGrid& tgrid);

/// Empirical c_{1,beta}: max over time points of t^{-alpha} sup_x |F(x,t)|.
/// Requires field order beta > alpha.
double sup_growth_constant(const SpacetimeField& field, double alpha);

struct CarlesonBallValue {
  Ball ball;
  double value = 0.0;
  bool tent_empty = false;
};

/// Per-ball tent functionals and their supremum, [d mu_f]_{alpha, beta}.
struct CarlesonReport {
  std::vector<CarlesonBallValue> per_ball;
  double supremum = 0.0;
  Ball attaining_ball;
  int skipped_balls = 0;
};

/// Tent value of a ball B(x0, r):
///   sqrt( (1/|B|) sum_{x in B} sum_{t_i <= r} |F(x, t_i)|^2 h dlog ) / |B|^alpha,
/// |B| = 2r. Balls whose tent holds no time point are skipped and flagged.
CarlesonReport carleson_functional(const SpacetimeField& field, double alpha, double beta,
                                   const BallFamily& balls);

/// Vertical square function g_beta(f)(x) on the given time grid:
/// ( sum_i |t_i^beta d_t^beta P_{t_i} f(x)|^2 dlog )^{1/2}.
GridFunction square_function_gbeta(const SpectralDecomposition& spec, double beta,
                                   const GridFunction& f, const TimeGrid& tgrid);

/// Conical area function S_beta(f)(z) over cones of aperture 1, with the
/// cone cross-section averaged by the ball measure 2t so that
/// ||S_beta f||_2 = ||g_beta f||_2 holds in the continuum:
/// ( sum_i (dlog / (2 t_i)) sum_{dist(z,y) < t_i} h |F(y, t_i)|^2 )^{1/2}.
GridFunction area_function_sbeta(const SpectralDecomposition& spec, double beta,
                                 const GridFunction& f, const TimeGrid& tgrid);

/// int_a^b t^{2 beta} lambda^beta e^{-2 t sqrt(lambda)} dt/t by dedicated
/// high-resolution quadrature; a = 0 and b = +inf are accepted. This is the
/// per-mode time profile of |t^beta d_t^beta P_t|^2 on one eigenvector.
double gbeta_mode_integral(double beta, double lambda, double a = 0.0,
                           double b = std::numeric_limits<double>::infinity());

/// Per-mode time profile on the grid (trapezoid weights) completed by the
/// [0, t_min) and (t_max, inf) tails: the discrete stand-in for
/// int_0^inf t^{2 beta} lambda^beta e^{-2 t sqrt(lambda)} dt/t.
double gbeta_mode_profile(double beta, double lambda, const TimeGrid& tgrid);

/// ||g_beta f||_2^2 / ||f||_2^2 with the time sum taken on the given grid
/// and the missing tails completed per mode by quadrature.
double gbeta_isometry_ratio(const SpectralDecomposition& spec, double beta,
                            const GridFunction& f, const TimeGrid& tgrid);

/// max over x and strides y = s h (s in `strides`) of |f(x+y) - f(x)| / y^alpha.
double max_difference_ratio(const GridFunction& f, double alpha,
                            const std::vector<int>& strides);

/// max over x and strides of |f(x+y) + f(x-y) - 2 f(x)| / y^alpha.
double max_second_difference_ratio(const GridFunction& f, double alpha,
                                   const std::vector<int>& strides);

/// Dyadic strides 1, 2, 4, ... capped at P/4 in grid units.
std::vector<int> dyadic_strides(const PeriodicGrid& grid);

}  // namespace schcalc
