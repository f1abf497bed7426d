#pragma once

#include <schcalc/types.hpp>

#include <string>
#include <vector>

namespace schcalc {

/// Uniform sampling of the circle of circumference `period`, sample points
/// x_j = -P/2 + j h with h = P / n_points. The grid is a pure value type;
/// coordinates are derived, not stored.
struct PeriodicGrid {
  int n_points = 0;
  double period = 0.0;

  PeriodicGrid() = default;
  PeriodicGrid(int n, double p);

  double spacing() const { return period / n_points; }
  double coordinate(int j) const { return -0.5 * period + j * spacing(); }
  Vector coordinates() const;

  /// min(|x-y|, P-|x-y|); a metric on the circle.
  double periodic_distance(double x, double y) const;

  /// Signed representative of x - y in [-P/2, P/2).
  double periodic_offset(double x, double y) const;

  int wrap_index(long j) const;

  bool operator==(const PeriodicGrid&) const = default;
};

/// Nonnegative potential sampled on a grid (units 1/length^2). An all-zero
/// potential is the free Laplacian; it is accepted here and rejected by the
/// operations that need a finite critical radius.
struct Potential {
  Vector samples;
  std::string label;
};

Potential make_potential(const PeriodicGrid& grid, Vector samples, std::string label = "");

/// Builtins: "constant:<mu>", "quadratic", "well:<depth>,<width>".
/// The well is zero on |x| < width/2 and `depth` outside.
Potential potential_from_spec(const PeriodicGrid& grid, const std::string& spec);

/// Two-column text file (coordinate, value); one row per grid point in
/// grid order, coordinates checked against the grid.
Potential potential_from_file(const PeriodicGrid& grid, const std::string& path);

/// L = -Delta_h + V as a dense symmetric matrix: diagonal 2/h^2 + V_j,
/// -1/h^2 on the two cyclic neighbors.
struct SchrodingerOperator {
  PeriodicGrid grid;
  Matrix matrix;
  Vector potential;
};

SchrodingerOperator build_operator(const PeriodicGrid& grid, const Potential& v);
SchrodingerOperator build_free_operator(const PeriodicGrid& grid);

/// Closed interval of radius r around a grid point, on the circle.
struct Ball {
  int center_index = 0;
  double radius = 0.0;
};

/// Balls centered at every grid point with dyadic radii h, 2h, 4h, ...
/// capped at P/4 so a ball never wraps onto itself.
struct BallFamily {
  std::vector<Ball> balls;
};

BallFamily dyadic_ball_family(const PeriodicGrid& grid);

/// Midpoint-rule integral over a ball: each sample carries the overlap of
/// its cell [x_j - h/2, x_j + h/2] with the interval of radius r, summed
/// over periodic images. Exact for constants: the weights add up to 2r.
/// Valid for r <= P/2.
double ball_integral(const PeriodicGrid& grid, const Vector& samples, const Ball& ball);
Complex ball_integral(const PeriodicGrid& grid, const ComplexVector& samples, const Ball& ball);

/// sup over the family of (avg_B V^q)^(1/q) / avg_B V, with the convention
/// that a ball where both averages vanish contributes 1. Returns +inf when
/// some ball has zero mean but nonzero q-mean.
double reverse_holder_constant(const PeriodicGrid& grid, const Potential& v, double q,
                               const BallFamily& balls);

/// Critical radius at one grid point: sup{ r in (0, P/2] : r^(2-n) * int_B V <= 1 },
/// located by bisection (relative tolerance 1e-10 on r), capped at P/2.
/// Only n_dim = 1 is supported. Throws RhoInfiniteError when V vanishes on
/// the whole torus.
double critical_radius(const PeriodicGrid& grid, const Potential& v, int center_index,
                       int n_dim = 1);

struct CriticalRadiusField {
  Vector values;
  int dimension_parameter = 1;
};

CriticalRadiusField critical_radius_field(const PeriodicGrid& grid, const Potential& v,
                                          int n_dim = 1);

/// Smallest empirical c >= 1 making both sides of the rho-regularity
/// inequality hold over all ordered grid pairs:
///   c^{-1} rho(x) (1 + d/rho(x))^{-k0} <= rho(y) <= c rho(x) (1 + d/rho(x))^{k0/(k0+1)}.
double check_rho_comparability(const PeriodicGrid& grid, const CriticalRadiusField& field,
                               double k0);

}  // namespace schcalc
