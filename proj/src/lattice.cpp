#include <schcalc/lattice.hpp>

#include <schcalc/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace schcalc {

PeriodicGrid::PeriodicGrid(int n, double p) : n_points(n), period(p) {
  if (n_points < 16) throw std::invalid_argument("PeriodicGrid: need at least 16 points");
  if (!(period > 0.0)) throw std::invalid_argument("PeriodicGrid: period must be positive");
}

Vector PeriodicGrid::coordinates() const {
  Vector x(n_points);
  for (int j = 0; j < n_points; ++j) x[j] = coordinate(j);
  return x;
}

double PeriodicGrid::periodic_distance(double x, double y) const {
  double d = std::fmod(std::abs(x - y), period);
  return std::min(d, period - d);
}

double PeriodicGrid::periodic_offset(double x, double y) const {
  double d = std::fmod(x - y, period);
  if (d < -0.5 * period) d += period;
  if (d >= 0.5 * period) d -= period;
  return d;
}

int PeriodicGrid::wrap_index(long j) const {
  long m = j % n_points;
  if (m < 0) m += n_points;
  return static_cast<int>(m);
}

Potential make_potential(const PeriodicGrid& grid, Vector samples, std::string label) {
  if (samples.size() != grid.n_points)
    throw std::invalid_argument("make_potential: sample count does not match grid");
  for (Index j = 0; j < samples.size(); ++j)
    if (!(samples[j] >= 0.0)) throw std::invalid_argument("make_potential: negative sample");
  return Potential{std::move(samples), std::move(label)};
}

Potential potential_from_spec(const PeriodicGrid& grid, const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  Vector v(grid.n_points);
  if (kind == "constant") {
    const double mu = args.empty() ? 1.0 : std::stod(args);
    if (mu < 0.0) throw std::invalid_argument("potential_from_spec: constant must be >= 0");
    v.setConstant(mu);
  } else if (kind == "quadratic") {
    for (int j = 0; j < grid.n_points; ++j) {
      const double x = grid.coordinate(j);
      v[j] = x * x;
    }
  } else if (kind == "well") {
    std::istringstream in(args);
    double depth = 1.0, width = 0.0;
    char comma = ',';
    if (!(in >> depth >> comma >> width) || depth <= 0.0 || width <= 0.0 ||
        width >= grid.period)
      throw std::invalid_argument("potential_from_spec: expected well:<depth>,<width>");
    for (int j = 0; j < grid.n_points; ++j)
      v[j] = std::abs(grid.coordinate(j)) < 0.5 * width ? 0.0 : depth;
  } else {
    throw std::invalid_argument("potential_from_spec: unknown kind '" + kind + "'");
  }
  return make_potential(grid, std::move(v), spec);
}

Potential potential_from_file(const PeriodicGrid& grid, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("potential_from_file: cannot open " + path);
  Vector v(grid.n_points);
  const double coord_tol = 1e-9 * grid.period;
  int row = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    double x = 0.0, val = 0.0;
    if (!(ls >> x >> val)) throw std::invalid_argument("potential_from_file: bad row " + line);
    if (row >= grid.n_points) throw std::invalid_argument("potential_from_file: too many rows");
    if (std::abs(x - grid.coordinate(row)) > coord_tol)
      throw std::invalid_argument("potential_from_file: coordinate mismatch at row " +
                                  std::to_string(row));
    v[row++] = val;
  }
  if (row != grid.n_points) throw std::invalid_argument("potential_from_file: too few rows");
  return make_potential(grid, std::move(v), "file:" + path);
}

namespace {

Matrix laplacian_plus(const PeriodicGrid& grid, const Vector& v) {
  const int n = grid.n_points;
  const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
  Matrix m = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    m(j, j) = 2.0 * inv_h2 + v[j];
    m(j, grid.wrap_index(j + 1)) = -inv_h2;
    m(j, grid.wrap_index(j - 1)) = -inv_h2;
  }
  return m;
}

}  // namespace

SchrodingerOperator build_operator(const PeriodicGrid& grid, const Potential& v) {
  if (v.samples.size() != grid.n_points)
    throw std::invalid_argument("build_operator: grid/potential size mismatch");
  return SchrodingerOperator{grid, laplacian_plus(grid, v.samples), v.samples};
}

SchrodingerOperator build_free_operator(const PeriodicGrid& grid) {
  Vector zero = Vector::Zero(grid.n_points);
  return SchrodingerOperator{grid, laplacian_plus(grid, zero), std::move(zero)};
}

BallFamily dyadic_ball_family(const PeriodicGrid& grid) {
  BallFamily family;
  const double cap = 0.25 * grid.period;
  for (double r = grid.spacing(); r <= cap * (1.0 + 1e-12); r *= 2.0)
    for (int j = 0; j < grid.n_points; ++j) family.balls.push_back(Ball{j, std::min(r, cap)});
  return family;
}

namespace {

// Cell weights of a ball: the overlap of cell_j with B, summed over
// periodic images. The weights add up to min(2r, P).
template <typename Scalar>
Scalar ball_integral_impl(const PeriodicGrid& grid,
                          const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& samples,
                          const Ball& ball) {
  if (samples.size() != grid.n_points)
    throw std::invalid_argument("ball_integral: sample count does not match grid");
  if (!(ball.radius > 0.0) || ball.radius > 0.5 * grid.period * (1.0 + 1e-12))
    throw std::invalid_argument("ball_integral: radius out of (0, P/2]");
  const double h = grid.spacing();
  const double r = ball.radius;
  const double xc = grid.coordinate(ball.center_index);
  Scalar sum{};
  bool touched = false;
  for (int j = 0; j < grid.n_points; ++j) {
    const double d = grid.periodic_offset(grid.coordinate(j), xc);
    double w = 0.0;
    for (double shift : {-grid.period, 0.0, grid.period}) {
      const double lo = std::max(d + shift - 0.5 * h, -r);
      const double hi = std::min(d + shift + 0.5 * h, r);
      if (hi > lo) w += hi - lo;
    }
    if (w > 0.0) {
      sum += w * samples[j];
      touched = true;
    }
  }
  if (!touched) throw std::invalid_argument("ball_integral: empty ball");
  return sum;
}

}  // namespace

double ball_integral(const PeriodicGrid& grid, const Vector& samples, const Ball& ball) {
  return ball_integral_impl<double>(grid, samples, ball);
}

Complex ball_integral(const PeriodicGrid& grid, const ComplexVector& samples, const Ball& ball) {
  return ball_integral_impl<Complex>(grid, samples, ball);
}

double reverse_holder_constant(const PeriodicGrid& grid, const Potential& v, double q,
                               const BallFamily& balls) {
  if (!(q > 1.0)) throw std::invalid_argument("reverse_holder_constant: need q > 1");
  if (balls.balls.empty()) throw std::invalid_argument("reverse_holder_constant: empty family");
  const Vector vq = v.samples.array().pow(q).matrix();
  double sup = 0.0;
  for (const Ball& ball : balls.balls) {
    const double measure = std::min(2.0 * ball.radius, grid.period);
    const double mean = ball_integral(grid, v.samples, ball) / measure;
    const double mean_q = ball_integral(grid, vq, ball) / measure;
    double ratio;
    if (mean == 0.0)
      ratio = mean_q == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    else
      ratio = std::pow(mean_q, 1.0 / q) / mean;
    sup = std::max(sup, ratio);
  }
  return sup;
}

double critical_radius(const PeriodicGrid& grid, const Potential& v, int center_index,
                       int n_dim) {
  if (n_dim != 1) throw std::invalid_argument("critical_radius: only n_dim = 1 is supported");
  const double r_max = 0.5 * grid.period;
  // F(r) = r^{2-n} * int_{B(x,r)} V is nondecreasing for n = 1.
  const auto value = [&](double r) {
    return r * ball_integral(grid, v.samples, Ball{center_index, r});
  };
  if (value(r_max) <= 1.0) {
    if (v.samples.maxCoeff() == 0.0)
      throw RhoInfiniteError("critical_radius: V vanishes identically, rho is unbounded");
    return r_max;
  }
  double lo = 0.0, hi = r_max;
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) <= 1.0 ? lo : hi) = mid;
  }
  return lo > 0.0 ? lo : hi;
}

CriticalRadiusField critical_radius_field(const PeriodicGrid& grid, const Potential& v,
                                          int n_dim) {
  CriticalRadiusField field;
  field.dimension_parameter = n_dim;
  field.values.resize(grid.n_points);
  parallel_for(grid.n_points,
               [&](long j) { field.values[j] = critical_radius(grid, v, static_cast<int>(j), n_dim); });
  return field;
}

double check_rho_comparability(const PeriodicGrid& grid, const CriticalRadiusField& field,
                               double k0) {
  if (field.values.size() != grid.n_points)
    throw std::invalid_argument("check_rho_comparability: field does not match grid");
  if (!(k0 >= 1.0)) throw std::invalid_argument("check_rho_comparability: need k0 >= 1");
  const int n = grid.n_points;
  Vector row_max = Vector::Ones(n);
  parallel_for(n, [&](long i) {
    const double rho_x = field.values[i];
    const double xi = grid.coordinate(static_cast<int>(i));
    double local = 1.0;
    for (int j = 0; j < n; ++j) {
      const double rho_y = field.values[j];
      const double d = grid.periodic_distance(xi, grid.coordinate(j));
      const double base = 1.0 + d / rho_x;
      local = std::max(local, rho_x * std::pow(base, -k0) / rho_y);
      local = std::max(local, rho_y / (rho_x * std::pow(base, k0 / (k0 + 1.0))));
    }
    row_max[i] = local;
  });
  return row_max.maxCoeff();
}

}  // namespace schcalc
