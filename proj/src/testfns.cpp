#include <schcalc/testfns.hpp>

#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace schcalc {

namespace {

std::map<std::string, std::string> parse_kv(const std::string& args) {
  std::map<std::string, std::string> kv;
  std::istringstream in(args);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("parse_test_function: expected key=value, got '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

}  // namespace

TestFunctionSpec parse_test_function(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const auto kv = colon == std::string::npos ? std::map<std::string, std::string>{}
                                             : parse_kv(text.substr(colon + 1));
  TestFunctionSpec spec;
  if (kind == "weierstrass") {
    spec.kind = TestFunctionSpec::Kind::weierstrass;
    if (auto it = kv.find("K"); it != kv.end()) spec.terms = std::stoi(it->second);
  } else if (kind == "log_bump") {
    spec.kind = TestFunctionSpec::Kind::log_bump;
  } else if (kind == "holder_cusp") {
    spec.kind = TestFunctionSpec::Kind::holder_cusp;
    if (auto it = kv.find("alpha"); it != kv.end()) spec.alpha = std::stod(it->second);
  } else if (kind == "eigen_mode") {
    spec.kind = TestFunctionSpec::Kind::eigen_mode;
    if (auto it = kv.find("k"); it != kv.end()) spec.mode = std::stoi(it->second);
  } else if (kind == "random_smooth") {
    spec.kind = TestFunctionSpec::Kind::random_smooth;
    if (auto it = kv.find("seed"); it != kv.end()) spec.seed = std::stoul(it->second);
    if (auto it = kv.find("cutoff"); it != kv.end()) spec.cutoff = std::stoi(it->second);
  } else {
    throw std::invalid_argument("parse_test_function: unknown kind '" + kind + "'");
  }
  return spec;
}

std::string to_string(const TestFunctionSpec& spec) {
  std::ostringstream out;
  switch (spec.kind) {
    case TestFunctionSpec::Kind::weierstrass:
      out << "weierstrass:K=" << spec.terms;
      break;
    case TestFunctionSpec::Kind::log_bump:
      out << "log_bump";
      break;
    case TestFunctionSpec::Kind::holder_cusp:
      out << "holder_cusp:alpha=" << spec.alpha;
      break;
    case TestFunctionSpec::Kind::eigen_mode:
      out << "eigen_mode:k=" << spec.mode;
      break;
    case TestFunctionSpec::Kind::random_smooth:
      out << "random_smooth:seed=" << spec.seed << ",cutoff=" << spec.cutoff;
      break;
  }
  return out.str();
}

std::vector<std::pair<long, double>> weierstrass_modes(const PeriodicGrid& grid, int terms) {
  const double p_int = std::round(grid.period);
  if (std::abs(grid.period - p_int) > 1e-12 || p_int < 1.0)
    throw std::invalid_argument("weierstrass: grid period must be a positive integer");
  if (terms < 1) throw std::invalid_argument("weierstrass: need K >= 1");
  if (std::ldexp(1.0, terms) > grid.n_points / 4.0)
    throw std::invalid_argument("weierstrass: K unresolvable, need 2^K <= N/4");
  std::vector<std::pair<long, double>> modes;
  for (int k = 1; k <= terms; ++k)
    modes.emplace_back(static_cast<long>(p_int) * (1L << k), std::ldexp(1.0, -k));
  return modes;
}

GridFunction weierstrass(const PeriodicGrid& grid, int terms) {
  const auto modes = weierstrass_modes(grid, terms);
  ComplexVector f = ComplexVector::Zero(grid.n_points);
  for (int j = 0; j < grid.n_points; ++j) {
    const double x = grid.coordinate(j);
    for (const auto& [q, coeff] : modes)
      f[j] += coeff * std::polar(1.0, 2.0 * kPi * q * x / grid.period);
  }
  return GridFunction{grid, std::move(f)};
}

GridFunction log_bump(const PeriodicGrid& grid) {
  if (grid.period < 4.0) throw std::invalid_argument("log_bump: need period P >= 4");
  ComplexVector f = ComplexVector::Zero(grid.n_points);
  const double h = grid.spacing();
  for (int j = 0; j < grid.n_points; ++j) {
    const double d = grid.periodic_distance(grid.coordinate(j), 0.0);
    if (d == 0.0)
      f[j] = std::log(2.0 / h);  // sub-grid cap of the singularity
    else if (d < 1.0)
      f[j] = -std::log(d);
  }
  return GridFunction{grid, std::move(f)};
}

GridFunction holder_cusp(const PeriodicGrid& grid, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("holder_cusp: need alpha in (0, 1]");
  ComplexVector f(grid.n_points);
  for (int j = 0; j < grid.n_points; ++j)
    f[j] = std::pow(grid.periodic_distance(grid.coordinate(j), 0.0), alpha);
  return GridFunction{grid, std::move(f)};
}

GridFunction eigen_mode(const SpectralDecomposition& spec, int k) {
  if (k < 0 || k >= spec.eigenvalues.size())
    throw std::invalid_argument("eigen_mode: index out of range");
  ComplexVector f(spec.grid.n_points);
  f.real() = spec.eigenvectors.col(k);
  f.imag().setZero();
  return GridFunction{spec.grid, std::move(f)};
}

namespace {

// Box-Muller over mt19937_64 uniforms; pinned here so results do not
// depend on the standard library's normal_distribution.
class NormalStream {
 public:
  explicit NormalStream(unsigned long seed) : rng_(seed) {}
  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 1e-300);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * kPi * u2);
    have_spare_ = true;
    return r * std::cos(2.0 * kPi * u2);
  }

 private:
  double uniform() {
    return (rng_() >> 11) * (1.0 / 9007199254740992.0);  // 53-bit mantissa
  }
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace

GridFunction random_smooth(const PeriodicGrid& grid, unsigned long seed, int cutoff) {
  if (cutoff < 1 || cutoff > grid.n_points / 2)
    throw std::invalid_argument("random_smooth: cutoff out of range");
  NormalStream noise(seed);
  ComplexVector f = ComplexVector::Zero(grid.n_points);
  const double mean = noise.next();
  for (int j = 0; j < grid.n_points; ++j) f[j] = mean;
  for (int q = 1; q <= cutoff; ++q) {
    const double a = noise.next();
    const double b = noise.next();
    for (int j = 0; j < grid.n_points; ++j) {
      const double angle = 2.0 * kPi * q * grid.coordinate(j) / grid.period;
      f[j] += a * std::cos(angle) + b * std::sin(angle);
    }
  }
  GridFunction out{grid, std::move(f)};
  const double norm = out.l2_norm();
  if (norm > 0.0) out.samples /= norm;
  return out;
}

GridFunction build_test_function(const TestFunctionSpec& spec, const PeriodicGrid& grid,
                                 const SpectralDecomposition* decomposition) {
  switch (spec.kind) {
    case TestFunctionSpec::Kind::weierstrass:
      return weierstrass(grid, spec.terms);
    case TestFunctionSpec::Kind::log_bump:
      return log_bump(grid);
    case TestFunctionSpec::Kind::holder_cusp:
      return holder_cusp(grid, spec.alpha);
    case TestFunctionSpec::Kind::eigen_mode:
      if (!decomposition)
        throw std::invalid_argument("build_test_function: eigen_mode needs a decomposition");
      return eigen_mode(*decomposition, spec.mode);
    case TestFunctionSpec::Kind::random_smooth:
      return random_smooth(grid, spec.seed, spec.cutoff);
  }
  throw std::logic_error("build_test_function: unreachable");
}

}  // namespace schcalc
