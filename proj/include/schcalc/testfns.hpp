#pragma once

#include <schcalc/calculus.hpp>

#include <string>
#include <vector>

namespace schcalc {

/// Parsed description of a named test function, e.g. "weierstrass:K=8",
/// "holder_cusp:alpha=0.5", "log_bump", "eigen_mode:k=3",
/// "random_smooth:seed=42,cutoff=16".
struct TestFunctionSpec {
  enum class Kind { weierstrass, log_bump, holder_cusp, eigen_mode, random_smooth };
  Kind kind = Kind::holder_cusp;
  int terms = 4;      // weierstrass K
  double alpha = 0.5; // holder_cusp exponent
  int mode = 1;       // eigen_mode index
  unsigned long seed = 1;
  int cutoff = 8;     // random_smooth band limit
};

TestFunctionSpec parse_test_function(const std::string& text);
std::string to_string(const TestFunctionSpec& spec);

/// Truncated lacunary series sum_{k=1}^{K} 2^{-k} e^{2 pi i 2^k x}.
/// Needs an integer period (the function is 1-periodic) and 2^K <= N/4 so
/// the top mode is resolvable.
GridFunction weierstrass(const PeriodicGrid& grid, int terms);

/// Integer mode frequencies 2^k P and coefficients 2^{-k} of the series in
/// e^{2 pi i q x / P}, used by the constant-potential fast path.
std::vector<std::pair<long, double>> weierstrass_modes(const PeriodicGrid& grid, int terms);

/// max(log(1/|x|), 0): supported in [-1, 1], BMO but not Hoelder. A node at
/// exactly x = 0 takes the value log(2/h). Needs P >= 4.
GridFunction log_bump(const PeriodicGrid& grid);

/// periodic_distance(x, 0)^alpha: a canonical member of the adapted
/// Hoelder class with seminorm exactly 1.
GridFunction holder_cusp(const PeriodicGrid& grid, double alpha);

/// k-th eigenvector as a grid function (unit h-weighted L2 norm).
GridFunction eigen_mode(const SpectralDecomposition& spec, int k);

/// Band-limited real random function: Gaussian mode amplitudes up to the
/// cutoff frequency, normalized to unit L2 norm. Reproducible from the
/// seed independently of the standard library's distributions.
GridFunction random_smooth(const PeriodicGrid& grid, unsigned long seed, int cutoff);

/// Materialize a parsed spec on a grid; eigen_mode needs the decomposition.
GridFunction build_test_function(const TestFunctionSpec& spec, const PeriodicGrid& grid,
                                 const SpectralDecomposition* decomposition = nullptr);

}  // namespace schcalc
