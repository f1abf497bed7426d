#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace schcalc {

using Real = double;
using Complex = std::complex<double>;
using Index = Eigen::Index;

using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// A quadrature route failed its accuracy contract against the spectral oracle.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The critical radius is unbounded (V vanishes identically around a point).
struct RhoInfiniteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The dense eigensolver did not meet its residual tolerance.
struct EigenSolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration (bad flags, unknown suite, missing file).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace schcalc
