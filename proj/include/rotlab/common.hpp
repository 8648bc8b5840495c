#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace rotlab {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vectord = Vector<double>;
using Matrixd = Matrix<double>;

/// Thrown when a caller violates a documented precondition.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a point lies outside the domain of an operator
/// (e.g. the origin for a weight with a derivative singularity).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Thrown when the radial tail of an integrand keeps accumulating mass,
/// i.e. the requested measure or integral is not finite.
struct DivergentMeasure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Log-spaced grid of `count` points on [lo, hi], lo > 0.
template <typename Scalar = double>
std::vector<Scalar> log_spaced(Scalar lo, Scalar hi, int count) {
  if (!(lo > 0) || !(hi > lo) || count < 2) throw InvalidInput("log_spaced: need 0 < lo < hi, count >= 2");
  std::vector<Scalar> g(count);
  const Scalar llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    g[i] = std::exp(llo + (lhi - llo) * Scalar(i) / Scalar(count - 1));
  return g;
}

/// Uniform grid a, a+h, ..., b with `count` points.
template <typename Scalar = double>
std::vector<Scalar> linear_spaced(Scalar a, Scalar b, int count) {
  if (count < 2) throw InvalidInput("linear_spaced: count >= 2");
  std::vector<Scalar> g(count);
  for (int i = 0; i < count; ++i) g[i] = a + (b - a) * Scalar(i) / Scalar(count - 1);
  return g;
}

/// Second central differences of samples on a uniform grid, divided by h^2.
/// Output has size n-2; entry i estimates the second derivative at grid point i+1.
template <typename Scalar = double>
std::vector<Scalar> second_differences(const std::vector<Scalar>& phi, Scalar h) {
  if (phi.size() < 3) throw InvalidInput("second_differences: need at least 3 samples");
  std::vector<Scalar> d(phi.size() - 2);
  for (size_t i = 1; i + 1 < phi.size(); ++i)
    d[i - 1] = (phi[i + 1] - 2 * phi[i] + phi[i - 1]) / (h * h);
  return d;
}

}  // namespace rotlab
