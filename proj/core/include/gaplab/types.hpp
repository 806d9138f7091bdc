#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace gaplab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numeric thresholds shared by every operation that has to decide a rank,
/// an invertibility, or a "these agree" question in floating point.
struct Tolerances {
  /// Relative singular-value cutoff: sigma is "zero" below rank_tol * sigma_max.
  double rank_tol = 1e-10;
  /// Largest condition number still accepted as "invertible".
  double cond_max = 1e12;
  /// Cauchy-Riemann residual threshold for holomorphy verdicts.
  double cr_tol = 1e-6;
  /// Equality threshold for gap / projector comparisons.
  double gap_tol = 1e-9;
  /// Finite-difference step magnitudes, strictly decreasing.
  std::vector<double> fd_steps{1e-3, 1e-4, 1e-5};

  void validate() const {
    if (rank_tol <= 0 || cond_max <= 0 || cr_tol <= 0 || gap_tol <= 0)
      throw std::invalid_argument("Tolerances: all thresholds must be positive");
    if (fd_steps.empty())
      throw std::invalid_argument("Tolerances: fd_steps must be nonempty");
    for (std::size_t i = 0; i < fd_steps.size(); ++i) {
      if (fd_steps[i] <= 0)
        throw std::invalid_argument("Tolerances: fd_steps must be positive");
      if (i > 0 && fd_steps[i] >= fd_steps[i - 1])
        throw std::invalid_argument("Tolerances: fd_steps must be strictly decreasing");
    }
  }
};

}  // namespace gaplab
