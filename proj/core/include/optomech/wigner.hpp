#pragma once

#include <span>
#include <vector>

#include "optomech/fock.hpp"

namespace optomech {

/// Wigner quasiprobability sampled on a rectangular (x, p) grid with the
/// convention X = (b̂+b̂†)/√2: the vacuum gives W(x,p) = e^{-x²-p²}/π,
/// ∫∫ W dx dp = 1, and |W| ≤ 1/π.
struct WignerGrid {
  std::vector<double> x_axis;
  std::vector<double> p_axis;
  /// values(i, j) = W(x_axis[i], p_axis[j]).
  Eigen::MatrixXd values;
  double cell_area = 0.0;

  double integral() const { return values.sum() * cell_area; }
  double min_value() const { return values.minCoeff(); }
  double max_value() const { return values.maxCoeff(); }
};

/// Uniformly spaced axis with `count` points from lo to hi inclusive.
std::vector<double> uniform_axis(double lo, double hi, int count);

/// Evaluate W(x,p) = (1/π) Tr[ρ D(γ) Π] with γ = √2 (x+ip) and Π the parity
/// operator, expanding the displacement matrix elements in generalized
/// Laguerre polynomials (upward recurrence, log-space factorial prefactors).
/// Warns when the grid integral misses the trace by more than 2e-2.
WignerGrid wigner(const DensityMatrix& rho, std::span<const double> x_axis,
                  std::span<const double> p_axis);

/// Position density <x|ρ|x> from the oscillator eigenfunction expansion;
/// the p-marginal of the Wigner function must reproduce it.
std::vector<double> position_density(const DensityMatrix& rho, std::span<const double> x_axis);

}  // namespace optomech
