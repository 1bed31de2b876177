#pragma once

#include "optomech/fock.hpp"
#include "optomech/params.hpp"
#include "optomech/propagators.hpp"

namespace optomech {

/// Heisenberg-picture ladder map of the mechanical mode within one photon
/// sector:
///   b†(t) = f1 b† + f2 b + f3
///   b(t)  = f4 b + f5 b† + f6
/// Unitarity implies f4 = conj(f1), f5 = conj(f2), f6 = conj(f3) and the
/// symplectic identity f1 f4 - f2 f5 = 1; both are exposed as checkable
/// defects rather than enforced.
struct HeisenbergCoeffs {
  Complex f1{1.0, 0.0}, f2{0.0, 0.0}, f3{0.0, 0.0};
  Complex f4{1.0, 0.0}, f5{0.0, 0.0}, f6{0.0, 0.0};
  double time = 0.0;
  int n = 0;  ///< photon sector the map was evaluated in

  /// f1 f4 - f2 f5 - 1; zero for an exact symplectic map.
  Complex symplectic_defect() const { return f1 * f4 - f2 * f5 - 1.0; }
  /// Largest of |f4 - conj(f1)|, |f5 - conj(f2)|, |f6 - conj(f3)|.
  double conjugacy_defect() const;
};

/// Closed-form map for pure linear coupling: free rotation plus the
/// sector displacement d(n, t).
HeisenbergCoeffs linear_heisenberg(const SystemParams& params, int n, double t);

/// Map evaluated from a coefficient trajectory at grid node `index`.
/// Quadratic trajectories give f3 = f6 = 0; the six-function scenarios
/// include the frame rotation e^{+-i wm t} so the map refers to the
/// original (laboratory) ladder operators.
HeisenbergCoeffs heisenberg_coeffs(const CoefficientTrajectory& traj, size_t index);

/// Same, addressed by time (must be a grid node).
HeisenbergCoeffs heisenberg_coeffs_at(const CoefficientTrajectory& traj, double time);

}  // namespace optomech
