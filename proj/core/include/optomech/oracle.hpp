#pragma once

#include <functional>
#include <span>
#include <vector>

#include "optomech/fock.hpp"
#include "optomech/observables.hpp"
#include "optomech/ode.hpp"
#include "optomech/params.hpp"

namespace optomech {

/// Settings of a brute-force Schrödinger propagation.
struct SimConfig {
  int dim_field = 16;
  int dim_mech = 64;
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  /// Renormalize the state after every accepted step (recorded, not silent).
  bool renormalize = false;
  /// Largest observable shift tolerated when a dimension is doubled.
  double convergence_threshold = 1e-6;
  /// Hard cap per mode for the dim-doubling retry.
  int max_dim = 256;
};

/// Full two-mode Hamiltonian at time t (field factor leftmost):
/// H/ħ = (wc + g1 wm) n̂ + wm N̂ + 2 g1 wm n̂N̂ - g0 wm n̂(b̂+b̂†)
///       + g1 wm n̂(b̂†²+b̂²) + Omega cos(wd t)(â+â†).
FockOperator build_hamiltonian(const SystemParams& params, int dim_field, int dim_mech,
                               double t);

/// Evolved states on a time grid plus bookkeeping of the integration.
struct StateTrajectory {
  int dim_field = 0;
  int dim_mech = 0;
  std::vector<double> t;
  std::vector<ComplexVector> states;
  /// max over the grid of | ‖ψ‖ - 1 | measured before any renormalization.
  double max_norm_drift = 0.0;
  int renormalize_count = 0;

  StateVector state_at(size_t idx) const;
};

/// Integrate i dψ/dt = H(t) ψ from psi0 over t_grid (t_grid[0] = 0).
/// The Hamiltonian is applied in sparse form internally and evaluated at the
/// integrator's own stage times; dims come from psi0.
StateTrajectory propagate(const StateVector& psi0, const SystemParams& params,
                          std::span<const double> t_grid, const SimConfig& config = {});

/// Observable time series extracted from an evolved state by direct
/// index sums (no reuse of the coefficient-trajectory route).
std::vector<ObservableSeries> observables_from_state(const StateTrajectory& trajectory,
                                                     std::span<const ObservableLabel> which);

/// Reduced density matrix of one mode at grid node idx.
DensityMatrix reduced_state(const StateTrajectory& trajectory, size_t idx, Keep keep);

/// One dim-doubling stage of the convergence policy.
struct ConvergenceStep {
  int dim_field = 0;
  int dim_mech = 0;
  /// Largest pointwise change of any probe observable against the previous
  /// (coarser) stage; NaN for the first stage.
  double max_shift = 0.0;
};

struct ConvergedRun {
  StateTrajectory trajectory;
  std::vector<ConvergenceStep> steps;
};

/// Propagate with automatic dimension doubling until the probe observables
/// (phonon mean, photon mean, X mean, dX) move less than the threshold, or
/// both dims reach the cap (then a numerical failure is thrown).
/// make_psi0 rebuilds the initial state at the requested dims.
ConvergedRun propagate_converged(const std::function<StateVector(int, int)>& make_psi0,
                                 const SystemParams& params, std::span<const double> t_grid,
                                 const SimConfig& config = {});

}  // namespace optomech
