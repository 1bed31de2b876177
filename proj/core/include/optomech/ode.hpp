#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "optomech/fock.hpp"

namespace optomech {

using CVec = std::vector<Complex>;
/// dx/dt = rhs(x, t), written into dxdt.
using OdeRhs = std::function<void(const CVec& x, CVec& dxdt, double t)>;
/// Called with the dense-output solution at each requested time.
using OdeObserver = std::function<void(const CVec& x, double t)>;

enum class StepperKind {
  dopri5,  ///< 5(4) Dormand-Prince, sampled through its dense-output interpolant
  rkf78    ///< 7(8) Fehlberg, steps clamped to land exactly on every sample time
};

struct OdeOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  double initial_dt = 1e-3;
  StepperKind stepper = StepperKind::dopri5;
  /// Optional hook applied to the live state after every accepted step
  /// (used for recorded renormalization). Return true if the state was
  /// modified so the stepper restarts from it.
  std::function<bool(CVec& x, double t)> post_step;
};

/// Integrate with an adaptive embedded Runge-Kutta scheme and sample the
/// solution at `times`, which must be strictly increasing. Integration
/// starts at times.front() from `state0`. The default dopri5 stepper samples
/// through its dense-output interpolant; rkf78 lands on the sample times by
/// clamping steps (higher order, preferred for long high-accuracy runs).
/// Throws IntegrationError when the controller cannot make progress or the
/// state turns non-finite.
void integrate_at_times(const OdeRhs& rhs, const CVec& state0,
                        std::span<const double> times, const OdeObserver& emit,
                        const OdeOptions& opts = {});

/// Classical fixed-step RK4 over the uniform grid {t0 + k h}. Used by the
/// step-halving convergence checks and benchmarks.
void integrate_fixed_rk4(const OdeRhs& rhs, CVec& state, double t0, double t1,
                         double h, const OdeObserver& emit = nullptr);

}  // namespace optomech
