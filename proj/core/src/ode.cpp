#include "optomech/ode.hpp"

#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <string>

#include "optomech/errors.hpp"

namespace optomech {

namespace odeint = boost::numeric::odeint;

namespace {

bool all_finite(const CVec& x) {
  for (const Complex& c : x) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

/// Controlled 7(8) pair without dense output: every sample time is reached
/// by clamping the step, so emitted states carry full integration order.
void run_rkf78(const OdeRhs& rhs, const CVec& state0, std::span<const double> times,
               const OdeObserver& emit, const OdeOptions& opts) {
  auto system = [&rhs](const CVec& x, CVec& dxdt, double t) {
    dxdt.resize(x.size());
    rhs(x, dxdt, t);
  };
  auto ctrl = odeint::make_controlled(opts.abs_tol, opts.rel_tol,
                                      odeint::runge_kutta_fehlberg78<CVec>());
  CVec x = state0;
  double t = times.front();
  double dt = opts.initial_dt;
  if (emit) emit(x, t);
  for (size_t next = 1; next < times.size(); ++next) {
    const double target = times[next];
    int rejects = 0;
    while (t < target) {
      const bool landing = target - t <= dt;
      double h = landing ? target - t : dt;
      if (ctrl.try_step(system, x, t, h) == odeint::fail) {
        dt = h;  // the controller shrank it
        if (++rejects > 200) {
          throw IntegrationError("step controller stalled near t = " + std::to_string(t));
        }
        continue;
      }
      rejects = 0;
      if (landing) {
        t = target;  // remove the rounding residue of the clamped step
      } else {
        dt = h;  // adopt the suggestion from an unclamped step
      }
      if (!all_finite(x)) {
        throw IntegrationError("state became non-finite near t = " + std::to_string(t));
      }
      if (opts.post_step) opts.post_step(x, t);
    }
    if (emit) emit(x, target);
  }
}

}  // namespace

void integrate_at_times(const OdeRhs& rhs, const CVec& state0,
                        std::span<const double> times, const OdeObserver& emit,
                        const OdeOptions& opts) {
  if (times.empty()) return;
  for (size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ParameterError("sample times must be strictly increasing");
    }
  }
  if (opts.stepper == StepperKind::rkf78) {
    run_rkf78(rhs, state0, times, emit, opts);
    return;
  }

  auto system = [&rhs](const CVec& x, CVec& dxdt, double t) {
    dxdt.resize(x.size());
    rhs(x, dxdt, t);
  };

  const double t0 = times.front();
  const double t_end = times.back();

  auto stepper = odeint::make_dense_output(opts.abs_tol, opts.rel_tol,
                                           odeint::runge_kutta_dopri5<CVec>());
  stepper.initialize(state0, t0, opts.initial_dt);

  size_t next = 0;
  if (emit) emit(state0, times[next]);
  ++next;

  CVec sample(state0.size());
  while (next < times.size()) {
    double t_before = stepper.current_time();
    try {
      stepper.do_step(system);
    } catch (const std::exception& e) {
      throw IntegrationError("adaptive step failed at t = " + std::to_string(t_before) +
                             ": " + e.what());
    }
    if (!all_finite(stepper.current_state())) {
      throw IntegrationError("state became non-finite near t = " +
                             std::to_string(stepper.current_time()));
    }
    // emit every grid point the last step flew over
    while (next < times.size() && times[next] <= stepper.current_time()) {
      stepper.calc_state(times[next], sample);
      if (emit) emit(sample, times[next]);
      ++next;
    }
    if (opts.post_step) {
      CVec live = stepper.current_state();
      if (opts.post_step(live, stepper.current_time())) {
        stepper.initialize(live, stepper.current_time(), stepper.current_time_step());
      }
    }
    if (stepper.current_time() >= t_end) break;
  }
}

void integrate_fixed_rk4(const OdeRhs& rhs, CVec& state, double t0, double t1,
                         double h, const OdeObserver& emit) {
  if (!(h > 0.0) || !(t1 > t0)) {
    throw ParameterError("fixed-step integration needs h > 0 and t1 > t0");
  }
  auto system = [&rhs](const CVec& x, CVec& dxdt, double t) {
    dxdt.resize(x.size());
    rhs(x, dxdt, t);
  };
  odeint::runge_kutta4<CVec> stepper;
  const auto steps = static_cast<long>(std::llround((t1 - t0) / h));
  double t = t0;
  if (emit) emit(state, t);
  for (long k = 0; k < steps; ++k) {
    stepper.do_step(system, state, t, h);
    t = t0 + (k + 1) * h;
    if (emit) emit(state, t);
  }
}

}  // namespace optomech
