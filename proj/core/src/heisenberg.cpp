#include "optomech/heisenberg.hpp"

#include <algorithm>
#include <cmath>

#include "optomech/errors.hpp"

namespace optomech {

namespace {
constexpr Complex kI{0.0, 1.0};
}

double HeisenbergCoeffs::conjugacy_defect() const {
  return std::max({std::abs(f4 - std::conj(f1)), std::abs(f5 - std::conj(f2)),
                   std::abs(f6 - std::conj(f3))});
}

HeisenbergCoeffs linear_heisenberg(const SystemParams& params, int n, double t) {
  const Complex rot = std::exp(kI * params.omega_m * t);
  const Complex d = linear_displacement(params, n, t);
  HeisenbergCoeffs f;
  f.f1 = rot;
  f.f2 = 0.0;
  f.f3 = std::conj(d);
  f.f4 = std::conj(rot);
  f.f5 = 0.0;
  f.f6 = d;
  f.time = t;
  f.n = n;
  return f;
}

HeisenbergCoeffs heisenberg_coeffs(const CoefficientTrajectory& traj, size_t index) {
  if (index >= traj.coeffs.size())
    throw ParameterError("trajectory index out of range");
  const auto& c = traj.coeffs[index];
  const double t = traj.t[index];
  HeisenbergCoeffs f;
  f.time = t;
  f.n = traj.n;

  if (traj.scenario == CouplingScenario::quadratic) {
    // slots: (b1, b2, b3, b4) on (b†², N, b², I)
    const Complex em = std::exp(-c[1]);
    f.f1 = em;
    f.f2 = -2.0 * c[2] * em;
    f.f3 = 0.0;
    f.f4 = std::exp(c[1]) - 4.0 * c[0] * c[2] * em;
    f.f5 = 2.0 * c[0] * em;
    f.f6 = 0.0;
    return f;
  }

  // slots: (a1..a6) on (b†², b†, N, b, b², I); undo the wm N̂ frame.
  const Complex rot = std::exp(kI * traj.params.omega_m * t);
  const Complex em = std::exp(-c[2]);
  f.f1 = rot * em;
  f.f2 = -2.0 * c[4] * rot * em;
  f.f3 = -c[3] * rot * em;
  f.f4 = std::conj(rot) * (std::exp(c[2]) - 4.0 * c[0] * c[4] * em);
  f.f5 = 2.0 * c[0] * std::conj(rot) * em;
  f.f6 = std::conj(rot) * (c[1] - 2.0 * c[0] * c[3] * em);
  return f;
}

HeisenbergCoeffs heisenberg_coeffs_at(const CoefficientTrajectory& traj, double time) {
  return heisenberg_coeffs(traj, traj.index_of(time));
}

}  // namespace optomech
