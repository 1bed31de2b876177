#include "optomech/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optomech/errors.hpp"
#include "optomech/warnings.hpp"

namespace optomech {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_grid_from_zero(std::span<const double> t_grid) {
  if (t_grid.empty()) throw ParameterError("time grid is empty");
  if (t_grid[0] != 0.0)
    throw ParameterError("time grid must start at t = 0, got " + std::to_string(t_grid[0]));
}

/// Run one of the coefficient systems over the grid and collect rows.
template <typename Rhs>
CoefficientTrajectory run_system(CouplingScenario scenario, const SystemParams& params, int n,
                                 int width, std::span<const double> t_grid, Rhs rhs,
                                 const OdeOptions& opts) {
  require_grid_from_zero(t_grid);
  CoefficientTrajectory traj;
  traj.scenario = scenario;
  traj.params = params;
  traj.n = n;
  traj.width = width;
  traj.t.assign(t_grid.begin(), t_grid.end());
  traj.coeffs.reserve(t_grid.size());

  CVec state0(static_cast<size_t>(width), Complex{0.0, 0.0});
  integrate_at_times(
      rhs, state0, t_grid,
      [&](const CVec& s, double) {
        std::array<Complex, 6> row{};
        for (int k = 0; k < width; ++k) row[static_cast<size_t>(k)] = s[static_cast<size_t>(k)];
        traj.coeffs.push_back(row);
      },
      opts);
  return traj;
}

}  // namespace

size_t CoefficientTrajectory::index_of(double time) const {
  auto it = std::lower_bound(t.begin(), t.end(), time - 1e-9);
  if (it == t.end() || std::abs(*it - time) > 1e-9 * std::max(1.0, std::abs(time)))
    throw ParameterError("time " + std::to_string(time) + " is not a node of this trajectory");
  return static_cast<size_t>(it - t.begin());
}

Complex linear_displacement(const SystemParams& params, int n, double t) {
  return params.g0 * static_cast<double>(n) * (1.0 - std::exp(-kI * params.omega_m * t));
}

LinearAlphaCoeffs linear_alpha_coeffs(const SystemParams& params, double t) {
  const double wm = params.omega_m;
  const double g0 = params.g0;
  LinearAlphaCoeffs a;
  a.alpha1 = -kI * params.omega_c * t;
  a.alpha2 = -kI * wm * t;
  a.alpha3 = g0 * (std::exp(kI * wm * t) - 1.0);
  a.alpha4 = -std::conj(a.alpha3);
  a.alpha5 = kI * g0 * g0 * (wm * t - std::sin(wm * t)) - 0.5 * std::norm(a.alpha3);
  return a;
}

std::array<double, 4> quadratic_hamiltonian_coeffs(const SystemParams& params, int n) {
  const double wm = params.omega_m;
  return {params.g1 * wm, wm * (1.0 + 2.0 * params.g1 * n), params.g1 * wm,
          (params.omega_c + params.g1 * wm) * n};
}

CoefficientTrajectory quadratic_coefficients(const SystemParams& params, int n,
                                             std::span<const double> t_grid,
                                             const OdeOptions& opts) {
  params.validate();
  const auto F = quadratic_hamiltonian_coeffs(params, n);
  auto rhs = [F](const CVec& b, CVec& dbdt, double) {
    dbdt[0] = -kI * (F[0] + 4.0 * b[0] * b[0] * F[2] + 2.0 * b[0] * F[1]);
    dbdt[1] = -kI * (F[1] + 4.0 * b[0] * F[2]);
    dbdt[2] = -kI * F[2] * std::exp(2.0 * b[1]);
    dbdt[3] = -kI * (F[3] + 2.0 * b[0] * F[2]);
  };
  return run_system(CouplingScenario::quadratic, params, n, 4, t_grid, rhs, opts);
}

void six_function_rhs(const std::array<Complex, 6>& a, std::array<Complex, 6>& dadt,
                      const std::array<Complex, 6>& h) {
  dadt[0] = -kI * (h[0] + 2.0 * a[0] * h[2] + 4.0 * a[0] * a[0] * h[4]);
  dadt[1] = -kI * (h[1] + a[1] * h[2] + 2.0 * a[0] * h[3] + 4.0 * a[0] * a[1] * h[4]);
  dadt[2] = -kI * (h[2] + 4.0 * a[0] * h[4]);
  dadt[3] = -kI * std::exp(a[2]) * (h[3] + 2.0 * a[1] * h[4]);
  dadt[4] = -kI * std::exp(2.0 * a[2]) * h[4];
  dadt[5] = -kI * (h[5] + a[1] * h[3] + (a[1] * a[1] + 2.0 * a[0]) * h[4]);
}

MechHamiltonianCoeffs linquad_hamiltonian_coeffs(const SystemParams& params, int n) {
  const double wm = params.omega_m;
  const double quad = params.g1 * wm * n;
  const double lin = -params.g0 * wm * n;
  const double sector = (params.omega_c + params.g1 * wm) * n;
  return [wm, quad, lin, sector](double t) -> std::array<Complex, 6> {
    const Complex rot = std::exp(kI * wm * t);
    return {quad * rot * rot, lin * rot,          Complex{2.0 * quad, 0.0},
            lin * std::conj(rot), quad * std::conj(rot * rot), Complex{sector, 0.0}};
  };
}

namespace {

CoefficientTrajectory run_six_function(CouplingScenario scenario, const SystemParams& params,
                                       int n, const MechHamiltonianCoeffs& h,
                                       std::span<const double> t_grid, const OdeOptions& opts) {
  auto rhs = [&h](const CVec& s, CVec& dsdt, double t) {
    std::array<Complex, 6> a{};
    std::copy_n(s.begin(), 6, a.begin());
    std::array<Complex, 6> da{};
    six_function_rhs(a, da, h(t));
    std::copy_n(da.begin(), 6, dsdt.begin());
  };
  return run_system(scenario, params, n, 6, t_grid, rhs, opts);
}

}  // namespace

CoefficientTrajectory linquad_coefficients(const SystemParams& params, int n,
                                           std::span<const double> t_grid,
                                           const OdeOptions& opts) {
  params.validate();
  return run_six_function(CouplingScenario::linquad, params, n,
                          linquad_hamiltonian_coeffs(params, n), t_grid, opts);
}

namespace {

void require_off_resonance(const SystemParams& params) {
  const double wp = params.omega_c_prime();
  if (std::abs(wp - params.omega_d) <= 1e-3 * wp)
    throw ParameterError("drive frequency within the resonance guard band of the "
                         "effective cavity frequency; displacement coefficients diverge");
}

Complex drive_alpha1(const SystemParams& params, double t) {
  const double wp = params.omega_c_prime();
  const double wd = params.omega_d;
  const Complex osc = std::exp(kI * wp * t) *
                      Complex{-wp * std::cos(wd * t), wd * std::sin(wd * t)};
  return params.Omega / (wp * wp - wd * wd) * (wp + osc);
}

}  // namespace

DriveAlphas::DriveAlphas(const SystemParams& params, double t_max)
    : params_(params), t_max_(t_max) {
  if (!(t_max >= 0.0))
    throw ParameterError("drive horizon must be nonnegative, got " + std::to_string(t_max));
  require_off_resonance(params_);

  // alpha3' = alpha1 * alpha2' with both factors in closed form. Integrate it
  // once onto a uniform node table fine enough that a single Simpson panel
  // between nodes stays below ~1e-10; the integrand oscillates no faster than
  // wc' + wd.
  const double w_fast = params_.omega_c_prime() + params_.omega_d + params_.omega_m;
  dt_ = (2.0 * M_PI / w_fast) / 64.0;
  const size_t n_nodes = static_cast<size_t>(std::ceil(std::max(t_max, dt_) / dt_)) + 1;
  std::vector<double> nodes(n_nodes);
  for (size_t k = 0; k < n_nodes; ++k) nodes[k] = static_cast<double>(k) * dt_;

  alpha3_.resize(n_nodes);
  size_t idx = 0;
  OdeOptions opts;
  opts.abs_tol = opts.rel_tol = 1e-12;
  opts.initial_dt = dt_;
  integrate_at_times(
      [this](const CVec& x, CVec& dxdt, double t) {
        (void)x;
        dxdt[0] = alpha1(t) * alpha2_dot(t);
      },
      {Complex{0.0, 0.0}}, nodes,
      [&](const CVec& x, double) { alpha3_[idx++] = x[0]; }, opts);
}

Complex DriveAlphas::alpha1(double t) const { return drive_alpha1(params_, t); }

Complex DriveAlphas::alpha2(double t) const { return -std::conj(alpha1(t)); }

Complex DriveAlphas::alpha2_dot(double t) const {
  return -kI * params_.Omega * std::exp(-kI * params_.omega_c_prime() * t) *
         std::cos(params_.omega_d * t);
}

Complex DriveAlphas::alpha3(double t) const {
  if (t < -1e-9 || t > t_max_ + dt_ + 1e-9)
    throw ParameterError("time " + std::to_string(t) +
                         " is beyond the horizon this drive table was built for");
  if (t <= 0.0) return {0.0, 0.0};
  const size_t k = std::min(alpha3_.size() - 1,
                            static_cast<size_t>(std::floor(t / dt_)));
  const double ta = static_cast<double>(k) * dt_;
  const double h = t - ta;
  if (h <= 0.0) return alpha3_[k];
  // one Simpson panel from the node below to t
  const double tm = ta + 0.5 * h;
  const Complex fa = alpha1(ta) * alpha2_dot(ta);
  const Complex fm = alpha1(tm) * alpha2_dot(tm);
  const Complex fb = alpha1(t) * alpha2_dot(t);
  return alpha3_[k] + h / 6.0 * (fa + 4.0 * fm + fb);
}

DriveAlphas drive_alphas(const SystemParams& params, double t_max) {
  params.validate();
  return DriveAlphas(params, t_max);
}

namespace {

void warn_drive_validity(const SystemParams& params) {
  const double wp = params.omega_c_prime();
  if (params.omega_d >= 0.5 * wp)
    warn("drive frequency " + std::to_string(params.omega_d) +
         " is not small against the effective cavity frequency " + std::to_string(wp) +
         "; the constant-photon-operator approximation degrades");
  if (params.Omega >= params.omega_m)
    warn("drive amplitude " + std::to_string(params.Omega) +
         " is not below the mechanical frequency " + std::to_string(params.omega_m) +
         "; the constant-photon-operator approximation degrades");
}

}  // namespace

double mean_photon_forced(const SystemParams& params, double n0, double t) {
  params.validate();
  // Warn once per parameter set per thread, not on every sample.
  thread_local SystemParams last{};
  thread_local bool warned = false;
  if (!warned || last.Omega != params.Omega || last.omega_d != params.omega_d ||
      last.omega_c != params.omega_c || last.omega_m != params.omega_m ||
      last.g1 != params.g1) {
    warn_drive_validity(params);
    last = params;
    warned = true;
  }
  require_off_resonance(params);
  return n0 + std::norm(drive_alpha1(params, t));
}

CoefficientTrajectory forced_interaction_coefficients(
    const SystemParams& params, const std::function<double(double)>& n_mean,
    std::span<const double> t_grid, const OdeOptions& opts) {
  params.validate();
  const double wm = params.omega_m;
  const double g0 = params.g0, g1 = params.g1;
  MechHamiltonianCoeffs h = [wm, g0, g1, n_mean](double t) -> std::array<Complex, 6> {
    const double nbar = n_mean(t);
    const double quad = g1 * wm * nbar;
    const double lin = -g0 * wm * nbar;
    const Complex rot = std::exp(kI * wm * t);
    return {quad * rot * rot, lin * rot,          Complex{2.0 * quad, 0.0},
            lin * std::conj(rot), quad * std::conj(rot * rot), Complex{0.0, 0.0}};
  };
  return run_six_function(CouplingScenario::forced, params, n_mean ? int(std::lround(n_mean(0.0)))
                                                                   : 0,
                          h, t_grid, opts);
}

FullPropagatorCoeffs full_propagator_coeffs(const SystemParams& params, int n0,
                                            std::span<const double> t_grid,
                                            const OdeOptions& opts) {
  params.validate();
  require_grid_from_zero(t_grid);
  warn_drive_validity(params);
  DriveAlphas drive = drive_alphas(params, t_grid.back());
  auto n_mean = [&drive, n0](double t) { return n0 + std::norm(drive.alpha1(t)); };
  CoefficientTrajectory mech = forced_interaction_coefficients(params, n_mean, t_grid, opts);
  mech.n = n0;
  return FullPropagatorCoeffs{std::move(drive), std::move(mech)};
}

}  // namespace optomech
