// Acceptance gate: exercises the eight release criteria end to end and
// prints one PASS/FAIL line per criterion with the measured numbers and the
// pinned tolerances. Exit code is the number of failed criteria.

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "optomech/analysis.hpp"
#include "optomech/fock.hpp"
#include "optomech/heisenberg.hpp"
#include "optomech/observables.hpp"
#include "optomech/oracle.hpp"
#include "optomech/propagators.hpp"
#include "optomech/scenario.hpp"
#include "optomech/warnings.hpp"
#include "optomech/wigner.hpp"

using namespace optomech;

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kImg{0.0, 1.0};

std::vector<double> uniform_grid(double t_end, int count) {
  std::vector<double> t(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) t[static_cast<size_t>(i)] = t_end * i / (count - 1);
  t.back() = t_end;
  return t;
}

struct Gate {
  int failures = 0;
  void line(int idx, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", idx, detail.c_str());
    if (!pass) ++failures;
  }
  static void note(const std::string& text) { std::printf("       %s\n", text.c_str()); }
};

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

// Criterion 1: pure linear coupling. The product-propagator phonon mean must
// reproduce the closed form |Gamma e^{-i wm t} + g0 n (1 - e^{-i wm t})|^2 to
// 1e-10 for g0 in {0.1, 0.3, 0.6}, match the state propagation to 1e-6 at
// dim_mech = 64, and peak at 7.84 (g0 = 0.6, t = pi). Wall time under 10 s.
void criterion1(Gate& gate) {
  const auto start = std::chrono::steady_clock::now();
  SystemParams p;
  p.omega_c = 10.0;
  p.omega_m = 1.0;
  const int n = 4;
  const Complex Gamma{2.0, 0.0};
  const std::vector<double> grid = uniform_grid(8.0 * kPi, 1601);

  auto closed_form = [&](double g0, double t) {
    const Complex rot = std::exp(-kImg * t);
    return std::norm(Gamma * rot + g0 * (1.0 - rot) * static_cast<double>(n));
  };

  double closed_dev = 0.0;
  for (double g0 : {0.1, 0.3, 0.6}) {
    p.g0 = g0;
    for (double t : grid) {
      const double wn = phonon_mean(linear_heisenberg(p, n, t), Gamma);
      closed_dev = std::max(closed_dev, std::abs(wn - closed_form(g0, t)));
    }
  }

  p.g0 = 0.6;
  const StateVector psi0 = tensor(number_state(n, 6), coherent_state(Gamma, 64));
  const StateTrajectory traj = propagate(psi0, p, grid);
  const ObservableLabel want[] = {ObservableLabel::phonon_mean};
  const auto oracle = observables_from_state(traj, want);
  double oracle_dev = 0.0;
  double peak = 0.0, peak_t = 0.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    const double wn = phonon_mean(linear_heisenberg(p, n, grid[i]), Gamma);
    oracle_dev = std::max(oracle_dev, std::abs(wn - oracle[0].values[i]));
    if (wn > peak) {
      peak = wn;
      peak_t = grid[i];
    }
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = closed_dev <= 1e-10 && oracle_dev <= 1e-6 &&
                    std::abs(peak - 7.84) <= 1e-10 && std::abs(peak_t - kPi) <= 1e-12 &&
                    seconds < 10.0;
  gate.line(1, pass,
            fmt("linear phonon mean: closed-form dev %.2e (<= 1e-10), state-route dev %.2e "
                "(<= 1e-6), peak %.10g at t = %.10g (want 7.84 at pi), %.1f s (< 10 s)",
                closed_dev, oracle_dev, peak, peak_t, seconds));
}

// Criterion 2: quadratic coupling. Zero-crossing frequency of the phonon mean
// over 20 mechanical periods must match 2 wm (1 + 2 g1 n) within 1% for
// (g1, n) = (0.01, 4) and (0.04, 4). g1 = 0.09 is reported against the
// per-quadrature formula value 1.72 without gating.
void criterion2(Gate& gate) {
  SystemParams p;
  p.omega_m = 1.0;
  const int n = 4;
  const Complex Gamma{2.0, 0.0};
  const std::vector<double> grid = uniform_grid(40.0 * kPi, 4001);

  bool pass = true;
  std::string detail = "phonon-mean frequency vs 2 wm (1 + 2 g1 n):";
  for (const auto& [g1, expected] : {std::pair{0.01, 2.16}, std::pair{0.04, 2.64}}) {
    p.g1 = g1;
    const CoefficientTrajectory traj = quadratic_coefficients(p, n, grid);
    std::vector<double> phonon(grid.size());
    for (size_t i = 0; i < grid.size(); ++i)
      phonon[i] = phonon_mean(heisenberg_coeffs(traj, i), Gamma);
    const double measured = dominant_frequency(grid, phonon);
    const double rel = std::abs(measured - expected) / expected;
    pass = pass && rel <= 0.01;
    detail += fmt(" g1=%.2f: %.4f vs %.2f (%.2f%%);", g1, measured, expected, 100.0 * rel);
  }
  gate.line(2, pass, detail + " gate 1%");

  p.g1 = 0.09;
  const CoefficientTrajectory traj = quadratic_coefficients(p, n, grid);
  std::vector<double> x(grid.size());
  for (size_t i = 0; i < grid.size(); ++i)
    x[i] = quadratures(heisenberg_coeffs(traj, i), Gamma).x_mean;
  const double nu = dominant_frequency(grid, x);
  Gate::note(fmt("g1=0.09 (report only): quadrature frequency %.4f vs formula value 1.72 "
                 "(%.2f%%); the n-bearing squeeze convention would give 1.5620 instead "
                 "(docs/wei_norman.md)",
                 nu, 100.0 * std::abs(nu - 1.72) / 1.72));
}

// Criterion 3: Mandel Q. Pure linear coupling keeps Q = 1 within 1e-8 on
// [0, 8 pi] for g0 in {0.1, 0.3, 0.6}; adding g1 = 0.01 at g0 = 0.6 drives
// Q below 1 at every sampled t > 0.
void criterion3(Gate& gate) {
  SystemParams p;
  p.omega_m = 1.0;
  const int n = 4;
  const Complex Gamma{2.0, 0.0};
  const std::vector<double> grid = uniform_grid(8.0 * kPi, 1601);

  double linear_dev = 0.0;
  for (double g0 : {0.1, 0.3, 0.6}) {
    p.g0 = g0;
    for (double t : grid)
      linear_dev = std::max(linear_dev, std::abs(mandel_q(linear_heisenberg(p, n, t), Gamma) - 1.0));
  }

  p.g0 = 0.6;
  p.g1 = 0.01;
  const CoefficientTrajectory traj = linquad_coefficients(p, n, grid);
  double max_q = -1.0;
  for (size_t i = 1; i < grid.size(); ++i)
    max_q = std::max(max_q, mandel_q(heisenberg_coeffs(traj, i), Gamma));

  const bool pass = linear_dev <= 1e-8 && max_q < 1.0;
  gate.line(3, pass,
            fmt("Mandel Q: linear |Q-1| max %.2e (<= 1e-8); g1=0.01, g0=0.6 max Q(t>0) = "
                "1 - %.3e (< 1)",
                linear_dev, 1.0 - max_q));
}

// Criterion 4: uncertainty product for g0 = 0.1, g1 = 0.01, n = 2, Gamma = 2,
// required to stay at 0.5 within 1e-6 on [0, 8 pi] with min dX < 1/sqrt(2).
// The product actually oscillates up to (w/nu - 1)/2 above 1/2 (structural;
// both routes agree), so the first half fails by design and is reported with
// the measured excursion.
void criterion4(Gate& gate) {
  SystemParams p;
  p.omega_m = 1.0;
  p.g0 = 0.1;
  p.g1 = 0.01;
  const int n = 2;
  const Complex Gamma{2.0, 0.0};
  const std::vector<double> grid = uniform_grid(8.0 * kPi, 1601);
  const CoefficientTrajectory traj = linquad_coefficients(p, n, grid);

  double product_dev = 0.0;
  double min_dx = 1e9;
  for (size_t i = 0; i < grid.size(); ++i) {
    const Quadratures q = quadratures(heisenberg_coeffs(traj, i), Gamma);
    product_dev = std::max(product_dev, std::abs(q.uncertainty_product() - 0.5));
    min_dx = std::min(min_dx, q.dx);
  }

  const bool pass = product_dev <= 1e-6 && min_dx < 1.0 / std::sqrt(2.0);
  gate.line(4, pass,
            fmt("uncertainty product: max |dX dP - 1/2| = %.3e (gate 1e-6), min dX = %.6f "
                "(< 0.7071)",
                product_dev, min_dx));
  // In the combined-coupling sector map the squeeze strength carries the
  // photon number: lambda = g1 wm n.
  const double w = p.omega_m * (1.0 + 2.0 * p.g1 * n);
  const double lam = p.coupling_quadratic() * n;
  const double nu = std::sqrt(w * w - 4.0 * lam * lam);
  Gate::note(fmt("structural floor: dX dP = sqrt(cos^2 2nu t + (w/nu)^2 sin^2 2nu t)/2 peaks "
                 "at (w/nu - 1)/2 = %.3e, so the 1e-6 gate is unreachable at these couplings "
                 "(docs/wei_norman.md)",
                 (w / nu - 1.0) / 2.0));
}

// Criterion 5: driven closed form. With wc = 10, wm = 1, g0 = 0.1, g1 = 0.01
// the photon excursion max_t |alpha1(t)|^2 must land in [1e-4, 1e-3) for
// (Omega, wd) = (0.1, 1.0) and in [1e-3, 1e-2) for (0.25, 2.5).
void criterion5(Gate& gate) {
  SystemParams p;
  p.omega_c = 10.0;
  p.omega_m = 1.0;
  p.g0 = 0.1;
  p.g1 = 0.01;
  const double t_end = 50.0 * kPi;

  bool pass = true;
  std::string detail = "photon excursion max |alpha1|^2:";
  const struct {
    double Omega, omega_d, lo, hi;
  } cases[] = {{0.1, 1.0, 1e-4, 1e-3}, {0.25, 2.5, 1e-3, 1e-2}};
  for (const auto& c : cases) {
    p.Omega = c.Omega;
    p.omega_d = c.omega_d;
    const DriveAlphas drive = drive_alphas(p, t_end);
    double excursion = 0.0;
    for (double t : uniform_grid(t_end, 20001))
      excursion = std::max(excursion, std::norm(drive.alpha1(t)));
    pass = pass && excursion >= c.lo && excursion < c.hi;
    detail += fmt(" (Omega=%.2f, wd=%.1f): %.3e in [%.0e, %.0e);", c.Omega, c.omega_d, excursion,
                  c.lo, c.hi);
  }
  gate.line(5, pass, detail);
}

struct Fig7Run {
  std::vector<double> t;
  std::vector<double> phonon_analytic;
  std::vector<double> phonon_oracle;
  StateTrajectory traj;
  CollapseRevival envelope_oracle;
};

// Criterion 6: driven coherent-field scenario. Analytic vs state-route phonon
// mean within 5% of the signal range over the first 10 mechanical periods;
// collapse and revival times of the two envelopes within half a period.
Fig7Run criterion6(Gate& gate) {
  const Scenario fig7 = find_scenario("fig7");
  Fig7Run run;
  run.t = fig7.grid();
  const auto analytic = analytic_series(fig7);
  const auto oracle = oracle_series(fig7, &run.traj);
  run.phonon_analytic = analytic[0].values;
  run.phonon_oracle = oracle[0].values;

  double dev = 0.0, lo = run.phonon_oracle[0], hi = lo;
  for (size_t i = 0; i < run.t.size() && run.t[i] <= 20.0 * kPi; ++i) {
    dev = std::max(dev, std::abs(run.phonon_analytic[i] - run.phonon_oracle[i]));
    lo = std::min(lo, run.phonon_oracle[i]);
    hi = std::max(hi, run.phonon_oracle[i]);
  }
  const double range = hi - lo;

  const std::vector<double> amp_a = sliding_amplitude(run.t, run.phonon_analytic, 2.0 * kPi);
  const std::vector<double> amp_o = sliding_amplitude(run.t, run.phonon_oracle, 2.0 * kPi);
  const CollapseRevival cr_a = collapse_revival_times(run.t, amp_a);
  run.envelope_oracle = collapse_revival_times(run.t, amp_o);
  const double d_collapse = std::abs(cr_a.collapse_time - run.envelope_oracle.collapse_time);
  const double d_revival = std::abs(cr_a.revival_time - run.envelope_oracle.revival_time);

  const bool pass = dev < 0.05 * range && d_collapse <= kPi && d_revival <= kPi;
  gate.line(6, pass,
            fmt("driven phonon mean: dev %.4f vs 5%% of range = %.4f over t <= 20 pi; "
                "collapse %.1f/%.1f, revival %.1f/%.1f (analytic/state, gate half period)",
                dev, 0.05 * range, cr_a.collapse_time, run.envelope_oracle.collapse_time,
                cr_a.revival_time, run.envelope_oracle.revival_time));
  return run;
}

// Criterion 7: Wigner functions of the criterion-6 run at an early, the
// collapse, and the revival snapshot. The mechanical reduction stays
// nonnegative (>= -1e-6) at all three; the field reduction goes negative at
// collapse and revival; every emitted grid integrates to 1 within 2e-2.
void criterion7(Gate& gate, const Fig7Run& run) {
  auto nearest = [&](double target) {
    size_t best = 0;
    for (size_t i = 1; i < run.t.size(); ++i)
      if (std::abs(run.t[i] - target) < std::abs(run.t[best] - target)) best = i;
    return best;
  };
  const size_t idx_early = nearest(1.0);
  const size_t idx_collapse = nearest(run.envelope_oracle.collapse_time);
  const size_t idx_revival = nearest(run.envelope_oracle.revival_time);

  const std::vector<double> axis = uniform_axis(-6.0, 6.0, 121);
  double mech_min = 0.0, integral_err = 0.0;
  double field_min_collapse = 1.0, field_min_revival = 1.0;
  for (size_t idx : {idx_early, idx_collapse, idx_revival}) {
    const WignerGrid wm = wigner(reduced_state(run.traj, idx, Keep::mech), axis, axis);
    const WignerGrid wf = wigner(reduced_state(run.traj, idx, Keep::field), axis, axis);
    mech_min = std::min(mech_min, wm.min_value());
    integral_err = std::max({integral_err, std::abs(wm.integral() - 1.0),
                             std::abs(wf.integral() - 1.0)});
    if (idx == idx_collapse) field_min_collapse = wf.min_value();
    if (idx == idx_revival) field_min_revival = wf.min_value();
  }

  const bool pass = mech_min >= -1e-6 && field_min_collapse < 0.0 && field_min_revival < 0.0 &&
                    integral_err <= 2e-2;
  gate.line(7, pass,
            fmt("Wigner snapshots (t = %.1f, %.1f, %.1f): mech min %.2e (>= -1e-6); field min "
                "%.3f at collapse, %.3f at revival (< 0); worst |integral - 1| = %.2e (<= 2e-2)",
                run.t[idx_early], run.t[idx_collapse], run.t[idx_revival], mech_min,
                field_min_collapse, field_min_revival, integral_err));
}

// Criterion 8: structural invariants. Propagator residual against its own
// evolution equation, symplectic identity of the ladder maps, the drive pair
// alpha1 = -conj(alpha2), norm conservation over 50 mechanical periods, and
// insensitivity to doubling the mechanical truncation.
void criterion8(Gate& gate) {
  // (a) residual || i dU/dt - H U || on a truncated-space realization.
  SystemParams p;
  p.omega_c = 10.0;
  p.omega_m = 1.0;
  p.g0 = 0.1;
  p.g1 = 0.01;
  const int n = 4;
  const int D = 24;
  const FockOperator b_op = make_ladder(D);
  const ComplexMatrix B = b_op.matrix;
  const ComplexMatrix Bd = b_op.adjoint().matrix;
  const ComplexMatrix N = (Bd * B).eval();
  const ComplexMatrix Id = ComplexMatrix::Identity(D, D);
  const auto h_of = linquad_hamiltonian_coeffs(p, n);
  auto U_of = [&](double t) -> ComplexMatrix {
    const std::vector<double> g = {0.0, t};
    const auto traj = linquad_coefficients(p, n, g);
    const auto& a = traj.coeffs.back();
    ComplexMatrix U = (a[0] * Bd * Bd).exp();
    U = U * (a[1] * Bd).exp();
    U = U * (a[2] * N).exp();
    U = U * (a[3] * B).exp();
    U = U * (a[4] * B * B).exp();
    return std::exp(a[5]) * U;
  };
  double resid_ratio = 0.0;
  for (double t : {0.7, 2.1, 5.3}) {
    const auto h = h_of(t);
    const ComplexMatrix H =
        h[0] * Bd * Bd + h[1] * Bd + h[2] * N + h[3] * B + h[4] * B * B + h[5] * Id;
    const double dt = 1e-5;
    const ComplexMatrix dU = (U_of(t + dt) - U_of(t - dt)) / (2.0 * dt);
    const ComplexMatrix R = kImg * dU - H * U_of(t);
    // rows touching the truncation edge pick up the cut H entries; skip them
    const double resid = R.topRows(D - 2).cwiseAbs().maxCoeff();
    resid_ratio = std::max(resid_ratio, resid / H.cwiseAbs().maxCoeff());
  }

  // (b) symplectic identity along a combined-coupling trajectory.
  const std::vector<double> grid = uniform_grid(8.0 * kPi, 1601);
  const CoefficientTrajectory traj = linquad_coefficients(p, n, grid);
  double symp = 0.0;
  for (size_t i = 0; i < grid.size(); ++i)
    symp = std::max(symp, std::abs(heisenberg_coeffs(traj, i).symplectic_defect()));

  // (c) drive coefficient pair.
  SystemParams pd = p;
  pd.Omega = 0.25;
  pd.omega_d = 2.5;
  const DriveAlphas drive = drive_alphas(pd, 170.0);
  double pair_defect = 0.0;
  for (double t : uniform_grid(170.0, 2001))
    pair_defect = std::max(pair_defect, std::abs(drive.alpha1(t) + std::conj(drive.alpha2(t))));

  // (d) norm drift across 50 mechanical periods of the driven system.
  const StateVector psi50 = tensor(coherent_state({2.0, 0.0}, 16), coherent_state({2.0, 0.0}, 32));
  const StateTrajectory long_run = propagate(psi50, pd, uniform_grid(100.0 * kPi, 201));

  // (e) doubling the mechanical dimension moves no reported observable by
  // more than 1e-6 (undriven combined-coupling scenario, g0 = 0.3).
  SystemParams pc = p;
  pc.g0 = 0.3;
  const std::vector<double> cgrid = uniform_grid(8.0 * kPi, 161);
  const ObservableLabel probes[] = {ObservableLabel::phonon_mean, ObservableLabel::x_mean,
                                    ObservableLabel::dx};
  const StateVector psi64 = tensor(number_state(4, 6), coherent_state({2.0, 0.0}, 64));
  const StateVector psi128 = tensor(number_state(4, 6), coherent_state({2.0, 0.0}, 128));
  const auto obs64 = observables_from_state(propagate(psi64, pc, cgrid), probes);
  const auto obs128 = observables_from_state(propagate(psi128, pc, cgrid), probes);
  double doubling = 0.0;
  for (size_t j = 0; j < obs64.size(); ++j)
    for (size_t i = 0; i < cgrid.size(); ++i)
      doubling = std::max(doubling, std::abs(obs64[j].values[i] - obs128[j].values[i]));

  const bool pass = resid_ratio <= 1e-6 && symp <= 1e-8 && pair_defect <= 1e-12 &&
                    long_run.max_norm_drift < 1e-9 && doubling < 1e-6;
  gate.line(8, pass,
            fmt("invariants: residual/||H|| %.2e (<= 1e-6); symplectic %.2e (<= 1e-8); "
                "alpha1+conj(alpha2) %.2e (<= 1e-12); norm drift %.2e over 50 periods (< 1e-9); "
                "dim-doubling shift %.2e (< 1e-6)",
                resid_ratio, symp, pair_defect, long_run.max_norm_drift, doubling));
}

}  // namespace

int main() {
  // Coherent-state truncation notices and similar diagnostics are expected
  // here; keep the gate output to the criterion lines.
  set_warning_sink([](const std::string&) {});

  Gate gate;
  criterion1(gate);
  criterion2(gate);
  criterion3(gate);
  criterion4(gate);
  criterion5(gate);
  const Fig7Run fig7 = criterion6(gate);
  criterion7(gate, fig7);
  criterion8(gate);

  std::printf("acceptance: %d of 8 criteria passed\n", 8 - gate.failures);
  return gate.failures;
}
