#include "optomech/oracle.hpp"

#include <Eigen/SparseCore>
#include <cmath>
#include <iterator>
#include <limits>
#include <string>

#include "optomech/errors.hpp"

namespace optomech {

namespace {

constexpr Complex kI{0.0, 1.0};

using SparseOp = Eigen::SparseMatrix<Complex>;

SparseOp to_sparse(const ComplexMatrix& dense) {
  SparseOp sparse = dense.sparseView(1.0, 1e-14);
  sparse.makeCompressed();
  return sparse;
}

/// Drive-independent part of the Hamiltonian as a dense matrix.
ComplexMatrix static_part(const SystemParams& params, int dim_field, int dim_mech) {
  const FockOperator a = make_ladder(dim_field);
  const FockOperator b = make_ladder(dim_mech);
  const ComplexMatrix nf = (a.adjoint().matrix * a.matrix);
  const ComplexMatrix nm = (b.adjoint().matrix * b.matrix);
  const ComplexMatrix bpb = b.matrix + b.adjoint().matrix;
  const ComplexMatrix b2 = b.matrix * b.matrix;
  const ComplexMatrix sq = b2 + b2.adjoint();
  const ComplexMatrix idf = ComplexMatrix::Identity(dim_field, dim_field);
  const ComplexMatrix idm = ComplexMatrix::Identity(dim_mech, dim_mech);

  auto kron = [](const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    FockOperator L{static_cast<int>(lhs.rows()), 1, lhs};
    FockOperator R{static_cast<int>(rhs.rows()), 1, rhs};
    return tensor(L, R).matrix;
  };

  const double wm = params.omega_m;
  return params.omega_c_prime() * kron(nf, idm) + wm * kron(idf, nm) +
         2.0 * params.g1 * wm * kron(nf, nm) - params.g0 * wm * kron(nf, bpb) +
         params.g1 * wm * kron(nf, sq);
}

/// Drive operator (â + â†) ⊗ I as a dense matrix.
ComplexMatrix drive_part(int dim_field, int dim_mech) {
  const FockOperator a = make_ladder(dim_field);
  const ComplexMatrix apad = a.matrix + a.adjoint().matrix;
  FockOperator L{dim_field, 1, apad};
  FockOperator R{dim_mech, 1, ComplexMatrix::Identity(dim_mech, dim_mech)};
  return tensor(L, R).matrix;
}

}  // namespace

FockOperator build_hamiltonian(const SystemParams& params, int dim_field, int dim_mech,
                               double t) {
  params.validate();
  if (dim_field < 1 || dim_mech < 2)
    throw StructureError("Hamiltonian dims too small: " + std::to_string(dim_field) + "x" +
                         std::to_string(dim_mech));
  ComplexMatrix h = static_part(params, dim_field, dim_mech);
  if (params.Omega != 0.0)
    h += params.Omega * std::cos(params.omega_d * t) * drive_part(dim_field, dim_mech);
  return FockOperator{dim_field, dim_mech, std::move(h)};
}

StateVector StateTrajectory::state_at(size_t idx) const {
  if (idx >= states.size()) throw ParameterError("trajectory index out of range");
  return StateVector{dim_field, dim_mech, states[idx]};
}

StateTrajectory propagate(const StateVector& psi0, const SystemParams& params,
                          std::span<const double> t_grid, const SimConfig& config) {
  params.validate();
  if (t_grid.empty() || t_grid[0] != 0.0)
    throw ParameterError("propagation grid must start at t = 0");
  if (std::abs(psi0.norm() - 1.0) > 1e-10)
    throw StructureError("initial state norm deviates from 1 by " +
                         std::to_string(std::abs(psi0.norm() - 1.0)));

  const int dim = psi0.dim_field * psi0.dim_mech;
  // Center the spectrum before integrating: subtracting a constant from the
  // diagonal multiplies the solution by the global phase e^{i shift t} and
  // halves the spectral radius, which roughly halves the step count of the
  // error-controlled stepper. The phase is put back at emission, so stored
  // states solve the unshifted equation.
  ComplexMatrix h_static = static_part(params, psi0.dim_field, psi0.dim_mech);
  const auto diag = h_static.diagonal().real();
  const double shift = 0.5 * (diag.minCoeff() + diag.maxCoeff());
  h_static.diagonal().array() -= shift;
  const SparseOp h0 = to_sparse(h_static);
  const bool driven = params.Omega != 0.0;
  SparseOp v;
  if (driven) v = to_sparse(drive_part(psi0.dim_field, psi0.dim_mech));

  StateTrajectory traj;
  traj.dim_field = psi0.dim_field;
  traj.dim_mech = psi0.dim_mech;
  traj.t.assign(t_grid.begin(), t_grid.end());
  traj.states.reserve(t_grid.size());

  auto rhs = [&](const CVec& x, CVec& dxdt, double t) {
    Eigen::Map<const ComplexVector> xm(x.data(), dim);
    Eigen::Map<ComplexVector> dm(dxdt.data(), dim);
    dm = h0 * xm;
    if (driven) dm += (params.Omega * std::cos(params.omega_d * t)) * (v * xm);
    dm *= -kI;
  };

  OdeOptions opts;
  opts.abs_tol = config.abs_tol;
  opts.rel_tol = config.rel_tol;
  opts.stepper = StepperKind::rkf78;
  if (config.renormalize) {
    opts.post_step = [&traj, dim](CVec& x, double) {
      Eigen::Map<ComplexVector> xm(x.data(), dim);
      const double norm = xm.norm();
      traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(norm - 1.0));
      xm /= norm;
      ++traj.renormalize_count;
      return true;
    };
  }

  CVec state0(psi0.amplitudes.data(), psi0.amplitudes.data() + dim);
  integrate_at_times(rhs, state0, t_grid,
                     [&](const CVec& x, double t) {
                       Eigen::Map<const ComplexVector> xm(x.data(), dim);
                       traj.states.emplace_back(std::exp(-kI * shift * t) * xm);
                       if (!config.renormalize)
                         traj.max_norm_drift =
                             std::max(traj.max_norm_drift, std::abs(xm.norm() - 1.0));
                     },
                     opts);
  return traj;
}

namespace {

struct RawMoments {
  double n_field;    // <n̂>
  double n_mech;     // <N̂>
  double n_mech_sq;  // <N̂²>
  Complex b_mean;    // <b̂>
  Complex b2_mean;   // <b̂²>
};

RawMoments moments(const ComplexVector& psi, int dim_field, int dim_mech) {
  RawMoments m{0.0, 0.0, 0.0, {0.0, 0.0}, {0.0, 0.0}};
  for (int f = 0; f < dim_field; ++f) {
    const int base = f * dim_mech;
    for (int k = 0; k < dim_mech; ++k) {
      const double w = std::norm(psi[base + k]);
      m.n_field += w * f;
      m.n_mech += w * k;
      m.n_mech_sq += w * static_cast<double>(k) * k;
      if (k >= 1)
        m.b_mean += std::conj(psi[base + k - 1]) * std::sqrt(double(k)) * psi[base + k];
      if (k >= 2)
        m.b2_mean += std::conj(psi[base + k - 2]) * std::sqrt(double(k) * (k - 1)) *
                     psi[base + k];
    }
  }
  return m;
}

double value_for(const RawMoments& m, ObservableLabel label) {
  constexpr double sqrt2 = 1.41421356237309504880;
  const double dx2 = 0.5 + m.n_mech + m.b2_mean.real() - 2.0 * m.b_mean.real() * m.b_mean.real();
  const double dp2 = 0.5 + m.n_mech - m.b2_mean.real() - 2.0 * m.b_mean.imag() * m.b_mean.imag();
  switch (label) {
    case ObservableLabel::phonon_mean: return m.n_mech;
    case ObservableLabel::photon_mean: return m.n_field;
    case ObservableLabel::x_mean: return sqrt2 * m.b_mean.real();
    case ObservableLabel::p_mean: return sqrt2 * m.b_mean.imag();
    case ObservableLabel::dx:
      if (dx2 < -1e-12) throw ConsistencyError("negative X variance in oracle moments");
      return std::sqrt(std::max(dx2, 0.0));
    case ObservableLabel::dp:
      if (dp2 < -1e-12) throw ConsistencyError("negative P variance in oracle moments");
      return std::sqrt(std::max(dp2, 0.0));
    case ObservableLabel::mandel_q: {
      const double var = m.n_mech_sq - m.n_mech * m.n_mech;
      if (m.n_mech <= 1e-12)
        throw ParameterError("Mandel Q undefined: phonon mean vanishes in oracle");
      return var / m.n_mech;
    }
    case ObservableLabel::uncertainty_product:
      return std::sqrt(std::max(dx2, 0.0)) * std::sqrt(std::max(dp2, 0.0));
  }
  throw ParameterError("unhandled observable label");
}

}  // namespace

std::vector<ObservableSeries> observables_from_state(const StateTrajectory& trajectory,
                                                     std::span<const ObservableLabel> which) {
  std::vector<ObservableSeries> out;
  out.reserve(which.size());
  for (ObservableLabel label : which) {
    ObservableSeries s;
    s.label = label;
    s.provenance = Provenance::oracle;
    s.t = trajectory.t;
    s.values.reserve(trajectory.states.size());
    out.push_back(std::move(s));
  }
  for (const ComplexVector& psi : trajectory.states) {
    const RawMoments m = moments(psi, trajectory.dim_field, trajectory.dim_mech);
    for (size_t j = 0; j < which.size(); ++j) out[j].values.push_back(value_for(m, which[j]));
  }
  return out;
}

DensityMatrix reduced_state(const StateTrajectory& trajectory, size_t idx, Keep keep) {
  return partial_trace(trajectory.state_at(idx), keep);
}

ConvergedRun propagate_converged(const std::function<StateVector(int, int)>& make_psi0,
                                 const SystemParams& params, std::span<const double> t_grid,
                                 const SimConfig& config) {
  const ObservableLabel probes[] = {ObservableLabel::phonon_mean, ObservableLabel::photon_mean,
                                    ObservableLabel::x_mean, ObservableLabel::dx};
  ConvergedRun run;
  int df = config.dim_field, dm = config.dim_mech;
  StateTrajectory current = propagate(make_psi0(df, dm), params, t_grid, config);
  auto current_obs = observables_from_state(current, probes);
  run.steps.push_back({df, dm, std::numeric_limits<double>::quiet_NaN()});

  while (true) {
    const int next_df = std::min(df * 2, config.max_dim);
    const int next_dm = std::min(dm * 2, config.max_dim);
    if (next_df == df && next_dm == dm)
      throw IntegrationError("truncation non-convergence: observables still shift at dims " +
                             std::to_string(df) + "x" + std::to_string(dm));
    StateTrajectory refined = propagate(make_psi0(next_df, next_dm), params, t_grid, config);
    auto refined_obs = observables_from_state(refined, probes);
    double shift = 0.0;
    for (size_t j = 0; j < std::size(probes); ++j)
      for (size_t i = 0; i < refined_obs[j].values.size(); ++i)
        shift = std::max(shift,
                         std::abs(refined_obs[j].values[i] - current_obs[j].values[i]));
    run.steps.push_back({next_df, next_dm, shift});
    if (shift < config.convergence_threshold) {
      run.trajectory = std::move(refined);
      return run;
    }
    df = next_df;
    dm = next_dm;
    current = std::move(refined);
    current_obs = std::move(refined_obs);
  }
}

}  // namespace optomech
