#include "optomech/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "optomech/analysis.hpp"
#include "optomech/errors.hpp"
#include "optomech/heisenberg.hpp"
#include "optomech/propagators.hpp"

namespace optomech {

namespace {

constexpr double kPi = 3.14159265358979323846;

double quadrature_value(ObservableLabel label, const Quadratures& q) {
  switch (label) {
    case ObservableLabel::x_mean: return q.x_mean;
    case ObservableLabel::p_mean: return q.p_mean;
    case ObservableLabel::dx: return q.dx;
    case ObservableLabel::dp: return q.dp;
    case ObservableLabel::uncertainty_product: return q.uncertainty_product();
    default: throw ParameterError("not a quadrature label: " + to_string(label));
  }
}

std::vector<ObservableSeries> empty_series(const Scenario& s, const std::vector<double>& t) {
  std::vector<ObservableSeries> out;
  out.reserve(s.outputs.size());
  for (ObservableLabel label : s.outputs) {
    ObservableSeries series;
    series.label = label;
    series.provenance = Provenance::analytic;
    series.t = t;
    series.values.assign(t.size(), 0.0);
    out.push_back(std::move(series));
  }
  return out;
}

StateVector initial_state(const Scenario& s) {
  const StateVector field = s.field_kind == FieldKind::number
                                ? number_state(s.n, s.sim.dim_field)
                                : coherent_state(s.alpha, s.sim.dim_field);
  const StateVector mech = coherent_state(s.Gamma, s.sim.dim_mech);
  return tensor(field, mech);
}

}  // namespace

std::vector<double> Scenario::grid() const {
  std::vector<double> t(static_cast<size_t>(samples));
  const double dt = t_end / static_cast<double>(samples - 1);
  for (int i = 0; i < samples; ++i) t[static_cast<size_t>(i)] = dt * i;
  t.back() = t_end;
  return t;
}

void Scenario::validate() const {
  if (name.empty()) throw ConfigError("scenario has no name");
  params.validate();
  if (samples < 2) throw ConfigError("scenario '" + name + "': need at least 2 grid samples");
  if (!(t_end > 0.0)) throw ConfigError("scenario '" + name + "': t_end must be positive");
  if (field_kind == FieldKind::number && n < 0)
    throw ConfigError("scenario '" + name + "': photon number must be nonnegative");
  if (!(tolerance > 0.0))
    throw ConfigError("scenario '" + name + "': comparison tolerance must be positive");
  if (compare_t_max < 0.0)
    throw ConfigError("scenario '" + name + "': comparison window must be nonnegative");
  if (smooth_window < 0.0)
    throw ConfigError("scenario '" + name + "': smoothing window must be nonnegative");
}

bool ComparisonReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const ObservableComparison& e) { return e.pass; });
}

std::vector<ObservableSeries> analytic_series(const Scenario& s) {
  s.validate();
  const std::vector<double> t = s.grid();
  std::vector<ObservableSeries> out = empty_series(s, t);
  if (out.empty()) return out;

  const bool driven = s.params.Omega != 0.0;
  const double n0 =
      s.field_kind == FieldKind::number ? static_cast<double>(s.n) : std::norm(s.alpha);
  auto photon_at = [&](double time) {
    return driven ? mean_photon_forced(s.params, n0, time) : n0;
  };

  // The coefficient systems are a handful of scalar ODEs, so integrate them
  // well below the realness guards even on the longest grids.
  OdeOptions ode;
  ode.abs_tol = 1e-12;
  ode.rel_tol = 1e-12;
  ode.stepper = StepperKind::rkf78;

  if (s.field_kind == FieldKind::number) {
    // One ladder map per node, then every requested observable reads it.
    std::vector<HeisenbergCoeffs> maps;
    maps.reserve(t.size());
    if (driven) {
      const FullPropagatorCoeffs full = full_propagator_coeffs(s.params, s.n, t, ode);
      for (size_t i = 0; i < t.size(); ++i) maps.push_back(heisenberg_coeffs(full.mech, i));
    } else if (s.params.g1 == 0.0) {
      for (double time : t) maps.push_back(linear_heisenberg(s.params, s.n, time));
    } else {
      const CoefficientTrajectory traj = s.params.g0 == 0.0
                                             ? quadratic_coefficients(s.params, s.n, t, ode)
                                             : linquad_coefficients(s.params, s.n, t, ode);
      for (size_t i = 0; i < t.size(); ++i) maps.push_back(heisenberg_coeffs(traj, i));
    }
    for (ObservableSeries& series : out) {
      for (size_t i = 0; i < t.size(); ++i) {
        const HeisenbergCoeffs& f = maps[i];
        switch (series.label) {
          case ObservableLabel::phonon_mean: series.values[i] = phonon_mean(f, s.Gamma); break;
          case ObservableLabel::photon_mean: series.values[i] = photon_at(t[i]); break;
          case ObservableLabel::mandel_q: series.values[i] = mandel_q(f, s.Gamma); break;
          default: series.values[i] = quadrature_value(series.label, quadratures(f, s.Gamma));
        }
      }
    }
    return out;
  }

  // Coherent field: Poisson-weighted photon-sector sums share one table.
  std::optional<SectorTable> table;
  if (driven) {
    const DriveAlphas drive = drive_alphas(s.params, s.t_end);
    table.emplace(s.params, s.alpha, drive, std::span<const double>(t), ode);
  } else {
    table.emplace(s.params, s.alpha, std::span<const double>(t), ode);
  }
  for (ObservableSeries& series : out) {
    for (size_t i = 0; i < t.size(); ++i) {
      switch (series.label) {
        case ObservableLabel::phonon_mean:
          series.values[i] = table->phonon_mean_at(s.Gamma, i);
          break;
        case ObservableLabel::photon_mean: series.values[i] = photon_at(t[i]); break;
        case ObservableLabel::x_mean:
          series.values[i] = table->quadrature_means_at(s.Gamma, i).first;
          break;
        case ObservableLabel::p_mean:
          series.values[i] = table->quadrature_means_at(s.Gamma, i).second;
          break;
        case ObservableLabel::dx: series.values[i] = table->dispersions_at(s.Gamma, i).first; break;
        case ObservableLabel::dp:
          series.values[i] = table->dispersions_at(s.Gamma, i).second;
          break;
        case ObservableLabel::uncertainty_product: {
          const auto [dx, dp] = table->dispersions_at(s.Gamma, i);
          series.values[i] = dx * dp;
          break;
        }
        case ObservableLabel::mandel_q: series.values[i] = table->mandel_at(s.Gamma, i); break;
      }
    }
  }
  return out;
}

std::vector<ObservableSeries> oracle_series(const Scenario& s, StateTrajectory* trajectory) {
  s.validate();
  const std::vector<double> t = s.grid();
  StateTrajectory traj = propagate(initial_state(s), s.params, t, s.sim);
  std::vector<ObservableSeries> out = observables_from_state(traj, s.outputs);
  if (trajectory) *trajectory = std::move(traj);
  return out;
}

ScenarioResult run_scenario(const Scenario& s) {
  s.validate();
  ScenarioResult result;
  result.scenario = s;
  result.t = s.grid();
  if (s.route != Route::oracle) result.analytic = analytic_series(s);
  if (s.route != Route::analytic) result.oracle = oracle_series(s);
  result.report.scenario = s.name;
  if (s.route != Route::both) return result;

  for (size_t j = 0; j < s.outputs.size(); ++j) {
    const ObservableSeries& a = result.analytic[j];
    ObservableSeries o = result.oracle[j];
    if (s.smooth_window > 0.0) o = moving_average(o, s.smooth_window);

    ObservableComparison cmp;
    cmp.label = a.label;
    double sum = 0.0;
    size_t count = 0;
    double lo = o.values.front();
    double hi = lo;
    for (size_t i = 0; i < result.t.size(); ++i) {
      if (s.compare_t_max > 0.0 && result.t[i] > s.compare_t_max * (1.0 + 1e-12)) break;
      const double dev = std::abs(a.values[i] - o.values[i]);
      if (dev >= cmp.max_abs_dev) {
        cmp.max_abs_dev = dev;
        cmp.t_at_max = result.t[i];
      }
      sum += dev;
      ++count;
      lo = std::min(lo, o.values[i]);
      hi = std::max(hi, o.values[i]);
    }
    cmp.mean_abs_dev = count > 0 ? sum / static_cast<double>(count) : 0.0;
    cmp.bound = s.compare_relative_range ? s.tolerance * (hi - lo) : s.tolerance;
    cmp.pass = cmp.max_abs_dev <= cmp.bound;
    result.report.entries.push_back(cmp);
  }
  return result;
}

std::vector<WignerSnapshot> wigner_snapshots(const Scenario& s, std::span<const double> times,
                                             std::span<const double> x_axis,
                                             std::span<const double> p_axis) {
  s.validate();
  if (s.route == Route::analytic)
    throw ConfigError("scenario '" + s.name +
                      "': Wigner snapshots need the state route (oracle or both)");
  if (times.empty()) return {};

  std::vector<double> sorted(times.begin(), times.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (double time : sorted) {
    if (time < 0.0 || time > s.t_end * (1.0 + 1e-12))
      throw ConfigError("scenario '" + s.name + "': snapshot time " + std::to_string(time) +
                        " outside [0, " + std::to_string(s.t_end) + "]");
  }

  std::vector<double> grid;
  grid.reserve(sorted.size() + 1);
  if (sorted.front() > 0.0) grid.push_back(0.0);
  grid.insert(grid.end(), sorted.begin(), sorted.end());

  const StateTrajectory traj = propagate(initial_state(s), s.params, grid, s.sim);

  std::vector<WignerSnapshot> out;
  out.reserve(2 * sorted.size());
  const size_t first = grid.size() - sorted.size();
  for (size_t i = first; i < grid.size(); ++i) {
    for (Keep keep : {Keep::mech, Keep::field}) {
      WignerSnapshot snap;
      snap.time = grid[i];
      snap.subsystem = keep;
      snap.grid = wigner(reduced_state(traj, i, keep), x_axis, p_axis);
      out.push_back(std::move(snap));
    }
  }
  return out;
}

namespace {

Scenario base_scenario() {
  Scenario s;
  s.params.omega_c = 10.0;
  s.params.omega_m = 1.0;
  s.Gamma = Complex{2.0, 0.0};
  return s;
}

std::vector<Scenario> make_built_ins() {
  std::vector<Scenario> all;

  {  // Linear coupling, number-state field: phonon peak (1 + g0 n / |Gamma|)^2 |Gamma|^2.
    Scenario s = base_scenario();
    s.name = "fig1";
    s.params.g0 = 0.6;
    s.field_kind = FieldKind::number;
    s.n = 4;
    s.t_end = 8.0 * kPi;
    s.samples = 1601;
    s.outputs = {ObservableLabel::phonon_mean, ObservableLabel::mandel_q};
    s.route = Route::both;
    s.tolerance = 1e-5;
    s.sim.dim_field = 6;
    s.sim.dim_mech = 64;
    all.push_back(s);
  }
  {  // Quadratic coupling, number-state field: squeezing-driven oscillations.
    Scenario s = base_scenario();
    s.name = "fig2";
    s.params.g1 = 0.01;
    s.field_kind = FieldKind::number;
    s.n = 4;
    s.t_end = 40.0 * kPi;
    s.samples = 4001;
    s.outputs = {ObservableLabel::phonon_mean, ObservableLabel::x_mean, ObservableLabel::dx,
                 ObservableLabel::dp};
    s.route = Route::analytic;
    all.push_back(s);
  }
  {  // Quadratic coupling, coherent field: sector-mixture beats.
    Scenario s = base_scenario();
    s.name = "fig3";
    s.params.g1 = 0.01;
    s.field_kind = FieldKind::coherent;
    s.alpha = Complex{2.0, 0.0};
    s.t_end = 240.0;
    s.samples = 3001;
    s.outputs = {ObservableLabel::phonon_mean};
    s.route = Route::analytic;
    all.push_back(s);
  }
  {  // Weak drive: photon mean stays within ~1e-4 of the initial value.
    Scenario s = base_scenario();
    s.name = "fig4a";
    s.params.g0 = 0.1;
    s.params.g1 = 0.01;
    s.params.Omega = 0.1;
    s.params.omega_d = 1.0;
    s.field_kind = FieldKind::coherent;
    s.alpha = Complex{2.0, 0.0};
    s.t_end = 50.0 * kPi;
    s.samples = 3001;
    s.outputs = {ObservableLabel::photon_mean};
    s.route = Route::both;
    s.tolerance = 0.10;
    s.compare_relative_range = true;
    s.smooth_window = 2.0 * kPi;
    s.sim.dim_field = 16;
    s.sim.dim_mech = 32;
    all.push_back(s);
  }
  {  // Stronger drive: photon excursion ~1e-3.
    Scenario s = base_scenario();
    s.name = "fig4b";
    s.params.g0 = 0.1;
    s.params.g1 = 0.01;
    s.params.Omega = 0.25;
    s.params.omega_d = 2.5;
    s.field_kind = FieldKind::coherent;
    s.alpha = Complex{2.0, 0.0};
    s.t_end = 50.0 * kPi;
    s.samples = 3001;
    s.outputs = {ObservableLabel::photon_mean};
    s.route = Route::both;
    s.tolerance = 0.10;
    s.compare_relative_range = true;
    s.smooth_window = 2.0 * kPi;
    s.sim.dim_field = 16;
    s.sim.dim_mech = 32;
    all.push_back(s);
  }
  {  // Both couplings, number-state field, moderate g0.
    Scenario s = base_scenario();
    s.name = "fig5";
    s.params.g0 = 0.3;
    s.params.g1 = 0.01;
    s.field_kind = FieldKind::number;
    s.n = 4;
    s.t_end = 8.0 * kPi;
    s.samples = 1601;
    s.outputs = {ObservableLabel::phonon_mean, ObservableLabel::mandel_q};
    s.route = Route::both;
    s.tolerance = 1e-5;
    s.sim.dim_field = 6;
    s.sim.dim_mech = 64;
    all.push_back(s);
  }
  {  // Both couplings, stronger quadratic part.
    Scenario s = base_scenario();
    s.name = "fig5b";
    s.params.g0 = 0.1;
    s.params.g1 = 0.04;
    s.field_kind = FieldKind::number;
    s.n = 4;
    s.t_end = 8.0 * kPi;
    s.samples = 1601;
    s.outputs = {ObservableLabel::phonon_mean, ObservableLabel::mandel_q};
    s.route = Route::both;
    s.tolerance = 1e-5;
    s.sim.dim_field = 6;
    s.sim.dim_mech = 64;
    all.push_back(s);
  }
  {  // Both couplings, coherent field, undriven: collapse of the beat pattern.
    Scenario s = base_scenario();
    s.name = "fig6";
    s.params.g0 = 0.1;
    s.params.g1 = 0.01;
    s.field_kind = FieldKind::coherent;
    s.alpha = Complex{2.0, 0.0};
    s.t_end = 240.0;
    s.samples = 3001;
    s.outputs = {ObservableLabel::phonon_mean};
    s.route = Route::both;
    s.tolerance = 1e-5;
    s.sim.dim_field = 24;
    s.sim.dim_mech = 64;
    all.push_back(s);
  }
  {  // Driven coherent field: collapse and revival; the analytic route uses the
    // constant-photon-operator approximation, so the gate is a 5% range fraction
    // over the early window where the approximation is claimed.
    Scenario s = base_scenario();
    s.name = "fig7";
    s.params.g0 = 0.1;
    s.params.g1 = 0.01;
    s.params.Omega = 0.25;
    s.params.omega_d = 2.5;
    s.field_kind = FieldKind::coherent;
    s.alpha = Complex{2.0, 0.0};
    s.t_end = 170.0;
    s.samples = 3401;
    s.outputs = {ObservableLabel::phonon_mean, ObservableLabel::photon_mean};
    s.route = Route::both;
    s.tolerance = 0.05;
    s.compare_relative_range = true;
    s.compare_t_max = 20.0 * kPi;
    s.sim.dim_field = 16;
    s.sim.dim_mech = 64;
    all.push_back(s);
  }
  {  // Dispersions with both couplings, number-state field.
    Scenario s = base_scenario();
    s.name = "fig8";
    s.params.g0 = 0.1;
    s.params.g1 = 0.01;
    s.field_kind = FieldKind::number;
    s.n = 2;
    s.t_end = 8.0 * kPi;
    s.samples = 1601;
    s.outputs = {ObservableLabel::dx, ObservableLabel::dp, ObservableLabel::uncertainty_product};
    s.route = Route::both;
    s.tolerance = 1e-5;
    s.sim.dim_field = 4;
    s.sim.dim_mech = 64;
    all.push_back(s);
  }
  {  // Dispersions for a coherent field. The reported curves are the weighted
    // averages of per-sector dispersions; the dispersion of the sector mixture
    // additionally carries the spread of the sector means, so no oracle gate.
    Scenario s = base_scenario();
    s.name = "fig8c";
    s.params.g0 = 0.1;
    s.params.g1 = 0.01;
    s.field_kind = FieldKind::coherent;
    s.alpha = Complex{2.0, 0.0};
    s.t_end = 8.0 * kPi;
    s.samples = 1601;
    s.outputs = {ObservableLabel::dx, ObservableLabel::dp};
    s.route = Route::analytic;
    all.push_back(s);
  }
  {  // Wigner snapshot run: fig7 parameters, state route only.
    Scenario s = base_scenario();
    s.name = "fig9";
    s.params.g0 = 0.1;
    s.params.g1 = 0.01;
    s.params.Omega = 0.25;
    s.params.omega_d = 2.5;
    s.field_kind = FieldKind::coherent;
    s.alpha = Complex{2.0, 0.0};
    s.t_end = 170.0;
    s.samples = 3401;
    s.outputs = {ObservableLabel::phonon_mean};
    s.route = Route::oracle;
    s.sim.dim_field = 16;
    s.sim.dim_mech = 64;
    all.push_back(s);
  }
  {  // Mandel parameter with both couplings: sub-Poissonian dips.
    Scenario s = base_scenario();
    s.name = "mandel";
    s.params.g0 = 0.6;
    s.params.g1 = 0.01;
    s.field_kind = FieldKind::number;
    s.n = 4;
    s.t_end = 8.0 * kPi;
    s.samples = 1601;
    s.outputs = {ObservableLabel::mandel_q, ObservableLabel::phonon_mean};
    s.route = Route::both;
    s.tolerance = 1e-5;
    s.sim.dim_field = 6;
    s.sim.dim_mech = 64;
    all.push_back(s);
  }
  {  // Pure linear coupling keeps the state coherent: Q identically 1.
    Scenario s = base_scenario();
    s.name = "mandel-linear";
    s.params.g0 = 0.6;
    s.field_kind = FieldKind::number;
    s.n = 4;
    s.t_end = 8.0 * kPi;
    s.samples = 1601;
    s.outputs = {ObservableLabel::mandel_q};
    s.route = Route::both;
    s.tolerance = 1e-5;
    s.sim.dim_field = 6;
    s.sim.dim_mech = 64;
    all.push_back(s);
  }
  return all;
}

}  // namespace

const std::vector<Scenario>& built_in_scenarios() {
  static const std::vector<Scenario> all = make_built_ins();
  return all;
}

const Scenario& find_scenario(const std::string& name) {
  for (const Scenario& s : built_in_scenarios()) {
    if (s.name == name) return s;
  }
  throw ConfigError("unknown scenario '" + name + "' (see list-scenarios)");
}

}  // namespace optomech
