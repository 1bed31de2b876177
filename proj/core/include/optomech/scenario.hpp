#pragma once

#include <span>
#include <string>
#include <vector>

#include "optomech/observables.hpp"
#include "optomech/oracle.hpp"
#include "optomech/params.hpp"
#include "optomech/wigner.hpp"

namespace optomech {

enum class Route { analytic, oracle, both };

enum class FieldKind { number, coherent };

/// A named, fully specified computation: initial state, couplings, time
/// grid, which observables to evaluate and along which route(s). Every
/// built-in figure scenario is an instance; config files describe the same
/// structure as flat dotted key-value pairs.
struct Scenario {
  std::string name;
  SystemParams params;

  FieldKind field_kind = FieldKind::number;
  int n = 0;                ///< field photon number (field_kind == number)
  Complex alpha{0.0, 0.0};  ///< field amplitude (field_kind == coherent)
  Complex Gamma{0.0, 0.0};  ///< mechanical coherent amplitude

  double t_end = 0.0;  ///< the grid spans [0, t_end]
  int samples = 0;     ///< grid nodes including both ends (>= 2)

  std::vector<ObservableLabel> outputs;
  Route route = Route::both;

  /// Gate for the analytic-vs-oracle report: an absolute bound, or a
  /// fraction of the oracle signal range when compare_relative_range is set.
  double tolerance = 1e-5;
  /// Restrict the comparison to t <= compare_t_max (0 = whole grid).
  double compare_t_max = 0.0;
  bool compare_relative_range = false;
  /// When > 0, boxcar-average the oracle series over this window before
  /// comparing (drive scenarios whose analytic route tracks the mean).
  double smooth_window = 0.0;

  SimConfig sim;

  std::vector<double> grid() const;
  /// Throws ConfigError for structural problems (empty name, samples < 2,
  /// t_end <= 0, negative n); physical parameter checks stay with params.
  void validate() const;
};

struct ObservableComparison {
  ObservableLabel label = ObservableLabel::phonon_mean;
  double max_abs_dev = 0.0;
  double mean_abs_dev = 0.0;
  double t_at_max = 0.0;
  double bound = 0.0;  ///< the absolute bound that was applied
  bool pass = true;
};

struct ComparisonReport {
  std::string scenario;
  std::vector<ObservableComparison> entries;
  bool all_pass() const;
};

struct ScenarioResult {
  Scenario scenario;
  std::vector<double> t;
  std::vector<ObservableSeries> analytic;  ///< empty when route == oracle
  std::vector<ObservableSeries> oracle;    ///< empty when route == analytic
  ComparisonReport report;                 ///< entries only when both routes ran
};

/// Observable series along the coefficient-ODE route.
std::vector<ObservableSeries> analytic_series(const Scenario& s);

/// Observable series from the brute-force state propagation. When
/// `trajectory` is non-null the evolved states are handed back so callers
/// can reduce them further (Wigner snapshots) without re-propagating.
std::vector<ObservableSeries> oracle_series(const Scenario& s,
                                            StateTrajectory* trajectory = nullptr);

/// Run the routes the scenario asks for and, when both ran, fill the
/// comparison report (smoothing / windowing / relative-range per scenario).
ScenarioResult run_scenario(const Scenario& s);

/// Reduced-state Wigner functions of both subsystems at the requested times
/// (each within [0, t_end]). Needs a scenario whose route includes the
/// oracle; propagates once over {0} union times.
struct WignerSnapshot {
  double time = 0.0;
  Keep subsystem = Keep::mech;
  WignerGrid grid;
};
std::vector<WignerSnapshot> wigner_snapshots(const Scenario& s, std::span<const double> times,
                                             std::span<const double> x_axis,
                                             std::span<const double> p_axis);

/// Scenarios reproducing the library's reference figures.
const std::vector<Scenario>& built_in_scenarios();
/// Throws ConfigError for unknown names.
const Scenario& find_scenario(const std::string& name);

}  // namespace optomech
