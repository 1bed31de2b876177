#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "optomech/config.hpp"
#include "optomech/csv.hpp"
#include "optomech/errors.hpp"
#include "optomech/oracle.hpp"
#include "optomech/scenario.hpp"

namespace fs = std::filesystem;

namespace {

using namespace optomech;

struct Overrides {
  std::string out_dir = ".";
  std::string route;
  std::string dims;
  double tol = -1.0;
  int samples = 0;
  double avg_window = -1.0;
};

void add_common_flags(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--out-dir", ov.out_dir, "Directory for emitted files (created if missing)");
  cmd->add_option("--route", ov.route, "Override the scenario route")
      ->check(CLI::IsMember({"analytic", "oracle", "both"}));
  cmd->add_option("--dims", ov.dims, "Override truncation dims as field,mech (e.g. 16,64)");
  cmd->add_option("--tol", ov.tol, "Override the comparison tolerance");
  cmd->add_option("--samples", ov.samples, "Override the grid sample count");
  cmd->add_option("--avg-window", ov.avg_window,
                  "Boxcar window (time units) applied to the oracle series before comparison");
}

/// Built-in name first; anything else is read as a config file.
Scenario resolve_scenario(const std::string& ref) {
  for (const Scenario& s : built_in_scenarios())
    if (s.name == ref) return s;
  if (fs::exists(ref)) return load_config_file(ref);
  throw ConfigError("'" + ref + "' is neither a built-in scenario nor a config file");
}

Scenario apply_overrides(Scenario s, const Overrides& ov) {
  if (!ov.route.empty()) {
    if (ov.route == "analytic") s.route = Route::analytic;
    else if (ov.route == "oracle") s.route = Route::oracle;
    else s.route = Route::both;
  }
  if (!ov.dims.empty()) {
    int f = 0, m = 0;
    char comma = 0;
    std::istringstream in(ov.dims);
    if (!(in >> f >> comma >> m) || comma != ',' || !(in >> std::ws).eof() || f < 2 || m < 2)
      throw ConfigError("--dims expects field,mech with both at least 2, got '" + ov.dims + "'");
    s.sim.dim_field = f;
    s.sim.dim_mech = m;
  }
  if (ov.tol >= 0.0) s.tolerance = ov.tol;
  if (ov.samples > 0) s.samples = ov.samples;
  if (ov.avg_window >= 0.0) s.smooth_window = ov.avg_window;
  return s;
}

/// Shortest round-trip decimal, with '.', '+', '-' mapped to filename-safe
/// characters ("0.25" -> "0p25").
std::string value_tag(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string text(buf, ptr);
  std::string out;
  for (char c : text) {
    if (c == '.') out += 'p';
    else if (c == '-') out += 'm';
    else if (c != '+') out += c;
  }
  return out;
}

/// One CSV per requested observable plus, when both routes ran, a plain-text
/// report. `tag` distinguishes sweep points ("" for plain runs).
void write_outputs(const ScenarioResult& r, const fs::path& out_dir, const std::string& tag) {
  if (r.scenario.outputs.empty()) return;
  fs::create_directories(out_dir);
  for (size_t j = 0; j < r.scenario.outputs.size(); ++j) {
    const std::string label = to_string(r.scenario.outputs[j]);
    std::ofstream os(out_dir / (r.scenario.name + tag + "_" + label + ".csv"));
    const std::vector<double>* a = r.analytic.empty() ? nullptr : &r.analytic[j].values;
    const std::vector<double>* o = r.oracle.empty() ? nullptr : &r.oracle[j].values;
    write_observable_csv(os, r.t, a, o);
  }
  if (r.scenario.route == Route::both) {
    std::ofstream os(out_dir / (r.scenario.name + tag + "_report.txt"));
    os << report_to_text(r.report);
  }
}

int finish_run(const ScenarioResult& r) {
  if (r.scenario.route == Route::both && !r.scenario.outputs.empty()) {
    std::cout << report_to_text(r.report);
    if (!r.report.all_pass()) return 4;
  }
  return 0;
}

void set_axis(Scenario& s, const std::string& axis, double v) {
  if (axis == "g0") s.params.g0 = v;
  else if (axis == "g1") s.params.g1 = v;
  else if (axis == "Omega") s.params.Omega = v;
  else if (axis == "omega_d") s.params.omega_d = v;
  else if (axis == "omega_c") s.params.omega_c = v;
  else if (axis == "omega_m") s.params.omega_m = v;
  else if (axis == "t_end") s.t_end = v;
  else if (axis == "n") {
    const int k = static_cast<int>(v);
    if (static_cast<double>(k) != v || k < 0)
      throw ConfigError("sweep axis 'n' needs nonnegative integers, got " + format_double(v));
    s.n = k;
  } else {
    throw ConfigError("unknown sweep axis '" + axis + "' (numeric scenario parameters only)");
  }
}

int cmd_run(const std::string& ref, const Overrides& ov) {
  const Scenario s = apply_overrides(resolve_scenario(ref), ov);
  const ScenarioResult result = run_scenario(s);
  write_outputs(result, ov.out_dir, "");
  return finish_run(result);
}

int cmd_sweep(const std::string& ref, const std::string& axis, const std::vector<double>& values,
              const Overrides& ov) {
  if (values.empty()) return 0;
  const Scenario base = apply_overrides(resolve_scenario(ref), ov);
  struct Point {
    std::string tag;
    std::future<ScenarioResult> result;
  };
  std::vector<Point> points;
  points.reserve(values.size());
  for (double v : values) {
    Scenario s = base;
    set_axis(s, axis, v);
    s.validate();
    const std::string tag = "_" + axis + value_tag(v);
    points.push_back(
        {tag, std::async(std::launch::async, [s] { return run_scenario(s); })});
  }
  int exit_code = 0;
  for (Point& p : points) {
    const ScenarioResult result = p.result.get();
    write_outputs(result, ov.out_dir, p.tag);
    if (result.scenario.route == Route::both && !result.scenario.outputs.empty()) {
      std::cout << "sweep point" << p.tag << ":\n" << report_to_text(result.report);
      if (!result.report.all_pass()) exit_code = 4;
    }
  }
  return exit_code;
}

int cmd_wigner(const std::string& ref, const Overrides& ov, std::vector<double> times,
               const std::vector<double>& grid_spec) {
  const Scenario s = apply_overrides(resolve_scenario(ref), ov);
  if (grid_spec.size() != 3)
    throw ConfigError("--grid expects lo,hi,count");
  const int count = static_cast<int>(grid_spec[2]);
  if (static_cast<double>(count) != grid_spec[2])
    throw ConfigError("--grid count must be an integer");
  const std::vector<double> axis = uniform_axis(grid_spec[0], grid_spec[1], count);

  const std::vector<WignerSnapshot> snaps = wigner_snapshots(s, times, axis, axis);
  fs::create_directories(ov.out_dir);
  for (const WignerSnapshot& snap : snaps) {
    const std::string side = snap.subsystem == Keep::mech ? "mech" : "field";
    const std::string name =
        s.name + "_wigner_" + side + "_t" + value_tag(snap.time) + ".csv";
    std::ofstream os(fs::path(ov.out_dir) / name);
    write_wigner_csv(os, snap.grid);
    std::cout << name << ": min " << format_double(snap.grid.min_value()) << ", max "
              << format_double(snap.grid.max_value()) << ", integral "
              << format_double(snap.grid.integral()) << "\n";
  }
  return 0;
}

int cmd_converge(const std::string& ref, const Overrides& ov) {
  const Scenario s = apply_overrides(resolve_scenario(ref), ov);
  const std::vector<double> grid = s.grid();
  const auto make_psi0 = [&s](int dim_field, int dim_mech) {
    const StateVector field = s.field_kind == FieldKind::number
                                  ? number_state(s.n, dim_field)
                                  : coherent_state(s.alpha, dim_field);
    return tensor(field, coherent_state(s.Gamma, dim_mech));
  };
  const ConvergedRun run = propagate_converged(make_psi0, s.params, grid, s.sim);
  std::cout << "dim_field  dim_mech  max_observable_shift\n";
  for (const ConvergenceStep& step : run.steps) {
    std::cout << std::setw(9) << step.dim_field << "  " << std::setw(8) << step.dim_mech << "  ";
    if (std::isnan(step.max_shift)) std::cout << "(first stage)\n";
    else std::cout << format_double(step.max_shift) << "\n";
  }
  std::cout << "converged at " << run.trajectory.dim_field << "x" << run.trajectory.dim_mech
            << ", max norm drift " << format_double(run.trajectory.max_norm_drift) << "\n";
  return 0;
}

int cmd_list() {
  std::ostringstream out;
  for (const Scenario& s : built_in_scenarios()) {
    out << s.name << ": ";
    if (s.field_kind == FieldKind::number) out << "field n=" << s.n;
    else out << "field alpha=" << s.alpha.real();
    out << " Gamma=" << s.Gamma.real();
    out << " g0=" << s.params.g0 << " g1=" << s.params.g1;
    if (s.params.Omega != 0.0)
      out << " Omega=" << s.params.Omega << " omega_d=" << s.params.omega_d;
    out << " t_end=" << s.t_end << " route=";
    switch (s.route) {
      case Route::analytic: out << "analytic"; break;
      case Route::oracle: out << "oracle"; break;
      case Route::both: out << "both"; break;
    }
    out << " outputs=";
    for (size_t j = 0; j < s.outputs.size(); ++j)
      out << (j ? "," : "") << to_string(s.outputs[j]);
    out << "\n";
  }
  std::cout << out.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Optomechanical time evolution: product-propagator route, direct state "
      "propagation, and their comparison"};
  app.require_subcommand(1);

  std::string ref;
  Overrides ov;
  std::string axis;
  std::vector<double> values;
  std::vector<double> times;
  std::vector<double> grid_spec{-5.0, 5.0, 101.0};

  CLI::App* run = app.add_subcommand("run", "Run one scenario and write its observable CSVs");
  run->add_option("scenario", ref, "Built-in scenario name or config file path")->required();
  add_common_flags(run, ov);

  CLI::App* sweep =
      app.add_subcommand("sweep", "Run a scenario once per value of one numeric parameter");
  sweep->add_option("scenario", ref, "Built-in scenario name or config file path")->required();
  sweep->add_option("--param", axis, "Parameter to sweep (g0, g1, Omega, omega_d, n, ...)")
      ->required();
  sweep->add_option("--values", values,
                    "Comma-separated parameter values (omitted = empty sweep, a no-op)")
      ->delimiter(',');
  add_common_flags(sweep, ov);

  CLI::App* wig =
      app.add_subcommand("wigner", "Write Wigner-function grids of both reduced states");
  wig->add_option("scenario", ref, "Built-in scenario name or config file path")->required();
  wig->add_option("--times", times, "Comma-separated snapshot times")->required()->delimiter(',');
  wig->add_option("--grid", grid_spec, "Phase-space axis as lo,hi,count")->delimiter(',');
  add_common_flags(wig, ov);

  CLI::App* conv = app.add_subcommand(
      "converge", "Propagate with dimension doubling and print the convergence table");
  conv->add_option("scenario", ref, "Built-in scenario name or config file path")->required();
  add_common_flags(conv, ov);

  CLI::App* list = app.add_subcommand("list-scenarios", "List the built-in scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(ref, ov);
    if (sweep->parsed()) return cmd_sweep(ref, axis, values, ov);
    if (wig->parsed()) return cmd_wigner(ref, ov, times, grid_spec);
    if (conv->parsed()) return cmd_converge(ref, ov);
    if (list->parsed()) return cmd_list();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const StructureError& e) {
    std::cerr << "structure error: " << e.what() << "\n";
    return 3;
  } catch (const IntegrationError& e) {
    std::cerr << "integration failure: " << e.what() << "\n";
    return 3;
  } catch (const ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
