#include "optomech/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "optomech/csv.hpp"
#include "optomech/errors.hpp"

namespace optomech {

namespace {

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

double parse_number(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': cannot parse number from '" + value + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': cannot parse integer from '" + value + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + value + "'");
}

Complex parse_complex(const std::string& key, const std::string& value) {
  std::istringstream in(trim(value));
  double re = 0.0, im = 0.0;
  if (!(in >> re)) throw ConfigError("key '" + key + "': cannot parse complex '" + value + "'");
  if (!(in >> im)) im = 0.0;
  std::string rest;
  if (in.clear(), in >> rest)
    throw ConfigError("key '" + key + "': trailing text in complex '" + value + "'");
  return Complex{re, im};
}

std::vector<ObservableLabel> parse_outputs(const std::string& value) {
  std::vector<ObservableLabel> out;
  std::istringstream in(value);
  std::string word;
  while (in >> word) {
    try {
      out.push_back(label_from_string(word));
    } catch (const ParameterError& err) {
      throw ConfigError(std::string("key 'outputs': ") + err.what());
    }
  }
  return out;
}

Route parse_route(const std::string& value) {
  const std::string v = trim(value);
  if (v == "analytic") return Route::analytic;
  if (v == "oracle") return Route::oracle;
  if (v == "both") return Route::both;
  throw ConfigError("key 'route': expected analytic|oracle|both, got '" + value + "'");
}

FieldKind parse_field(const std::string& value) {
  const std::string v = trim(value);
  if (v == "number") return FieldKind::number;
  if (v == "coherent") return FieldKind::coherent;
  throw ConfigError("key 'state.field': expected number|coherent, got '" + value + "'");
}

void apply(Scenario& s, const std::string& key, const std::string& value) {
  if (key == "scenario.name") s.name = trim(value);
  else if (key == "params.omega_c") s.params.omega_c = parse_number(key, value);
  else if (key == "params.omega_m") s.params.omega_m = parse_number(key, value);
  else if (key == "params.g0") s.params.g0 = parse_number(key, value);
  else if (key == "params.g1") s.params.g1 = parse_number(key, value);
  else if (key == "params.Omega") s.params.Omega = parse_number(key, value);
  else if (key == "params.omega_d") s.params.omega_d = parse_number(key, value);
  else if (key == "state.field") s.field_kind = parse_field(value);
  else if (key == "state.n") s.n = parse_int(key, value);
  else if (key == "state.alpha") s.alpha = parse_complex(key, value);
  else if (key == "state.Gamma") s.Gamma = parse_complex(key, value);
  else if (key == "grid.t_end") s.t_end = parse_number(key, value);
  else if (key == "grid.samples") s.samples = parse_int(key, value);
  else if (key == "outputs") s.outputs = parse_outputs(value);
  else if (key == "route") s.route = parse_route(value);
  else if (key == "compare.tolerance") s.tolerance = parse_number(key, value);
  else if (key == "compare.t_max") s.compare_t_max = parse_number(key, value);
  else if (key == "compare.relative_range") s.compare_relative_range = parse_bool(key, value);
  else if (key == "compare.smooth_window") s.smooth_window = parse_number(key, value);
  else if (key == "sim.dim_field") s.sim.dim_field = parse_int(key, value);
  else if (key == "sim.dim_mech") s.sim.dim_mech = parse_int(key, value);
  else if (key == "sim.abs_tol") s.sim.abs_tol = parse_number(key, value);
  else if (key == "sim.rel_tol") s.sim.rel_tol = parse_number(key, value);
  else throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

Scenario parse_config(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                        line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    apply(s, key, value);
  }
  return s;
}

Scenario load_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream content;
  content << file.rdbuf();
  return parse_config(content.str());
}

std::string scenario_to_config(const Scenario& s) {
  std::ostringstream out;
  const auto num = [](double v) { return format_double(v); };
  const auto cplx = [&](Complex v) { return num(v.real()) + " " + num(v.imag()); };
  out << "scenario.name = " << s.name << "\n";
  out << "params.omega_c = " << num(s.params.omega_c) << "\n";
  out << "params.omega_m = " << num(s.params.omega_m) << "\n";
  out << "params.g0 = " << num(s.params.g0) << "\n";
  out << "params.g1 = " << num(s.params.g1) << "\n";
  out << "params.Omega = " << num(s.params.Omega) << "\n";
  out << "params.omega_d = " << num(s.params.omega_d) << "\n";
  out << "state.field = " << (s.field_kind == FieldKind::number ? "number" : "coherent") << "\n";
  out << "state.n = " << s.n << "\n";
  out << "state.alpha = " << cplx(s.alpha) << "\n";
  out << "state.Gamma = " << cplx(s.Gamma) << "\n";
  out << "grid.t_end = " << num(s.t_end) << "\n";
  out << "grid.samples = " << s.samples << "\n";
  out << "outputs =";
  for (ObservableLabel label : s.outputs) out << " " << to_string(label);
  out << "\n";
  out << "route = ";
  switch (s.route) {
    case Route::analytic: out << "analytic"; break;
    case Route::oracle: out << "oracle"; break;
    case Route::both: out << "both"; break;
  }
  out << "\n";
  out << "compare.tolerance = " << num(s.tolerance) << "\n";
  out << "compare.t_max = " << num(s.compare_t_max) << "\n";
  out << "compare.relative_range = " << (s.compare_relative_range ? "true" : "false") << "\n";
  out << "compare.smooth_window = " << num(s.smooth_window) << "\n";
  out << "sim.dim_field = " << s.sim.dim_field << "\n";
  out << "sim.dim_mech = " << s.sim.dim_mech << "\n";
  out << "sim.abs_tol = " << num(s.sim.abs_tol) << "\n";
  out << "sim.rel_tol = " << num(s.sim.rel_tol) << "\n";
  return out.str();
}

}  // namespace optomech
