#pragma once

#include <string>

#include "optomech/scenario.hpp"

namespace optomech {

/// Build a scenario from flat dotted key-value text, one `key = value` pair
/// per line, `#` comments and blank lines ignored. Unset keys keep the
/// Scenario defaults. Unknown keys and unparsable values throw ConfigError.
///
/// Keys: scenario.name; params.{omega_c,omega_m,g0,g1,Omega,omega_d};
/// state.{field,n,alpha,Gamma} (field = number|coherent, complex values as
/// "re" or "re im"); grid.{t_end,samples}; outputs (space-separated labels);
/// route (analytic|oracle|both); compare.{tolerance,t_max,relative_range,
/// smooth_window}; sim.{dim_field,dim_mech,abs_tol,rel_tol}.
Scenario parse_config(const std::string& text);

/// parse_config over the file's contents; missing file throws ConfigError.
Scenario load_config_file(const std::string& path);

/// Serialize every field in a fixed key order with full 17-digit precision,
/// so parse_config(scenario_to_config(s)) reproduces s exactly.
std::string scenario_to_config(const Scenario& s);

}  // namespace optomech
