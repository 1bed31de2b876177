#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "optomech/scenario.hpp"
#include "optomech/wigner.hpp"

namespace optomech {

/// Locale-independent decimal text with 17 significant digits, enough for
/// exact double round-trips and byte-identical reruns.
std::string format_double(double value);

/// Header `t,value_analytic,value_oracle`, one row per grid node. A null
/// column pointer leaves that field blank (route not run).
void write_observable_csv(std::ostream& os, std::span<const double> t,
                          const std::vector<double>* analytic, const std::vector<double>* oracle);

/// Header `x,p,w`, one row per grid cell (x outer loop), then a trailing
/// `summary,<min>,<max>` row.
void write_wigner_csv(std::ostream& os, const WignerGrid& grid);

/// Plain-text rendering of a comparison report, one line per observable.
std::string report_to_text(const ComparisonReport& report);

}  // namespace optomech
