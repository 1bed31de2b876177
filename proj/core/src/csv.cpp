#include "optomech/csv.hpp"

#include <charconv>
#include <iomanip>
#include <sstream>

namespace optomech {

std::string format_double(double value) {
  char buf[40];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void write_observable_csv(std::ostream& os, std::span<const double> t,
                          const std::vector<double>* analytic, const std::vector<double>* oracle) {
  os << "t,value_analytic,value_oracle\n";
  for (size_t i = 0; i < t.size(); ++i) {
    os << format_double(t[i]) << ',';
    if (analytic) os << format_double((*analytic)[i]);
    os << ',';
    if (oracle) os << format_double((*oracle)[i]);
    os << '\n';
  }
}

void write_wigner_csv(std::ostream& os, const WignerGrid& grid) {
  os << "x,p,w\n";
  for (size_t i = 0; i < grid.x_axis.size(); ++i) {
    for (size_t j = 0; j < grid.p_axis.size(); ++j) {
      os << format_double(grid.x_axis[i]) << ',' << format_double(grid.p_axis[j]) << ','
         << format_double(grid.values(i, j)) << '\n';
    }
  }
  os << "summary," << format_double(grid.min_value()) << ',' << format_double(grid.max_value())
     << '\n';
}

std::string report_to_text(const ComparisonReport& report) {
  std::ostringstream out;
  out << "comparison report: " << report.scenario << "\n";
  if (report.entries.empty()) {
    out << "  (no analytic-vs-oracle comparison requested)\n";
    return out.str();
  }
  out << "  " << std::left << std::setw(20) << "observable" << std::right << std::setw(13)
      << "max_dev" << std::setw(13) << "mean_dev" << std::setw(13) << "at_t" << std::setw(13)
      << "bound"
      << "  status\n";
  out << std::scientific << std::setprecision(3);
  for (const ObservableComparison& e : report.entries) {
    out << "  " << std::left << std::setw(20) << to_string(e.label) << std::right << std::setw(13)
        << e.max_abs_dev << std::setw(13) << e.mean_abs_dev << std::setw(13) << e.t_at_max
        << std::setw(13) << e.bound << "  " << (e.pass ? "PASS" : "FAIL") << "\n";
  }
  out << "  overall: " << (report.all_pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace optomech
