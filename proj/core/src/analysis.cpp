#include "optomech/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "optomech/errors.hpp"

namespace optomech {

ObservableSeries moving_average(const ObservableSeries& series, double window) {
  const auto& t = series.t;
  const auto& y = series.values;
  if (t.size() != y.size() || t.size() < 2)
    throw ParameterError("series needs matching t/values with >= 2 samples");
  double min_spacing = t[1] - t[0];
  for (size_t k = 2; k < t.size(); ++k) min_spacing = std::min(min_spacing, t[k] - t[k - 1]);
  if (window < min_spacing)
    throw ParameterError("moving-average window " + std::to_string(window) +
                         " is below the grid spacing " + std::to_string(min_spacing));

  // The windowed value is the exact average of the linear interpolant over
  // the (edge-clipped) window. Unlike a plain sample mean this has no
  // endpoint double-count bias and no half-sample lag, and it handles
  // non-uniform grids.
  std::vector<double> prefix(t.size(), 0.0);
  for (size_t k = 1; k < t.size(); ++k)
    prefix[k] = prefix[k - 1] + 0.5 * (y[k] + y[k - 1]) * (t[k] - t[k - 1]);

  auto integral_to = [&](double tau) {
    const auto it = std::upper_bound(t.begin(), t.end(), tau);
    if (it == t.begin()) return 0.0;
    if (it == t.end()) return prefix.back();
    const size_t j = static_cast<size_t>(it - t.begin());
    const size_t i = j - 1;
    const double u = (tau - t[i]) / (t[j] - t[i]);
    const double y_tau = y[i] + u * (y[j] - y[i]);
    return prefix[i] + 0.5 * (y[i] + y_tau) * (tau - t[i]);
  };

  ObservableSeries out;
  out.label = series.label;
  out.provenance = series.provenance;
  out.t = t;
  out.values.resize(y.size());
  const double half = 0.5 * window;
  for (size_t i = 0; i < t.size(); ++i) {
    const double a = std::max(t.front(), t[i] - half);
    const double b = std::min(t.back(), t[i] + half);
    out.values[i] = (integral_to(b) - integral_to(a)) / (b - a);
  }
  return out;
}

double dominant_frequency(std::span<const double> t, std::span<const double> values) {
  if (t.size() != values.size() || t.size() < 3)
    throw ParameterError("frequency measurement needs >= 3 samples");
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) /
                      static_cast<double>(values.size());
  double first = 0.0, last = 0.0;
  int crossings = 0;
  for (size_t k = 1; k < values.size(); ++k) {
    const double a = values[k - 1] - mean, b = values[k] - mean;
    if (a == 0.0 || (a < 0.0) == (b < 0.0)) continue;
    const double tc = t[k - 1] + (t[k] - t[k - 1]) * (-a) / (b - a);
    if (crossings == 0) first = tc;
    last = tc;
    ++crossings;
  }
  if (crossings < 2)
    throw ParameterError("fewer than two mean crossings; cannot measure a frequency");
  constexpr double pi = 3.14159265358979323846;
  return pi * (crossings - 1) / (last - first);
}

std::vector<double> sliding_amplitude(std::span<const double> t,
                                      std::span<const double> values, double window) {
  if (t.size() != values.size() || t.size() < 2)
    throw ParameterError("envelope needs matching t/values with >= 2 samples");
  std::vector<double> amplitude(t.size());
  const double half = 0.5 * window * (1.0 + 1e-12);
  size_t lo = 0, hi = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    while (t[i] - t[lo] > half) ++lo;
    while (hi + 1 < t.size() && t[hi + 1] - t[i] <= half) ++hi;
    const auto [mn, mx] = std::minmax_element(values.begin() + static_cast<long>(lo),
                                              values.begin() + static_cast<long>(hi) + 1);
    amplitude[i] = 0.5 * (*mx - *mn);
  }
  return amplitude;
}

CollapseRevival collapse_revival_times(std::span<const double> t,
                                       std::span<const double> amplitude) {
  if (t.size() != amplitude.size() || t.size() < 3)
    throw ParameterError("collapse/revival extraction needs >= 3 samples");
  const auto [mn_it, mx_it] = std::minmax_element(amplitude.begin(), amplitude.end());
  const double threshold = *mn_it + 0.1 * (*mx_it - *mn_it);

  size_t best_lo = 0, best_hi = 0, run_lo = 0;
  bool in_run = false;
  for (size_t k = 0; k <= amplitude.size(); ++k) {
    const bool below = k < amplitude.size() && amplitude[k] <= threshold;
    if (below && !in_run) {
      run_lo = k;
      in_run = true;
    } else if (!below && in_run) {
      if (k - 1 - run_lo > best_hi - best_lo) {
        best_lo = run_lo;
        best_hi = k - 1;
      }
      in_run = false;
    }
  }
  if (best_hi == best_lo && amplitude[best_lo] > threshold)
    throw ParameterError("no quiet stretch found in the envelope");

  CollapseRevival out;
  out.collapse_time = 0.5 * (t[best_lo] + t[best_hi]);
  const auto peak = std::max_element(amplitude.begin() + static_cast<long>(best_hi),
                                     amplitude.end());
  out.revival_time = t[static_cast<size_t>(peak - amplitude.begin())];
  return out;
}

}  // namespace optomech
