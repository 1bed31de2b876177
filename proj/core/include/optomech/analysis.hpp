#pragma once

#include <span>
#include <vector>

#include "optomech/observables.hpp"

namespace optomech {

/// Centered boxcar average of width `window` (time units): the exact average
/// of the series' linear interpolant over the window, which is clipped at the
/// data edges. Label and provenance carry over. Reproduces linear trends
/// exactly; a sinusoid averaged over its full period is suppressed down to
/// interpolation error. Throws when the window is smaller than the grid
/// spacing.
ObservableSeries moving_average(const ObservableSeries& series, double window);

/// Dominant angular frequency of an oscillating series, measured from
/// linearly interpolated crossings of the series mean:
/// omega = pi * (crossings - 1) / (t_last_crossing - t_first_crossing).
/// Throws when fewer than two crossings exist.
double dominant_frequency(std::span<const double> t, std::span<const double> values);

/// Local oscillation amplitude: at each sample, (max - min)/2 of the values
/// within a centered window of the given width.
std::vector<double> sliding_amplitude(std::span<const double> t,
                                      std::span<const double> values, double window);

/// Center of the deepest quiet stretch of an amplitude envelope and the
/// peak that follows it. The quiet stretch is the longest contiguous run
/// below min + 0.1 (max - min).
struct CollapseRevival {
  double collapse_time = 0.0;
  double revival_time = 0.0;
};
CollapseRevival collapse_revival_times(std::span<const double> t,
                                       std::span<const double> amplitude);

}  // namespace optomech
