#pragma once

#include <optional>
#include <vector>

namespace xxzq {

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;

  /// Throws InvalidArgument unless sizes match, times strictly ascend and spacing is uniform.
  void validate() const;
};

struct SuppressionOptions {
  double skip = 5.0;                 // ignore t - t_0 < skip (initial transient)
  double prominence_fraction = 0.5;  // minimum dip depth relative to the post-skip range
  double curvature_factor = 0.0;     // if > 0, also require |second difference| >= factor * median
};

struct SuppressionEvent {
  std::size_t index = 0;
  double time = 0.0;
  double value = 0.0;
  double prominence = 0.0;
};

/// Local minima after `skip` that pass the prominence (and optional curvature) test, in time order.
std::vector<SuppressionEvent> suppression_events(const TimeSeries& series, const SuppressionOptions& options = {});

/// Time of the first suppression event. Needs at least 50 samples.
std::optional<double> first_suppression_time(const TimeSeries& series, const SuppressionOptions& options = {});

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// values[k][j] is the measure at t_axis[k], x_axis[j].
struct SweepGrid {
  std::vector<double> x_axis;
  std::vector<double> t_axis;
  std::vector<std::vector<double>> values;

  void validate() const;
};

struct RidgePoint {
  double t = 0.0;
  double x = 0.0;
  double value = 0.0;
};

/// Per time row, the x maximizing the measure; ties go to the smaller x.
std::vector<RidgePoint> maximum_ridge(const SweepGrid& grid);

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);

/// Coarse description of a time series used for qualitative checks.
struct ShapeSummary {
  double initial = 0.0;
  double peak_time = 0.0;
  double peak_value = 0.0;
  double min_after_peak = 0.0;
  double late_mean = 0.0;  // mean over the last third
  double late_std = 0.0;
  bool rises = false;      // peak well above the initial value
  bool drops = false;      // falls well below the peak afterwards
  bool saturates = false;  // late values fluctuate around a nonzero mean
};

ShapeSummary shape_summary(const TimeSeries& series);

}  // namespace xxzq
