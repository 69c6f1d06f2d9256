#include "xxzq/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "xxzq/errors.hpp"
#include "xxzq/numeric.hpp"

namespace xxzq {

void TimeSeries::validate() const {
  if (times.size() != values.size()) throw InvalidArgument("times and values differ in length");
  if (times.size() < 2) return;
  const double dt = times[1] - times[0];
  const double tol = 1e-12 * std::max(1.0, std::abs(times.back()));
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    if (!(step > 0.0)) throw InvalidArgument("times must be strictly ascending");
    if (std::abs(step - dt) > tol) throw InvalidArgument("time grid is not uniform");
  }
}

std::vector<SuppressionEvent> suppression_events(const TimeSeries& series, const SuppressionOptions& options) {
  series.validate();
  const auto& v = series.values;
  const std::size_t n = v.size();
  std::vector<SuppressionEvent> events;
  if (n < 3) return events;

  std::size_t start = 0;
  while (start < n && series.times[start] - series.times[0] < options.skip) ++start;
  if (start + 2 >= n) return events;
  const auto [lo, hi] = std::minmax_element(v.begin() + static_cast<long>(start), v.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return events;

  double median_curvature = 0.0;
  if (options.curvature_factor > 0.0) {
    std::vector<double> d2;
    for (std::size_t i = 1; i + 1 < n; ++i) d2.push_back(std::abs(v[i + 1] - 2.0 * v[i] + v[i - 1]));
    std::nth_element(d2.begin(), d2.begin() + static_cast<long>(d2.size() / 2), d2.end());
    median_curvature = d2[d2.size() / 2];
  }

  for (std::size_t i = std::max<std::size_t>(start, 1); i + 1 < n; ++i) {
    if (!(v[i] < v[i - 1])) continue;
    std::size_t k = i + 1;
    while (k < n && v[k] == v[i]) ++k;
    if (k == n || !(v[k] > v[i])) continue;

    // Highest ground on each side before reaching a deeper point.
    double left = v[i];
    for (std::size_t j = i; j-- > start;) {
      if (v[j] < v[i]) break;
      left = std::max(left, v[j]);
    }
    double right = v[i];
    for (std::size_t j = k; j < n; ++j) {
      if (v[j] < v[i]) break;
      right = std::max(right, v[j]);
    }
    const double prominence = std::min(left, right) - v[i];
    if (prominence < options.prominence_fraction * range) continue;
    if (options.curvature_factor > 0.0) {
      const double d2 = std::abs(v[i + 1] - 2.0 * v[i] + v[i - 1]);
      if (d2 < options.curvature_factor * median_curvature) continue;
    }
    events.push_back({i, series.times[i], v[i], prominence});
  }
  return events;
}

std::optional<double> first_suppression_time(const TimeSeries& series, const SuppressionOptions& options) {
  if (series.times.size() < 50) throw InvalidArgument("suppression detection needs at least 50 samples");
  const auto events = suppression_events(series, options);
  if (events.empty()) return std::nullopt;
  return events.front().time;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw InvalidArgument("linear_fit: x and y differ in length");
  if (x.size() < 3) throw InvalidArgument("linear_fit needs at least 3 points");
  const double n = static_cast<double>(x.size());
  CompensatedSum sx, sy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx.add(x[i]);
    sy.add(y[i]);
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;
  CompensatedSum sxx, sxy, syy;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx.add((x[i] - mx) * (x[i] - mx));
    sxy.add((x[i] - mx) * (y[i] - my));
    syy.add((y[i] - my) * (y[i] - my));
  }
  if (!(sxx.value() > 0.0)) throw InvalidArgument("linear_fit: degenerate x values");
  LinearFit fit;
  fit.slope = sxy.value() / sxx.value();
  fit.intercept = my - fit.slope * mx;
  CompensatedSum ssr;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ssr.add(r * r);
  }
  fit.r_squared = syy.value() > 0.0 ? 1.0 - ssr.value() / syy.value() : 1.0;
  return fit;
}

void SweepGrid::validate() const {
  if (x_axis.empty() || t_axis.empty()) throw InvalidArgument("sweep grid is empty");
  if (values.size() != t_axis.size()) throw InvalidArgument("sweep grid row count mismatch");
  for (const auto& row : values) {
    if (row.size() != x_axis.size()) throw InvalidArgument("sweep grid column count mismatch");
  }
}

std::vector<RidgePoint> maximum_ridge(const SweepGrid& grid) {
  grid.validate();
  std::vector<RidgePoint> ridge;
  ridge.reserve(grid.t_axis.size());
  for (std::size_t k = 0; k < grid.t_axis.size(); ++k) {
    const auto& row = grid.values[k];
    std::size_t best = 0;
    for (std::size_t j = 1; j < row.size(); ++j) {
      if (row[j] > row[best] || (row[j] == row[best] && grid.x_axis[j] < grid.x_axis[best])) best = j;
    }
    ridge.push_back({grid.t_axis[k], grid.x_axis[best], row[best]});
  }
  return ridge;
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2) throw InvalidArgument("pearson: need two equal-length series");
  const double n = static_cast<double>(a.size());
  CompensatedSum sa, sb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa.add(a[i]);
    sb.add(b[i]);
  }
  const double ma = sa.value() / n;
  const double mb = sb.value() / n;
  CompensatedSum sab, saa, sbb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab.add((a[i] - ma) * (b[i] - mb));
    saa.add((a[i] - ma) * (a[i] - ma));
    sbb.add((b[i] - mb) * (b[i] - mb));
  }
  if (!(saa.value() > 0.0) || !(sbb.value() > 0.0)) throw InvalidArgument("pearson: constant series");
  return sab.value() / std::sqrt(saa.value() * sbb.value());
}

ShapeSummary shape_summary(const TimeSeries& series) {
  series.validate();
  const auto& v = series.values;
  if (v.size() < 3) throw InvalidArgument("shape summary needs at least 3 samples");
  ShapeSummary s;
  s.initial = v.front();
  const std::size_t late_start = v.size() - v.size() / 3;
  // The first early local maximum followed by a 10% dip; otherwise the early maximum.
  auto peak_index = static_cast<std::size_t>(
      std::max_element(v.begin(), v.begin() + static_cast<long>(late_start)) - v.begin());
  for (std::size_t i = 1; i < late_start; ++i) {
    if (v[i] < v[i - 1] || v[i] < v[i + 1] || v[i] - s.initial <= 0.1 * std::abs(v[i])) continue;
    double low = v[i];
    for (std::size_t k = i + 1; k < v.size() && v[k] <= v[i]; ++k) low = std::min(low, v[k]);
    if (v[i] - low > 0.1 * std::abs(v[i])) {
      peak_index = i;
      break;
    }
  }
  s.peak_time = series.times[peak_index];
  s.peak_value = v[peak_index];
  s.min_after_peak = *std::min_element(v.begin() + static_cast<long>(peak_index), v.end());
  CompensatedSum sum;
  for (std::size_t i = late_start; i < v.size(); ++i) sum.add(v[i]);
  const double count = static_cast<double>(v.size() - late_start);
  s.late_mean = sum.value() / count;
  CompensatedSum var;
  for (std::size_t i = late_start; i < v.size(); ++i) var.add((v[i] - s.late_mean) * (v[i] - s.late_mean));
  s.late_std = std::sqrt(var.value() / count);
  const double scale = std::max(std::abs(s.peak_value), 1e-300);
  s.rises = s.peak_value - s.initial > 0.1 * scale;
  s.drops = s.peak_value - s.min_after_peak > 0.1 * scale;
  s.saturates = s.late_mean > 0.0 && s.late_std < 0.5 * s.late_mean;
  return s;
}

}  // namespace xxzq
