#include "xxzq/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "xxzq/errors.hpp"
#include "xxzq/numeric.hpp"

namespace xxzq {

std::vector<double> uniform_times(double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw InvalidArgument("t_max must be >= 0");
  const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9));
  std::vector<double> t(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) t[k] = static_cast<double>(k) * dt;
  return t;
}

TimeSeries QuenchSeries::discord(std::size_t d) const {
  TimeSeries s{times, {}};
  for (const auto& m : measures.at(d)) s.values.push_back(m.discord);
  return s;
}

TimeSeries QuenchSeries::concurrence(std::size_t d) const {
  TimeSeries s{times, {}};
  for (const auto& m : measures.at(d)) s.values.push_back(m.concurrence);
  return s;
}

namespace {

int checked_depth(const std::vector<int>& distances) {
  if (distances.empty()) throw InvalidArgument("no distances requested");
  for (int m : distances) {
    if (m < 1 || m > kHarmonicTable) throw InvalidArgument("distances must lie in [1, 8]");
  }
  return *std::max_element(distances.begin(), distances.end());
}

std::vector<CorrelationMeasures> measure_cell(const QuenchSetup& setup, const std::vector<int>& distances,
                                              int m_max, double t, const OptimizerOptions& options) {
  const CorrelatorBlock block = correlator_block(setup, m_max, t);
  std::vector<CorrelationMeasures> out;
  out.reserve(distances.size());
  for (int m : distances) out.push_back(quantum_discord(two_site_state(block, m), options));
  return out;
}

QuenchSeries assemble(const std::vector<int>& distances, const std::vector<double>& times,
                      const std::vector<std::vector<CorrelationMeasures>>& rows, std::size_t offset) {
  QuenchSeries series;
  series.times = times;
  series.distances = distances;
  series.measures.assign(distances.size(), {});
  for (std::size_t d = 0; d < distances.size(); ++d) {
    series.measures[d].reserve(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) series.measures[d].push_back(rows[offset + k][d]);
  }
  return series;
}

}  // namespace

QuenchSeries evaluate_quench(const QuenchSetup& setup, const std::vector<int>& distances,
                             const std::vector<double>& times, const OptimizerOptions& options, int threads) {
  const int m_max = checked_depth(distances);
  const auto rows = parallel_map(times.size(), threads, [&](std::size_t k) {
    return measure_cell(setup, distances, m_max, times[k], options);
  });
  return assemble(distances, times, rows, 0);
}

std::vector<QuenchSeries> evaluate_sweep(const std::vector<QuenchSetup>& setups, const std::vector<int>& distances,
                                         const std::vector<double>& times, const OptimizerOptions& options,
                                         int threads) {
  const int m_max = checked_depth(distances);
  const std::size_t nt = times.size();
  const auto rows = parallel_map(setups.size() * nt, threads, [&](std::size_t cell) {
    return measure_cell(setups[cell / nt], distances, m_max, times[cell % nt], options);
  });
  std::vector<QuenchSeries> out;
  out.reserve(setups.size());
  for (std::size_t x = 0; x < setups.size(); ++x) out.push_back(assemble(distances, times, rows, x * nt));
  return out;
}

QuenchSetup solve_quench(const ModelParams& initial, const ModelParams& final_params, const SolverOptions& solver) {
  const MeanFieldSolution pre = solve_self_consistent(initial, {}, solver);
  const MeanFieldSolution post = solve_self_consistent(final_params, {}, solver);
  return prepare_quench(pre, post);
}

}  // namespace xxzq
