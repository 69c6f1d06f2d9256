#pragma once

#include <vector>

#include "xxzq/analysis.hpp"
#include "xxzq/measures.hpp"
#include "xxzq/quench.hpp"

namespace xxzq {

/// t_k = k * dt for k = 0..floor(t_max / dt).
std::vector<double> uniform_times(double t_max, double dt);

struct QuenchSeries {
  std::vector<double> times;
  std::vector<int> distances;
  // measures[d][k] for distances[d] at times[k]
  std::vector<std::vector<CorrelationMeasures>> measures;

  TimeSeries discord(std::size_t d) const;
  TimeSeries concurrence(std::size_t d) const;
};

/// Measures for every (distance, time) pair. Times are spread over `threads` workers;
/// results do not depend on the thread count.
QuenchSeries evaluate_quench(const QuenchSetup& setup, const std::vector<int>& distances,
                             const std::vector<double>& times, const OptimizerOptions& options = {},
                             int threads = 1);

/// One series per setup, all cells spread over `threads` workers with ordered results.
std::vector<QuenchSeries> evaluate_sweep(const std::vector<QuenchSetup>& setups, const std::vector<int>& distances,
                                         const std::vector<double>& times, const OptimizerOptions& options = {},
                                         int threads = 1);

/// Solves both end points with the same solver options and prepares the quench.
QuenchSetup solve_quench(const ModelParams& initial, const ModelParams& final_params,
                         const SolverOptions& solver = {});

}  // namespace xxzq
