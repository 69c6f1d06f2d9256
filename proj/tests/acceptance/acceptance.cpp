// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bdg_oracle.hpp"
#include "dense_grid_oracle.hpp"
#include "random_inputs.hpp"
#include "test_support.hpp"
#include "wick_oracle.hpp"
#include "xxzq/analysis.hpp"
#include "xxzq/errors.hpp"
#include "xxzq/gaussian.hpp"
#include "xxzq/meanfield.hpp"
#include "xxzq/measures.hpp"
#include "xxzq/numeric.hpp"
#include "xxzq/oracle.hpp"
#include "xxzq/pipeline.hpp"
#include "xxzq/quench.hpp"

using namespace xxzq;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int worker_count() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

// Solves a quench, returning nullopt for points without a usable mean-field solution.
std::optional<QuenchSetup> try_quench(const ModelParams& pre, const ModelParams& post) {
  try {
    return solve_quench(pre, post);
  } catch (const ConvergenceError&) {
  } catch (const SingularModeError&) {
  }
  return std::nullopt;
}

Outcome cusp_scaling() {
  const std::vector<int> sizes{100, 200, 400, 800};
  const double v_ref = group_velocity_max(solve_self_consistent({1.0, 1.0, 0.0, 800})).v_g;
  std::vector<double> ns, ts;
  bool periodic = true;
  std::ostringstream d;
  for (int n : sizes) {
    const QuenchSetup setup = solve_quench({1.0, 0.98, 0.0, n}, {1.0, 1.0, 0.0, n});
    const double period = predicted_suppression_time(n, group_velocity_max(setup.post).v_g);
    const auto times = uniform_times(3.0 * period, 0.02);
    const auto events = suppression_events(evaluate_quench(setup, {1}, times, {}, worker_count()).discord(0));
    d << "N=" << n << " events=" << events.size();
    if (events.size() < 2) {
      periodic = false;
      d << "; ";
      continue;
    }
    d << " T_s=" << fmt(events[0].time) << " ratios=";
    double previous = events[0].time;
    for (std::size_t k = 1; k < events.size(); ++k) {
      const double spacing = events[k].time - events[k - 1].time;
      const double ratio = spacing / previous;
      previous = spacing;
      periodic = periodic && ratio >= 0.9 && ratio <= 1.1;
      d << fmt(ratio, 4) << (k + 1 < events.size() ? "," : "");
    }
    d << "; ";
    ns.push_back(n);
    ts.push_back(events[0].time);
  }
  if (ns.size() < 3) return {false, d.str() + "too few sizes with cusps"};
  const LinearFit fit = linear_fit(ns, ts);
  const double predicted = 1.0 / (2.0 * v_ref);
  const bool slope_ok = std::abs(fit.slope - predicted) <= 0.1 * predicted;
  d << "slope=" << fmt(fit.slope) << " predicted=" << fmt(predicted) << " r2=" << fmt(fit.r_squared, 8);
  return {periodic && fit.r_squared > 0.99 && slope_ok && ns.size() == sizes.size(), d.str()};
}

Outcome discord_ridge() {
  const int n = 400;
  const double step = 0.05;
  std::vector<double> xs;
  std::vector<QuenchSetup> setups;
  for (int k = 0; k <= 56; ++k) {
    const double x = 0.2 + step * k;
    auto s = try_quench({1.0, 0.0, 0.0, n}, {1.0, x, 0.0, n});
    if (!s) return {false, "no mean-field solution at delta_f=" + fmt(x)};
    xs.push_back(x);
    setups.push_back(std::move(*s));
  }
  const auto times = uniform_times(40.0, 0.1);
  const auto sweep = evaluate_sweep(setups, {1}, times, {}, worker_count());
  SweepGrid q{xs, times, {}}, c{xs, times, {}};
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<double> qrow, crow;
    for (const auto& s : sweep) {
      qrow.push_back(s.measures[0][k].discord);
      crow.push_back(s.measures[0][k].concurrence);
    }
    q.values.push_back(qrow);
    c.values.push_back(crow);
  }
  const auto q_ridge = maximum_ridge(q);
  const auto c_ridge = maximum_ridge(c);
  std::size_t rows = 0, q_on = 0, c_off = 0;
  double q_worst = 0.0, c_closest = 1e300;
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] <= 10.0) continue;
    ++rows;
    const double dq = std::abs(q_ridge[k].x - 1.0);
    const double dc = std::abs(c_ridge[k].x - 1.0);
    q_worst = std::max(q_worst, dq);
    c_closest = std::min(c_closest, dc);
    if (dq <= step + 1e-9) ++q_on;
    if (dc >= step - 1e-9) ++c_off;
  }
  std::ostringstream d;
  d << "rows(t>10)=" << rows << " discord ridge within one step in " << q_on << " (max |x-1|=" << fmt(q_worst)
    << "); concurrence ridge displaced in " << c_off << " (min |x-1|=" << fmt(c_closest) << ")";
  return {q_on == rows && c_off == rows, d.str()};
}

Outcome field_depletion() {
  const QuenchSetup setup = solve_quench({1.0, 0.5, 2.0, 400}, {1.0, 0.5, 0.0, 400});
  const auto times = uniform_times(40.0, 0.1);
  const QuenchSeries s = evaluate_quench(setup, {1, 2}, times, {}, worker_count());
  double q1_max = 0.0;
  std::size_t late = 0, late_ok = 0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double q1 = s.measures[0][k].discord;
    const double q2 = s.measures[1][k].discord;
    q1_max = std::max(q1_max, q1);
    if (times[k] > 20.0) {
      ++late;
      if (q2 > q1) ++late_ok;
    }
  }
  std::ostringstream d;
  d << "max Q_1=" << fmt(q1_max) << "; Q_2 > Q_1 in " << late_ok << "/" << late << " samples with t>20";
  return {q1_max < 0.02 && late_ok == late, d.str()};
}

Outcome null_quench_suite() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> delta(-0.8, 2.0), field(0.0, 1.5);
  const auto times = uniform_times(20.0, 0.5);
  int accepted = 0, resampled = 0;
  double worst_q = 0.0, worst_c = 0.0;
  while (accepted < 20) {
    const ModelParams p{1.0, delta(rng), field(rng), 200};
    const auto setup = try_quench(p, p);
    if (!setup) {
      ++resampled;
      continue;
    }
    ++accepted;
    const QuenchSeries s = evaluate_quench(*setup, {1, 2, 3}, times, {}, worker_count());
    for (const auto& row : s.measures) {
      for (const auto& m : row) {
        worst_q = std::max(worst_q, std::abs(m.discord - row.front().discord));
        worst_c = std::max(worst_c, std::abs(m.concurrence - row.front().concurrence));
      }
    }
  }
  std::ostringstream d;
  d << "20 points (" << resampled << " resampled without a solution); max|dQ|=" << fmt(worst_q)
    << " max|dC|=" << fmt(worst_c);
  return {worst_q < 1e-10 && worst_c < 1e-10, d.str()};
}

Outcome initial_condition_suite() {
  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> delta(-0.8, 2.5), field(0.0, 1.5);
  int accepted = 0, resampled = 0;
  double worst = 0.0;
  while (accepted < 20) {
    const auto setup = try_quench({1.0, delta(rng), field(rng), 200}, {1.0, delta(rng), field(rng), 200});
    if (!setup) {
      ++resampled;
      continue;
    }
    ++accepted;
    const CorrelatorBlock t0 = correlator_block(*setup, 3, 0.0);
    const CorrelatorBlock g = ground_state_block(setup->pre, 3);
    for (int m = 0; m <= 3; ++m) {
      worst = std::max(worst, std::abs(t0.t_at(m) - g.t_at(m)));
      worst = std::max(worst, std::abs(t0.p_at(m) - g.p_at(m)));
    }
  }
  std::ostringstream d;
  d << "20 quenches (" << resampled << " resampled without a solution); max deviation=" << fmt(worst);
  return {worst < 1e-12, d.str()};
}

Outcome bdg_equivalence() {
  const int n = 64;
  double worst = 0.0;
  const std::vector<std::pair<ModelParams, ModelParams>> quenches{
      {{1.0, 0.0, 0.0, n}, {1.0, 2.0, 0.0, n}}, {{1.0, 0.5, 1.2, n}, {1.0, 1.5, 0.3, n}}};
  for (const auto& [a, b] : quenches) {
    const QuenchSetup q = solve_quench(a, b);
    const Eigen::MatrixXcd c0 = testing::ground_covariance(testing::nambu_matrix(q.pre.params, q.pre.mf));
    const Eigen::MatrixXd h = testing::nambu_matrix(q.post.params, q.post.mf);
    for (double t : {0.5, 1.0, 5.0}) {
      const Eigen::MatrixXcd c = testing::evolve_covariance(c0, h, t);
      for (int m = 0; m <= 3; ++m) {
        worst = std::max(worst, std::abs(hopping_correlator(q, m, t) - testing::bdg_hop(c, n, m)));
        if (m > 0) worst = std::max(worst, std::abs(pairing_correlator(q, m, t) - testing::bdg_pair(c, n, m)));
      }
    }
  }
  return {worst < 1e-8, "N=64, max deviation=" + fmt(worst)};
}

Outcome wick_equivalence() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const CorrelatorBlock b = testing::random_block(rng, 3);
    for (int m = 1; m <= 3; ++m) {
      const StringCorrelators s = string_correlators(b, m);
      worst = std::max(worst, std::abs(s.z - testing::string_by_enumeration(b, m, false)));
      worst = std::max(worst, std::abs(s.f - testing::string_by_enumeration(b, m, true)));
    }
  }
  return {worst < 1e-10, "20 blocks, m<=3, max deviation=" + fmt(worst)};
}

Outcome pfaffian_determinant() {
  std::mt19937_64 rng(8);
  double worst = 0.0;
  for (int n = 2; n <= 10; n += 2) {
    for (int trial = 0; trial < 50; ++trial) {
      const ComplexMatrix a = testing::random_antisymmetric(n, rng, trial % 2 == 1);
      const auto pf = pfaffian(a);
      const auto det = a.fullPivLu().determinant();
      worst = std::max(worst, std::abs(pf * pf - det) / std::abs(det));
    }
  }
  return {worst < 1e-10, "sizes 2..10, max relative deviation=" + fmt(worst)};
}

Outcome generic_discord_equivalence() {
  std::mt19937_64 rng(9);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const XStateEntries x = testing::random_xstate(rng);
    worst = std::max(worst, std::abs(generic_discord(density_matrix(x)).discord - quantum_discord(x).discord));
  }
  return {worst < 1e-4, "100 X-states, max |dQ|=" + fmt(worst)};
}

Outcome dense_grid_equivalence() {
  std::mt19937_64 rng(10);
  const testing::DenseGrid grid(2001, 4001);
  const int threads = worker_count();
  std::vector<XStateEntries> states;
  for (int trial = 0; trial < 100; ++trial) states.push_back(testing::random_xstate(rng));
  const auto gaps = parallel_map(states.size(), threads, [&](std::size_t k) {
    return std::abs(classical_correlation(states[k]).bits - grid.classical_correlation(states[k]));
  });
  const double worst = *std::max_element(gaps.begin(), gaps.end());
  return {worst < 1e-5, "100 X-states on a 2001x4001 grid, max |dQ|=" + fmt(worst)};
}

Outcome measure_anchors() {
  const CorrelationMeasures s = quantum_discord(testing::singlet());
  double classical = 0.0;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    XStateEntries x;
    double w[4], total = 0.0;
    for (double& v : w) total += (v = u(rng));
    x.x_plus = w[0] / total;
    x.y_plus = w[1] / total;
    x.y_minus = w[2] / total;
    x.x_minus = w[3] / total;
    classical = std::max(classical, std::abs(quantum_discord(x).discord));
  }
  std::ostringstream d;
  d << "singlet C=" << fmt(s.concurrence, 15) << " Q=" << fmt(s.discord, 15) << "; classical max Q=" << fmt(classical);
  return {std::abs(s.concurrence - 1.0) < 1e-9 && std::abs(s.discord - 1.0) < 1e-9 && classical < 1e-9, d.str()};
}

Outcome closure() {
  const SolverOptions options;
  double worst = 0.0, half_filling = 0.0;
  int solved = 0, failed = 0;
  for (int n : {64, 256, 512}) {
    for (double delta : {-0.9, -0.5, 0.0, 0.5, 0.98, 1.0, 1.5, 2.0, 3.0}) {
      for (double h : {0.0, 0.3, 1.0, 2.5}) {
        const ModelParams p{1.0, delta, h, n};
        try {
          const MeanFieldSolution s = solve_self_consistent(p, {}, options);
          ++solved;
          worst = std::max(worst, gap_residual(p, s.mf, options.convention));
          if (h == 0.0) half_filling = std::max(half_filling, std::abs(s.mf.u1 - 0.5));
        } catch (const ConvergenceError&) {
          ++failed;
        } catch (const SingularModeError&) {
          ++failed;
        }
      }
    }
  }
  std::ostringstream d;
  d << solved << " solutions (" << failed << " points returned no solution); max residual=" << fmt(worst)
    << " (tol " << fmt(options.tol) << "); max |u1-1/2| at h=0: " << fmt(half_filling);
  return {worst <= options.tol && half_filling < 1e-9, d.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / ("xxzq_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<std::string> runs{
      "ground N=512",
      "quench N=400 t_max=20 dt=0.1 distances=1,2,3 detect=true",
      "sweep mode=delta N=128 x_start=0.5 x_stop=2 x_step=0.25 t_max=10 dt=0.25",
      "sweep mode=field N=128 x_start=0 x_stop=2 x_step=0.5 t_max=10 dt=0.25 distances=1,2",
      "scaling sizes=100,200,300 dt=0.05",
      "oracle-compare"};
  int identical = 0;
  std::string mismatched;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    std::string outputs[2];
    int codes[2];
    for (int v = 0; v < 2; ++v) {
      const fs::path out = dir / ("run" + std::to_string(r) + "_" + std::to_string(v) + ".csv");
      const std::string cmd = std::string(XXZQ_TOOL) + " " + runs[r] + " --threads " + (v == 0 ? "1" : "8") +
                              " --out " + out.string() + " 2>/dev/null";
      const int status = std::system(cmd.c_str());
      codes[v] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
      outputs[v] = slurp(out);
    }
    if (codes[0] == codes[1] && outputs[0] == outputs[1] && !outputs[0].empty()) {
      ++identical;
    } else {
      mismatched += " [" + runs[r] + "]";
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return {identical == static_cast<int>(runs.size()),
          std::to_string(identical) + "/" + std::to_string(runs.size()) + " runs byte-identical" +
              (mismatched.empty() ? "" : "; differing:" + mismatched)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 cusp periodicity and T_s scaling", cusp_scaling},
      {"2 discord ridge at the critical anisotropy", discord_ridge},
      {"3 nearest-neighbour depletion after a field quench", field_depletion},
      {"4 null-quench invariance", null_quench_suite},
      {"5 initial correlators equal the ground state", initial_condition_suite},
      {"6a quench correlators vs BdG evolution", bdg_equivalence},
      {"6b string correlators vs Wick enumeration", wick_equivalence},
      {"6c pfaffian squared vs determinant", pfaffian_determinant},
      {"6d X-state discord vs projector algebra", generic_discord_equivalence},
      {"6e optimizer vs dense basis grid", dense_grid_equivalence},
      {"7 exact measure anchors", measure_anchors},
      {"8 self-consistency closure", closure},
      {"9 CLI determinism across thread counts", cli_determinism}};
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << " (" << fmt(seconds, 3) << " s)"
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
