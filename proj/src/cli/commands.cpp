#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cli/csv.hpp"
#include "xxzq/errors.hpp"
#include "xxzq/numeric.hpp"
#include "xxzq/oracle.hpp"
#include "xxzq/pipeline.hpp"
#include "xxzq/version.hpp"

namespace xxzq::cli {
namespace {

SolverOptions read_solver(Config& c) {
  SolverOptions o;
  o.mixing = c.get_double("mixing", o.mixing);
  o.tol = c.get_double("tol", o.tol);
  o.max_iter = c.get_int("max_iter", o.max_iter);
  o.max_restarts = c.get_int("max_restarts", o.max_restarts);
  const std::string conv = c.get_string("gap_convention", "consistent");
  if (conv == "consistent") {
    o.convention = GapConvention::consistent;
  } else if (conv == "printed") {
    o.convention = GapConvention::printed;
  } else {
    throw ConfigError("gap_convention must be consistent or printed");
  }
  return o;
}

OptimizerOptions read_optimizer(Config& c) {
  OptimizerOptions o;
  o.n_theta = c.get_int("n_theta", o.n_theta);
  o.n_phi = c.get_int("n_phi", o.n_phi);
  o.refine_tol = c.get_double("refine_tol", o.refine_tol);
  if (o.n_theta < 33 || o.n_phi < 65) throw ConfigError("n_theta must be >= 33 and n_phi >= 65");
  if (!(o.refine_tol > 0.0)) throw ConfigError("refine_tol must be positive");
  return o;
}

SuppressionOptions read_suppression(Config& c) {
  SuppressionOptions o;
  o.skip = c.get_double("skip", o.skip);
  o.prominence_fraction = c.get_double("prominence", o.prominence_fraction);
  o.curvature_factor = c.get_double("curvature", o.curvature_factor);
  if (o.skip < 0.0 || o.prominence_fraction < 0.0 || o.curvature_factor < 0.0) {
    throw ConfigError("skip, prominence and curvature must be >= 0");
  }
  return o;
}

ModelParams model(double j, double delta, double h, int n) {
  ModelParams p{j, delta, h, n};
  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

double positive(Config& c, const std::string& key, double fallback) {
  const double v = c.get_double(key, fallback);
  if (!(v > 0.0)) throw ConfigError("key '" + key + "' must be positive");
  return v;
}

std::vector<int> read_distances(Config& c) {
  const auto d = c.get_ints("distances", {1});
  if (d.empty()) throw ConfigError("distances must not be empty");
  std::set<int> seen;
  for (int m : d) {
    if (m < 1 || m > kHarmonicTable) throw ConfigError("distances must lie in [1, 8]");
    if (!seen.insert(m).second) throw ConfigError("duplicate distance " + std::to_string(m));
  }
  return d;
}

std::vector<std::string> measure_columns(const std::vector<int>& distances) {
  std::vector<std::string> cols;
  for (int m : distances) {
    cols.push_back("Q_" + std::to_string(m));
    cols.push_back("C_" + std::to_string(m));
  }
  return cols;
}

std::string join_times(const std::vector<SuppressionEvent>& events) {
  std::string s;
  for (std::size_t i = 0; i < events.size(); ++i) s += (i ? "," : "") + format_double(events[i].time);
  return s.empty() ? "none" : s;
}

std::string shape_line(const std::string& name, const ShapeSummary& s) {
  std::ostringstream o;
  o << "shape " << name << ": initial=" << format_double(s.initial) << " peak_time=" << format_double(s.peak_time)
    << " peak=" << format_double(s.peak_value) << " min_after_peak=" << format_double(s.min_after_peak)
    << " late_mean=" << format_double(s.late_mean) << " late_std=" << format_double(s.late_std)
    << " rises=" << (s.rises ? "true" : "false") << " drops=" << (s.drops ? "true" : "false")
    << " saturates=" << (s.saturates ? "true" : "false");
  return o.str();
}

std::vector<double> axis(double start, double stop, double step) {
  if (!(step > 0.0)) throw ConfigError("x_step must be positive");
  if (stop < start) throw ConfigError("x_stop must not be below x_start");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
  std::vector<double> x(n + 1);
  for (std::size_t k = 0; k <= n; ++k) x[k] = start + static_cast<double>(k) * step;
  return x;
}

}  // namespace

int cmd_ground(Config& c, std::ostream& out, int /*threads*/) {
  const double j = positive(c, "J", 1.0);
  const ModelParams p = model(j, c.get_double("delta", 1.0), c.get_double("h", 0.0), c.get_int("N", 512));
  const SolverOptions solver = read_solver(c);
  c.reject_unused();

  const MeanFieldSolution sol = solve_self_consistent(p, {}, solver);
  const GroupVelocity vg = group_velocity_max(sol);
  CsvWriter csv(out, "ground", c);
  csv.columns({"q", "a_q", "b_q", "eps_q", "theta_q", "v_q", "u1", "u2", "u3", "residual", "iterations", "v_g",
               "q_star"});
  for (const ModeData& d : sol.modes) {
    const ModeSlopes s = mode_slopes(p, sol.mf, d.q);
    csv.cell(d.q).cell(d.a_q).cell(d.b_q).cell(d.eps_q).cell(d.theta_q);
    csv.cell((d.a_q * s.da_dq + d.b_q * s.db_dq) / d.eps_q);
    csv.cell(sol.mf.u1).cell(sol.mf.u2).cell(sol.mf.u3).cell(sol.residual).cell(sol.iterations);
    csv.cell(vg.v_g).cell(vg.q_star);
    csv.end_row();
  }
  return kOk;
}

int cmd_quench(Config& c, std::ostream& out, int threads) {
  const double j = positive(c, "J", 1.0);
  const int n = c.get_int("N", 400);
  const ModelParams pre = model(j, c.get_double("delta_i", 0.98), c.get_double("h_i", 0.0), n);
  const ModelParams post = model(j, c.get_double("delta_f", 1.0), c.get_double("h_f", 0.0), n);
  const double periods = c.get_double("t_max_periods", 0.0);
  double t_max = c.get_double("t_max", 20.0);
  const double dt = positive(c, "dt", 0.1);
  const std::vector<int> distances = read_distances(c);
  const bool detect = c.get_bool("detect", false);
  const SuppressionOptions sup = read_suppression(c);
  const SolverOptions solver = read_solver(c);
  const OptimizerOptions opt = read_optimizer(c);
  if (periods < 0.0 || t_max < 0.0) throw ConfigError("t_max and t_max_periods must be >= 0");
  c.reject_unused();

  const QuenchSetup setup = solve_quench(pre, post, solver);
  const GroupVelocity vg = group_velocity_max(setup.post);
  const double predicted = predicted_suppression_time(n, vg.v_g);
  if (periods > 0.0) {
    t_max = periods * predicted;
    c.resolve("t_max", format_double(t_max));
  }
  const QuenchSeries series = evaluate_quench(setup, distances, uniform_times(t_max, dt), opt, threads);

  CsvWriter csv(out, "quench", c);
  std::vector<std::string> cols{"t"};
  for (const auto& name : measure_columns(distances)) cols.push_back(name);
  csv.columns(cols);
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    csv.cell(series.times[k]);
    for (std::size_t d = 0; d < distances.size(); ++d) {
      csv.cell(series.measures[d][k].discord).cell(series.measures[d][k].concurrence);
    }
    csv.end_row();
  }
  csv.comment("v_g = " + format_double(vg.v_g) + " q_star = " + format_double(vg.q_star));
  csv.comment("predicted_suppression_time = " + format_double(predicted));
  for (std::size_t d = 0; d < distances.size(); ++d) {
    const std::string name = "Q_" + std::to_string(distances[d]);
    if (series.times.size() >= 3) csv.comment(shape_line(name, shape_summary(series.discord(d))));
    if (detect) {
      if (series.times.size() < 50) throw ConfigError("suppression detection needs at least 50 time samples");
      csv.comment("suppression " + name + " = " + join_times(suppression_events(series.discord(d), sup)));
    }
  }
  return kOk;
}

int cmd_sweep(Config& c, std::ostream& out, int threads) {
  const double j = positive(c, "J", 1.0);
  const int n = c.get_int("N", 400);
  const std::string mode = c.get_string("mode", "delta");
  std::function<std::pair<ModelParams, ModelParams>(double)> endpoints;
  if (mode == "delta") {
    const double di = c.get_double("delta_i", 0.0);
    const double h = c.get_double("h", 0.0);
    model(j, di, h, n);
    endpoints = [=](double x) { return std::pair{model(j, di, h, n), model(j, x, h, n)}; };
  } else if (mode == "field") {
    const double delta = c.get_double("delta", 0.5);
    const double hf = c.get_double("h_f", 0.0);
    model(j, delta, hf, n);
    endpoints = [=](double x) { return std::pair{model(j, delta, x, n), model(j, delta, hf, n)}; };
  } else if (mode == "anisotropy") {
    const double hi = c.get_double("h_i", 2.0);
    const double hf = c.get_double("h_f", 0.0);
    model(j, 0.0, hi, n);
    endpoints = [=](double x) { return std::pair{model(j, x, hi, n), model(j, x, hf, n)}; };
  } else {
    throw ConfigError("mode must be delta, field or anisotropy");
  }
  const std::vector<double> xs =
      axis(c.get_double("x_start", 0.2), c.get_double("x_stop", 3.0), c.get_double("x_step", 0.05));
  const double t_max = c.get_double("t_max", 40.0);
  const double dt = positive(c, "dt", 0.1);
  const std::vector<int> distances = read_distances(c);
  const SolverOptions solver = read_solver(c);
  const OptimizerOptions opt = read_optimizer(c);
  if (t_max < 0.0) throw ConfigError("t_max must be >= 0");
  c.reject_unused();

  std::vector<QuenchSetup> setups;
  setups.reserve(xs.size());
  for (double x : xs) {
    const auto [pre, post] = endpoints(x);
    setups.push_back(solve_quench(pre, post, solver));
  }
  const std::vector<double> times = uniform_times(t_max, dt);
  const auto series = evaluate_sweep(setups, distances, times, opt, threads);

  CsvWriter csv(out, "sweep", c);
  std::vector<std::string> cols{"x", "t"};
  for (const auto& name : measure_columns(distances)) cols.push_back(name);
  csv.columns(cols);
  for (std::size_t xi = 0; xi < xs.size(); ++xi) {
    for (std::size_t k = 0; k < times.size(); ++k) {
      csv.cell(xs[xi]).cell(times[k]);
      for (std::size_t d = 0; d < distances.size(); ++d) {
        csv.cell(series[xi].measures[d][k].discord).cell(series[xi].measures[d][k].concurrence);
      }
      csv.end_row();
    }
  }
  for (std::size_t d = 0; d < distances.size(); ++d) {
    for (const bool use_discord : {true, false}) {
      SweepGrid grid{xs, times, std::vector<std::vector<double>>(times.size(), std::vector<double>(xs.size()))};
      for (std::size_t xi = 0; xi < xs.size(); ++xi) {
        for (std::size_t k = 0; k < times.size(); ++k) {
          const auto& m = series[xi].measures[d][k];
          grid.values[k][xi] = use_discord ? m.discord : m.concurrence;
        }
      }
      const std::string name = (use_discord ? "Q_" : "C_") + std::to_string(distances[d]);
      for (const RidgePoint& r : maximum_ridge(grid)) {
        csv.comment("ridge " + name + " t=" + format_double(r.t) + " x=" + format_double(r.x) +
                    " value=" + format_double(r.value));
      }
    }
  }
  return kOk;
}

int cmd_scaling(Config& c, std::ostream& out, int threads) {
  const double j = positive(c, "J", 1.0);
  const std::vector<int> sizes = c.get_ints("sizes", {100, 200, 400, 800});
  const double di = c.get_double("delta_i", 0.98);
  const double df = c.get_double("delta_f", 1.0);
  const double hi = c.get_double("h_i", 0.0);
  const double hf = c.get_double("h_f", 0.0);
  const double dt = positive(c, "dt", 0.02);
  const double periods = positive(c, "t_max_periods", 3.0);
  const int m = c.get_int("distance", 1);
  const SuppressionOptions sup = read_suppression(c);
  const SolverOptions solver = read_solver(c);
  const OptimizerOptions opt = read_optimizer(c);
  if (sizes.size() < 3) throw ConfigError("sizes needs at least 3 entries");
  if (std::set<int>(sizes.begin(), sizes.end()).size() != sizes.size()) throw ConfigError("duplicate entries in sizes");
  if (m < 1 || m > kHarmonicTable) throw ConfigError("distance must lie in [1, 8]");
  std::vector<std::pair<ModelParams, ModelParams>> runs;
  for (int n : sizes) runs.emplace_back(model(j, di, hi, n), model(j, df, hf, n));
  c.reject_unused();

  // Reference velocity from the largest chain.
  const auto largest = std::max_element(sizes.begin(), sizes.end()) - sizes.begin();
  const double v_ref = group_velocity_max(solve_self_consistent(runs[static_cast<std::size_t>(largest)].second, {},
                                                                solver)).v_g;

  CsvWriter csv(out, "scaling", c);
  csv.columns({"N", "T_s", "predicted", "events", "spacing_ratio"});
  std::vector<double> ns, ts;
  std::string failed;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const QuenchSetup setup = solve_quench(runs[r].first, runs[r].second, solver);
    const int n = sizes[r];
    const double predicted = predicted_suppression_time(n, v_ref);
    const auto times = uniform_times(periods * predicted_suppression_time(n, group_velocity_max(setup.post).v_g), dt);
    const QuenchSeries series = evaluate_quench(setup, {m}, times, opt, threads);
    const auto events = suppression_events(series.discord(0), sup);
    if (events.empty()) {
      failed += (failed.empty() ? "" : ",") + std::to_string(n);
      csv.cell(n).cell(std::string("none")).cell(predicted).cell(0).cell(std::string("none"));
      csv.end_row();
      continue;
    }
    csv.cell(n).cell(events[0].time).cell(predicted).cell(static_cast<int>(events.size()));
    if (events.size() >= 2) {
      csv.cell((events[1].time - events[0].time) / events[0].time);
    } else {
      csv.cell(std::string("none"));
    }
    csv.end_row();
    ns.push_back(n);
    ts.push_back(events[0].time);
  }
  if (!failed.empty()) {
    csv.comment("suppression detection failed for N = " + failed);
    return kAnalysisFailure;
  }
  const LinearFit fit = linear_fit(ns, ts);
  csv.comment("slope = " + format_double(fit.slope) + " intercept = " + format_double(fit.intercept) +
              " r_squared = " + format_double(fit.r_squared));
  csv.comment("v_g = " + format_double(v_ref) + " predicted_slope = " + format_double(1.0 / (2.0 * v_ref)));
  return kOk;
}

int cmd_oracle_compare(Config& c, std::ostream& out, int threads) {
  const double j = positive(c, "J", 1.0);
  const int n = c.get_int("N", 8);
  if (n > kMaxEdSites) throw ConfigError("exact diagonalization is limited to N <= 14");
  const ModelParams pre = model(j, c.get_double("delta_i", 0.98), c.get_double("h_i", 0.0), n);
  const ModelParams post = model(j, c.get_double("delta_f", 1.0), c.get_double("h_f", 0.0), n);
  const double t_max = c.get_double("t_max", 20.0);
  const double dt = positive(c, "dt", 0.5);
  const int m = c.get_int("distance", 1);
  const SolverOptions solver = read_solver(c);
  const OptimizerOptions opt = read_optimizer(c);
  if (t_max < 0.0) throw ConfigError("t_max must be >= 0");
  if (m < 1 || m >= n || m > kHarmonicTable) throw ConfigError("distance out of range");
  c.reject_unused();

  const std::vector<double> times = uniform_times(t_max, dt);
  const QuenchSeries mf = evaluate_quench(solve_quench(pre, post, solver), {m}, times, opt, threads);

  const EdPropagator initial(build_hamiltonian(pre));
  const EdPropagator final_ham(build_hamiltonian(post));
  const DenseState psi0 = initial.ground_state();
  struct EdRow {
    CorrelationMeasures xstate;
    GenericMeasures generic;
    double leakage = 0.0;
  };
  const auto ed = parallel_map(times.size(), threads, [&](std::size_t k) {
    const Eigen::Matrix4cd rho = reduced_two_site(final_ham.evolve(psi0, times[k]), 0, m);
    EdRow row;
    row.leakage = off_x_leakage(rho);
    row.xstate = quantum_discord(assemble_two_site_state(xstate_entries(rho), m), opt);
    row.generic = generic_discord(rho, opt);
    return row;
  });

  CsvWriter csv(out, "oracle-compare", c);
  csv.columns({"t", "Q_ed", "C_ed", "Q_mf", "C_mf", "xstate_deviation", "off_x_leakage"});
  std::vector<double> q_ed, q_mf;
  double max_dev = 0.0, max_leak = 0.0, max_gap = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const EdRow& e = ed[k];
    const CorrelationMeasures& f = mf.measures[0][k];
    const double dev = std::abs(e.xstate.discord - e.generic.discord);
    csv.cell(times[k]).cell(e.xstate.discord).cell(e.xstate.concurrence).cell(f.discord).cell(f.concurrence);
    csv.cell(dev).cell(e.leakage);
    csv.end_row();
    max_dev = std::max(max_dev, dev);
    max_leak = std::max(max_leak, e.leakage);
    max_gap = std::max(max_gap, std::abs(e.xstate.discord - f.discord));
    q_ed.push_back(e.xstate.discord);
    q_mf.push_back(f.discord);
  }
  csv.comment("max_xstate_deviation = " + format_double(max_dev));
  csv.comment("max_off_x_leakage = " + format_double(max_leak));
  csv.comment("max_ed_mf_discord_gap = " + format_double(max_gap));
  try {
    csv.comment("pearson_ed_mf_discord = " + format_double(pearson_correlation(q_ed, q_mf)));
  } catch (const InvalidArgument&) {
    csv.comment("pearson_ed_mf_discord = undefined");
  }
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Sudden-quench dynamics of the XXZ chain: mean-field discord and concurrence"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  int threads = 1;
  std::vector<std::string> overrides;
  using Handler = int (*)(Config&, std::ostream&, int);
  const std::vector<std::pair<std::string, Handler>> commands{{"ground", cmd_ground},
                                                              {"quench", cmd_quench},
                                                              {"sweep", cmd_sweep},
                                                              {"scaling", cmd_scaling},
                                                              {"oracle-compare", cmd_oracle_compare}};
  const std::map<std::string, std::string> help{
      {"ground", "solve the self-consistent mean field and print the mode table"},
      {"quench", "discord and concurrence time series after a sudden quench"},
      {"sweep", "quench grid over final anisotropy, initial field or anisotropy"},
      {"scaling", "first suppression time versus chain length"},
      {"oracle-compare", "exact diagonalization versus mean field on a small chain"}};
  for (const auto& [name, handler] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", config_path, "key = value file");
    sub->add_option("--out", out_path, "output CSV (default stdout)");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("overrides", overrides, "key=value settings");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  Handler handler = nullptr;
  for (const auto& [name, h] : commands) {
    if (name == chosen->get_name()) handler = h;
  }
  try {
    Config config;
    if (!config_path.empty()) config.load_file(config_path);
    for (const auto& kv : overrides) config.set_assignment(kv);
    config.ignore("threads");
    // Thread count never reaches the output header: it must not change the bytes written.
    if (config.has("threads")) {
      const int from_config = config.get_int("threads", 1);
      config.forget("threads");
      if (chosen->count("--threads") == 0) threads = from_config;
    }
    if (threads < 1) throw ConfigError("threads must be >= 1");

    std::ostringstream buffer;
    const int code = handler(config, buffer, threads);
    if (out_path.empty()) {
      std::cout << buffer.str();
    } else {
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw ConfigError("cannot open output file " + out_path);
      file << buffer.str();
    }
    return code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ResourceError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kConfigError;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const SingularModeError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const AnalysisFailure& e) {
    std::cerr << "analysis failure: " << e.what() << '\n';
    return kAnalysisFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnexpected;
  }
}

}  // namespace xxzq::cli
