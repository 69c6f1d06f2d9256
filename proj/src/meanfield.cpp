#include "xxzq/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "xxzq/errors.hpp"
#include "xxzq/numeric.hpp"

namespace xxzq {
namespace {

void check_options(const SolverOptions& o) {
  if (!(o.mixing > 0.0 && o.mixing <= 1.0)) throw InvalidArgument("mixing must lie in (0, 1]");
  if (!(o.tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (o.max_iter < 1) throw InvalidArgument("max_iter must be >= 1");
  if (o.max_restarts < 0 || o.branch_probes < 0) throw InvalidArgument("restart counts must be >= 0");
}

double distance(const MeanFieldParams& a, const MeanFieldParams& b) {
  return std::max({std::abs(a.u1 - b.u1), std::abs(a.u2 - b.u2), std::abs(a.u3 - b.u3)});
}

struct Attempt {
  MeanFieldParams mf;
  double residual = 0.0;
  int iterations = 0;
  int nonmonotone = 0;
  bool converged = false;
};

Attempt iterate(const ModelParams& params, MeanFieldParams u, const SolverOptions& o) {
  Attempt a;
  double previous = 0.0;
  for (int it = 0; it < o.max_iter; ++it) {
    const MeanFieldParams next = apply_gap_map(params, u, o.convention);
    const double r = distance(next, u);
    if (!std::isfinite(r)) break;
    if (it > 10 && r > previous) ++a.nonmonotone;
    previous = r;
    a.iterations = it + 1;
    a.residual = r;
    if (r < o.tol) {
      a.mf = u;
      a.converged = true;
      return a;
    }
    u.u1 = (1.0 - o.mixing) * u.u1 + o.mixing * next.u1;
    u.u2 = (1.0 - o.mixing) * u.u2 + o.mixing * next.u2;
    u.u3 = (1.0 - o.mixing) * u.u3 + o.mixing * next.u3;
  }
  a.mf = u;
  return a;
}

MeanFieldParams random_start(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> occ(0.0, 1.0);
  std::uniform_real_distribution<double> half(-0.5, 0.5);
  MeanFieldParams u;
  u.u1 = occ(rng);
  u.u2 = half(rng);
  u.u3 = half(rng);
  return u;
}

}  // namespace

std::vector<ModeData> mode_table(const ModelParams& params, const MeanFieldParams& mf) {
  const MomentumGrid grid = momentum_grid(params.n_sites);
  std::vector<ModeData> out;
  out.reserve(grid.modes.size());
  for (double q : grid.modes) out.push_back(mode_data(params, mf, q));
  return out;
}

MeanFieldParams apply_gap_map(const ModelParams& params, const MeanFieldParams& mf,
                              GapConvention convention) {
  params.validate();
  if (!std::isfinite(mf.u1) || !std::isfinite(mf.u2) || !std::isfinite(mf.u3)) {
    throw InvalidArgument("mean-field parameters must be finite");
  }
  const MomentumGrid grid = momentum_grid(params.n_sites);
  CompensatedSum s1, s2, s3;
  for (double q : grid.modes) {
    const ModeData d = mode_data(params, mf, q);
    if (d.gapless) {
      std::ostringstream msg;
      msg << "gapless mode at q = " << q;
      throw SingularModeError(msg.str(), q);
    }
    const double ra = d.a_q / d.eps_q;
    s1.add(ra);
    s2.add(std::cos(q) * ra);
    s3.add(std::sin(q) * d.b_q / d.eps_q);
  }
  const double norm = 1.0 / (2.0 * params.n_sites);
  const double sign3 = convention == GapConvention::consistent ? -1.0 : 1.0;
  return {0.5 - norm * s1.value(), -norm * s2.value(), sign3 * norm * s3.value()};
}

double gap_residual(const ModelParams& params, const MeanFieldParams& mf, GapConvention convention) {
  return distance(apply_gap_map(params, mf, convention), mf);
}

MeanFieldSolution solve_self_consistent(const ModelParams& params, const MeanFieldParams& init,
                                        const SolverOptions& options) {
  params.validate();
  check_options(options);
  std::mt19937_64 rng(options.restart_seed);

  Attempt best = iterate(params, init, options);
  int restarts = 0;
  while (!best.converged && restarts < options.max_restarts) {
    ++restarts;
    Attempt next = iterate(params, random_start(rng), options);
    if (next.converged || next.residual < best.residual) best = next;
  }
  if (!best.converged) {
    std::ostringstream msg;
    msg << "self-consistency did not converge after " << restarts << " restarts (residual "
        << best.residual << ")";
    throw ConvergenceError(msg.str(), best.residual);
  }

  MeanFieldSolution sol;
  sol.params = params;
  sol.mf = best.mf;
  sol.residual = best.residual;
  sol.iterations = best.iterations;
  sol.restarts = restarts;
  sol.nonmonotone_steps = best.nonmonotone;
  sol.convention = options.convention;
  sol.modes = mode_table(params, sol.mf);

  if (options.branch_probes > 0) {
    double spread = 0.0;
    for (int p = 0; p < options.branch_probes; ++p) {
      try {
        const Attempt probe = iterate(params, random_start(rng), options);
        if (probe.converged) spread = std::max(spread, distance(probe.mf, sol.mf));
      } catch (const SingularModeError&) {
      }
    }
    sol.branch_spread = spread;
  }
  return sol;
}

}  // namespace xxzq
