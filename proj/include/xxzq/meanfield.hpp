#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "xxzq/model.hpp"

namespace xxzq {

/// Sign of the pairing gap equation.
///  consistent: u3 = -(1/2N) sum_q sin(q) B_q/eps_q, which makes u3 equal to the
///              <a+_j a+_{j+1}> of the ground state it generates.
///  printed:    the opposite sign.
enum class GapConvention { consistent, printed };

struct SolverOptions {
  double mixing = 0.5;
  double tol = 1e-12;
  int max_iter = 10000;
  int max_restarts = 8;
  std::uint64_t restart_seed = 0x5eed'cafeULL;
  GapConvention convention = GapConvention::consistent;
  // Extra solves from seeded starting points used only to report coexisting branches.
  int branch_probes = 0;
};

struct MeanFieldSolution {
  ModelParams params;
  MeanFieldParams mf;
  std::vector<ModeData> modes;  // full grid, ascending q
  double residual = 0.0;
  int iterations = 0;
  int restarts = 0;
  int nonmonotone_steps = 0;  // residual increases after iteration 10
  GapConvention convention = GapConvention::consistent;
  std::optional<double> branch_spread;  // max |u - u_probe| over converged probes, if any probe ran

  /// Modes with q > 0, in ascending order.
  std::span<const ModeData> positive_modes() const {
    return std::span<const ModeData>(modes).subspan(modes.size() / 2);
  }
};

/// One application of the self-consistency map. Throws SingularModeError on a gapless mode.
MeanFieldParams apply_gap_map(const ModelParams& params, const MeanFieldParams& mf,
                              GapConvention convention = GapConvention::consistent);

/// max-component distance between mf and apply_gap_map(mf).
double gap_residual(const ModelParams& params, const MeanFieldParams& mf,
                    GapConvention convention = GapConvention::consistent);

MeanFieldSolution solve_self_consistent(const ModelParams& params, const MeanFieldParams& init = {},
                                        const SolverOptions& options = {});

/// Mode table for given mean-field values, without solving.
std::vector<ModeData> mode_table(const ModelParams& params, const MeanFieldParams& mf);

}  // namespace xxzq
