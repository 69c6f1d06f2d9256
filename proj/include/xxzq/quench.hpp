#pragma once

#include <complex>
#include <vector>

#include "xxzq/meanfield.hpp"

namespace xxzq {

/// Distances covered by the precomputed harmonic table.
inline constexpr int kHarmonicTable = 8;

/// Per positive mode, everything the correlator sums need.
struct QuenchMode {
  double q = 0.0;
  double eps_f = 0.0;
  double cos2theta_f = 0.0;
  double sin2theta_f = 0.0;
  double cos2phi = 0.0;
  double sin2phi = 0.0;
  double cos_qm[kHarmonicTable + 1] = {};
  double sin_qm[kHarmonicTable + 1] = {};
};

/// Sudden quench from the ground state of `pre` to evolution under `post`.
/// Immutable after construction.
struct QuenchSetup {
  MeanFieldSolution pre;
  MeanFieldSolution post;
  std::vector<double> phi;  // theta^F - theta^I per positive mode, wrapped to [-pi/2, pi/2]
  std::vector<QuenchMode> modes;

  int n_sites() const { return pre.params.n_sites; }
};

QuenchSetup prepare_quench(const MeanFieldSolution& pre, const MeanFieldSolution& post);

double hopping_correlator(const QuenchSetup& setup, int m, double t);
std::complex<double> pairing_correlator(const QuenchSetup& setup, int m, double t);

/// hop[m] = T_m for m = 0..m_max; pair[m-1] = P_m for m = 1..m_max.
struct CorrelatorBlock {
  double time = 0.0;
  std::vector<double> hop;
  std::vector<std::complex<double>> pair;

  int depth() const { return static_cast<int>(pair.size()); }
  double t_at(int m) const { return hop.at(static_cast<std::size_t>(m < 0 ? -m : m)); }
  /// P_m with P_0 = 0 and P_{-m} = -P_m.
  std::complex<double> p_at(int m) const {
    if (m == 0) return 0.0;
    if (m < 0) return -pair.at(static_cast<std::size_t>(-m - 1));
    return pair.at(static_cast<std::size_t>(m - 1));
  }
};

/// Same values as the per-distance calls (bitwise), computed in one pass over the modes.
CorrelatorBlock correlator_block(const QuenchSetup& setup, int m_max, double t);

/// Equilibrium correlators of a converged solution, from A_q/eps_q and B_q/eps_q directly.
CorrelatorBlock ground_state_block(const MeanFieldSolution& solution, int m_max);

struct GroupVelocity {
  double v_g = 0.0;
  double q_star = 0.0;  // maximizing positive momentum
};

/// max over q > 0 of |d eps_q / dq| using the exact derivative at fixed mean-field values.
GroupVelocity group_velocity_max(const MeanFieldSolution& solution);

double predicted_suppression_time(int n_sites, double v_g);

}  // namespace xxzq
