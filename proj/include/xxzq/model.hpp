#pragma once

#include <span>
#include <vector>

namespace xxzq {

/// One point of the rotated-frame XXZ chain in a transverse field:
///   H = sum_j [ J (Delta Sx_j Sx_{j+1} + Sy_j Sy_{j+1} + Sz_j Sz_{j+1}) - h Sz_j ]
/// with periodic boundaries. Energies in units where hbar = 1.
struct ModelParams {
  double coupling_j = 1.0;
  double anisotropy = 1.0;
  double field = 0.0;
  int n_sites = 4;

  /// Throws InvalidArgument unless n_sites is even and >= 4, J > 0 and all values finite.
  void validate() const;
};

/// Mean-field averages: u1 = <n_j>, u2 = <a+_j a_{j+1}>, u3 = <a+_j a+_{j+1}>.
struct MeanFieldParams {
  double u1 = 0.5;
  double u2 = 0.0;
  double u3 = 0.0;
};

/// Antiperiodic-sector momenta q = +-(2n-1)pi/N, stored in ascending order.
struct MomentumGrid {
  std::vector<double> modes;

  /// The q > 0 half (the upper half of `modes`).
  std::span<const double> positive_modes() const {
    return std::span<const double>(modes).subspan(modes.size() / 2);
  }
};

MomentumGrid momentum_grid(int n_sites);

/// Single-mode Bogoliubov data. theta_q = atan2(-B_q, A_q) / 2, so that
/// A_q = eps_q cos(2 theta_q) and B_q = -eps_q sin(2 theta_q).
struct ModeData {
  double q = 0.0;
  double a_q = 0.0;
  double b_q = 0.0;
  double eps_q = 0.0;
  double theta_q = 0.0;
  bool gapless = false;  // eps_q below the gapless tolerance; theta_q set to 0
};

ModeData mode_data(const ModelParams& params, const MeanFieldParams& mf, double q);

/// Energy scale below which a mode counts as gapless.
double gapless_tolerance(const ModelParams& params);

/// Exact q-derivatives of A_q and B_q at fixed mean-field parameters.
struct ModeSlopes {
  double da_dq = 0.0;
  double db_dq = 0.0;
};
ModeSlopes mode_slopes(const ModelParams& params, const MeanFieldParams& mf, double q);

}  // namespace xxzq
