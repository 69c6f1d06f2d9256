#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "xxzq/quench.hpp"

namespace xxzq {

using ComplexMatrix = Eigen::MatrixXcd;

/// Pfaffian by Parlett-Reid elimination with partial pivoting.
/// Throws InvalidArgument if `a` is not square or not antisymmetric to 1e-12
/// (relative to its largest entry). Odd dimension gives 0.
std::complex<double> pfaffian(const ComplexMatrix& a);

/// Antisymmetric Majorana covariance Gamma_jk = <c_j c_k> - delta_jk over sites 0..window-1,
/// with c_{2x} = a_x + a+_x and c_{2x+1} = i(a_x - a+_x).
ComplexMatrix majorana_covariance(const CorrelatorBlock& block, int window);

/// Z = <a+_0 prod_{0<l<m}(1 - 2n_l) a_m> and f = <a+_0 prod_{0<l<m}(1 - 2n_l) a+_m>.
struct StringCorrelators {
  std::complex<double> z;
  std::complex<double> f;
};

/// m = 1 returns (T_1, P_1); larger m goes through the Pfaffian path.
StringCorrelators string_correlators(const CorrelatorBlock& block, int m);

/// Always the Pfaffian path, including m = 1.
StringCorrelators string_correlators_pfaffian(const CorrelatorBlock& block, int m);

/// Diagonal of the two-site state, in the order (X+, Y+, Y-, X-):
///   X+ = <n_i n_{i+m}>, Y+ = <n_i (1 - n_{i+m})>, Y- = <(1 - n_i) n_{i+m}>, X- = <(1-n_i)(1-n_{i+m})>.
struct Occupations {
  double x_plus = 0.0;
  double y_plus = 0.0;
  double y_minus = 0.0;
  double x_minus = 0.0;
};

Occupations occupation_pair(const CorrelatorBlock& block, int m);

/// Entries of an X-shaped two-qubit state in the basis (up up, up down, down up, down down):
///   [[X+, 0, 0, f*], [0, Y+, Z*, 0], [0, Z, Y-, 0], [f, 0, 0, X-]].
struct XStateEntries {
  double x_plus = 0.0;
  double y_plus = 0.0;
  double y_minus = 0.0;
  double x_minus = 0.0;
  std::complex<double> z;
  std::complex<double> f;
};

struct TwoSiteState {
  int m = 0;
  XStateEntries raw;
  XStateEntries state;  // after positivity repair
  bool repaired = false;
  double max_negativity = 0.0;  // most negative block eigenvalue before repair, as a positive number
};

/// Tolerated pre-repair negativity of a block eigenvalue.
inline constexpr double kRepairTolerance = 1e-8;

/// Positivity repair of both 2x2 blocks, then trace renormalization.
/// Throws PhysicalityError if any block eigenvalue is below -kRepairTolerance.
TwoSiteState assemble_two_site_state(const XStateEntries& raw, int m);

TwoSiteState two_site_state(const CorrelatorBlock& block, int m);

Eigen::Matrix4cd density_matrix(const XStateEntries& x);

/// Local phase rotation making Z and f real and nonnegative.
XStateEntries phase_normalized(const XStateEntries& x);

}  // namespace xxzq
