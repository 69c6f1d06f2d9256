#pragma once

#include <array>

#include "xxzq/gaussian.hpp"

namespace xxzq {

/// Pauli correlators of a phase-normalized X-state:
///   c1 = <sx sx> = 2(Z + f), c2 = <sy sy> = 2(Z - f), c3 = <sz sz>,
///   c4 = <sz> on the measured site (i+m), c4_unmeasured = <sz> on site i.
struct XStateCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double c4_unmeasured = 0.0;
};

XStateCoefficients xstate_coefficients(const XStateEntries& x);

/// Projective measurement along (sin t cos p, sin t sin p, cos t) on site i+m.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;
};

struct OptimizerOptions {
  int n_theta = 65;
  int n_phi = 129;
  double refine_tol = 1e-7;
};

struct CorrelationMeasures {
  double concurrence = 0.0;
  double mutual_information = 0.0;
  double classical_correlation = 0.0;
  double discord = 0.0;
  MeasurementBasis argmax_basis;
};

struct ClassicalCorrelation {
  double bits = 0.0;
  MeasurementBasis argmax;
};

/// Binary entropy of a qubit with Bloch radius r, in bits.
double bloch_entropy(double r);

double concurrence(const XStateEntries& x);
/// Block eigenvalues (X block +, X block -, Y block +, Y block -).
std::array<double, 4> xstate_eigenvalues(const XStateEntries& x);
double mutual_information(const XStateEntries& x);
double conditional_entropy(const XStateEntries& x, const MeasurementBasis& basis);
ClassicalCorrelation classical_correlation(const XStateEntries& x, const OptimizerOptions& options = {});
CorrelationMeasures quantum_discord(const XStateEntries& x, const OptimizerOptions& options = {});

inline double concurrence(const TwoSiteState& s) { return concurrence(s.state); }
inline double mutual_information(const TwoSiteState& s) { return mutual_information(s.state); }
inline CorrelationMeasures quantum_discord(const TwoSiteState& s, const OptimizerOptions& options = {}) {
  return quantum_discord(s.state, options);
}

/// Wraps any (theta, phi) onto theta in [0, pi], phi in [0, 2 pi) describing the same axis.
MeasurementBasis canonical_basis(double theta, double phi);

/// Minimizes f over R^2 from `start` with a simplex of edge `step`; returns the best vertex.
struct SimplexResult {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
  int evaluations = 0;
};
template <class F>
SimplexResult nelder_mead_2d(F&& f, double x0, double y0, double step, double tol, int max_eval = 2000);

}  // namespace xxzq

#include "xxzq/detail/simplex.hpp"
