#include "xxzq/measures.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "xxzq/errors.hpp"

namespace xxzq {
namespace {

double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

double binary_entropy(double p) { return -xlog2x(p) - xlog2x(1.0 - p); }

void check_options(const OptimizerOptions& o) {
  if (o.n_theta < 33 || o.n_phi < 65) throw InvalidArgument("measurement grid must be at least 33 x 65");
  if (!(o.refine_tol > 0.0)) throw InvalidArgument("refine_tol must be positive");
}

// Conditional entropy for a measurement axis given by its cosines, on precomputed coefficients.
double conditional_entropy_axis(const XStateCoefficients& c, double nx, double ny, double nz) {
  double total = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double weight = 1.0 + sign * c.c4 * nz;  // 2 p
    if (weight <= 0.0) continue;
    const double rx = sign * c.c1 * nx / weight;
    const double ry = sign * c.c2 * ny / weight;
    const double rz = (c.c4_unmeasured + sign * c.c3 * nz) / weight;
    total += 0.5 * weight * bloch_entropy(std::sqrt(rx * rx + ry * ry + rz * rz));
  }
  return total;
}

double conditional_entropy_angles(const XStateCoefficients& c, double theta, double phi) {
  const double st = std::sin(theta);
  return conditional_entropy_axis(c, st * std::cos(phi), st * std::sin(phi), std::cos(theta));
}

}  // namespace

double bloch_entropy(double r) {
  r = std::min(std::abs(r), 1.0);
  return binary_entropy((1.0 + r) / 2.0);
}

XStateCoefficients xstate_coefficients(const XStateEntries& raw) {
  const XStateEntries x = phase_normalized(raw);
  XStateCoefficients c;
  c.c1 = 2.0 * (x.z.real() + x.f.real());
  c.c2 = 2.0 * (x.z.real() - x.f.real());
  c.c3 = x.x_plus + x.x_minus - x.y_plus - x.y_minus;
  c.c4 = x.x_plus - x.x_minus - x.y_plus + x.y_minus;
  c.c4_unmeasured = x.x_plus - x.x_minus + x.y_plus - x.y_minus;
  return c;
}

double concurrence(const XStateEntries& x) {
  const double l1 = 2.0 * (std::abs(x.z) - std::sqrt(std::max(x.x_plus * x.x_minus, 0.0)));
  const double l2 = 2.0 * (std::abs(x.f) - std::sqrt(std::max(x.y_plus * x.y_minus, 0.0)));
  return std::max({0.0, l1, l2});
}

std::array<double, 4> xstate_eigenvalues(const XStateEntries& x) {
  const double xm = (x.x_plus + x.x_minus) / 2.0;
  const double xr = std::hypot((x.x_plus - x.x_minus) / 2.0, std::abs(x.f));
  const double ym = (x.y_plus + x.y_minus) / 2.0;
  const double yr = std::hypot((x.y_plus - x.y_minus) / 2.0, std::abs(x.z));
  return {xm + xr, xm - xr, ym + yr, ym - yr};
}

double mutual_information(const XStateEntries& x) {
  const XStateCoefficients c = xstate_coefficients(x);
  double s_ab = 0.0;
  for (double l : xstate_eigenvalues(x)) s_ab -= xlog2x(std::max(l, 0.0));
  const double mi = bloch_entropy(c.c4_unmeasured) + bloch_entropy(c.c4) - s_ab;
  return std::max(mi, 0.0);
}

double conditional_entropy(const XStateEntries& x, const MeasurementBasis& basis) {
  return conditional_entropy_angles(xstate_coefficients(x), basis.theta, basis.phi);
}

MeasurementBasis canonical_basis(double theta, double phi) {
  constexpr double pi = std::numbers::pi;
  theta = std::remainder(theta, 2.0 * pi);  // (-pi, pi]
  if (theta < 0.0) {
    theta = -theta;
    phi += pi;
  }
  phi = std::fmod(phi, 2.0 * pi);
  if (phi < 0.0) phi += 2.0 * pi;
  if (phi >= 2.0 * pi) phi = 0.0;
  return {theta, phi};
}

ClassicalCorrelation classical_correlation(const XStateEntries& x, const OptimizerOptions& options) {
  check_options(options);
  const XStateCoefficients c = xstate_coefficients(x);
  const double d_theta = std::numbers::pi / (options.n_theta - 1);
  const double d_phi = 2.0 * std::numbers::pi / (options.n_phi - 1);

  std::vector<double> cos_phi(static_cast<std::size_t>(options.n_phi));
  std::vector<double> sin_phi(cos_phi.size());
  for (int j = 0; j < options.n_phi; ++j) {
    cos_phi[static_cast<std::size_t>(j)] = std::cos(j * d_phi);
    sin_phi[static_cast<std::size_t>(j)] = std::sin(j * d_phi);
  }
  double best = std::numeric_limits<double>::infinity();
  int best_i = 0;
  int best_j = 0;
  for (int i = 0; i < options.n_theta; ++i) {
    const double st = std::sin(i * d_theta);
    const double ct = std::cos(i * d_theta);
    for (int j = 0; j < options.n_phi; ++j) {
      const double v = conditional_entropy_axis(c, st * cos_phi[static_cast<std::size_t>(j)],
                                                st * sin_phi[static_cast<std::size_t>(j)], ct);
      if (v < best) {
        best = v;
        best_i = i;
        best_j = j;
      }
    }
  }
  MeasurementBasis arg{best_i * d_theta, best_j * d_phi};
  const SimplexResult refined = nelder_mead_2d(
      [&](double t, double p) { return conditional_entropy_angles(c, t, p); }, arg.theta, arg.phi,
      0.5 * d_theta, options.refine_tol);
  if (refined.value < best) {
    best = refined.value;
    arg = canonical_basis(refined.x, refined.y);
  }
  return {bloch_entropy(c.c4_unmeasured) - best, arg};
}

CorrelationMeasures quantum_discord(const XStateEntries& x, const OptimizerOptions& options) {
  CorrelationMeasures out;
  out.concurrence = concurrence(x);
  out.mutual_information = mutual_information(x);
  const ClassicalCorrelation cc = classical_correlation(x, options);
  out.classical_correlation = cc.bits;
  out.argmax_basis = cc.argmax;
  double q = out.mutual_information - out.classical_correlation;
  if (q < -1e-6) {
    throw ConsistencyError("negative discord " + std::to_string(q));
  }
  if (q < 0.0) {
    out.classical_correlation = out.mutual_information;
    q = 0.0;
  }
  out.discord = q;
  return out;
}

}  // namespace xxzq
