#include "xxzq/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "xxzq/errors.hpp"

namespace xxzq {
namespace {

using cd = std::complex<double>;

int sites_of(const DenseState& state) {
  const auto dim = static_cast<std::size_t>(state.size());
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim || n < 2) throw InvalidArgument("state dimension is not 2^N with N >= 2");
  return n;
}

void check_density_matrix(const Eigen::Matrix4cd& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw InvalidArgument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-9) throw InvalidArgument("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9) throw InvalidArgument("density matrix is not positive");
}

// Partial traces of a two-qubit state.
Eigen::Matrix2cd trace_out_second(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd r;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) r(a, b) = rho(2 * a, 2 * b) + rho(2 * a + 1, 2 * b + 1);
  return r;
}

Eigen::Matrix2cd trace_out_first(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd r;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) r(a, b) = rho(a, b) + rho(2 + a, 2 + b);
  return r;
}

}  // namespace

DenseOperator build_hamiltonian(const ModelParams& params) {
  params.validate();
  return build_hamiltonian(params.coupling_j, params.anisotropy, params.field, params.n_sites, Boundary::periodic);
}

DenseOperator build_hamiltonian(double coupling_j, double anisotropy, double field, int n_sites, Boundary boundary) {
  if (n_sites > kMaxEdSites) {
    throw ResourceError("exact diagonalization limited to " + std::to_string(kMaxEdSites) + " sites");
  }
  if (n_sites < 2) throw InvalidArgument("exact diagonalization needs at least 2 sites");
  const int n = n_sites;
  const Eigen::Index dim = Eigen::Index{1} << n;
  DenseOperator h = DenseOperator::Zero(dim, dim);
  const int bonds = boundary == Boundary::periodic ? n : n - 1;
  auto bit = [n](Eigen::Index s, int j) { return static_cast<int>((s >> (n - 1 - j)) & 1); };
  for (Eigen::Index s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) diag -= field * (0.5 - bit(s, j));
    for (int b = 0; b < bonds; ++b) {
      const int j = b;
      const int k = (b + 1) % n;
      const int bj = bit(s, j);
      const int bk = bit(s, k);
      diag += coupling_j * (0.5 - bj) * (0.5 - bk);
      const Eigen::Index t = s ^ (Eigen::Index{1} << (n - 1 - j)) ^ (Eigen::Index{1} << (n - 1 - k));
      // Delta Sx Sx + Sy Sy flips both spins; Sy Sy carries +1/4 on antiparallel and -1/4 on parallel pairs.
      h(t, s) += coupling_j * (0.25 * anisotropy + (bj != bk ? 0.25 : -0.25));
    }
    h(s, s) += diag;
  }
  return h;
}

EdPropagator::EdPropagator(const DenseOperator& ham) {
  if (ham.rows() != ham.cols()) throw InvalidArgument("Hamiltonian must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ham);
  if (es.info() != Eigen::Success) throw ConsistencyError("eigendecomposition failed");
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

DenseState EdPropagator::evolve(const DenseState& state, double t) const {
  if (state.size() != vectors_.rows()) throw InvalidArgument("state and Hamiltonian dimensions differ");
  DenseState coeff = vectors_.transpose() * state;
  for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff(k) *= std::exp(cd(0.0, -energies_(k) * t));
  return vectors_ * coeff;
}

DenseState EdPropagator::ground_state() const {
  if (energies_.size() > 1 && energies_(1) - energies_(0) < 1e-10) {
    throw ConsistencyError("degenerate ground level");
  }
  return vectors_.col(0).cast<cd>();
}

DenseState ed_evolve(const DenseState& state, const DenseOperator& ham, double t) {
  return EdPropagator(ham).evolve(state, t);
}

GroundState ground_state(const DenseOperator& ham) {
  const EdPropagator p(ham);
  return {p.ground_energy(), p.ground_state()};
}

double expectation(const DenseState& state, const DenseOperator& op) {
  return (state.adjoint() * (op.cast<cd>() * state))(0).real();
}

Eigen::Matrix4cd reduced_two_site(const DenseState& state, int i, int m) {
  const int n = sites_of(state);
  if (i < 0 || i >= n || m < 1 || m >= n) throw InvalidArgument("site pair out of range");
  const int j = (i + m) % n;
  const Eigen::Index mi = Eigen::Index{1} << (n - 1 - i);
  const Eigen::Index mj = Eigen::Index{1} << (n - 1 - j);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (Eigen::Index s = 0; s < state.size(); ++s) {
    if ((s & mi) || (s & mj)) continue;
    const cd amp[4] = {state(s), state(s | mj), state(s | mi), state(s | mi | mj)};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) rho(a, b) += amp[a] * std::conj(amp[b]);
  }
  return rho;
}

double off_x_leakage(const Eigen::Matrix4cd& rho) {
  double leak = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      if (a == b || a + b == 3) continue;
      leak = std::max(leak, std::abs(rho(a, b)));
    }
  }
  return leak;
}

XStateEntries xstate_entries(const Eigen::Matrix4cd& rho) {
  XStateEntries x;
  x.x_plus = rho(0, 0).real();
  x.y_plus = rho(1, 1).real();
  x.y_minus = rho(2, 2).real();
  x.x_minus = rho(3, 3).real();
  x.z = rho(2, 1);
  x.f = rho(3, 0);
  return x;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double l = es.eigenvalues()(k);
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

double generic_conditional_entropy(const Eigen::Matrix4cd& rho, const MeasurementBasis& basis) {
  const double st = std::sin(basis.theta);
  const cd nx = st * std::cos(basis.phi);
  const cd ny = st * std::sin(basis.phi);
  const double nz = std::cos(basis.theta);
  double total = 0.0;
  for (double sign : {1.0, -1.0}) {
    Eigen::Matrix2cd proj;
    proj << 1.0 + sign * nz, sign * (nx - cd(0.0, 1.0) * ny), sign * (nx + cd(0.0, 1.0) * ny), 1.0 - sign * nz;
    proj /= 2.0;
    Eigen::Matrix4cd lift = Eigen::Matrix4cd::Zero();
    lift.topLeftCorner<2, 2>() = proj;
    lift.bottomRightCorner<2, 2>() = proj;
    const Eigen::Matrix4cd post = lift * rho * lift;
    const double p = post.trace().real();
    if (p <= 0.0) continue;
    total += p * von_neumann_entropy(trace_out_second(post) / p);
  }
  return total;
}

GenericMeasures generic_discord(const Eigen::Matrix4cd& rho, const OptimizerOptions& options) {
  check_density_matrix(rho);
  if (options.n_theta < 2 || options.n_phi < 2) throw InvalidArgument("measurement grid too small");
  const double s_a = von_neumann_entropy(trace_out_second(rho));
  const double s_b = von_neumann_entropy(trace_out_first(rho));
  const double s_ab = von_neumann_entropy(rho);
  GenericMeasures out;
  out.mutual_information = std::max(s_a + s_b - s_ab, 0.0);

  const double d_theta = std::numbers::pi / (options.n_theta - 1);
  const double d_phi = 2.0 * std::numbers::pi / (options.n_phi - 1);
  double best = std::numeric_limits<double>::infinity();
  MeasurementBasis arg;
  for (int i = 0; i < options.n_theta; ++i) {
    for (int j = 0; j < options.n_phi; ++j) {
      const MeasurementBasis b{i * d_theta, j * d_phi};
      const double v = generic_conditional_entropy(rho, b);
      if (v < best) {
        best = v;
        arg = b;
      }
    }
  }
  const SimplexResult refined = nelder_mead_2d(
      [&](double t, double p) { return generic_conditional_entropy(rho, {t, p}); }, arg.theta, arg.phi,
      0.5 * d_theta, options.refine_tol);
  if (refined.value < best) {
    best = refined.value;
    arg = canonical_basis(refined.x, refined.y);
  }
  out.classical_correlation = s_a - best;
  out.discord = std::max(out.mutual_information - out.classical_correlation, 0.0);
  out.argmax_basis = arg;
  return out;
}

}  // namespace xxzq
