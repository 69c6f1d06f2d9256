#pragma once

#include <Eigen/Dense>

#include "xxzq/measures.hpp"
#include "xxzq/model.hpp"

namespace xxzq {

enum class Boundary { periodic, open };

/// Many-body operators in the z basis. Site j is bit (N-1-j) of the basis index, bit 0 = spin up.
/// The Hamiltonian is real in this basis, so it is stored as a real symmetric matrix.
using DenseOperator = Eigen::MatrixXd;
using DenseState = Eigen::VectorXcd;

inline constexpr int kMaxEdSites = 14;

DenseOperator build_hamiltonian(const ModelParams& params);
/// Any n_sites in [2, 14]; more sites raise ResourceError.
DenseOperator build_hamiltonian(double coupling_j, double anisotropy, double field, int n_sites,
                                Boundary boundary = Boundary::periodic);

/// Caches the eigendecomposition of one Hamiltonian.
class EdPropagator {
public:
  explicit EdPropagator(const DenseOperator& ham);

  DenseState evolve(const DenseState& state, double t) const;
  double ground_energy() const { return energies_(0); }
  /// Lowest eigenvector; throws ConsistencyError if the ground level is degenerate to 1e-10.
  DenseState ground_state() const;
  const Eigen::VectorXd& energies() const { return energies_; }

private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
};

DenseState ed_evolve(const DenseState& state, const DenseOperator& ham, double t);

struct GroundState {
  double energy = 0.0;
  DenseState state;
};
GroundState ground_state(const DenseOperator& ham);

double expectation(const DenseState& state, const DenseOperator& op);

/// Reduced state of sites (i, i+m mod N) in the basis (up up, up down, down up, down down), site i first.
Eigen::Matrix4cd reduced_two_site(const DenseState& state, int i, int m);

/// Largest modulus among the entries an X-state has zero.
double off_x_leakage(const Eigen::Matrix4cd& rho);

/// X-shaped part of a 4x4 state.
XStateEntries xstate_entries(const Eigen::Matrix4cd& rho);

struct GenericMeasures {
  double mutual_information = 0.0;
  double classical_correlation = 0.0;
  double discord = 0.0;
  MeasurementBasis argmax_basis;
};

/// Discord of an arbitrary two-qubit state, measuring the second qubit, by explicit projector
/// algebra and dense eigensolvers. Throws InvalidArgument on a non-physical matrix.
GenericMeasures generic_discord(const Eigen::Matrix4cd& rho, const OptimizerOptions& options = {});

/// Conditional entropy after measuring the second qubit along `basis`, by projector algebra.
double generic_conditional_entropy(const Eigen::Matrix4cd& rho, const MeasurementBasis& basis);

double von_neumann_entropy(const Eigen::MatrixXcd& rho);

}  // namespace xxzq
