#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcorr/tensor.hpp"

namespace qcorr {

struct StateTolerance {
  double hermiticity = 1e-8;
  double trace = 1e-8;
  double negativity = 1e-8;
};

struct Violation {
  enum class Kind { Shape, NonFinite, NonHermitian, Trace, NegativeEigenvalue };
  Kind kind;
  double magnitude = 0.0;
  std::string message;
};

std::string to_string(Violation::Kind kind);

class StateValidationError : public std::invalid_argument {
 public:
  explicit StateValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// A validated qubit ⊗ qudit mixed state (dim_a = 2, dim_b = d).
class DensityMatrix {
 public:
  int dim_a() const { return 2; }
  int dim_b() const { return dim_b_; }
  BipartiteDims dims() const { return {2, dim_b_}; }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  DensityMatrix(ComplexMatrix m, int dim_b) : dim_b_(dim_b), matrix_(std::move(m)) {}
  friend DensityMatrix validate(const ComplexMatrix& candidate, int dim_b, StateTolerance tol);

  int dim_b_;
  ComplexMatrix matrix_;
};

/// Every invariant the candidate breaks; empty if it is a valid state.
std::vector<Violation> check_state(const ComplexMatrix& candidate, int dim_b,
                                   StateTolerance tol = {});

/// Throws StateValidationError listing all violations.
DensityMatrix validate(const ComplexMatrix& candidate, int dim_b, StateTolerance tol = {});

/// Same checks for a single-system density matrix (any side >= 1).
void validate_local_state(const ComplexMatrix& candidate, StateTolerance tol = {});

/// SplitMix64 mix of (seed, index); per-item seeds for batch sampling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

DensityMatrix maximally_mixed(int d);

/// |psi><psi| for a (2d)-dimensional vector, normalized here.
DensityMatrix pure_state(const ComplexVector& psi, int dim_b);

/// GG^dagger / Tr[GG^dagger] for G a (2d) x rank complex Ginibre matrix.
DensityMatrix random_state(int d, int rank, std::uint64_t seed);

/// Haar-random pure state on 2 x d.
DensityMatrix random_pure(int d, std::uint64_t seed);

/// Haar-random unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(int dim, std::uint64_t seed);

/// Single-system Hilbert-Schmidt random density matrix of full rank.
ComplexMatrix random_local_state(int dim, std::uint64_t seed);

/// Qubit basis {|0_n>, |1_n>} with |0_n> at Bloch angles (theta, phi).
struct BlochAngles {
  double theta = 0.0;
  double phi = 0.0;
};

std::array<ComplexVector, 2> qubit_basis(BlochAngles angles);

/// sum_i p_i |i><i| ⊗ rho_iB in the basis at the given angles. With no Bob
/// states supplied, two random ones of dimension `dim_b` are drawn from `seed`.
DensityMatrix classical_quantum_state(std::array<double, 2> probs, BlochAngles angles,
                                      std::span<const ComplexMatrix> bob_states, int dim_b,
                                      std::uint64_t seed);

/// Projective measurement on A in the given basis, outcome discarded.
ComplexMatrix dephase(const DensityMatrix& rho, BlochAngles angles);

/// p |psi-><psi-| + (1 - p) I/4.
DensityMatrix werner_state(double p);

/// (|00> + |11>)/sqrt(2).
DensityMatrix bell_phi_plus();

struct Dqc1Config {
  int register_qubits = 3;
  double mu = 1.0;
  ComplexMatrix unitary;
};

/// Diagonal gate (a, a, b, 1, a, b, 1, 1) with a = -(e^{-3i pi/5})^4 and
/// b = (e^{-3i pi/5})^8, the Jones-polynomial instance on three register
/// qubits. For other register sizes the eight phases are repeated (n > 3)
/// or truncated (n < 3).
ComplexMatrix jones_dqc1_unitary(int register_qubits = 3);

Dqc1Config jones_dqc1_config(double mu, int register_qubits = 3);

/// Ancilla (polarization mu) ⊗ n maximally mixed qubits after controlled-U:
/// (1/2^{n+1}) [[I, mu U^dagger], [mu U, I]].
DensityMatrix dqc1_output(const Dqc1Config& cfg);

/// Expansion rho = (1/2d) sum_{ij} R_ij sigma_i ⊗ tau_j with tau_0 = I_d and
/// tau_j the Gell-Mann basis (Tr[tau_i tau_j] = d delta_ij).
struct BlochDecomposition {
  int dim_b = 2;
  Eigen::Vector3d x;          // x_i = Tr[rho (sigma_i ⊗ I)]
  RealVector y;               // y_j = Tr[rho (I ⊗ tau_j)]
  Eigen::MatrixXd t;          // 3 x (d^2 - 1), t_ij = Tr[rho (sigma_i ⊗ tau_j)]
  Eigen::MatrixXd r;          // 4 x d^2 full coefficient table, r(0, 0) = 1
};

BlochDecomposition bloch_decompose(const DensityMatrix& rho);
ComplexMatrix reconstruct(const BlochDecomposition& bloch);

}  // namespace qcorr
