#pragma once

// Dense complex linear algebra for qubit-qudit systems.
//
// Index convention: subsystem A is the leftmost (slowest-varying) tensor
// factor, so the global index of |i_a, i_b> is i_a * dim_b + i_b. Multi-copy
// spaces are ordered A_0 B_0 A_1 B_1 ... with copy 0 most significant.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcorr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

enum class Subsystem { A, B };

struct BipartiteDims {
  int dim_a = 2;
  int dim_b = 2;

  int total() const { return dim_a * dim_b; }
};

/// Largest local dimension any routine accepts.
inline constexpr int kMaxLocalDim = 64;

/// A permutation of k slots written as a successor map: next[i] is the slot
/// that follows slot i when the slots are chained into traces. The operator
/// W with W|j_0 ... j_{k-1}> = |j_next[0] ... j_next[k-1]> satisfies
/// Tr[W (f_0 ⊗ ... ⊗ f_{k-1})] = prod over cycles (i, next[i], ...) of
/// Tr[f_i f_next[i] ...].
using Permutation = std::vector<int>;

Permutation identity_permutation(int k);
/// Successor map i -> i+1 (mod k): its expectation on identical factors is Tr[f^k].
Permutation cyclic_permutation(int k);
/// Identity with slots i and j exchanged.
Permutation transposition(int k, int i, int j);
/// Disjoint cycles of `perm`, each starting from its smallest slot.
std::vector<std::vector<int>> cycles(const Permutation& perm);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr[a b] without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem keep);

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims, Subsystem on);

/// Eigenvalues of a Hermitian matrix in descending order.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& hermitian);

double max_abs_entry(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol);
bool is_unitary(const ComplexMatrix& m, double tol);
bool all_finite(const ComplexMatrix& m);

/// sigma_0 = I, sigma_1..3 = Pauli X, Y, Z.
ComplexMatrix pauli(int i);

/// Hermitian traceless basis of su(d).
///
/// The generalized Gell-Mann matrices are rescaled so that
/// Tr[tau_i tau_j] = d * delta_ij. This is the only constant for which the
/// swap on two d-level systems decomposes as V = (1/d)(I + sum_i tau_i ⊗ tau_i),
/// because {I/sqrt(d), tau_i/sqrt(d)} must then be an orthonormal operator
/// basis. At d = 2 the elements are exactly sigma_1, sigma_2, sigma_3.
/// Ordering: for each pair j < k the symmetric then antisymmetric element,
/// followed by the d - 1 diagonal elements.
struct OperatorBasis {
  int dim = 0;
  std::vector<ComplexMatrix> elements;
};

OperatorBasis gell_mann_basis(int d);

/// Dense permutation operator on a product of subsystems with the given
/// local dimensions (see Permutation for the convention).
ComplexMatrix permutation_operator(std::span<const int> dims, const Permutation& next);

/// Swap of two d-level systems.
ComplexMatrix swap_operator(int d);

/// Cyclic shift V^k |psi_1 psi_2 ... psi_k> = |psi_k psi_1 ... psi_{k-1}>
/// on k copies of a dim-level system, k in {2, 3, 4}.
ComplexMatrix shift_operator(int k, int dim);

/// Projector (I - V)/2 onto the antisymmetric subspace of two d-level systems.
ComplexMatrix antisym_projector(int d);

/// Dense operator acting on k bipartite copies (ordered A_0 B_0 A_1 B_1 ...)
/// that permutes the A slots by perm_a and the B slots by perm_b.
ComplexMatrix bipartite_permutation_operator(const Permutation& perm_a, const Permutation& perm_b,
                                             BipartiteDims dims);

/// Tr[(W_a ⊗ W_b)(f_0 ⊗ ... ⊗ f_{k-1})] for k <= 4 bipartite factors.
///
/// The (dim_a*dim_b)^k space is never formed: the A indices are summed
/// explicitly (dim_a^k terms) and, for each assignment, the B indices are
/// contracted along the cycles of perm_b as traces of products of d x d blocks.
Complex permutation_expectation(std::span<const ComplexMatrix> factors, const Permutation& perm_a,
                                const Permutation& perm_b, BipartiteDims dims);

}  // namespace qcorr
