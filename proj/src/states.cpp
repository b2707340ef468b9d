#include "qcorr/states.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace qcorr {

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream os;
  os << "invalid state:";
  for (const auto& v : violations) os << " [" << to_string(v.kind) << ": " << v.message << "]";
  return os.str();
}

ComplexMatrix ginibre(int rows, int cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

void require_dim_b(int d, const char* what) {
  if (d < 2 || d > kMaxLocalDim) {
    throw std::invalid_argument(std::string(what) + ": dim_b must be in [2, " +
                                std::to_string(kMaxLocalDim) + "]");
  }
}

// Constructor outputs are valid by construction; validate() is still the
// only way to obtain a DensityMatrix.
DensityMatrix accept(ComplexMatrix m, int dim_b) {
  m = 0.5 * (m + m.adjoint()).eval();
  return validate(m, dim_b);
}

}  // namespace

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Shape: return "shape";
    case Violation::Kind::NonFinite: return "non-finite";
    case Violation::Kind::NonHermitian: return "non-hermitian";
    case Violation::Kind::Trace: return "trace";
    case Violation::Kind::NegativeEigenvalue: return "negative-eigenvalue";
  }
  return "unknown";
}

StateValidationError::StateValidationError(std::vector<Violation> violations)
    : std::invalid_argument(describe(violations)), violations_(std::move(violations)) {}

std::vector<Violation> check_state(const ComplexMatrix& candidate, int dim_b, StateTolerance tol) {
  std::vector<Violation> out;
  if (dim_b < 2 || dim_b > kMaxLocalDim) {
    out.push_back({Violation::Kind::Shape, 0.0, "dim_b " + std::to_string(dim_b) + " out of range"});
    return out;
  }
  const int side = 2 * dim_b;
  if (candidate.rows() != side || candidate.cols() != side) {
    out.push_back({Violation::Kind::Shape, 0.0,
                   "expected " + std::to_string(side) + "x" + std::to_string(side) + ", got " +
                       std::to_string(candidate.rows()) + "x" + std::to_string(candidate.cols())});
    return out;
  }
  if (!all_finite(candidate)) {
    out.push_back({Violation::Kind::NonFinite, 0.0, "matrix has NaN or Inf entries"});
    return out;
  }
  const double herm = max_abs_entry(candidate - candidate.adjoint());
  if (herm > tol.hermiticity) {
    out.push_back({Violation::Kind::NonHermitian, herm,
                   "max |m - m^dagger| = " + std::to_string(herm)});
  }
  const double trace_dev = std::abs(candidate.trace() - Complex(1.0, 0.0));
  if (trace_dev > tol.trace) {
    out.push_back({Violation::Kind::Trace, trace_dev, "|Tr - 1| = " + std::to_string(trace_dev)});
  }
  const ComplexMatrix herm_part = 0.5 * (candidate + candidate.adjoint());
  const double min_eig = hermitian_eigenvalues(herm_part).minCoeff();
  if (min_eig < -tol.negativity) {
    out.push_back({Violation::Kind::NegativeEigenvalue, -min_eig,
                   "min eigenvalue = " + std::to_string(min_eig)});
  }
  return out;
}

DensityMatrix validate(const ComplexMatrix& candidate, int dim_b, StateTolerance tol) {
  auto violations = check_state(candidate, dim_b, tol);
  if (!violations.empty()) throw StateValidationError(std::move(violations));
  return DensityMatrix(candidate, dim_b);
}

void validate_local_state(const ComplexMatrix& candidate, StateTolerance tol) {
  std::vector<Violation> out;
  if (candidate.rows() != candidate.cols() || candidate.rows() < 1) {
    out.push_back({Violation::Kind::Shape, 0.0, "local state must be square"});
  } else if (!all_finite(candidate)) {
    out.push_back({Violation::Kind::NonFinite, 0.0, "matrix has NaN or Inf entries"});
  } else {
    const double herm = max_abs_entry(candidate - candidate.adjoint());
    if (herm > tol.hermiticity) out.push_back({Violation::Kind::NonHermitian, herm, "local state"});
    const double trace_dev = std::abs(candidate.trace() - Complex(1.0, 0.0));
    if (trace_dev > tol.trace) out.push_back({Violation::Kind::Trace, trace_dev, "local state"});
    const double min_eig =
        hermitian_eigenvalues(0.5 * (candidate + candidate.adjoint())).minCoeff();
    if (min_eig < -tol.negativity) {
      out.push_back({Violation::Kind::NegativeEigenvalue, -min_eig, "local state"});
    }
  }
  if (!out.empty()) throw StateValidationError(std::move(out));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

DensityMatrix maximally_mixed(int d) {
  require_dim_b(d, "maximally_mixed");
  return validate(ComplexMatrix::Identity(2 * d, 2 * d) / (2.0 * d), d);
}

DensityMatrix pure_state(const ComplexVector& psi, int dim_b) {
  require_dim_b(dim_b, "pure_state");
  if (psi.size() != 2 * dim_b) throw std::invalid_argument("pure_state: vector length != 2*dim_b");
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("pure_state: zero vector");
  const ComplexVector v = psi / norm;
  return accept(v * v.adjoint(), dim_b);
}

DensityMatrix random_state(int d, int rank, std::uint64_t seed) {
  require_dim_b(d, "random_state");
  if (rank < 1 || rank > 2 * d) {
    throw std::invalid_argument("random_state: rank must be in [1, " + std::to_string(2 * d) + "]");
  }
  std::mt19937_64 gen(seed);
  const ComplexMatrix g = ginibre(2 * d, rank, gen);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return accept(std::move(rho), d);
}

DensityMatrix random_pure(int d, std::uint64_t seed) {
  require_dim_b(d, "random_pure");
  std::mt19937_64 gen(seed);
  const ComplexMatrix g = ginibre(2 * d, 1, gen);
  return pure_state(g.col(0), d);
}

ComplexMatrix random_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_unitary: dim must be >= 1");
  std::mt19937_64 gen(seed);
  const ComplexMatrix g = ginibre(dim, dim, gen);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix random_local_state(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_local_state: dim must be >= 1");
  std::mt19937_64 gen(seed);
  const ComplexMatrix g = ginibre(dim, dim, gen);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

std::array<ComplexVector, 2> qubit_basis(BlochAngles angles) {
  const double c = std::cos(angles.theta / 2.0);
  const double s = std::sin(angles.theta / 2.0);
  const Complex phase = std::polar(1.0, angles.phi);
  ComplexVector up(2), down(2);
  up << c, phase * s;
  down << -std::conj(phase) * s, c;
  return {up, down};
}

DensityMatrix classical_quantum_state(std::array<double, 2> probs, BlochAngles angles,
                                      std::span<const ComplexMatrix> bob_states, int dim_b,
                                      std::uint64_t seed) {
  constexpr double kProbTol = 1e-12;
  if (probs[0] < -kProbTol || probs[1] < -kProbTol ||
      std::abs(probs[0] + probs[1] - 1.0) > kProbTol || !std::isfinite(probs[0]) ||
      !std::isfinite(probs[1])) {
    throw std::invalid_argument("classical_quantum_state: probabilities must be >= 0 and sum to 1");
  }
  std::vector<ComplexMatrix> bobs(bob_states.begin(), bob_states.end());
  if (bobs.empty()) {
    require_dim_b(dim_b, "classical_quantum_state");
    bobs.push_back(random_local_state(dim_b, derive_seed(seed, 0)));
    bobs.push_back(random_local_state(dim_b, derive_seed(seed, 1)));
  }
  if (bobs.size() != 2) {
    throw std::invalid_argument("classical_quantum_state: need exactly two Bob states");
  }
  const int d = static_cast<int>(bobs[0].rows());
  require_dim_b(d, "classical_quantum_state");
  for (const auto& b : bobs) {
    if (b.rows() != d) throw std::invalid_argument("classical_quantum_state: Bob dimensions differ");
    validate_local_state(b);
  }
  const auto basis = qubit_basis(angles);
  ComplexMatrix chi = ComplexMatrix::Zero(2 * d, 2 * d);
  for (int i = 0; i < 2; ++i) {
    chi += std::max(probs[i], 0.0) * kron(basis[i] * basis[i].adjoint(), bobs[i]);
  }
  return accept(std::move(chi), d);
}

ComplexMatrix dephase(const DensityMatrix& rho, BlochAngles angles) {
  const int d = rho.dim_b();
  const auto basis = qubit_basis(angles);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix out = ComplexMatrix::Zero(2 * d, 2 * d);
  for (const auto& v : basis) {
    const ComplexMatrix proj = kron(v * v.adjoint(), id);
    out += proj * rho.matrix() * proj;
  }
  return out;
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("werner_state: p must be in [0, 1]");
  ComplexVector singlet = ComplexVector::Zero(4);
  singlet(1) = 1.0 / std::numbers::sqrt2;
  singlet(2) = -1.0 / std::numbers::sqrt2;
  ComplexMatrix m = p * singlet * singlet.adjoint() + (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
  return accept(std::move(m), 2);
}

DensityMatrix bell_phi_plus() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = 1.0;
  psi(3) = 1.0;
  return pure_state(psi, 2);
}

ComplexMatrix jones_dqc1_unitary(int register_qubits) {
  if (register_qubits < 1 || register_qubits > 6) {
    throw std::invalid_argument("jones_dqc1_unitary: register_qubits must be in [1, 6]");
  }
  const Complex w = std::polar(1.0, -3.0 * std::numbers::pi / 5.0);
  const Complex a = -std::pow(w, 4);
  const Complex b = std::pow(w, 8);
  const std::array<Complex, 8> phases = {a, a, b, 1.0, a, b, 1.0, 1.0};
  const int dim = 1 << register_qubits;
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) u(i, i) = phases[i % phases.size()];
  return u;
}

Dqc1Config jones_dqc1_config(double mu, int register_qubits) {
  return {register_qubits, mu, jones_dqc1_unitary(register_qubits)};
}

DensityMatrix dqc1_output(const Dqc1Config& cfg) {
  if (cfg.register_qubits < 1 || cfg.register_qubits > 6) {
    throw std::invalid_argument("dqc1_output: register_qubits must be in [1, 6]");
  }
  if (!(cfg.mu >= 0.0 && cfg.mu <= 1.0)) {
    throw std::invalid_argument("dqc1_output: mu must be in [0, 1]");
  }
  const int d = 1 << cfg.register_qubits;
  if (cfg.unitary.rows() != d || cfg.unitary.cols() != d) {
    throw std::invalid_argument("dqc1_output: unitary must have side 2^register_qubits");
  }
  if (!is_unitary(cfg.unitary, 1e-10)) throw std::invalid_argument("dqc1_output: not unitary");

  ComplexMatrix m(2 * d, 2 * d);
  m.topLeftCorner(d, d).setIdentity();
  m.bottomRightCorner(d, d).setIdentity();
  m.topRightCorner(d, d) = cfg.mu * cfg.unitary.adjoint();
  m.bottomLeftCorner(d, d) = cfg.mu * cfg.unitary;
  m /= 2.0 * d;
  return accept(std::move(m), d);
}

BlochDecomposition bloch_decompose(const DensityMatrix& rho) {
  const int d = rho.dim_b();
  const auto basis = gell_mann_basis(d);
  const int nb = d * d - 1;
  BlochDecomposition out;
  out.dim_b = d;
  out.r.resize(4, d * d);
  for (int i = 0; i < 4; ++i) {
    // Bob operator Tr_A[(sigma_i ⊗ I) rho].
    const ComplexMatrix bob =
        partial_trace(kron(pauli(i), ComplexMatrix::Identity(d, d)) * rho.matrix(), rho.dims(),
                      Subsystem::B);
    out.r(i, 0) = bob.trace().real();
    for (int j = 0; j < nb; ++j) out.r(i, j + 1) = trace_of_product(bob, basis.elements[j]).real();
  }
  out.x = out.r.block(1, 0, 3, 1);
  out.y = out.r.block(0, 1, 1, nb).transpose();
  out.t = out.r.block(1, 1, 3, nb);
  return out;
}

ComplexMatrix reconstruct(const BlochDecomposition& bloch) {
  const int d = bloch.dim_b;
  const auto basis = gell_mann_basis(d);
  ComplexMatrix out = ComplexMatrix::Zero(2 * d, 2 * d);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < d * d; ++j) {
      const double c = bloch.r(i, j);
      if (c == 0.0) continue;
      const ComplexMatrix tau = j == 0 ? ComplexMatrix::Identity(d, d) : basis.elements[j - 1];
      out += c * kron(pauli(i), tau);
    }
  }
  return out / (2.0 * d);
}

}  // namespace qcorr
