#include "qcorr/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qcorr {

namespace {

void require_square(const ComplexMatrix& m, int side, const char* what) {
  if (m.rows() != side || m.cols() != side) {
    throw std::invalid_argument(std::string(what) + ": expected a square matrix of side " +
                                std::to_string(side) + ", got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
}

void require_dims(BipartiteDims dims, const char* what) {
  if (dims.dim_a < 1 || dims.dim_b < 1 || dims.dim_a > kMaxLocalDim || dims.dim_b > kMaxLocalDim) {
    throw std::invalid_argument(std::string(what) + ": local dimensions out of range");
  }
}

void require_permutation(const Permutation& p, int k, const char* what) {
  if (static_cast<int>(p.size()) != k) {
    throw std::invalid_argument(std::string(what) + ": permutation length " +
                                std::to_string(p.size()) + " != " + std::to_string(k));
  }
  std::vector<bool> seen(k, false);
  for (int v : p) {
    if (v < 0 || v >= k || seen[v]) {
      throw std::invalid_argument(std::string(what) + ": not a permutation");
    }
    seen[v] = true;
  }
}

}  // namespace

Permutation identity_permutation(int k) {
  Permutation p(k);
  for (int i = 0; i < k; ++i) p[i] = i;
  return p;
}

Permutation cyclic_permutation(int k) {
  Permutation p(k);
  for (int i = 0; i < k; ++i) p[i] = (i + 1) % k;
  return p;
}

Permutation transposition(int k, int i, int j) {
  Permutation p = identity_permutation(k);
  std::swap(p.at(i), p.at(j));
  return p;
}

std::vector<std::vector<int>> cycles(const Permutation& perm) {
  const int k = static_cast<int>(perm.size());
  std::vector<bool> seen(k, false);
  std::vector<std::vector<int>> out;
  for (int start = 0; start < k; ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    for (int i = start; !seen[i]; i = perm[i]) {
      seen[i] = true;
      cycle.push_back(i);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw std::invalid_argument("trace_of_product: shape mismatch");
  }
  return a.cwiseProduct(b.transpose()).sum();
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem keep) {
  require_dims(dims, "partial_trace");
  require_square(m, dims.total(), "partial_trace");
  const int da = dims.dim_a;
  const int db = dims.dim_b;
  if (keep == Subsystem::A) {
    ComplexMatrix out(da, da);
    for (int i = 0; i < da; ++i) {
      for (int j = 0; j < da; ++j) out(i, j) = m.block(i * db, j * db, db, db).trace();
    }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims, Subsystem on) {
  require_dims(dims, "partial_transpose");
  require_square(m, dims.total(), "partial_transpose");
  const int da = dims.dim_a;
  const int db = dims.dim_b;
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) {
      if (on == Subsystem::A) {
        out.block(i * db, j * db, db, db) = m.block(j * db, i * db, db, db);
      } else {
        out.block(i * db, j * db, db, db) = m.block(i * db, j * db, db, db).transpose();
      }
    }
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: eigensolver did not converge");
  }
  // Ascending from the solver; stable reverse keeps ties in order of appearance.
  return solver.eigenvalues().reverse();
}

double trace_norm(const ComplexMatrix& hermitian) {
  return hermitian_eigenvalues(hermitian).cwiseAbs().sum();
}

double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs_entry(m - m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const auto n = m.rows();
  return max_abs_entry(m.adjoint() * m - ComplexMatrix::Identity(n, n)) <= tol;
}

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix pauli(int i) {
  const Complex I(0.0, 1.0);
  ComplexMatrix s(2, 2);
  switch (i) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I, I, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("pauli: index must be in 0..3");
  }
  return s;
}

OperatorBasis gell_mann_basis(int d) {
  if (d < 2 || d > kMaxLocalDim) {
    throw std::invalid_argument("gell_mann_basis: dimension must be in [2, " +
                                std::to_string(kMaxLocalDim) + "]");
  }
  const double scale = std::sqrt(d / 2.0);
  const Complex I(0.0, 1.0);
  OperatorBasis basis;
  basis.dim = d;
  basis.elements.reserve(d * d - 1);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(d, d);
      sym(j, k) = scale;
      sym(k, j) = scale;
      basis.elements.push_back(std::move(sym));
      ComplexMatrix asym = ComplexMatrix::Zero(d, d);
      asym(j, k) = -I * scale;
      asym(k, j) = I * scale;
      basis.elements.push_back(std::move(asym));
    }
  }
  for (int l = 1; l < d; ++l) {
    const double c = scale * std::sqrt(2.0 / (l * (l + 1.0)));
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < l; ++j) diag(j, j) = c;
    diag(l, l) = -l * c;
    basis.elements.push_back(std::move(diag));
  }
  return basis;
}

ComplexMatrix permutation_operator(std::span<const int> dims, const Permutation& next) {
  const int k = static_cast<int>(dims.size());
  require_permutation(next, k, "permutation_operator");
  std::vector<long> stride(k, 1);
  long total = 1;
  for (int m = k - 1; m >= 0; --m) {
    if (dims[m] < 1) throw std::invalid_argument("permutation_operator: bad dimension");
    if (dims[m] != dims[next[m]]) {
      throw std::invalid_argument("permutation_operator: permutation mixes unequal dimensions");
    }
    stride[m] = total;
    total *= dims[m];
  }
  if (total > 65536) throw std::invalid_argument("permutation_operator: space too large");

  ComplexMatrix w = ComplexMatrix::Zero(total, total);
  std::vector<int> digits(k);
  for (long col = 0; col < total; ++col) {
    long rest = col;
    for (int m = 0; m < k; ++m) {
      digits[m] = static_cast<int>(rest / stride[m]);
      rest %= stride[m];
    }
    long row = 0;
    for (int m = 0; m < k; ++m) row += digits[next[m]] * stride[m];
    w(row, col) = 1.0;
  }
  return w;
}

ComplexMatrix swap_operator(int d) {
  const int dims[2] = {d, d};
  return permutation_operator(dims, {1, 0});
}

ComplexMatrix shift_operator(int k, int dim) {
  if (k < 2 || k > 4) throw std::invalid_argument("shift_operator: k must be 2, 3 or 4");
  if (dim < 2) throw std::invalid_argument("shift_operator: dim must be >= 2");
  // Output slot m carries input slot m-1.
  Permutation next(k);
  for (int m = 0; m < k; ++m) next[m] = (m + k - 1) % k;
  const std::vector<int> dims(k, dim);
  return permutation_operator(dims, next);
}

ComplexMatrix antisym_projector(int d) {
  if (d < 2) throw std::invalid_argument("antisym_projector: d must be >= 2");
  return 0.5 * (ComplexMatrix::Identity(d * d, d * d) - swap_operator(d));
}

ComplexMatrix bipartite_permutation_operator(const Permutation& perm_a, const Permutation& perm_b,
                                             BipartiteDims dims) {
  const int k = static_cast<int>(perm_a.size());
  require_permutation(perm_a, k, "bipartite_permutation_operator");
  require_permutation(perm_b, k, "bipartite_permutation_operator");
  std::vector<int> local(2 * k);
  Permutation next(2 * k);
  for (int m = 0; m < k; ++m) {
    local[2 * m] = dims.dim_a;
    local[2 * m + 1] = dims.dim_b;
    next[2 * m] = 2 * perm_a[m];
    next[2 * m + 1] = 2 * perm_b[m] + 1;
  }
  return permutation_operator(local, next);
}

Complex permutation_expectation(std::span<const ComplexMatrix> factors, const Permutation& perm_a,
                                const Permutation& perm_b, BipartiteDims dims) {
  const int k = static_cast<int>(factors.size());
  if (k < 1 || k > 4) throw std::invalid_argument("permutation_expectation: need 1..4 factors");
  require_dims(dims, "permutation_expectation");
  require_permutation(perm_a, k, "permutation_expectation");
  require_permutation(perm_b, k, "permutation_expectation");
  for (const auto& f : factors) require_square(f, dims.total(), "permutation_expectation");

  const int da = dims.dim_a;
  const int db = dims.dim_b;
  const auto b_cycles = cycles(perm_b);

  int assignments = 1;
  for (int i = 0; i < k; ++i) assignments *= da;

  std::vector<int> a(k);
  Complex total = 0.0;
  ComplexMatrix chain(db, db);
  for (int code = 0; code < assignments; ++code) {
    int rest = code;
    for (int i = k - 1; i >= 0; --i) {
      a[i] = rest % da;
      rest /= da;
    }
    Complex term = 1.0;
    for (const auto& cycle : b_cycles) {
      // Factor i contributes its block (a_i, a_{perm_a(i)}).
      auto block = [&](int i) {
        return factors[i].block(a[i] * db, a[perm_a[i]] * db, db, db);
      };
      if (cycle.size() == 1) {
        term *= block(cycle[0]).trace();
        continue;
      }
      chain = block(cycle[0]);
      for (std::size_t c = 1; c + 1 < cycle.size(); ++c) chain = chain * block(cycle[c]);
      term *= trace_of_product(chain, block(cycle.back()));
    }
    total += term;
  }
  return total;
}

}  // namespace qcorr
