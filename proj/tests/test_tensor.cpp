#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qcorr/states.hpp"
#include "qcorr/tensor.hpp"
#include "test_support.hpp"

using namespace qcorr;
using qcorr::test::close;

namespace {

// Dense permutation matrix built from the index map alone: column m goes to
// the row whose slot i holds m[next[i]].
ComplexMatrix dense_permutation(const std::vector<int>& dims, const std::vector<int>& next) {
  const int k = static_cast<int>(dims.size());
  int total = 1;
  for (int d : dims) total *= d;
  ComplexMatrix w = ComplexMatrix::Zero(total, total);
  std::vector<int> digits(k);
  for (int m = 0; m < total; ++m) {
    int rest = m;
    for (int i = k - 1; i >= 0; --i) {
      digits[i] = rest % dims[i];
      rest /= dims[i];
    }
    int out = 0;
    for (int i = 0; i < k; ++i) out = out * dims[i] + digits[next[i]];
    w(out, m) = 1.0;
  }
  return w;
}

ComplexMatrix dense_bipartite(const Permutation& pa, const Permutation& pb, int d) {
  const int k = static_cast<int>(pa.size());
  std::vector<int> dims, next;
  for (int i = 0; i < k; ++i) {
    dims.push_back(2);
    dims.push_back(d);
    next.push_back(2 * pa[i]);
    next.push_back(2 * pb[i] + 1);
  }
  return dense_permutation(dims, next);
}

ComplexMatrix kron_all(const std::vector<ComplexMatrix>& fs) {
  ComplexMatrix out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = kron(out, fs[i]);
  return out;
}

ComplexMatrix random_matrix(int n, unsigned seed) {
  std::srand(seed);
  return ComplexMatrix::Random(n, n);
}

ComplexVector basis_vector(int dim, int i) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("kron follows the A-major index convention") {
  CHECK(close(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)),
              ComplexMatrix::Identity(4, 4), 0.0));

  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 1.0, 1.0, -1.0, -1.0;
  CHECK(close(kron(pauli(3), ComplexMatrix::Identity(2, 2)), expected, 0.0));

  const ComplexMatrix xx = kron(pauli(1), pauli(1));
  CHECK(std::abs((xx * xx).trace() - Complex(4.0, 0.0)) == doctest::Approx(0.0));

  // entry (i_a*db + i_b, j_a*db + j_b) = a(i_a, j_a) b(i_b, j_b)
  const ComplexMatrix a = random_matrix(2, 3);
  const ComplexMatrix b = random_matrix(3, 4);
  const ComplexMatrix ab = kron(a, b);
  for (int ia = 0; ia < 2; ++ia)
    for (int ja = 0; ja < 2; ++ja)
      for (int ib = 0; ib < 3; ++ib)
        for (int jb = 0; jb < 3; ++jb)
          CHECK(std::abs(ab(ia * 3 + ib, ja * 3 + jb) - a(ia, ja) * b(ib, jb)) < 1e-15);
}

TEST_CASE("kron is associative") {
  for (unsigned s = 0; s < 5; ++s) {
    const ComplexMatrix a = random_matrix(2, 10 + s);
    const ComplexMatrix b = random_matrix(3, 20 + s);
    const ComplexMatrix c = random_matrix(2, 30 + s);
    CHECK(close(kron(kron(a, b), c), kron(a, kron(b, c)), 1e-12));
  }
}

TEST_CASE("partial trace") {
  const auto ra = random_local_state(2, 1);
  const auto rb = random_local_state(3, 2);
  CHECK(close(partial_trace(kron(ra, rb), {2, 3}, Subsystem::B), rb, 1e-12));
  CHECK(close(partial_trace(kron(ra, rb), {2, 3}, Subsystem::A), ra, 1e-12));

  const ComplexMatrix a = random_matrix(2, 5);
  const ComplexMatrix b = random_matrix(4, 6);
  CHECK(close(partial_trace(kron(a, b), {2, 4}, Subsystem::A), a * b.trace(), 1e-12));

  const auto bell = bell_phi_plus();
  CHECK(close(partial_trace(bell.matrix(), bell.dims(), Subsystem::A),
              ComplexMatrix::Identity(2, 2) / 2.0, 1e-15));

  for (int d : {2, 3, 5}) {
    const auto rho = random_state(d, 2, 40 + d);
    CHECK(std::abs(partial_trace(rho.matrix(), rho.dims(), Subsystem::B).trace() - 1.0) < 1e-12);
  }

  CHECK_THROWS_AS(partial_trace(ComplexMatrix::Identity(5, 5), {2, 2}, Subsystem::A),
                  std::invalid_argument);
}

TEST_CASE("partial transpose") {
  const auto bell = bell_phi_plus();
  const ComplexMatrix pt = partial_transpose(bell.matrix(), bell.dims(), Subsystem::A);
  std::vector<double> ev(4);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt);
  for (int i = 0; i < 4; ++i) ev[i] = es.eigenvalues()(i);
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(-0.5).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) CHECK(ev[i] == doctest::Approx(0.5).epsilon(1e-12));

  const auto rho = random_state(3, 6, 7);
  const ComplexMatrix once = partial_transpose(rho.matrix(), rho.dims(), Subsystem::B);
  CHECK(is_hermitian(once, 1e-12));
  CHECK(close(partial_transpose(once, rho.dims(), Subsystem::B), rho.matrix(), 0.0));

  // product state: only the local factor is transposed
  const auto ra = random_local_state(2, 8);
  const auto rb = random_local_state(3, 9);
  const ComplexMatrix prod = kron(ra, rb);
  CHECK(close(partial_transpose(prod, {2, 3}, Subsystem::A), kron(ra.transpose(), rb), 1e-15));
  const RealVector before = hermitian_eigenvalues(prod);
  const RealVector after = hermitian_eigenvalues(partial_transpose(prod, {2, 3}, Subsystem::A));
  CHECK((before - after).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(partial_transpose(ComplexMatrix::Identity(6, 6), {2, 2}, Subsystem::A),
                  std::invalid_argument);
}

TEST_CASE("Gell-Mann basis") {
  const auto b2 = gell_mann_basis(2);
  REQUIRE(b2.elements.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(close(b2.elements[i], pauli(i + 1), 0.0));

  for (int d : {2, 3, 4, 8}) {
    const auto basis = gell_mann_basis(d);
    REQUIRE(static_cast<int>(basis.elements.size()) == d * d - 1);
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
      const auto& ti = basis.elements[i];
      CHECK(is_hermitian(ti, 1e-12));
      CHECK(std::abs(ti.trace()) < 1e-12);
      for (std::size_t j = 0; j < basis.elements.size(); ++j) {
        const Complex g = trace_of_product(ti, basis.elements[j]);
        CHECK(std::abs(g - (i == j ? Complex(d, 0.0) : Complex(0.0, 0.0))) < 1e-12);
      }
    }
    // (1/d)(I + sum tau ⊗ tau) is the swap, compared to the index-map oracle
    ComplexMatrix sum = ComplexMatrix::Identity(d * d, d * d);
    for (const auto& t : basis.elements) sum += kron(t, t);
    CHECK(close(sum / static_cast<double>(d), dense_permutation({d, d}, {1, 0}), 1e-12));
  }

  CHECK_THROWS_AS(gell_mann_basis(1), std::invalid_argument);
}

TEST_CASE("shift operator") {
  for (int dim : {2, 3}) {
    CHECK(close(shift_operator(2, dim), dense_permutation({dim, dim}, {1, 0}), 0.0));
    CHECK(std::abs(shift_operator(2, dim).trace() - Complex(dim, 0.0)) < 1e-15);
    for (int k : {2, 3, 4}) {
      const ComplexMatrix v = shift_operator(k, dim);
      ComplexMatrix p = ComplexMatrix::Identity(v.rows(), v.cols());
      for (int i = 0; i < k; ++i) p = p * v;
      CHECK(close(p, ComplexMatrix::Identity(v.rows(), v.cols()), 0.0));
    }
  }

  // V|j1 j2 j3> = |j3 j1 j2>
  const int dim = 3;
  const ComplexMatrix v = shift_operator(3, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c) {
        const ComplexVector in = kron(kron(basis_vector(dim, a), basis_vector(dim, b)), basis_vector(dim, c));
        const ComplexVector out = kron(kron(basis_vector(dim, c), basis_vector(dim, a)), basis_vector(dim, b));
        CHECK((v * in - out).norm() == 0.0);
      }

  const auto rho = random_local_state(3, 11);
  for (int k : {2, 3, 4}) {
    ComplexMatrix tensor = rho;
    ComplexMatrix power = rho;
    for (int i = 1; i < k; ++i) {
      tensor = kron(tensor, rho);
      power = power * rho;
    }
    CHECK(std::abs((shift_operator(k, 3) * tensor).trace() - power.trace()) < 1e-12);
  }

  CHECK_THROWS_AS(shift_operator(5, 2), std::invalid_argument);
  CHECK_THROWS_AS(shift_operator(2, 1), std::invalid_argument);
}

TEST_CASE("antisymmetric projector") {
  const ComplexVector singlet =
      (kron(basis_vector(2, 0), basis_vector(2, 1)) - kron(basis_vector(2, 1), basis_vector(2, 0))) /
      std::sqrt(2.0);
  CHECK(close(antisym_projector(2), singlet * singlet.adjoint(), 1e-15));

  const auto basis4 = gell_mann_basis(4);
  ComplexMatrix gm = 3.0 * ComplexMatrix::Identity(16, 16);
  for (const auto& t : basis4.elements) gm -= kron(t, t);
  CHECK(close(antisym_projector(4), gm / 8.0, 1e-12));

  for (int d : {2, 3, 4, 6}) {
    const ComplexMatrix p = antisym_projector(d);
    CHECK(close(p * p, p, 1e-12));
    CHECK(is_hermitian(p, 0.0));
    const RealVector ev = hermitian_eigenvalues(p);
    int ones = 0;
    for (int i = 0; i < ev.size(); ++i) {
      const bool zero = std::abs(ev(i)) < 1e-12;
      const bool one = std::abs(ev(i) - 1.0) < 1e-12;
      CHECK((zero || one));
      ones += one ? 1 : 0;
    }
    CHECK(ones == d * (d - 1) / 2);

    const auto rho = random_local_state(d, 50 + d);
    const double purity = (rho * rho).trace().real();
    CHECK(std::abs((p * kron(rho, rho)).trace() - Complex((1.0 - purity) / 2.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("permutation helpers") {
  CHECK(identity_permutation(3) == Permutation{0, 1, 2});
  CHECK(cyclic_permutation(3) == Permutation{1, 2, 0});
  CHECK(transposition(4, 0, 3) == Permutation{3, 1, 2, 0});
  const auto cs = cycles(Permutation{1, 0, 3, 2});
  REQUIRE(cs.size() == 2);
  CHECK(cs[0] == std::vector<int>{0, 1});
  CHECK(cs[1] == std::vector<int>{2, 3});
}

TEST_CASE("permutation expectation against the dense operator") {
  const BipartiteDims dims{2, 2};
  std::vector<ComplexMatrix> fs;
  for (int i = 0; i < 3; ++i) fs.push_back(random_state(2, 1 + i, 60 + i).matrix());

  for (int k = 1; k <= 3; ++k) {
    std::vector<ComplexMatrix> sub(fs.begin(), fs.begin() + k);
    const ComplexMatrix joint = kron_all(sub);
    Permutation pa = identity_permutation(k);
    do {
      Permutation pb = identity_permutation(k);
      do {
        const Complex fast = permutation_expectation(sub, pa, pb, dims);
        const Complex dense = (dense_bipartite(pa, pb, 2) * joint).trace();
        CHECK(std::abs(fast - dense) < 1e-12);
        CHECK(close(bipartite_permutation_operator(pa, pb, dims), dense_bipartite(pa, pb, 2), 0.0));
      } while (std::next_permutation(pb.begin(), pb.end()));
    } while (std::next_permutation(pa.begin(), pa.end()));
  }

  // k = 4 spot checks, including a non-state factor and d = 3
  std::vector<ComplexMatrix> four;
  for (int i = 0; i < 4; ++i) four.push_back(random_matrix(6, 70 + i));
  const ComplexMatrix joint = kron_all(four);
  for (const auto& [pa, pb] : std::vector<std::pair<Permutation, Permutation>>{
           {{2, 3, 0, 1}, {1, 0, 3, 2}}, {{3, 0, 1, 2}, {1, 2, 3, 0}}, {{0, 1, 2, 3}, {1, 0, 2, 3}}}) {
    const Complex fast = permutation_expectation(four, pa, pb, {2, 3});
    const Complex dense = (dense_bipartite(pa, pb, 3) * joint).trace();
    CHECK(std::abs(fast - dense) < 1e-9 * std::max(1.0, std::abs(dense)));
  }
}

TEST_CASE("permutation expectation special cases") {
  for (int d : {2, 3, 5}) {
    const auto rho = random_state(d, 2 * d, 80 + d);
    const ComplexMatrix& m = rho.matrix();
    ComplexMatrix power = m;
    for (int k = 1; k <= 4; ++k) {
      std::vector<ComplexMatrix> copies(k, m);
      const Permutation shift = cyclic_permutation(k);
      CHECK(std::abs(permutation_expectation(copies, shift, shift, rho.dims()) - power.trace()) < 1e-12);
      power = power * m;
    }
    std::vector<ComplexMatrix> mixed = {m, 2.0 * m, 3.0 * m};
    const Permutation id = identity_permutation(3);
    CHECK(std::abs(permutation_expectation(mixed, id, id, rho.dims()) - Complex(6.0, 0.0)) < 1e-12);
  }

  std::vector<ComplexMatrix> bad = {ComplexMatrix::Identity(4, 4), ComplexMatrix::Identity(6, 6)};
  CHECK_THROWS_AS(permutation_expectation(bad, {0, 1}, {0, 1}, {2, 2}), std::invalid_argument);
}

TEST_CASE("matrix utilities") {
  const auto bell = bell_phi_plus();
  CHECK(trace_norm(partial_transpose(bell.matrix(), bell.dims(), Subsystem::A)) ==
        doctest::Approx(2.0).epsilon(1e-12));
  const RealVector ev = hermitian_eigenvalues(bell.matrix());
  CHECK(ev(0) == doctest::Approx(1.0));
  CHECK(std::is_sorted(ev.data(), ev.data() + ev.size(), std::greater<>()));
  CHECK(is_unitary(random_unitary(5, 3), 1e-12));
  CHECK_FALSE(is_unitary(2.0 * ComplexMatrix::Identity(2, 2), 1e-12));
  ComplexMatrix nan = ComplexMatrix::Identity(2, 2);
  nan(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_FALSE(all_finite(nan));
  CHECK(max_abs_entry(pauli(2)) == 1.0);
}
