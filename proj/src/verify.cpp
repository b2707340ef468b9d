#include "qcorr/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace qcorr {

namespace {

constexpr double kChainTol = 1e-9;
constexpr double kSaturationTol = 1e-8;
constexpr double kClassicalTol = 1e-9;
constexpr double kFullRankFloor = 1e-12;
constexpr double kRouteTol = 1e-9;
constexpr double kEigenTol = 1e-9;

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

SuiteResult chain_suite(long per_rank, std::uint64_t seed) {
  SuiteResult r{"chain", false, 0, -std::numeric_limits<double>::infinity(), kChainTol, {}};
  long violations = 0;
  for (int rank = 1; rank <= 4; ++rank) {
    for (long i = 0; i < per_rank; ++i) {
      const auto rho = random_state(2, rank, derive_seed(seed, rank * 1000003ULL + i));
      const auto rep = analyze(rho);
      const double worst =
          std::max({rep.negativity_sq - rep.q, rep.q - rep.d_g, rep.d_g - rep.d_g_upper, -rep.q});
      r.worst = std::max(r.worst, worst);
      if (worst > kChainTol) ++violations;
      ++r.trials;
    }
  }
  r.passed = violations == 0;
  r.detail = std::to_string(violations) + " violations; worst margin " + fmt_double(r.worst);
  return r;
}

SuiteResult pure_saturation_suite(long trials, std::uint64_t seed, const std::vector<int>& qudit_dims) {
  SuiteResult r{"pure-saturation", false, 0, 0.0, kSaturationTol, {}};
  double worst_qubit = 0.0;
  double worst_qudit = 0.0;
  for (long i = 0; i < trials; ++i) {
    const auto rho = random_pure(2, derive_seed(seed, i));
    const auto rep = analyze(rho);
    worst_qubit = std::max({worst_qubit, std::abs(rep.d_g - rep.q), std::abs(rep.q - rep.negativity_sq)});
    ++r.trials;
  }
  for (int d : qudit_dims) {
    for (long i = 0; i < trials; ++i) {
      const auto rho = random_pure(d, derive_seed(seed + d, i));
      const auto s = s_matrix(rho);
      const double q = q_from_moments(s.trace_s, s.trace_s2).q;
      const double dg = 2.0 * (s.trace_s - s.k[0]);
      worst_qudit = std::max(worst_qudit, std::abs(dg - q));
      ++r.trials;
    }
  }
  r.worst = std::max(worst_qubit, worst_qudit);
  r.passed = r.worst < kSaturationTol;
  r.detail = "2x2 max(|D_G-Q|,|Q-N^2|) " + fmt_double(worst_qubit) + "; 2xd max|D_G-Q| " +
             fmt_double(worst_qudit);
  return r;
}

SuiteResult faithfulness_suite(long trials, std::uint64_t seed) {
  SuiteResult r{"faithfulness", false, 0, 0.0, kClassicalTol, {}};
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double max_classical = 0.0;
  double min_full_rank = std::numeric_limits<double>::infinity();
  for (long i = 0; i < trials; ++i) {
    const int d = 2 + static_cast<int>(i % 3);
    const double p = unit(gen);
    const BlochAngles at{std::acos(1.0 - 2.0 * unit(gen)), 2.0 * std::numbers::pi * unit(gen)};
    const auto chi = classical_quantum_state({p, 1.0 - p}, at, {}, d, derive_seed(seed, i));
    max_classical = std::max(max_classical, analyze(chi).q);

    const auto rho = random_state(2, 4, derive_seed(seed ^ 0xfa17ULL, i));
    min_full_rank = std::min(min_full_rank, analyze(rho).q);
    r.trials += 2;
  }
  r.worst = max_classical;
  r.passed = max_classical < kClassicalTol && min_full_rank > kFullRankFloor;
  r.detail = "max Q on classical-quantum " + fmt_double(max_classical) + "; min Q full rank " +
             fmt_double(min_full_rank);
  return r;
}

SuiteResult route_equivalence_suite(long per_dim, std::uint64_t seed, const std::vector<int>& dims,
                                    const TracePolynomial& poly) {
  SuiteResult r{"route-equivalence", false, 0, 0.0, kRouteTol, {}};
  std::ostringstream detail;
  for (int d : dims) {
    double worst_traces = 0.0;
    double worst_global = 0.0;
    double worst_local = 0.0;
    for (long i = 0; i < per_dim; ++i) {
      const int rank = 1 + static_cast<int>(i % (2 * d));
      const auto rho = random_state(d, rank, derive_seed(seed + 7919ULL * d, i));
      const auto s = s_matrix(rho);
      const double q_closed = q_from_moments(s.trace_s, s.trace_s2).q;

      const auto obs = observable_set(rho);
      const double q_traces =
          q_from_moments(trace_s_from_traces(obs), trace_s2_from_traces(obs, poly)).q;

      const auto px = projector_scheme(rho);
      const double q_local = q_from_measurements(px).q_hat;
      const double q_global =
          q_from_moments(trace_s_from_global_projector(rho), trace_s2_from_projectors(px)).q;

      worst_traces = std::max(worst_traces, std::abs(q_traces - q_closed));
      worst_global = std::max(worst_global, std::abs(q_global - q_closed));
      worst_local = std::max(worst_local, std::abs(q_local - q_closed));
      ++r.trials;
    }
    r.worst = std::max({r.worst, worst_traces, worst_global, worst_local});
    detail << "d=" << d << " traces " << fmt_double(worst_traces) << " global "
           << fmt_double(worst_global) << " local " << fmt_double(worst_local) << "; ";
  }
  r.passed = r.worst < kRouteTol;
  r.detail = detail.str();
  return r;
}

SuiteResult eigenvalue_suite(long trials, long isotropic, std::uint64_t seed) {
  SuiteResult r{"cubic-eigenvalues", false, 0, 0.0, kEigenTol, {}};
  auto check = [&](const DensityMatrix& rho) {
    const auto s = s_matrix(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(s.s, Eigen::EigenvaluesOnly);
    const Eigen::Vector3d direct = solver.eigenvalues().reverse();
    for (int i = 0; i < 3; ++i) r.worst = std::max(r.worst, std::abs(direct(i) - s.k[i]));
    ++r.trials;
  };
  for (long i = 0; i < trials; ++i) {
    const int rank = 1 + static_cast<int>(i % 4);
    check(random_state(2, rank, derive_seed(seed, i)));
  }
  std::mt19937_64 gen(seed ^ 0x150ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long i = 0; i < isotropic; ++i) {
    // Werner states stay isotropic (t t^T = p^2 I) under any local unitary.
    const double p = i == 0 ? 0.0 : unit(gen);
    const auto w = werner_state(p);
    const ComplexMatrix u = kron(random_unitary(2, derive_seed(seed, 2 * i + 1)),
                                 random_unitary(2, derive_seed(seed, 2 * i + 2)));
    check(validate(u * w.matrix() * u.adjoint(), 2));
  }
  r.passed = r.worst < kEigenTol;
  r.detail = "max |k_cubic - k_eigensolver| " + fmt_double(r.worst);
  return r;
}

std::vector<SuiteResult> run_all_suites(const VerifyOptions& options) {
  const long n = options.trials;
  const std::uint64_t seed = options.seed;
  return {
      chain_suite(n, seed),
      pure_saturation_suite(n, seed + 1),
      faithfulness_suite(n, seed + 2),
      route_equivalence_suite(n, seed + 3, {2, 3, 4, 8}, options.trace_polynomial),
      eigenvalue_suite(n, std::max<long>(10, n / 10), seed + 4),
  };
}

}  // namespace qcorr
