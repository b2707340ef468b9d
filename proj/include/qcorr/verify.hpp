#pragma once

// Randomized invariant suites shared by `qcorr verify` and the acceptance
// tests. Every suite derives per-trial seeds from (seed, trial index).

#include <cstdint>
#include <string>
#include <vector>

#include "qcorr/measurement.hpp"

namespace qcorr {

struct SuiteResult {
  std::string name;
  bool passed = false;
  long trials = 0;
  double worst = 0.0;      // worst observed value of the suite's error metric
  double tolerance = 0.0;  // pass iff worst <= tolerance (per suite semantics)
  std::string detail;
};

/// N^2 <= Q <= D_G <= 4Tr[S]/3 (tolerance 1e-9) on `per_rank` random
/// two-qubit states of each rank 1..4.
SuiteResult chain_suite(long per_rank, std::uint64_t seed);

/// Pure states: |D_G - Q| and |Q - N^2| below 1e-8 for two qubits;
/// |D_G - Q| below 1e-8 for each d in `qudit_dims`.
SuiteResult pure_saturation_suite(long trials, std::uint64_t seed,
                                  const std::vector<int>& qudit_dims = {3, 4, 8});

/// Q < 1e-9 on classical-quantum states and Q > 1e-12 on full-rank states.
SuiteResult faithfulness_suite(long trials, std::uint64_t seed);

/// Q via closed form, trace functionals, global projector + four-copy
/// projectors, and the seven local projectors agree within 1e-9.
SuiteResult route_equivalence_suite(long per_dim, std::uint64_t seed,
                                    const std::vector<int>& dims = {2, 3, 4, 8},
                                    const TracePolynomial& poly = kTwoQubitTraceS2);

/// Cubic-formula eigenvalues of S against a symmetric eigensolver (1e-9), on
/// random states plus `isotropic` locally rotated Werner states.
SuiteResult eigenvalue_suite(long trials, long isotropic, std::uint64_t seed);

struct VerifyOptions {
  long trials = 200;
  std::uint64_t seed = 1;
  TracePolynomial trace_polynomial = kTwoQubitTraceS2;
};

std::vector<SuiteResult> run_all_suites(const VerifyOptions& options);

}  // namespace qcorr
