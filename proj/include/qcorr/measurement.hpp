#pragma once

// Observable routes to Q: trace polynomials of rho and its marginals, and
// local antisymmetric projectors on two and four copies of rho.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qcorr/correlations.hpp"

namespace qcorr {

/// Raised when two evaluation routes that must coincide disagree.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Trace functionals of rho, rho_A and rho_B. The first nine are the
/// quantities entering the two-qubit polynomial for Tr[S^2]; the last two are
/// needed as well once d > 2.
struct ObservableSet {
  int dim_b = 2;
  double purity = 0.0;                   // Tr[rho^2]
  double cubic = 0.0;                    // Tr[rho^3]
  double quartic = 0.0;                  // Tr[rho^4]
  double purity_a = 0.0;                 // Tr[rho_A^2]
  double purity_b = 0.0;                 // Tr[rho_B^2]
  double bob_sandwich = 0.0;             // Tr[rho (I ⊗ rho_B) rho (I ⊗ rho_B)]
  double product_overlap = 0.0;          // Tr[rho (rho_A ⊗ rho_B)]
  double alice_sandwich = 0.0;           // Tr[rho (rho_A ⊗ I) rho (rho_A ⊗ I)]
  double squared_product_overlap = 0.0;  // Tr[rho^2 (rho_A ⊗ rho_B)]
  double dressed_marginal_purity = 0.0;  // Tr[(Tr_B[rho (I ⊗ rho_B)])^2]
  double paired_swap_quartic = 0.0;      // Tr[(V_A02 V_A13 ⊗ V_B01 V_B23) rho^{⊗4}]

  /// Largest |difference| between the two evaluation routes (0 if only one ran).
  double route_gap = 0.0;

  std::array<double, 11> values() const;
};

/// Direct matrix products on rho, rho_A, rho_B.
ObservableSet observables_from_products(const DensityMatrix& rho);

/// Each functional as a permutation expectation on copies of rho, i.e. the
/// value an interferometer with a controlled shift would read out.
ObservableSet observables_from_permutations(const DensityMatrix& rho);

/// Both routes; throws ConsistencyError when they differ by more than 1e-8.
ObservableSet observable_set(const DensityMatrix& rho);

/// Coefficients (times 1/4) of the two-qubit Tr[S^2] polynomial over the
/// monomials returned by trace_monomials:
///   1, Tr[rho^4], Tr[rho^3], Tr[rho^2]^2, Tr[rho^2], Tr[rho^2] Tr[rho_B^2],
///   Tr[rho_A^2]^2, Tr[rho_A^2], Tr[rho_B^2]^2, Tr[rho_B^2],
///   Tr[rho_A^2] Tr[rho_B^2], bob_sandwich, product_overlap, alice_sandwich,
///   squared_product_overlap.
using TracePolynomial = std::array<double, 15>;

inline constexpr TracePolynomial kTwoQubitTraceS2 = {
    -2.0, -8.0, 8.0, 6.0, -10.0, -2.0, -2.0, 10.0, -1.0, 12.0, -6.0, 4.0, -24.0, 8.0, 8.0};

std::array<double, 15> trace_monomials(const ObservableSet& obs);

/// Tr[S] = Tr[rho^2] - Tr[rho_B^2]/2 (any d).
double trace_s_from_traces(const ObservableSet& obs);

/// Tr[S^2] from trace functionals. For d = 2 the polynomial `poly` is
/// evaluated; it does not carry over to d > 2, where the identity
///   Tr[S^2] = paired_swap_quartic - dressed_marginal_purity + Tr[rho_B^2]^2/4
/// is used instead (it follows from S_ik = Tr[B_i B_k]/2 with
/// B_i = Tr_A[(sigma_i ⊗ I) rho]).
double trace_s2_from_traces(const ObservableSet& obs,
                            const TracePolynomial& poly = kTwoQubitTraceS2);

/// The d-independent identity above, valid for every d including 2.
double trace_s2_general(const ObservableSet& obs);

/// One local projector measurement: a product of antisymmetric projectors
/// P^- = (I - V)/2 on the listed pairs of A slots and B slots, identity on
/// the remaining slots, measured on `copies` copies of rho.
struct ProjectorSetting {
  int copies = 2;
  std::vector<std::pair<int, int>> alice_pairs;
  std::vector<std::pair<int, int>> bob_pairs;
};

/// The seven settings c1..c7 (0-based copy indices):
///   c1 = P_A01 ⊗ P_B01, c2 = P_A01, c3 = P_B01              (two copies)
///   c4 = P_A03 P_A12 ⊗ P_B01 P_B23, c5 = P_A03 ⊗ P_B01 P_B23,
///   c6 = P_A03 P_A12 ⊗ P_B01,       c7 = P_A12 ⊗ P_B01       (four copies)
const std::array<ProjectorSetting, 7>& projector_settings();

/// Tr[P rho^{⊗k}] by expanding each P^- into permutations and contracting
/// along cycles; the (2d)^k-dimensional space is never formed.
double projector_expectation(const DensityMatrix& rho, const ProjectorSetting& setting);

enum class EstimationMode { Exact, Sampled };

struct ProjectorExpectations {
  int dim_b = 2;
  EstimationMode mode = EstimationMode::Exact;
  std::array<std::optional<double>, 7> c;
  long shots = 0;
  std::array<double, 7> standard_error{};
  std::uint64_t seed = 0;

  /// Number of projector expectations actually present.
  int measured() const;
};

/// copies = 2 yields c1..c3, copies = 4 yields c4..c7.
ProjectorExpectations projector_scheme(const DensityMatrix& rho, int copies);
/// All seven.
ProjectorExpectations projector_scheme(const DensityMatrix& rho);

/// Tr[S] = 4c1 - 2c2 - c3 + 1/2.
double trace_s_from_projectors(const ProjectorExpectations& px);
/// Tr[S^2] = 16c4 + 8(c7 - c5 - 2c6) + c3^2 + 4c2^2 - c3 - 2c2 + 1/4.
double trace_s2_from_projectors(const ProjectorExpectations& px);

/// Tr[S] = 1/2 - 2 Tr[P^-_{(A1B1)(A2B2)} rho^{⊗2}] + Tr[P^-_{B1B2} rho_B^{⊗2}],
/// using the projector on two 2d-level systems.
double trace_s_from_global_projector(const DensityMatrix& rho);

/// Each c_i estimated from `shots` independent binary outcomes with success
/// probability c_i.
ProjectorExpectations sampled_scheme(const DensityMatrix& rho, long shots, std::uint64_t seed);

struct QEstimate {
  double q_hat = 0.0;
  double trace_s_hat = 0.0;
  double trace_s2_hat = 0.0;
  double stderr_q = 0.0;
  long shots = 0;
  std::uint64_t seed = 0;
  bool radicand_clamped = false;
  double radicand_clamp = 0.0;
};

inline constexpr int kBootstrapResamples = 200;

/// Q from c1..c7; sampled inputs get a bootstrap standard error from
/// resampling each projector's outcome counts.
QEstimate q_from_measurements(const ProjectorExpectations& px,
                              int bootstrap_resamples = kBootstrapResamples);

/// Visibility v = Tr[O (f_0 ⊗ ... ⊗ f_{k-1})] read from the meter qubit of an
/// interferometer with a controlled-O: <sigma_1> = Re v, <sigma_2> = Im v.
/// Throws std::invalid_argument if `op` is not unitary on the joint space.
Complex circuit_visibility(const ComplexMatrix& op, std::span<const ComplexMatrix> factors);

}  // namespace qcorr
