#include "qcorr/measurement.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

namespace qcorr {

namespace {

constexpr double kRouteTolerance = 1e-8;

Permutation pairs_to_permutation(int k, const std::vector<std::pair<int, int>>& pairs,
                                 unsigned mask) {
  Permutation p = identity_permutation(k);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (mask & (1u << i)) std::swap(p[pairs[i].first], p[pairs[i].second]);
  }
  return p;
}

double copy_expectation(const DensityMatrix& rho, int k, const Permutation& pa,
                        const Permutation& pb) {
  const std::vector<ComplexMatrix> copies(k, rho.matrix());
  return permutation_expectation(copies, pa, pb, rho.dims()).real();
}

double require_c(const ProjectorExpectations& px, int i) {
  if (!px.c[i]) {
    throw std::invalid_argument("projector expectation c" + std::to_string(i + 1) + " missing");
  }
  return *px.c[i];
}

}  // namespace

std::array<double, 11> ObservableSet::values() const {
  return {purity,          cubic,          quartic,
          purity_a,        purity_b,       bob_sandwich,
          product_overlap, alice_sandwich, squared_product_overlap,
          dressed_marginal_purity, paired_swap_quartic};
}

ObservableSet observables_from_products(const DensityMatrix& rho) {
  const int d = rho.dim_b();
  const auto& m = rho.matrix();
  const ComplexMatrix rho_a = partial_trace(m, rho.dims(), Subsystem::A);
  const ComplexMatrix rho_b = partial_trace(m, rho.dims(), Subsystem::B);
  const ComplexMatrix id_a = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix id_b = ComplexMatrix::Identity(d, d);

  const ComplexMatrix m2 = m * m;
  const ComplexMatrix dressed_b = m * kron(id_a, rho_b);
  const ComplexMatrix dressed_a = m * kron(rho_a, id_b);
  const ComplexMatrix ab = kron(rho_a, rho_b);
  const ComplexMatrix marginal = partial_trace(dressed_b, rho.dims(), Subsystem::A);

  ObservableSet o;
  o.dim_b = d;
  o.purity = trace_of_product(m, m).real();
  o.cubic = trace_of_product(m2, m).real();
  o.quartic = trace_of_product(m2, m2).real();
  o.purity_a = trace_of_product(rho_a, rho_a).real();
  o.purity_b = trace_of_product(rho_b, rho_b).real();
  o.bob_sandwich = trace_of_product(dressed_b, dressed_b).real();
  o.product_overlap = trace_of_product(m, ab).real();
  o.alice_sandwich = trace_of_product(dressed_a, dressed_a).real();
  o.squared_product_overlap = trace_of_product(m2, ab).real();
  o.dressed_marginal_purity = trace_of_product(marginal, marginal).real();

  // G(pq, rs) = sum_{a,a'} rho[a p, a' q] rho[a' r, a s]; the quartic is
  // sum G(pq, rs) G(qp, sr).
  const int d2 = d * d;
  ComplexMatrix g = ComplexMatrix::Zero(d2, d2);
  for (int a = 0; a < 2; ++a) {
    for (int a2 = 0; a2 < 2; ++a2) {
      const auto left = m.block(a * d, a2 * d, d, d);
      const auto right = m.block(a2 * d, a * d, d, d);
      for (int p = 0; p < d; ++p) {
        for (int q = 0; q < d; ++q) {
          for (int r = 0; r < d; ++r) {
            for (int s = 0; s < d; ++s) g(p * d + q, r * d + s) += left(p, q) * right(r, s);
          }
        }
      }
    }
  }
  Complex quartic = 0.0;
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      for (int r = 0; r < d; ++r) {
        for (int s = 0; s < d; ++s) quartic += g(p * d + q, r * d + s) * g(q * d + p, s * d + r);
      }
    }
  }
  o.paired_swap_quartic = quartic.real();
  return o;
}

ObservableSet observables_from_permutations(const DensityMatrix& rho) {
  ObservableSet o;
  o.dim_b = rho.dim_b();
  const Permutation swap2 = {1, 0};
  const Permutation id2 = identity_permutation(2);
  o.purity = copy_expectation(rho, 2, swap2, swap2);
  o.cubic = copy_expectation(rho, 3, cyclic_permutation(3), cyclic_permutation(3));
  o.quartic = copy_expectation(rho, 4, cyclic_permutation(4), cyclic_permutation(4));
  o.purity_a = copy_expectation(rho, 2, swap2, id2);
  o.purity_b = copy_expectation(rho, 2, id2, swap2);
  // Copies whose A (or B) slot is a fixed point act as rho_B (or rho_A).
  o.bob_sandwich = copy_expectation(rho, 4, transposition(4, 0, 2), cyclic_permutation(4));
  o.product_overlap = copy_expectation(rho, 3, transposition(3, 0, 1), transposition(3, 0, 2));
  o.alice_sandwich = copy_expectation(rho, 4, cyclic_permutation(4), transposition(4, 0, 2));
  o.squared_product_overlap = copy_expectation(rho, 4, {1, 2, 0, 3}, {1, 3, 2, 0});
  o.dressed_marginal_purity = copy_expectation(rho, 4, transposition(4, 0, 2), {1, 0, 3, 2});
  o.paired_swap_quartic = copy_expectation(rho, 4, {2, 3, 0, 1}, {1, 0, 3, 2});
  return o;
}

ObservableSet observable_set(const DensityMatrix& rho) {
  ObservableSet direct = observables_from_products(rho);
  const ObservableSet permuted = observables_from_permutations(rho);
  const auto a = direct.values();
  const auto b = permuted.values();
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) gap = std::max(gap, std::abs(a[i] - b[i]));
  if (gap > kRouteTolerance) {
    throw ConsistencyError("observable_set: product and permutation routes differ by " +
                           std::to_string(gap));
  }
  direct.route_gap = gap;
  return direct;
}

std::array<double, 15> trace_monomials(const ObservableSet& o) {
  const double p2 = o.purity;
  const double a = o.purity_a;
  const double b = o.purity_b;
  return {1.0,   o.quartic, o.cubic,           p2 * p2,           p2,
          p2 * b, a * a,    a,                 b * b,             b,
          a * b, o.bob_sandwich, o.product_overlap, o.alice_sandwich,
          o.squared_product_overlap};
}

double trace_s_from_traces(const ObservableSet& obs) { return obs.purity - obs.purity_b / 2.0; }

double trace_s2_general(const ObservableSet& obs) {
  return obs.paired_swap_quartic - obs.dressed_marginal_purity +
         obs.purity_b * obs.purity_b / 4.0;
}

double trace_s2_from_traces(const ObservableSet& obs, const TracePolynomial& poly) {
  if (obs.dim_b != 2) return trace_s2_general(obs);
  const auto mono = trace_monomials(obs);
  double sum = 0.0;
  for (std::size_t i = 0; i < mono.size(); ++i) sum += poly[i] * mono[i];
  return sum / 4.0;
}

const std::array<ProjectorSetting, 7>& projector_settings() {
  static const std::array<ProjectorSetting, 7> settings = {{
      {2, {{0, 1}}, {{0, 1}}},
      {2, {{0, 1}}, {}},
      {2, {}, {{0, 1}}},
      {4, {{0, 3}, {1, 2}}, {{0, 1}, {2, 3}}},
      {4, {{0, 3}}, {{0, 1}, {2, 3}}},
      {4, {{0, 3}, {1, 2}}, {{0, 1}}},
      {4, {{1, 2}}, {{0, 1}}},
  }};
  return settings;
}

double projector_expectation(const DensityMatrix& rho, const ProjectorSetting& setting) {
  const int k = setting.copies;
  const std::size_t na = setting.alice_pairs.size();
  const std::size_t nb = setting.bob_pairs.size();
  const std::vector<ComplexMatrix> copies(k, rho.matrix());
  // prod_pairs (I - V)/2 = 2^{-m} sum_subsets (-1)^{|subset|} prod_{subset} V.
  double total = 0.0;
  for (unsigned ma = 0; ma < (1u << na); ++ma) {
    const Permutation pa = pairs_to_permutation(k, setting.alice_pairs, ma);
    for (unsigned mb = 0; mb < (1u << nb); ++mb) {
      const Permutation pb = pairs_to_permutation(k, setting.bob_pairs, mb);
      const int sign = (std::popcount(ma) + std::popcount(mb)) % 2 == 0 ? 1 : -1;
      total += sign * permutation_expectation(copies, pa, pb, rho.dims()).real();
    }
  }
  return std::ldexp(total, -static_cast<int>(na + nb));
}

int ProjectorExpectations::measured() const {
  return static_cast<int>(std::count_if(c.begin(), c.end(), [](const auto& v) { return v.has_value(); }));
}

ProjectorExpectations projector_scheme(const DensityMatrix& rho, int copies) {
  if (copies != 2 && copies != 4) {
    throw std::invalid_argument("projector_scheme: copies must be 2 or 4");
  }
  ProjectorExpectations px;
  px.dim_b = rho.dim_b();
  px.mode = EstimationMode::Exact;
  const auto& settings = projector_settings();
  for (std::size_t i = 0; i < settings.size(); ++i) {
    if (settings[i].copies != copies) continue;
    px.c[i] = std::clamp(projector_expectation(rho, settings[i]), 0.0, 1.0);
  }
  return px;
}

ProjectorExpectations projector_scheme(const DensityMatrix& rho) {
  ProjectorExpectations px = projector_scheme(rho, 2);
  const ProjectorExpectations four = projector_scheme(rho, 4);
  for (int i = 3; i < 7; ++i) px.c[i] = four.c[i];
  return px;
}

double trace_s_from_projectors(const ProjectorExpectations& px) {
  return 4.0 * require_c(px, 0) - 2.0 * require_c(px, 1) - require_c(px, 2) + 0.5;
}

double trace_s2_from_projectors(const ProjectorExpectations& px) {
  const double c2 = require_c(px, 1);
  const double c3 = require_c(px, 2);
  const double c4 = require_c(px, 3);
  const double c5 = require_c(px, 4);
  const double c6 = require_c(px, 5);
  const double c7 = require_c(px, 6);
  return 16.0 * c4 + 8.0 * (c7 - c5 - 2.0 * c6) + c3 * c3 + 4.0 * c2 * c2 - c3 - 2.0 * c2 + 0.25;
}

double trace_s_from_global_projector(const DensityMatrix& rho) {
  const int d = rho.dim_b();
  const auto& m = rho.matrix();
  const ComplexMatrix rho_b = partial_trace(m, rho.dims(), Subsystem::B);
  const double global = trace_of_product(antisym_projector(2 * d), kron(m, m)).real();
  const double bob = trace_of_product(antisym_projector(d), kron(rho_b, rho_b)).real();
  return 0.5 - 2.0 * global + bob;
}

ProjectorExpectations sampled_scheme(const DensityMatrix& rho, long shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("sampled_scheme: shots must be >= 1");
  const ProjectorExpectations exact = projector_scheme(rho);
  ProjectorExpectations px;
  px.dim_b = rho.dim_b();
  px.mode = EstimationMode::Sampled;
  px.shots = shots;
  px.seed = seed;
  for (int i = 0; i < 7; ++i) {
    std::mt19937_64 gen(derive_seed(seed, i));
    std::binomial_distribution<long> outcomes(shots, *exact.c[i]);
    const double c_hat = static_cast<double>(outcomes(gen)) / static_cast<double>(shots);
    px.c[i] = c_hat;
    px.standard_error[i] = std::sqrt(c_hat * (1.0 - c_hat) / static_cast<double>(shots));
  }
  return px;
}

QEstimate q_from_measurements(const ProjectorExpectations& px, int bootstrap_resamples) {
  QEstimate est;
  est.trace_s_hat = trace_s_from_projectors(px);
  est.trace_s2_hat = trace_s2_from_projectors(px);
  const QValue qv = q_from_moments(est.trace_s_hat, est.trace_s2_hat);
  est.q_hat = qv.q;
  est.radicand_clamped = qv.clamped;
  est.radicand_clamp = qv.radicand_clamp;
  est.shots = px.shots;
  est.seed = px.seed;
  if (px.mode == EstimationMode::Exact) return est;

  if (bootstrap_resamples < 2) {
    throw std::invalid_argument("q_from_measurements: need at least 2 bootstrap resamples");
  }
  std::mt19937_64 gen(derive_seed(px.seed, 0xb0075ULL));
  std::vector<double> samples;
  samples.reserve(bootstrap_resamples);
  ProjectorExpectations resampled = px;
  for (int b = 0; b < bootstrap_resamples; ++b) {
    for (int i = 0; i < 7; ++i) {
      std::binomial_distribution<long> outcomes(px.shots, std::clamp(*px.c[i], 0.0, 1.0));
      resampled.c[i] = static_cast<double>(outcomes(gen)) / static_cast<double>(px.shots);
    }
    samples.push_back(q_from_moments(trace_s_from_projectors(resampled),
                                     trace_s2_from_projectors(resampled)).q);
  }
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= samples.size();
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  est.stderr_q = std::sqrt(var / (samples.size() - 1));
  return est;
}

Complex circuit_visibility(const ComplexMatrix& op, std::span<const ComplexMatrix> factors) {
  if (factors.empty() || factors.size() > 4) {
    throw std::invalid_argument("circuit_visibility: need 1..4 factors");
  }
  ComplexMatrix joint = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) joint = kron(joint, factors[i]);
  if (joint.rows() > 1024) throw std::invalid_argument("circuit_visibility: joint space too large");
  if (op.rows() != joint.rows() || op.cols() != joint.cols()) {
    throw std::invalid_argument("circuit_visibility: operator does not match the joint space");
  }
  if (!is_unitary(op, 1e-10)) throw std::invalid_argument("circuit_visibility: operator not unitary");

  // Meter prepared in |+>, controlled-O, then read out. After the gate the
  // meter's reduced state has rho_01 = Tr[R O^dagger]/2 and rho_10 = Tr[O R]/2.
  const Complex rho01 = 0.5 * trace_of_product(joint, op.adjoint());
  const Complex rho10 = 0.5 * trace_of_product(op, joint);
  const Complex sigma1 = rho01 + rho10;
  const Complex sigma2 = Complex(0.0, 1.0) * (rho01 - rho10);
  return {sigma1.real(), sigma2.real()};
}

}  // namespace qcorr
