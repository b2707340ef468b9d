#include "qcorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace qcorr {

namespace {

using Wide = long double;

// Works on the traceless part B = S - (Tr[S]/3) I, for which
//   6Tr[S^2] - 2Tr[S]^2 = 6Tr[B^2],
//   (2Tr[S]^3 - 9Tr[S]Tr[S^2] + 9Tr[S^3]) sqrt(2/(3Tr[S^2] - Tr[S]^2)^3) = sqrt(6) Tr[B^3] / Tr[B^2]^(3/2),
// so the cancellation between powers of Tr[S] never happens.
CubicEigenvalues solve_cubic(Wide trace_s, Wide trace_b2, Wide trace_b3) {
  const Wide pi = std::numbers::pi_v<Wide>;
  CubicEigenvalues out;
  const Wide raw_radicand = 6 * trace_b2;
  if (raw_radicand <= kDegenerateRadicand) {
    // Isotropic S: every root equals Tr[S]/3.
    out.radicand_clamp = raw_radicand < 0 ? static_cast<double>(-raw_radicand) : 0.0;
    out.radicand = 0.0;
    out.theta = 0.0;
    out.by_alpha.fill(static_cast<double>(trace_s / 3));
    out.k = out.by_alpha;
    return out;
  }
  out.radicand = static_cast<double>(raw_radicand);

  Wide arg = std::sqrt(Wide(6)) * trace_b3 / (trace_b2 * std::sqrt(trace_b2));
  if (arg > 1 || arg < -1) {
    out.arccos_clamp = static_cast<double>(std::abs(arg) - 1);
    arg = std::clamp<Wide>(arg, -1, 1);
  }
  const Wide theta = std::acos(arg);
  out.theta = static_cast<double>(theta);

  const Wide amplitude = std::sqrt(raw_radicand) / 3;
  const std::array<Wide, 3> alphas = {0, 2 * pi, 4 * pi};
  for (int i = 0; i < 3; ++i) {
    out.by_alpha[i] = static_cast<double>(trace_s / 3 + amplitude * std::cos((theta + alphas[i]) / 3));
  }
  out.k = out.by_alpha;
  std::stable_sort(out.k.begin(), out.k.end(), std::greater<>());
  return out;
}

}  // namespace

CubicEigenvalues cubic_eigenvalues(double trace_s, double trace_s2, double trace_s3) {
  const Wide t = trace_s, t2 = trace_s2, t3 = trace_s3;
  return solve_cubic(t, t2 - t * t / 3, t3 - t * t2 + 2 * t * t * t / 9);
}

CubicEigenvalues cubic_eigenvalues(const Eigen::Matrix3d& s) {
  // The arccos argument sits at +-1 whenever two eigenvalues coincide (every
  // pure state), where a rounding error e in it moves theta by sqrt(2e).
  // Extended precision and the traceless part keep that below 1e-10 in k.
  const Eigen::Matrix<Wide, 3, 3> w = s.cast<Wide>();
  const Wide t = w.trace();
  const Eigen::Matrix<Wide, 3, 3> b = w - (t / 3) * Eigen::Matrix<Wide, 3, 3>::Identity();
  const Eigen::Matrix<Wide, 3, 3> b2 = b * b;
  return solve_cubic(t, b2.trace(), (b2 * b).trace());
}

SMatrix s_matrix(const BlochDecomposition& bloch) {
  const double norm = 1.0 / (2.0 * bloch.dim_b);
  SMatrix out;
  out.s = norm * (bloch.x * bloch.x.transpose() + bloch.t * bloch.t.transpose());
  const Eigen::Matrix3d s2 = out.s * out.s;
  out.trace_s = out.s.trace();
  out.trace_s2 = s2.trace();
  out.trace_s3 = (s2 * out.s).trace();
  const auto roots = cubic_eigenvalues(out.s);
  out.theta = roots.theta;
  out.alphas = {0.0, 2.0 * std::numbers::pi, 4.0 * std::numbers::pi};
  out.k = roots.k;
  out.radicand_clamp = roots.radicand_clamp;
  out.arccos_clamp = roots.arccos_clamp;
  return out;
}

SMatrix s_matrix(const DensityMatrix& rho) { return s_matrix(bloch_decompose(rho)); }

std::array<double, 3> k_eigenvalues(const SMatrix& s) { return s.k; }

QValue q_from_moments(double trace_s, double trace_s2) {
  QValue out;
  const double raw = 6.0 * trace_s2 - 2.0 * trace_s * trace_s;
  if (raw <= kDegenerateRadicand) {
    out.radicand_clamp = raw < 0.0 ? -raw : 0.0;
    out.clamped = out.radicand_clamp > kClampReportThreshold;
    out.radicand = 0.0;
  } else {
    out.radicand = raw;
  }
  out.q = 2.0 / 3.0 * (2.0 * trace_s - std::sqrt(out.radicand));
  return out;
}

double geometric_discord(const DensityMatrix& rho) {
  const auto s = s_matrix(rho);
  return std::max(0.0, 2.0 * (s.trace_s - s.k[0]));
}

double q_measure(const DensityMatrix& rho) {
  const auto s = s_matrix(rho);
  return std::max(0.0, q_from_moments(s.trace_s, s.trace_s2).q);
}

double negativity_squared(const DensityMatrix& rho) {
  const ComplexMatrix pt = partial_transpose(rho.matrix(), rho.dims(), Subsystem::A);
  const double n = std::max(0.0, trace_norm(pt) - 1.0);
  return n * n;
}

CorrelationReport analyze(const DensityMatrix& rho) {
  const auto s = s_matrix(rho);
  const auto qv = q_from_moments(s.trace_s, s.trace_s2);
  CorrelationReport r;
  r.trace_s = s.trace_s;
  r.trace_s2 = s.trace_s2;
  r.k = s.k;
  r.q = std::max(0.0, qv.q);
  r.d_g = std::max(0.0, 2.0 * (s.trace_s - s.k[0]));
  r.d_g_upper = 4.0 * s.trace_s / 3.0;
  r.negativity_sq = negativity_squared(rho);
  r.radicand_clamp = std::max(s.radicand_clamp, qv.radicand_clamp);
  r.arccos_clamp = s.arccos_clamp;
  return r;
}

double dephasing_distance(const DensityMatrix& rho, BlochAngles angles) {
  const int d = rho.dim_b();
  const auto& m = rho.matrix();
  const auto basis = qubit_basis(angles);
  // chi = sum_v (P_v ⊗ I) rho (P_v ⊗ I), assembled block by block.
  ComplexMatrix chi = ComplexMatrix::Zero(2 * d, 2 * d);
  for (const auto& v : basis) {
    const Eigen::Matrix2cd p = v * v.adjoint();
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        auto out = chi.block(a * d, b * d, d, d);
        for (int c = 0; c < 2; ++c) {
          for (int e = 0; e < 2; ++e) {
            const Complex w = p(a, c) * p(e, b);
            if (w != Complex(0.0, 0.0)) out += w * m.block(c * d, e * d, d, d);
          }
        }
      }
    }
  }
  return 2.0 * (m - chi).squaredNorm();
}

double discord_oracle(const DensityMatrix& rho, const OracleOptions& options) {
  if (options.theta_steps < 2 || options.phi_steps < 1 || options.refinements < 0 ||
      options.zoom < 2) {
    throw std::invalid_argument("discord_oracle: invalid grid options");
  }
  constexpr double kPi = std::numbers::pi;
  double best = std::numeric_limits<double>::infinity();
  BlochAngles best_at;
  double h_theta = kPi / (options.theta_steps - 1);
  double h_phi = 2.0 * kPi / options.phi_steps;
  for (int i = 0; i < options.theta_steps; ++i) {
    for (int j = 0; j < options.phi_steps; ++j) {
      const BlochAngles at{i * h_theta, j * h_phi};
      const double v = dephasing_distance(rho, at);
      if (v < best) {
        best = v;
        best_at = at;
      }
    }
  }
  for (int round = 0; round < options.refinements; ++round) {
    h_theta /= options.zoom;
    h_phi /= options.zoom;
    const BlochAngles center = best_at;
    for (int i = -options.zoom; i <= options.zoom; ++i) {
      for (int j = -options.zoom; j <= options.zoom; ++j) {
        const BlochAngles at{center.theta + i * h_theta, center.phi + j * h_phi};
        const double v = dephasing_distance(rho, at);
        if (v < best) {
          best = v;
          best_at = at;
        }
      }
    }
  }
  return best;
}

}  // namespace qcorr
