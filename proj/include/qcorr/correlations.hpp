#pragma once

#include <array>

#include "qcorr/states.hpp"

namespace qcorr {

/// Radicands 6Tr[S^2] - 2Tr[S]^2 at or below this value are treated as the
/// isotropic case (all eigenvalues equal, theta = 0).
inline constexpr double kDegenerateRadicand = 1e-14;

/// Clamps larger than this are reported in SMatrix / QEstimate.
inline constexpr double kClampReportThreshold = 1e-9;

/// Eigenvalues of a symmetric 3x3 matrix from its trace moments via the
/// trigonometric solution of the characteristic cubic:
///   k_i = Tr[S]/3 + sqrt(6Tr[S^2] - 2Tr[S]^2)/3 * cos((theta + alpha_i)/3),
///   alpha = {0, 2pi, 4pi}.
struct CubicEigenvalues {
  std::array<double, 3> k{};          // descending; k[0] is the alpha = 0 root
  std::array<double, 3> by_alpha{};   // in alpha order {0, 2pi, 4pi}
  double theta = 0.0;
  double radicand = 0.0;              // after clamping at 0
  double radicand_clamp = 0.0;        // |negative radicand| removed by the clamp
  double arccos_clamp = 0.0;          // |argument| - 1 removed by the clamp
};

CubicEigenvalues cubic_eigenvalues(double trace_s, double trace_s2, double trace_s3);
/// Same formula evaluated in extended precision from the traceless part of `s`.
CubicEigenvalues cubic_eigenvalues(const Eigen::Matrix3d& s);

/// S = (1/2d)(x x^T + t t^T) together with its trace moments and the cubic
/// eigenvalues.
struct SMatrix {
  Eigen::Matrix3d s = Eigen::Matrix3d::Zero();
  double trace_s = 0.0;
  double trace_s2 = 0.0;
  double trace_s3 = 0.0;
  double theta = 0.0;
  std::array<double, 3> alphas{};
  std::array<double, 3> k{};
  double radicand_clamp = 0.0;
  double arccos_clamp = 0.0;
};

SMatrix s_matrix(const DensityMatrix& rho);
SMatrix s_matrix(const BlochDecomposition& bloch);

/// (k1, k2, k3) of S in descending order.
std::array<double, 3> k_eigenvalues(const SMatrix& s);

/// Q from the first two trace moments of S, with small or negative
/// radicands clamped to zero.
struct QValue {
  double q = 0.0;
  double radicand = 0.0;
  double radicand_clamp = 0.0;
  bool clamped = false;
};

QValue q_from_moments(double trace_s, double trace_s2);

/// 2 (Tr[S] - k1).
double geometric_discord(const DensityMatrix& rho);

/// (2/3)(2Tr[S] - sqrt(6Tr[S^2] - 2Tr[S]^2)), a lower bound on D_G obtained
/// by setting theta = 0.
double q_measure(const DensityMatrix& rho);

/// N^2 with N = ||rho^{T_A}||_1 - 1.
double negativity_squared(const DensityMatrix& rho);

struct CorrelationReport {
  double q = 0.0;
  double d_g = 0.0;
  double d_g_upper = 0.0;  // 4 Tr[S] / 3
  double negativity_sq = 0.0;
  std::array<double, 3> k{};
  double trace_s = 0.0;
  double trace_s2 = 0.0;
  double radicand_clamp = 0.0;
  double arccos_clamp = 0.0;
};

CorrelationReport analyze(const DensityMatrix& rho);

struct OracleOptions {
  int theta_steps = 64;
  int phi_steps = 128;
  int refinements = 6;
  int zoom = 4;
};

/// 2 ||rho - chi||_2^2 for chi the state dephased in the basis at `angles`.
double dephasing_distance(const DensityMatrix& rho, BlochAngles angles);

/// Brute-force D_G: minimizes dephasing_distance over measurement directions
/// on a (theta, phi) grid, then zooms in around the best point.
double discord_oracle(const DensityMatrix& rho, const OracleOptions& options = {});

}  // namespace qcorr
