#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "agpsched/pauli.hpp"

namespace agpsched {

/// Sentinel: expand / keep the operator basis until the recurrence terminates.
inline constexpr int kFullBasis = -1;

/// Relative threshold (against b_0) below which a normalization coefficient
/// counts as zero and the recurrence terminates.
inline constexpr double kDefaultZeroTol = 1e-8;

enum class Reorth {
  kAuto,  ///< full reorthogonalization when the requested depth exceeds 30
  kOn,
  kOff,
};

/// Orthonormal operator basis O_0, O_1, ... generated by repeated commutation
/// with H from the seed dH, with normalization coefficients b_i.
struct LanczosBasis {
  double lambda = 0.0;
  std::vector<OperatorSum> operators;
  /// b[i] normalizes operators[i]; when `terminated`, b has one extra trailing
  /// entry (the value that fell below threshold).
  std::vector<double> b;
  bool terminated = false;

  /// Number of odd-index operators (the antisymmetric half of the basis).
  int odd_count() const { return static_cast<int>(operators.size()) / 2; }
};

/// Run the operator-space recurrence
///   b_0 O_0 = dH,   b_1 O_1 = [H, O_0],
///   b_i O_i = [H, O_{i-1}] - b_{i-1} O_{i-2}   (i >= 2)
/// up to operator index `max_index` or until some b falls below
/// zero_tol * b_0. Throws ValidationError when dH vanishes.
LanczosBasis lanczos_expand(const OperatorSum& H, const OperatorSum& dH, int max_index,
                            double zero_tol = kDefaultZeroTol, Reorth reorth = Reorth::kAuto);

/// Variational coefficients of the operator-basis gauge potential ansatz at
/// one parameter value, and the induced scalar metric.
struct AgpSolution {
  std::vector<double> alpha;  // length d_A
  double g_star = 0.0;        // sum of alpha^2
  int d_A = 0;
  double lambda = 0.0;
};

/// Solve the tridiagonal system
///   (b_{2i-1}^2 + b_{2i}^2) alpha_i + b_{2i}b_{2i+1} alpha_{i+1}
///   + b_{2i-2}b_{2i-1} alpha_{i-1} = -b_0 b_1 delta_{i,1}
/// for i = 1..d_A, treating b values past the basis as zero. d_A = kFullBasis
/// uses every odd operator the basis holds.
AgpSolution solve_alpha(const LanczosBasis& basis, int d_A);

/// Expand the basis to depth 2*d_A and solve; returns g*(lambda) >= 0.
AgpSolution metric_at(const OperatorSum& H, const OperatorSum& dH, int d_A,
                      double zero_tol = kDefaultZeroTol, Reorth reorth = Reorth::kAuto);

/// i * sum_k alpha_k O_{2k-1}, the gauge-potential operator itself.
OperatorSum assemble_agp(const LanczosBasis& basis, const std::vector<double>& alpha);

struct ExactAgpResult {
  Eigen::MatrixXcd agp;
  /// Eigenvalue index pairs whose gap was below gap_tol while the drive
  /// matrix element was not; the corresponding elements were zeroed.
  std::vector<std::pair<int, int>> ill_conditioned;
};

/// Spectral construction of the exact gauge potential from dense H and dH:
/// A_{nm} = i <n|dH|m> / (E_m - E_n) for n != m, zero on (near-)degenerate
/// pairs. Reference oracle for small systems.
ExactAgpResult exact_agp_oracle(const Eigen::MatrixXcd& h_dense, const Eigen::MatrixXcd& dh_dense,
                                double gap_tol = 1e-10);

}  // namespace agpsched
