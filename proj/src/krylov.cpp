#include "agpsched/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "agpsched/errors.hpp"

namespace agpsched {

namespace {

// One classical Gram-Schmidt sweep against all previous operators, done
// twice; a single sweep leaves O(eps * kappa) residuals that accumulate over
// deep recurrences.
void reorthogonalize(OperatorSum& a, const std::vector<OperatorSum>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const OperatorSum& o : basis) {
      const Complex proj = hs_inner(o, a);
      if (proj != Complex{0, 0}) a.axpy(-proj, o);
    }
  }
}

}  // namespace

LanczosBasis lanczos_expand(const OperatorSum& H, const OperatorSum& dH, int max_index,
                            double zero_tol, Reorth reorth) {
  if (H.n_sites() != dH.n_sites())
    throw ValidationError("lanczos_expand: H and dH site counts differ");
  if (max_index != kFullBasis && max_index < 0)
    throw ValidationError("lanczos_expand: max_index must be >= 0 or kFullBasis");

  // Safety cap for "full": the chain cannot outgrow the 4^n operator space.
  long full_cap = 1L << 20;
  if (dH.n_sites() < 10) full_cap = std::min(full_cap, 1L << (2 * dH.n_sites()));
  const long hard_cap = max_index == kFullBasis ? full_cap : max_index;

  const bool do_reorth =
      reorth == Reorth::kOn || (reorth == Reorth::kAuto && hard_cap > 30);

  LanczosBasis basis;
  const double b0 = hs_norm(dH);
  if (b0 == 0.0)
    throw ValidationError("lanczos_expand: dH is identically zero (no direction of change)");
  basis.b.push_back(b0);
  basis.operators.push_back((Complex{1.0 / b0, 0}) * dH);

  for (long i = 1; i <= hard_cap; ++i) {
    OperatorSum next = commutator(H, basis.operators.back());
    if (i >= 2) next.axpy(Complex{-basis.b[static_cast<std::size_t>(i) - 1], 0},
                          basis.operators[static_cast<std::size_t>(i) - 2]);
    if (do_reorth) reorthogonalize(next, basis.operators);
    const double bi = hs_norm(next);
    basis.b.push_back(bi);
    if (bi < zero_tol * b0) {
      basis.terminated = true;
      break;
    }
    next *= Complex{1.0 / bi, 0};
    basis.operators.push_back(std::move(next));
  }
  return basis;
}

AgpSolution solve_alpha(const LanczosBasis& basis, int d_A) {
  if (d_A == kFullBasis) d_A = basis.odd_count();
  if (d_A < 0) throw ValidationError("solve_alpha: d_A must be >= 1 or kFullBasis");

  AgpSolution sol;
  sol.lambda = basis.lambda;
  sol.d_A = d_A;
  sol.alpha.assign(static_cast<std::size_t>(d_A), 0.0);
  if (d_A == 0) return sol;

  auto b_at = [&basis](int k) -> double {
    return k < static_cast<int>(basis.b.size()) ? basis.b[static_cast<std::size_t>(k)] : 0.0;
  };

  const double rhs0 = -b_at(0) * b_at(1);
  if (rhs0 == 0.0) return sol;  // nothing couples: no gauge potential needed

  std::vector<double> diag(static_cast<std::size_t>(d_A));
  std::vector<double> off(static_cast<std::size_t>(d_A), 0.0);  // off[i]: rows i, i+1
  for (int i = 1; i <= d_A; ++i) {
    diag[static_cast<std::size_t>(i) - 1] =
        b_at(2 * i - 1) * b_at(2 * i - 1) + b_at(2 * i) * b_at(2 * i);
    if (i < d_A) off[static_cast<std::size_t>(i) - 1] = b_at(2 * i) * b_at(2 * i + 1);
  }

  // Only the leading irreducible block is coupled to the right-hand side;
  // later blocks are homogeneous and stay zero.
  int m = d_A;
  for (int i = 1; i <= d_A; ++i) {
    if (diag[static_cast<std::size_t>(i) - 1] == 0.0) {
      m = i - 1;
      break;
    }
    if (i < d_A && off[static_cast<std::size_t>(i) - 1] == 0.0) {
      m = i;
      break;
    }
  }
  if (m == 0) return sol;

  // Thomas elimination on the m x m leading block.
  std::vector<double> c_prime(static_cast<std::size_t>(m), 0.0);
  std::vector<double> d_prime(static_cast<std::size_t>(m), 0.0);
  c_prime[0] = (m > 1) ? off[0] / diag[0] : 0.0;
  d_prime[0] = rhs0 / diag[0];
  for (int i = 1; i < m; ++i) {
    const double denom = diag[static_cast<std::size_t>(i)] -
                         off[static_cast<std::size_t>(i) - 1] * c_prime[static_cast<std::size_t>(i) - 1];
    if (denom == 0.0) throw NumericalError("solve_alpha: zero pivot in tridiagonal elimination");
    if (i < m - 1) c_prime[static_cast<std::size_t>(i)] = off[static_cast<std::size_t>(i)] / denom;
    d_prime[static_cast<std::size_t>(i)] =
        (0.0 - off[static_cast<std::size_t>(i) - 1] * d_prime[static_cast<std::size_t>(i) - 1]) / denom;
  }
  sol.alpha[static_cast<std::size_t>(m) - 1] = d_prime[static_cast<std::size_t>(m) - 1];
  for (int i = m - 2; i >= 0; --i)
    sol.alpha[static_cast<std::size_t>(i)] =
        d_prime[static_cast<std::size_t>(i)] -
        c_prime[static_cast<std::size_t>(i)] * sol.alpha[static_cast<std::size_t>(i) + 1];

  // Residual contract: || T alpha - rhs || <= 1e-10 ||rhs||.
  double res2 = 0.0;
  for (int i = 0; i < m; ++i) {
    double r = diag[static_cast<std::size_t>(i)] * sol.alpha[static_cast<std::size_t>(i)];
    if (i > 0) r += off[static_cast<std::size_t>(i) - 1] * sol.alpha[static_cast<std::size_t>(i) - 1];
    if (i < m - 1) r += off[static_cast<std::size_t>(i)] * sol.alpha[static_cast<std::size_t>(i) + 1];
    if (i == 0) r -= rhs0;
    res2 += r * r;
  }
  if (std::sqrt(res2) > 1e-10 * std::abs(rhs0))
    throw NumericalError("solve_alpha: tridiagonal residual exceeds tolerance");

  for (double a : sol.alpha) sol.g_star += a * a;
  return sol;
}

AgpSolution metric_at(const OperatorSum& H, const OperatorSum& dH, int d_A, double zero_tol,
                      Reorth reorth) {
  if (d_A != kFullBasis && d_A < 1) throw ValidationError("metric_at: d_A must be >= 1 or kFullBasis");
  const int max_index = d_A == kFullBasis ? kFullBasis : 2 * d_A;
  LanczosBasis basis = lanczos_expand(H, dH, max_index, zero_tol, reorth);
  return solve_alpha(basis, d_A);
}

OperatorSum assemble_agp(const LanczosBasis& basis, const std::vector<double>& alpha) {
  if (basis.operators.empty()) throw ValidationError("assemble_agp: empty basis");
  OperatorSum agp(basis.operators.front().n_sites());
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    const std::size_t idx = 2 * k + 1;
    if (idx >= basis.operators.size()) break;
    agp.axpy(Complex{0, alpha[k]}, basis.operators[idx]);
  }
  return agp;
}

ExactAgpResult exact_agp_oracle(const Eigen::MatrixXcd& h_dense, const Eigen::MatrixXcd& dh_dense,
                                double gap_tol) {
  if (h_dense.rows() != h_dense.cols() || dh_dense.rows() != dh_dense.cols() ||
      h_dense.rows() != dh_dense.rows())
    throw ValidationError("exact_agp_oracle: dimension mismatch");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h_dense);
  if (es.info() != Eigen::Success) throw NumericalError("exact_agp_oracle: eigensolve failed");
  const Eigen::VectorXd& e = es.eigenvalues();
  const Eigen::MatrixXcd& v = es.eigenvectors();

  const Eigen::Index dim = h_dense.rows();
  Eigen::MatrixXcd drive = v.adjoint() * dh_dense * v;
  Eigen::MatrixXcd a_eig = Eigen::MatrixXcd::Zero(dim, dim);
  ExactAgpResult result;
  const Complex img{0, 1};
  for (Eigen::Index n = 0; n < dim; ++n) {
    for (Eigen::Index m = 0; m < dim; ++m) {
      if (n == m) continue;
      const double gap = e(m) - e(n);
      if (std::abs(gap) < gap_tol) {
        // Degenerate pairs are a gauge freedom; zero them, but flag cases
        // where the drive actually couples the pair.
        if (std::abs(drive(n, m)) > gap_tol)
          result.ill_conditioned.emplace_back(static_cast<int>(n), static_cast<int>(m));
        continue;
      }
      a_eig(n, m) = img * drive(n, m) / gap;
    }
  }
  result.agp = v * a_eig * v.adjoint();
  return result;
}

}  // namespace agpsched
