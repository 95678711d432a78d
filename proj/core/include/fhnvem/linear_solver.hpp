#pragma once

#include <Eigen/Sparse>
#include <stdexcept>
#include <utility>

namespace fhnvem {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LinearSolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

// Conjugate gradients with Jacobi preconditioning for a symmetric positive
// definite operator given as a matrix-vector product. Deterministic: fixed
// zero initial guess, fixed reduction order. Converges when
// ||r|| <= tol * ||b||; throws SolverError when the iteration cap is hit or
// the operator turns out not to be positive definite.
template <class Apply>
std::pair<Eigen::VectorXd, LinearSolveStats> pcg(const Apply& apply,
                                                 const Eigen::VectorXd& rhs,
                                                 const Eigen::VectorXd& diagonal, double tol,
                                                 int max_iters) {
  const double bnorm = rhs.norm();
  LinearSolveStats stats;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(rhs.size());
  if (bnorm == 0.0) return {x, stats};

  const Eigen::VectorXd inv_diag = diagonal.cwiseInverse();
  Eigen::VectorXd r = rhs;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);

  for (int k = 1; k <= max_iters; ++k) {
    const Eigen::VectorXd ap = apply(p);
    const double pap = p.dot(ap);
    if (!(pap > 0.0)) throw SolverError("pcg: operator is not positive definite");
    const double alpha = rz / pap;
    x += alpha * p;
    r -= alpha * ap;
    stats.iterations = k;
    stats.relative_residual = r.norm() / bnorm;
    if (stats.relative_residual <= tol) return {std::move(x), stats};
    z = inv_diag.cwiseProduct(r);
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
  }
  throw SolverError("pcg: no convergence within " + std::to_string(max_iters) +
                    " iterations (relative residual " +
                    std::to_string(stats.relative_residual) + ")");
}

// SPD sparse solve, same contract as the operator form.
std::pair<Eigen::VectorXd, LinearSolveStats> solve_spd(const Eigen::SparseMatrix<double>& matrix,
                                                       const Eigen::VectorXd& rhs,
                                                       double tol = 1e-10,
                                                       int max_iters = 20000);

}  // namespace fhnvem
