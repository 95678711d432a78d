#include "fhnvem/linear_solver.hpp"

namespace fhnvem {

std::pair<Eigen::VectorXd, LinearSolveStats> solve_spd(const Eigen::SparseMatrix<double>& matrix,
                                                       const Eigen::VectorXd& rhs, double tol,
                                                       int max_iters) {
  if (matrix.rows() != matrix.cols() || matrix.rows() != rhs.size())
    throw SolverError("solve_spd: dimension mismatch");
  return pcg([&](const Eigen::VectorXd& p) -> Eigen::VectorXd { return matrix * p; }, rhs,
             matrix.diagonal(), tol, max_iters);
}

}  // namespace fhnvem
