#pragma once

#include <vector>

#include <Eigen/Dense>

namespace offerplan {

// Dense primal simplex on the standard form
//     max c'x   s.t.   A x = b,  x >= 0,
// started from a caller-supplied feasible basis (one column per row forming
// an identity submatrix, b >= 0). Bland's smallest-index rule for both the
// entering and the leaving variable, so the solve is deterministic and cannot
// cycle.
struct SimplexResult {
  enum class Status { kOptimal, kUnbounded, kIterationLimit };
  Status status = Status::kOptimal;
  Eigen::VectorXd x;
  double objective = 0.0;
  long iterations = 0;
  std::vector<int> basis;
};

SimplexResult simplex_max(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& c, std::vector<int> basis,
                          long max_iterations = 2'000'000);

}  // namespace offerplan
