#include "offerplan/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace offerplan {

namespace {
constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-10;
}  // namespace

SimplexResult simplex_max(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                          const Eigen::VectorXd& c, std::vector<int> basis,
                          long max_iterations) {
  const long rows = a.rows();
  const long cols = a.cols();
  if (b.size() != rows || c.size() != cols || static_cast<long>(basis.size()) != rows)
    throw std::invalid_argument("simplex dimensions disagree");
  if (b.minCoeff() < 0.0)
    throw std::invalid_argument("simplex needs a nonnegative right-hand side");

  // Tableau [A | b] with the objective row carried alongside. The supplied
  // basis must already read as an identity in A.
  Eigen::MatrixXd tab(rows, cols + 1);
  tab.leftCols(cols) = a;
  tab.col(cols) = b;

  Eigen::VectorXd reduced = -c;  // z_j - c_j for the all-zero cost basis
  double objective = 0.0;
  for (long r = 0; r < rows; ++r) {
    const double cb = c(basis[r]);
    if (cb == 0.0) continue;
    reduced += cb * tab.row(r).head(cols).transpose();
    objective += cb * tab(r, cols);
  }

  SimplexResult result;
  while (true) {
    // Bland: entering = smallest index with negative reduced cost.
    long entering = -1;
    for (long j = 0; j < cols; ++j) {
      if (reduced(j) < -kReducedCostTol) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;

    // Leaving = min ratio; ties broken by the smallest basic variable index.
    long leaving = -1;
    double best_ratio = 0.0;
    for (long r = 0; r < rows; ++r) {
      const double coef = tab(r, entering);
      if (coef <= kPivotTol) continue;
      const double ratio = tab(r, cols) / coef;
      if (leaving < 0 || ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && basis[r] < basis[leaving])) {
        leaving = r;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) {
      result.status = SimplexResult::Status::kUnbounded;
      break;
    }
    if (++result.iterations > max_iterations) {
      result.status = SimplexResult::Status::kIterationLimit;
      break;
    }

    const double pivot = tab(leaving, entering);
    tab.row(leaving) /= pivot;
    for (long r = 0; r < rows; ++r) {
      if (r == leaving) continue;
      const double factor = tab(r, entering);
      if (factor != 0.0) tab.row(r) -= factor * tab.row(leaving);
    }
    const double rfactor = reduced(entering);
    reduced -= rfactor * tab.row(leaving).head(cols).transpose();
    objective -= rfactor * tab(leaving, cols);
    basis[leaving] = static_cast<int>(entering);
  }

  result.x = Eigen::VectorXd::Zero(cols);
  for (long r = 0; r < rows; ++r) result.x(basis[r]) = tab(r, cols);
  result.objective = c.dot(result.x);
  result.basis = std::move(basis);
  return result;
}

}  // namespace offerplan
