#include "offerplan/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "offerplan/dp.hpp"
#include "offerplan/simplex.hpp"

namespace offerplan {

FluidLP build_fluid(const Instance& inst, int scale_k, long max_variables) {
  if (scale_k < 1) throw std::invalid_argument("fluid scale must be at least 1");
  auto errors = validate(inst);
  // The fluid relaxation is well defined for an exhausted template (Z = 0).
  std::erase(errors, std::string("no slot type has positive capacity"));
  if (!errors.empty()) throw std::invalid_argument("invalid instance: " + errors.front());

  FluidLP lp;
  lp.scale = scale_k;
  lp.periods = inst.horizon * scale_k;
  lp.num_actions = 1 << inst.slot_types();
  if (static_cast<long>(lp.periods) * lp.num_actions > max_variables)
    throw std::length_error("fluid LP exceeds the variable budget");

  lp.take_rate.resize(lp.num_actions, inst.slot_types());
  lp.objective_rate.resize(lp.num_actions);
  for (int k = 0; k < lp.num_actions; ++k) {
    const auto outcome = outcome_distribution(inst, static_cast<OfferMask>(k));
    lp.take_rate.row(k) = outcome.q.transpose();
    lp.objective_rate(k) = outcome.q.sum();
  }
  lp.capacity = inst.capacity.cast<double>() * scale_k;
  return lp;
}

FluidSolution solve_fluid(const FluidLP& lp) {
  const int periods = lp.periods;
  const int actions = lp.num_actions;
  const int slots = static_cast<int>(lp.capacity.size());
  const long n_z = static_cast<long>(periods) * actions;
  const long n_vars = n_z + slots;
  const long n_rows = periods + slots;

  // Columns: z_{period, action} blocks then one slack per capacity row. The
  // per-period flows and residual capacities are substituted out, leaving the
  // period simplex constraints and the total-take capacity rows (the
  // intermediate M_j(n) >= 0 constraints are implied because take rates are
  // nonnegative).
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_rows, n_vars);
  Eigen::VectorXd b(n_rows);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n_vars);
  for (int t = 0; t < periods; ++t) {
    for (int k = 0; k < actions; ++k) {
      const long col = static_cast<long>(t) * actions + k;
      a(t, col) = 1.0;
      c(col) = lp.objective_rate(k);
      for (int j = 0; j < slots; ++j) a(periods + j, col) = lp.take_rate(k, j);
    }
    b(t) = 1.0;
  }
  for (int j = 0; j < slots; ++j) {
    a(periods + j, n_z + j) = 1.0;
    b(periods + j) = lp.capacity(j);
  }

  // Idling (the all-closed action) in every period is feasible, so the
  // natural starting basis is those columns plus the capacity slacks.
  std::vector<int> basis(n_rows);
  for (int t = 0; t < periods; ++t) basis[t] = t * actions;  // empty offer set
  for (int j = 0; j < slots; ++j) basis[periods + j] = static_cast<int>(n_z + j);

  const SimplexResult sol = simplex_max(a, b, c, std::move(basis));

  FluidSolution out;
  out.iterations = sol.iterations;
  out.objective = sol.objective;
  out.z.resize(periods, actions);
  for (int t = 0; t < periods; ++t)
    for (int k = 0; k < actions; ++k)
      out.z(t, k) = sol.x(static_cast<long>(t) * actions + k);

  // Residual capacities M_j(n); row index = periods to go.
  out.residual_capacity.resize(periods + 1, slots);
  out.residual_capacity.row(periods) = lp.capacity.transpose();
  for (int n = periods; n >= 1; --n)
    out.residual_capacity.row(n - 1) =
        out.residual_capacity.row(n) - out.z.row(n - 1) * lp.take_rate;

  double residual = 0.0;
  for (int t = 0; t < periods; ++t)
    residual = std::max(residual, std::abs(out.z.row(t).sum() - 1.0));
  residual = std::max(residual, std::max(0.0, -out.z.minCoeff()));
  residual = std::max(residual, std::max(0.0, -out.residual_capacity.minCoeff()));
  out.max_constraint_residual = residual;

  const double recomputed = (out.z * lp.take_rate).sum();
  out.objective_recompute_error = std::abs(recomputed - out.objective);

  const bool ok = sol.status == SimplexResult::Status::kOptimal &&
                  out.max_constraint_residual < 1e-8 && out.objective_recompute_error < 1e-8;
  out.status = ok ? FluidSolution::Status::kOptimal : FluidSolution::Status::kNumericalFailure;
  return out;
}

double fluid_value(const Instance& inst, int scale_k) {
  const FluidSolution sol = solve_fluid(build_fluid(inst, scale_k));
  if (sol.status != FluidSolution::Status::kOptimal)
    throw std::runtime_error("fluid LP solve failed numerically");
  return sol.objective;
}

Eigen::VectorXd extract_pstar(const FluidSolution& solution) {
  Eigen::VectorXd p = solution.z.colwise().sum().transpose() / solution.z.rows();
  for (int k = 0; k < p.size(); ++k) p(k) = std::max(p(k), 0.0);
  const double total = p.sum();
  if (total <= 0.0) throw std::runtime_error("degenerate fluid solution");
  return p / total;
}

Eigen::VectorXd upsilon(const Instance& inst, const Eigen::VectorXd& p) {
  const int actions = 1 << inst.slot_types();
  if (p.size() != actions)
    throw std::invalid_argument("probability vector must cover all 2^J actions");
  Eigen::VectorXd take = Eigen::VectorXd::Zero(inst.slot_types());
  for (int k = 0; k < actions; ++k) {
    if (p(k) <= 0.0) continue;
    take += p(k) * outcome_distribution(inst, static_cast<OfferMask>(k)).q;
  }
  return take;
}

double binomial_lower_bound(const Instance& inst, const Eigen::VectorXd& p, int n,
                            const Eigen::VectorXi& m) {
  const Eigen::VectorXd take = upsilon(inst, p);
  double bound = 0.0;
  for (int j = 0; j < inst.slot_types(); ++j)
    bound += boundary_binomial(take(j), m(j), n);
  return bound;
}

}  // namespace offerplan
