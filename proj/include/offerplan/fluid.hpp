#pragma once

#include <Eigen/Dense>

#include "offerplan/model.hpp"

namespace offerplan {

// Fluid relaxation of the non-sequential booking problem, possibly scaled:
// periods = N*K, capacity = b*K. Decision z_k(n) is the fraction of period n
// during which offer set k is in use; per-unit-time take rates are the
// stochastic model's choice probabilities, so the slot-flow and capacity
// bookkeeping substitute out and the LP is stated over the z variables alone.
struct FluidLP {
  int periods = 0;      // N * K
  int num_actions = 0;  // 2^J
  int scale = 1;        // K
  Eigen::MatrixXd take_rate;       // num_actions x J; row k = q(w^k)
  Eigen::VectorXd objective_rate;  // per action: total booking rate
  Eigen::VectorXd capacity;        // b * K
};

struct FluidSolution {
  enum class Status { kOptimal, kNumericalFailure };
  Status status = Status::kOptimal;
  Eigen::MatrixXd z;         // periods x num_actions
  double objective = 0.0;    // Z_{NK}(bK)
  Eigen::MatrixXd residual_capacity;  // (periods+1) x J; row n = M_j(n)
  double max_constraint_residual = 0.0;
  double objective_recompute_error = 0.0;
  long iterations = 0;
};

FluidLP build_fluid(const Instance& inst, int scale_k, long max_variables = 1'000'000);

FluidSolution solve_fluid(const FluidLP& lp);

// Optimal fluid objective Z_{NK}(bK).
double fluid_value(const Instance& inst, int scale_k);

// Time-averaged action fractions of the optimal control; the probability
// vector of the static randomized policy.
Eigen::VectorXd extract_pstar(const FluidSolution& solution);

// Per-slot take probabilities of the static randomized policy pi^p while all
// types remain available.
Eigen::VectorXd upsilon(const Instance& inst, const Eigen::VectorXd& p);

// sum_j E[min(Bin(n, upsilon_j), m_j)], a lower bound on the exact value of
// pi^p at (m, n).
double binomial_lower_bound(const Instance& inst, const Eigen::VectorXd& p, int n,
                            const Eigen::VectorXi& m);

}  // namespace offerplan
