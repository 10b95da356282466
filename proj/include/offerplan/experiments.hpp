#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "offerplan/dp.hpp"
#include "offerplan/model.hpp"
#include "offerplan/sim.hpp"

namespace offerplan {

// Capacity vectors with b_j >= ceil(floor_fraction * horizon) summing to
// horizon, lexicographic order.
struct ScenarioGrid {
  int horizon = 0;
  int slot_types = 0;
  std::vector<Eigen::VectorXi> capacities;
};

ScenarioGrid enumerate_scenarios(int horizon, int slot_types, double floor_fraction = 0.2);

enum class LambdaScheme { kUniform, kTilt2, kTilt4 };

Eigen::VectorXd lambda_scheme(LambdaScheme scheme, int customer_types);

// Random choice matrices: a uniformly sampled non-empty subset of the 2^J - 1
// non-zero preference rows, rows sorted by bitmask. Capacity is a placeholder
// (all ones); experiment runners substitute their own grids.
std::vector<Instance> generate_random_instances(int slot_types, int horizon, int count,
                                                LambdaScheme scheme, std::uint64_t seed);

enum class EvalMode { kExactDp, kSimulation };

struct TableCell {
  std::string lambda_label;
  int horizon = 0;
  int scenarios = 0;
  GapStats stats;
};

struct TableResult {
  std::string name;
  std::string comparison;  // e.g. "offering-all vs optimal-nonseq"
  std::vector<TableCell> cells;
};

// Named experiment grids reproducing the benchmark tables. Known names:
//   m-gap, mplus1-gap, random-gap, drain-n, drain-m, drain-w,
//   seq-vs-nonseq-n, seq-vs-nonseq-m, seq-vs-nonseq-w, drain-compare,
//   pstar-gap
// kExactDp evaluates both policies by backward induction; kSimulation follows
// the 1000-day replication protocol for the heuristic side.
std::vector<TableResult> run_table(const std::string& name, EvalMode mode,
                                   long sim_days = 1000, std::uint64_t seed = 2024);

struct PolicyMapCell {
  int a = 0;
  int b = 0;
  std::string action;
  bool unique = true;
};

struct PolicyMap {
  std::string axis1;
  std::string axis2;
  std::vector<PolicyMapCell> cells;
};

// Optimal-action grid over two state coordinates with the others fixed.
// Coordinates are named m1..mJ plus n; axes sweep 0..b_j. Non-sequential maps
// label the tie-broken optimal offer set and flag uniqueness within 1e-9;
// sequential maps label the one-type-at-a-time optimal order.
PolicyMap emit_policy_map(const Instance& inst, Variant variant,
                          const std::map<std::string, int>& fixed,
                          const std::pair<std::string, std::string>& axes);

// Builds the named policy for an instance, solving whatever it needs
// (optimal tables, fluid p*). Names: offering-all, pi1, nested-seq, drain,
// random-seq, static-randomized, optimal-nonseq, optimal-seq, fullinfo.
PolicySpec make_policy(const std::string& name, const Instance& inst);

}  // namespace offerplan
