#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "offerplan/model.hpp"
#include "offerplan/policies.hpp"

namespace offerplan {

struct SimConfig {
  long replications = 1000;  // simulated days
  std::uint64_t seed = 0;
};

struct SimReport {
  double mean_fill = 0.0;
  double std_error = 0.0;
  double fill_rate = 0.0;  // mean_fill / sum(b)
  std::vector<int> per_replication;
};

// Monte Carlo single-day replications: one Bernoulli-categorical arrival per
// period, policy queried at (m, n), customer choice resolved per the model.
SimReport simulate_single_day(const Instance& inst, const PolicySpec& policy,
                              const SimConfig& config);

enum class DemandMode { kDeterministic, kPoisson };

struct MultiDayConfig {
  int window = 15;        // T, days bookable ahead
  int daily_demand = 30;  // N arrivals per day (mean, in Poisson mode)
  DemandMode demand = DemandMode::kDeterministic;
  int acceptable_days = 1;  // D
  Instance day_template;    // per-day omega/lambda/capacity; horizon unused
  int total_days = 1200;
  int warmup_days = 200;
  std::uint64_t seed = 0;
};

struct MultiDayReport {
  double mean_fill = 0.0;  // mean daily fill over post-warmup days
  double std_error = 0.0;
  double fill_rate = 0.0;
  std::vector<int> per_day;
};

// Rolling horizon: T open day templates; every arriving customer draws D
// distinct acceptable days and one within-day type, visits her days in
// uniform random order and books the first acceptable slot the within-day
// policy offers her. At day end the oldest day closes and a fresh template
// opens. The within-day rule must be a deterministic function of remaining
// capacity (offering-all, pi1, nested-seq).
MultiDayReport simulate_multiday(const MultiDayConfig& config, const PolicySpec& within_day);

struct GapStats {
  double max = 0.0;  // largest-magnitude percentage, sign preserved
  double average = 0.0;
  double median = 0.0;  // midpoint convention for even counts
  int count = 0;
};

// Per-scenario percentages 100 * (candidate - baseline) / baseline. Covers
// both the optimality-gap and the improvement convention; the sign carries
// the direction. Throws when a baseline is zero.
GapStats gap_statistics(const std::vector<double>& candidate,
                        const std::vector<double>& baseline);

}  // namespace offerplan
