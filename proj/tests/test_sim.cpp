#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "offerplan/dp.hpp"
#include "offerplan/sim.hpp"
#include "test_support.hpp"

using namespace offerplan;
using namespace offerplan::testing;

TEST_CASE("identical seeds give bit-identical reports") {
  const Instance inst = make_instance(CanonicalModel::kM, {0.5, 0.5}, 6, {2, 2, 2});
  const SimReport a = simulate_single_day(inst, drain_policy(), {500, 42});
  const SimReport b = simulate_single_day(inst, drain_policy(), {500, 42});
  CHECK(a.per_replication == b.per_replication);
  CHECK(a.mean_fill == b.mean_fill);
  const SimReport c = simulate_single_day(inst, drain_policy(), {500, 43});
  CHECK(a.per_replication != c.per_replication);
}

TEST_CASE("no arrivals means empty days") {
  // degenerate instance bypassing validation: all arrival mass on lambda0
  Instance inst = make_instance(CanonicalModel::kN, {0.5, 0.5}, 5, {2, 2});
  inst.lambda = vec({0.0, 0.0});
  const SimReport report = simulate_single_day(inst, offering_all_policy(), {200, 9});
  CHECK(report.mean_fill == 0.0);
  for (int f : report.per_replication) CHECK(f == 0);
}

TEST_CASE("simulated mean matches the exact evaluation") {
  const Instance inst = make_instance(CanonicalModel::kN, {0.5, 0.5}, 2, {1, 1});
  const SimReport report = simulate_single_day(inst, offering_all_policy(), {100000, 4});
  CHECK(std::abs(report.mean_fill - 1.625) < 3 * report.std_error);
  CHECK(report.fill_rate == doctest::Approx(report.mean_fill / 2));
}

TEST_CASE("per-replication fills respect capacity") {
  Rng rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = random_instance(rng);
    const SimReport report = simulate_single_day(inst, offering_all_policy(),
                                                 {200, static_cast<std::uint64_t>(1000 + trial)});
    for (int fill : report.per_replication) {
      CHECK(fill >= 0);
      CHECK(fill <= inst.capacity.sum());
      CHECK(fill <= inst.horizon);
    }
  }
}

TEST_CASE("table-backed and randomized policies simulate to their exact values") {
  const Instance inst = make_instance(CanonicalModel::kM, {0.4, 0.5}, 6, {2, 2, 2});

  SUBCASE("optimal sequential") {
    auto table = std::make_shared<ValueTable>(solve_seq(inst, SeqMode::kPermutation));
    const double exact = table->at(inst.horizon, inst.capacity);
    const SimReport report =
        simulate_single_day(inst, optimal_seq_policy(table), {60000, 21});
    CHECK(std::abs(report.mean_fill - exact) < 4 * report.std_error);
  }
  SUBCASE("optimal non-sequential") {
    SolveOptions opt;
    opt.record_actions = true;
    auto table = std::make_shared<ValueTable>(solve_nonseq(inst, opt));
    const double exact = table->at(inst.horizon, inst.capacity);
    const SimReport report =
        simulate_single_day(inst, optimal_nonseq_policy(table), {60000, 22});
    CHECK(std::abs(report.mean_fill - exact) < 4 * report.std_error);
  }
  SUBCASE("static randomized") {
    Eigen::VectorXd p(8);
    p << 0.1, 0.05, 0.05, 0.2, 0.05, 0.3, 0.05, 0.2;
    const double exact =
        evaluate_policy(inst, static_randomized_policy(p)).at(inst.horizon, inst.capacity);
    const SimReport report =
        simulate_single_day(inst, static_randomized_policy(p), {60000, 23});
    CHECK(std::abs(report.mean_fill - exact) < 4 * report.std_error);
  }
  SUBCASE("random sequential") {
    const double exact = evaluate_policy(inst, random_sequential_policy())
                             .at(inst.horizon, inst.capacity);
    const SimReport report =
        simulate_single_day(inst, random_sequential_policy(), {60000, 24});
    CHECK(std::abs(report.mean_fill - exact) < 4 * report.std_error);
  }
}

TEST_CASE("sequential and full-information simulations agree in law on nested instances") {
  const Instance inst = make_instance(CanonicalModel::kM, {0.4, 0.5}, 6, {2, 2, 2});
  auto table = std::make_shared<ValueTable>(solve_fullinfo(inst));
  const SimReport seq = simulate_single_day(inst, nested_sequential_policy(), {40000, 5});
  const SimReport full = simulate_single_day(inst, fullinfo_policy(table), {40000, 6});
  const double sigma = std::hypot(seq.std_error, full.std_error);
  CHECK(std::abs(seq.mean_fill - full.mean_fill) < 3 * sigma);
}

TEST_CASE("gap statistics") {
  SUBCASE("identical values give zeros") {
    const GapStats stats = gap_statistics({3.0, 4.0}, {3.0, 4.0});
    CHECK(stats.max == 0.0);
    CHECK(stats.average == 0.0);
    CHECK(stats.median == 0.0);
  }
  SUBCASE("hand-checked pair") {
    const GapStats stats = gap_statistics({9.0, 9.5}, {10.0, 10.0});
    CHECK(stats.max == doctest::Approx(-10.0));
    CHECK(stats.average == doctest::Approx(-7.5));
    CHECK(stats.median == doctest::Approx(-7.5));
  }
  SUBCASE("odd count median") {
    const GapStats stats = gap_statistics({11.0, 12.0, 14.0}, {10.0, 10.0, 10.0});
    CHECK(stats.median == doctest::Approx(20.0));
    CHECK(stats.max == doctest::Approx(40.0));
  }
  SUBCASE("zero baseline is an error") {
    CHECK_THROWS_AS(gap_statistics({1.0}, {0.0}), std::domain_error);
  }
}

TEST_CASE("multi-day simulation basics") {
  MultiDayConfig config;
  config.day_template = make_instance(CanonicalModel::kM, {1.0 / 3, 2.0 / 3}, 1, {4, 4, 4});
  config.window = 5;
  config.daily_demand = 12;
  config.acceptable_days = 2;
  config.total_days = 80;
  config.warmup_days = 20;
  config.seed = 77;

  const MultiDayReport a = simulate_multiday(config, offering_all_policy());
  const MultiDayReport b = simulate_multiday(config, offering_all_policy());
  CHECK(a.per_day == b.per_day);
  CHECK(a.per_day.size() == 60);
  for (int fill : a.per_day) {
    CHECK(fill >= 0);
    CHECK(fill <= config.day_template.capacity.sum());
  }

  SUBCASE("poisson demand stays within bounds and differs from deterministic") {
    config.demand = DemandMode::kPoisson;
    const MultiDayReport poisson = simulate_multiday(config, offering_all_policy());
    CHECK(poisson.per_day.size() == 60);
    CHECK(poisson.per_day != a.per_day);
  }
  SUBCASE("bad parameters are rejected") {
    config.acceptable_days = 9;  // exceeds the window
    CHECK_THROWS(simulate_multiday(config, offering_all_policy()));
    config.acceptable_days = 2;
    config.warmup_days = 200;
    CHECK_THROWS(simulate_multiday(config, offering_all_policy()));
    config.warmup_days = 20;
    CHECK_THROWS(simulate_multiday(config, random_sequential_policy()));
  }
}

TEST_CASE("fully flexible customers fill almost everything under ample demand") {
  MultiDayConfig config;
  config.day_template = make_instance(CanonicalModel::kM, {0.5, 0.5}, 1, {2, 2, 2});
  config.window = 4;
  config.daily_demand = 30;  // far above the 6 daily slots
  config.acceptable_days = 4;
  config.total_days = 60;
  config.warmup_days = 10;
  config.seed = 3;
  const MultiDayReport report = simulate_multiday(config, offering_all_policy());
  CHECK(report.fill_rate > 0.95);
}
