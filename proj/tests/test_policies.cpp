#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "offerplan/dp.hpp"
#include "offerplan/policies.hpp"
#include "test_support.hpp"

using namespace offerplan;
using namespace offerplan::testing;

TEST_CASE("offering-all returns the available types") {
  CHECK(offering_all(veci({2, 0, 1})) == 0b101);
  CHECK(offering_all(veci({0, 0, 0})) == 0);
}

TEST_CASE("pi1 branches") {
  const Instance inst = make_instance(CanonicalModel::kM, {0.5, 0.5}, 4, {2, 1, 1});
  CHECK(pi1(inst, veci({2, 1, 1})) == 0b101);
  CHECK(pi1(inst, veci({0, 1, 1})) == 0b110);
  CHECK(pi1(inst, veci({2, 1, 0})) == 0b011);
  CHECK(pi1(inst, veci({0, 2, 0})) == 0b010);

  const Instance wrong = make_instance(CanonicalModel::kW, {0.2, 0.5, 0.3}, 4, {2, 2});
  CHECK_THROWS(pi1(wrong, veci({1, 1})));
}

TEST_CASE("nested sequential orderings") {
  const Instance n_model = make_instance(CanonicalModel::kN, {0.5, 0.5}, 4, {1, 1});
  CHECK(nested_sequential(n_model, veci({1, 1})) == OfferSequence{0b01, 0b10});

  const Instance m_model = make_instance(CanonicalModel::kM, {0.5, 0.5}, 4, {1, 1, 1});
  CHECK(nested_sequential(m_model, veci({1, 1, 1})) == OfferSequence{0b001, 0b100, 0b010});
  CHECK(nested_sequential(m_model, veci({0, 1, 1})) == OfferSequence{0b100, 0b010});
  CHECK(nested_sequential(m_model, veci({1, 1, 0})) == OfferSequence{0b001, 0b010});

  const Instance w_model = make_instance(CanonicalModel::kW, {0.2, 0.5, 0.3}, 4, {1, 1});
  CHECK_THROWS(nested_sequential(w_model, veci({1, 1})));
}

TEST_CASE("nested sequential attains the sequential optimum on nested instances") {
  for (const CanonicalModel model :
       {CanonicalModel::kN, CanonicalModel::kM, CanonicalModel::kMPlus1}) {
    Instance inst;
    inst.omega = canonical(model);
    const int types = inst.customer_types();
    inst.lambda = Eigen::VectorXd::Constant(types, 1.0 / types);
    inst.horizon = 6;
    inst.capacity = Eigen::VectorXi::Constant(inst.slot_types(), 3);
    const ValueTable opt = solve_seq(inst, SeqMode::kPermutation);
    const ValueTable pol = evaluate_policy(inst, nested_sequential_policy());
    CHECK((opt.value - pol.value).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("drain indices and ordering") {
  const Instance inst = make_instance(CanonicalModel::kM, {0.5, 0.5}, 8, {2, 1, 1});
  const Eigen::VectorXd index = drain_indices(inst, veci({2, 1, 1}), 4);
  CHECK(index(0) == doctest::Approx(2.0));
  CHECK(index(1) == doctest::Approx(0.5));
  CHECK(index(2) == doctest::Approx(1.0));
  CHECK(drain(inst, veci({2, 1, 1}), 4) == OfferSequence{0b001, 0b100, 0b010});

  // single available type
  CHECK(drain(inst, veci({0, 2, 0}), 3) == OfferSequence{0b010});
}

TEST_CASE("a slot type nobody accepts drains first") {
  Instance inst;
  inst.omega.resize(1, 2);
  inst.omega << 0, 1;  // nobody accepts type 1
  inst.lambda = vec({0.8});
  inst.horizon = 4;
  inst.capacity = veci({1, 1});
  const Eigen::VectorXd index = drain_indices(inst, veci({1, 1}), 2);
  CHECK(std::isinf(index(0)));
  CHECK(drain(inst, veci({1, 1}), 2) == OfferSequence{0b01, 0b10});
}

TEST_CASE("random sequential permutations are uniform") {
  Rng rng(99);
  const Eigen::VectorXi m = veci({1, 1, 1});
  std::map<std::string, int> counts;
  const int draws = 60000;
  for (int t = 0; t < draws; ++t) counts[sequence_label(random_sequential(m, rng))]++;
  CHECK(counts.size() == 6);
  const double expected = draws / 6.0;
  const double sigma = std::sqrt(draws * (1.0 / 6) * (5.0 / 6));
  for (const auto& [label, count] : counts)
    CHECK(std::abs(count - expected) < 4 * sigma);

  // single available type: always that singleton
  for (int t = 0; t < 10; ++t)
    CHECK(random_sequential(veci({1, 0, 0}), rng) == OfferSequence{0b001});
}

TEST_CASE("static randomized sampling respects the distribution") {
  Rng rng(41);
  Eigen::VectorXd p = vec({0.0, 0.25, 0.0, 0.75});
  int high = 0;
  const int draws = 40000;
  for (int t = 0; t < draws; ++t) {
    const int k = sample_action_index(p, rng);
    CHECK((k == 1 || k == 3));
    if (k == 3) ++high;
  }
  const double sigma = std::sqrt(draws * 0.75 * 0.25);
  CHECK(std::abs(high - 0.75 * draws) < 4 * sigma);
}

TEST_CASE("policy actions never include depleted types after intersection") {
  Rng rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_instance(rng);
    Eigen::VectorXi m = inst.capacity;
    for (int j = 0; j < m.size(); ++j) m(j) = rng.uniform_int(m(j) + 1);
    const OfferMask avail = available_mask(m);
    if (avail == 0) continue;
    const int n = 1 + rng.uniform_int(inst.horizon);

    CHECK((offering_all(m) & ~avail) == 0);
    for (const OfferMask set : drain(inst, m, n)) CHECK((set & ~avail) == 0);
    for (const OfferMask set : random_sequential(m, rng)) CHECK((set & ~avail) == 0);
    const Eigen::VectorXd p = random_action_probs(rng, inst.slot_types());
    const OfferMask effective =
        static_cast<OfferMask>(sample_action_index(p, rng)) & avail;
    CHECK((effective & ~avail) == 0);
  }
}

TEST_CASE("table-backed policies reproduce their tables") {
  const Instance inst = make_instance(CanonicalModel::kM, {0.5, 0.5}, 5, {2, 2, 1});
  SolveOptions opt;
  opt.record_actions = true;
  auto nonseq = std::make_shared<ValueTable>(solve_nonseq(inst, opt));
  const ValueTable replay = evaluate_policy(inst, optimal_nonseq_policy(nonseq));
  CHECK((replay.value - nonseq->value).cwiseAbs().maxCoeff() < 1e-9);

  auto seq = std::make_shared<ValueTable>(solve_seq(inst, SeqMode::kPermutation));
  const ValueTable seq_replay = evaluate_policy(inst, optimal_seq_policy(seq));
  CHECK((seq_replay.value - seq->value).cwiseAbs().maxCoeff() < 1e-9);

  auto full = std::make_shared<ValueTable>(solve_fullinfo(inst));
  const ValueTable full_replay = evaluate_policy(inst, fullinfo_policy(full));
  CHECK((full_replay.value - full->value).cwiseAbs().maxCoeff() < 1e-9);
}
