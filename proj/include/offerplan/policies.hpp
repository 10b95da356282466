#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "offerplan/model.hpp"
#include "offerplan/rng.hpp"

namespace offerplan {

struct ValueTable;  // dp.hpp

// A scheduling rule usable by both the exact evaluator and the simulator.
// Deterministic rules are pure functions of (instance, m, n); randomized
// rules are represented so that exact evaluation can mix over their support
// and the simulator can sample from it.
struct PolicySpec {
  enum class Kind {
    kNonseq,            // deterministic offer set
    kSeq,               // deterministic offer sequence
    kStaticRandomized,  // fixed probability vector over the 2^J offer sets
    kSeqMixture,        // state-dependent mixture over offer sequences
    kFullInfo,          // observes the customer type, offers one singleton
  };

  Kind kind = Kind::kNonseq;
  std::string name;

  std::function<OfferMask(const Instance&, const Eigen::VectorXi& m, int n)> nonseq_action;
  std::function<OfferSequence(const Instance&, const Eigen::VectorXi& m, int n)> seq_action;

  // kStaticRandomized: probability of sampling offer set k (bitmask index).
  // The effective offer is the sampled set intersected with available types;
  // depleted types in the sampled set are simply ignored by customers.
  Eigen::VectorXd action_probs;

  // kSeqMixture: support of the randomized sequential rule at a state, for
  // exact evaluation; seq_sampler draws one action for simulation.
  std::function<std::vector<std::pair<OfferSequence, double>>(
      const Instance&, const Eigen::VectorXi& m, int n)>
      seq_mixture;
  std::function<OfferSequence(const Instance&, const Eigen::VectorXi& m, int n, Rng&)>
      seq_sampler;

  // kFullInfo and table-backed rules read value-to-go from here.
  std::shared_ptr<const ValueTable> table;
};

// ---- raw action rules -------------------------------------------------

// All slot types with positive remaining capacity.
OfferMask offering_all(const Eigen::VectorXi& m);

// M-model rationing rule: withhold the versatile middle type while both
// specialised types remain. Requires the canonical M choice matrix.
OfferMask pi1(const Instance& inst, const Eigen::VectorXi& m);

// Available singletons ordered so that a type whose accepting-customer set is
// strictly contained in another's is offered first; disjoint or equal pairs
// by slot index. Requires a nested choice matrix.
OfferSequence nested_sequential(const Instance& inst, const Eigen::VectorXi& m);

// Drain index of every available type: remaining capacity over expected load
// if all available types stayed offered. Types accepted by no arriving
// customer get an infinite index and go first.
Eigen::VectorXd drain_indices(const Instance& inst, const Eigen::VectorXi& m, int n);

// Available singletons in decreasing drain-index order, ties by slot index.
OfferSequence drain(const Instance& inst, const Eigen::VectorXi& m, int n);

// Uniformly random permutation of the available singletons.
OfferSequence random_sequential(const Eigen::VectorXi& m, Rng& rng);

// Samples an action index from p; the caller intersects with availability.
int sample_action_index(const Eigen::VectorXd& p, Rng& rng);

// ---- PolicySpec constructors ------------------------------------------

PolicySpec offering_all_policy();
PolicySpec empty_offer_policy();
PolicySpec pi1_policy();
PolicySpec nested_sequential_policy();
PolicySpec drain_policy();
PolicySpec random_sequential_policy();
PolicySpec static_randomized_policy(Eigen::VectorXd action_probs);

// Table-backed rules. optimal_nonseq requires recorded actions; optimal_seq
// re-derives the one-type-at-a-time ordering from stored values.
PolicySpec optimal_nonseq_policy(std::shared_ptr<const ValueTable> table);
PolicySpec optimal_seq_policy(std::shared_ptr<const ValueTable> table);
PolicySpec fullinfo_policy(std::shared_ptr<const ValueTable> table);

}  // namespace offerplan
