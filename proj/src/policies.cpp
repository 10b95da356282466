#include "offerplan/policies.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "offerplan/dp.hpp"

namespace offerplan {

OfferMask offering_all(const Eigen::VectorXi& m) { return available_mask(m); }

OfferMask pi1(const Instance& inst, const Eigen::VectorXi& m) {
  if (inst.omega != canonical(CanonicalModel::kM))
    throw std::invalid_argument("pi1 is defined for the canonical M choice matrix only");
  if (m(0) > 0 && m(2) > 0) return 0b101;
  return available_mask(m);
}

OfferSequence nested_sequential(const Instance& inst, const Eigen::VectorXi& m) {
  const NestedCheck check = is_nested(inst.omega);
  if (!check.nested)
    throw std::invalid_argument("nested-seq needs a nested choice matrix; slot types " +
                                std::to_string(check.witness_j1 + 1) + " and " +
                                std::to_string(check.witness_j2 + 1) + " overlap");

  const int slots = inst.slot_types();
  std::vector<OfferMask> accepting(slots, 0);
  for (int j = 0; j < slots; ++j)
    for (int i = 0; i < inst.customer_types(); ++i)
      if (inst.omega(i, j) != 0) accepting[j] |= OfferMask{1} << i;

  std::vector<int> pool;
  for (int j = 0; j < slots; ++j)
    if (m(j) > 0) pool.push_back(j);

  const auto proper_subset = [&](int a, int b) {
    return accepting[a] != accepting[b] && (accepting[a] & ~accepting[b]) == 0;
  };

  // Repeatedly take the lowest-indexed type whose accepting set does not
  // strictly contain another remaining type's. Nested types come out in
  // increasing order of their accepting sets; disjoint or equal pairs keep
  // slot-index order.
  OfferSequence seq;
  while (!pool.empty()) {
    size_t pick = pool.size();
    for (size_t a = 0; a < pool.size(); ++a) {
      bool minimal = true;
      for (size_t b = 0; b < pool.size(); ++b)
        if (b != a && proper_subset(pool[b], pool[a])) {
          minimal = false;
          break;
        }
      if (minimal) {
        pick = a;
        break;
      }
    }
    seq.push_back(OfferMask{1} << pool[pick]);
    pool.erase(pool.begin() + static_cast<long>(pick));
  }
  return seq;
}

Eigen::VectorXd drain_indices(const Instance& inst, const Eigen::VectorXi& m, int n) {
  if (n < 1) throw std::invalid_argument("drain index needs n >= 1");
  const OfferMask avail = available_mask(m);
  // Per-period load if everything available stayed offered; customer types
  // accepting no available slot contribute nothing.
  const Eigen::VectorXd rate = outcome_distribution(inst, avail).q;
  Eigen::VectorXd index = Eigen::VectorXd::Constant(inst.slot_types(),
                                                    std::numeric_limits<double>::quiet_NaN());
  for (int j = 0; j < inst.slot_types(); ++j) {
    if (!(avail & (OfferMask{1} << j))) continue;
    index(j) = rate(j) > 0.0 ? m(j) / (n * rate(j))
                             : std::numeric_limits<double>::infinity();
  }
  return index;
}

OfferSequence drain(const Instance& inst, const Eigen::VectorXi& m, int n) {
  const Eigen::VectorXd index = drain_indices(inst, m, n);
  std::vector<int> order;
  for (int j = 0; j < inst.slot_types(); ++j)
    if (m(j) > 0) order.push_back(j);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (index(a) != index(b)) return index(a) > index(b);
    return a < b;
  });
  OfferSequence seq;
  seq.reserve(order.size());
  for (int j : order) seq.push_back(OfferMask{1} << j);
  return seq;
}

OfferSequence random_sequential(const Eigen::VectorXi& m, Rng& rng) {
  std::vector<int> order;
  for (int j = 0; j < m.size(); ++j)
    if (m(j) > 0) order.push_back(j);
  for (int k = static_cast<int>(order.size()) - 1; k > 0; --k)
    std::swap(order[k], order[rng.uniform_int(k + 1)]);
  OfferSequence seq;
  seq.reserve(order.size());
  for (int j : order) seq.push_back(OfferMask{1} << j);
  return seq;
}

int sample_action_index(const Eigen::VectorXd& p, Rng& rng) {
  const int drawn = rng.categorical(p);
  if (drawn >= 0) return drawn;
  // Floating residual below the distribution tolerance: fall back to the last
  // action carrying mass.
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
    if (p(k) > 0.0) return k;
  throw std::invalid_argument("action probability vector has no mass");
}

PolicySpec offering_all_policy() {
  PolicySpec spec;
  spec.kind = PolicySpec::Kind::kNonseq;
  spec.name = "offering-all";
  spec.nonseq_action = [](const Instance&, const Eigen::VectorXi& m, int) {
    return offering_all(m);
  };
  return spec;
}

PolicySpec empty_offer_policy() {
  PolicySpec spec;
  spec.kind = PolicySpec::Kind::kNonseq;
  spec.name = "empty-offer";
  spec.nonseq_action = [](const Instance&, const Eigen::VectorXi&, int) { return OfferMask{0}; };
  return spec;
}

PolicySpec pi1_policy() {
  PolicySpec spec;
  spec.kind = PolicySpec::Kind::kNonseq;
  spec.name = "pi1";
  spec.nonseq_action = [](const Instance& inst, const Eigen::VectorXi& m, int) {
    return pi1(inst, m);
  };
  return spec;
}

PolicySpec nested_sequential_policy() {
  PolicySpec spec;
  spec.kind = PolicySpec::Kind::kSeq;
  spec.name = "nested-seq";
  spec.seq_action = [](const Instance& inst, const Eigen::VectorXi& m, int) {
    return nested_sequential(inst, m);
  };
  return spec;
}

PolicySpec drain_policy() {
  PolicySpec spec;
  spec.kind = PolicySpec::Kind::kSeq;
  spec.name = "drain";
  spec.seq_action = [](const Instance& inst, const Eigen::VectorXi& m, int n) {
    return drain(inst, m, n);
  };
  return spec;
}

PolicySpec random_sequential_policy() {
  PolicySpec spec;
  spec.kind = PolicySpec::Kind::kSeqMixture;
  spec.name = "random-seq";
  spec.seq_mixture = [](const Instance&, const Eigen::VectorXi& m, int)
      -> std::vector<std::pair<OfferSequence, double>> {
    std::vector<int> avail;
    for (int j = 0; j < m.size(); ++j)
      if (m(j) > 0) avail.push_back(j);
    if (avail.empty()) return {{OfferSequence{}, 1.0}};
    if (avail.size() > 8)
      throw std::length_error("exact evaluation of random-seq limited to 8 available types");
    std::vector<std::pair<OfferSequence, double>> support;
    std::sort(avail.begin(), avail.end());
    do {
      OfferSequence seq;
      for (int j : avail) seq.push_back(OfferMask{1} << j);
      support.emplace_back(std::move(seq), 0.0);
    } while (std::next_permutation(avail.begin(), avail.end()));
    for (auto& entry : support) entry.second = 1.0 / support.size();
    return support;
  };
  spec.seq_sampler = [](const Instance&, const Eigen::VectorXi& m, int, Rng& rng) {
    return random_sequential(m, rng);
  };
  return spec;
}

PolicySpec static_randomized_policy(Eigen::VectorXd action_probs) {
  PolicySpec spec;
  spec.kind = PolicySpec::Kind::kStaticRandomized;
  spec.name = "static-randomized";
  spec.action_probs = std::move(action_probs);
  return spec;
}

PolicySpec optimal_nonseq_policy(std::shared_ptr<const ValueTable> table) {
  if (!table || !table->has_actions())
    throw std::invalid_argument("optimal-nonseq needs a table solved with recorded actions");
  PolicySpec spec;
  spec.kind = PolicySpec::Kind::kNonseq;
  spec.name = "optimal-nonseq";
  spec.table = table;
  spec.nonseq_action = [table](const Instance&, const Eigen::VectorXi& m, int n) {
    return table->action_at(n, m);
  };
  return spec;
}

PolicySpec optimal_seq_policy(std::shared_ptr<const ValueTable> table) {
  if (!table) throw std::invalid_argument("optimal-seq needs a solved sequential table");
  PolicySpec spec;
  spec.kind = PolicySpec::Kind::kSeq;
  spec.name = "optimal-seq";
  spec.table = table;
  spec.seq_action = [table](const Instance&, const Eigen::VectorXi& m, int n) {
    return optimal_sequence_from_values(*table, m, n);
  };
  return spec;
}

PolicySpec fullinfo_policy(std::shared_ptr<const ValueTable> table) {
  if (!table) throw std::invalid_argument("fullinfo needs a solved table");
  PolicySpec spec;
  spec.kind = PolicySpec::Kind::kFullInfo;
  spec.name = "fullinfo";
  spec.table = std::move(table);
  return spec;
}

}  // namespace offerplan
