#include "offerplan/dp.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace offerplan {

namespace {

constexpr double kActionTol = 1e-9;  // tie tolerance for reported actions

void guard_cells(const Instance& inst, const StateLattice& lattice, const SolveOptions& opt) {
  const long cells = (static_cast<long>(inst.horizon) + 1) * lattice.size();
  if (cells > opt.max_cells)
    throw std::length_error("state space exceeds the cell budget (" + std::to_string(cells) +
                            " cells)");
}

ValueTable make_table(Variant variant, const Instance& inst, const SolveOptions& opt) {
  ValueTable table;
  table.variant = variant;
  table.lattice = StateLattice(inst.capacity);
  guard_cells(inst, table.lattice, opt);
  table.value = Eigen::MatrixXd::Zero(table.lattice.size(), inst.horizon + 1);
  return table;
}

// Value of offering `mask` (a subset of the available types) given the
// values-to-go in `prev`.
double offer_value(const ChoiceTables& choice, const StateLattice& lattice, const double* prev,
                   long idx, OfferMask mask) {
  const double stay = prev[idx];
  if (mask == 0) return stay;
  double val = (1.0 - choice.booking_prob[mask]) * stay;
  for (const auto& e : choice.per_mask[mask])
    val += e.prob * (1.0 + prev[lattice.down(idx, e.slot)]);
  return val;
}

// Value of a sequential action: every customer type books in the first set
// holding an acceptable type, uniformly within it.
double sequence_value(const Instance& inst, const std::vector<OfferMask>& masks,
                      const StateLattice& lattice, const double* prev, long idx,
                      const OfferSequence& seq) {
  const double stay = prev[idx];
  double val = inst.no_arrival_prob() * stay;
  for (int i = 0; i < inst.customer_types(); ++i) {
    const OfferMask accepts = masks[i];
    double contrib = stay;
    for (const OfferMask set : seq) {
      OfferMask hit = accepts & set;
      if (hit == 0) continue;
      const double share = 1.0 / std::popcount(hit);
      contrib = 0.0;
      while (hit) {
        const int j = std::countr_zero(hit);
        contrib += share * (1.0 + prev[lattice.down(idx, j)]);
        hit &= hit - 1;
      }
      break;
    }
    val += inst.lambda(i) * contrib;
  }
  return val;
}

}  // namespace

ChoiceTables ChoiceTables::build(const Instance& inst) {
  const int slots = inst.slot_types();
  const int num_masks = 1 << slots;
  ChoiceTables tables;
  tables.per_mask.resize(num_masks);
  tables.booking_prob.assign(num_masks, 0.0);
  tables.no_arrival = inst.no_arrival_prob();
  const auto masks = accept_masks(inst);
  std::array<double, kMaxSlotTypes> acc{};
  for (int s = 1; s < num_masks; ++s) {
    acc.fill(0.0);
    for (int i = 0; i < inst.customer_types(); ++i) {
      OfferMask a = masks[i] & static_cast<OfferMask>(s);
      const int count = std::popcount(a);
      if (count == 0) continue;
      const double share = inst.lambda(i) / count;
      while (a) {
        acc[std::countr_zero(a)] += share;
        a &= a - 1;
      }
    }
    for (int j = 0; j < slots; ++j) {
      if (acc[j] <= 0.0) continue;
      tables.per_mask[s].push_back({j, acc[j]});
      tables.booking_prob[s] += acc[j];
    }
  }
  return tables;
}

OfferMask ValueTable::action_at(int n, const Eigen::VectorXi& m) const {
  if (!has_actions()) throw std::logic_error("value table has no recorded actions");
  if (n < 1 || n > horizon()) throw std::out_of_range("period outside table");
  return actions[static_cast<size_t>(n - 1) * lattice.size() + lattice.index(m)];
}

ValueTable solve_nonseq(const Instance& inst, const SolveOptions& opt) {
  validate_or_throw(inst);
  ValueTable table = make_table(Variant::kNonSequential, inst, opt);
  const ChoiceTables choice = ChoiceTables::build(inst);
  const long size = table.lattice.size();
  if (opt.record_actions) table.actions.assign(static_cast<size_t>(inst.horizon) * size, 0);

  std::vector<std::pair<OfferMask, double>> scratch;
  for (int n = 1; n <= inst.horizon; ++n) {
    const double* prev = table.value.col(n - 1).data();
    double* cur = table.value.col(n).data();
    for (long idx = 0; idx < size; ++idx) {
      const OfferMask avail = table.lattice.available(idx);
      double best = prev[idx];  // empty offer
      if (opt.record_actions) scratch.clear();
      OfferMask sub = avail;
      while (sub != 0) {
        const double val = offer_value(choice, table.lattice, prev, idx, sub);
        if (val > best) best = val;
        if (opt.record_actions) scratch.emplace_back(sub, val);
        sub = (sub - 1) & avail;
      }
      cur[idx] = best;
      if (opt.record_actions) {
        OfferMask pick = 0;  // empty offer always attains prev[idx]
        if (prev[idx] < best - kActionTol) pick = std::numeric_limits<OfferMask>::max();
        for (const auto& [mask, val] : scratch)
          if (val >= best - kActionTol && mask < pick) pick = mask;
        table.actions[static_cast<size_t>(n - 1) * size + idx] = static_cast<std::uint16_t>(pick);
      }
    }
  }
  return table;
}

ValueTable solve_seq(const Instance& inst, SeqMode mode, const SolveOptions& opt) {
  validate_or_throw(inst);
  ValueTable table = make_table(Variant::kSequential, inst, opt);
  const long size = table.lattice.size();
  const auto masks = accept_masks(inst);
  const double no_arrival = inst.no_arrival_prob();

  if (mode == SeqMode::kPermutation) {
    for (int n = 1; n <= inst.horizon; ++n) {
      const double* prev = table.value.col(n - 1).data();
      double* cur = table.value.col(n).data();
      for (long idx = 0; idx < size; ++idx) {
        const OfferMask avail = table.lattice.available(idx);
        const double stay = prev[idx];
        // Available singletons sorted by descending value-to-go after the
        // booking; equal values keep the lower slot index first.
        std::array<int, kMaxSlotTypes> order{};
        std::array<double, kMaxSlotTypes> key{};
        int count = 0;
        OfferMask rest = avail;
        while (rest) {
          const int j = std::countr_zero(rest);
          rest &= rest - 1;
          const double v = prev[table.lattice.down(idx, j)];
          int pos = count;
          while (pos > 0 && key[pos - 1] < v) {
            order[pos] = order[pos - 1];
            key[pos] = key[pos - 1];
            --pos;
          }
          order[pos] = j;
          key[pos] = v;
          ++count;
        }
        double val = no_arrival * stay;
        for (int i = 0; i < inst.customer_types(); ++i) {
          const OfferMask accepts = masks[i] & avail;
          double contrib = stay;
          if (accepts != 0) {
            for (int k = 0; k < count; ++k) {
              if (accepts & (OfferMask{1} << order[k])) {
                contrib = 1.0 + key[k];
                break;
              }
            }
          }
          val += inst.lambda(i) * contrib;
        }
        cur[idx] = val;
      }
    }
    return table;
  }

  // Exhaustive mode: every ordered partition of the available set.
  if (std::popcount(available_mask(inst.capacity)) > 6)
    throw std::length_error("exhaustive sequential search limited to 6 available types");
  std::unordered_map<OfferMask, std::vector<OfferSequence>> cache;
  for (int n = 1; n <= inst.horizon; ++n) {
    const double* prev = table.value.col(n - 1).data();
    double* cur = table.value.col(n).data();
    for (long idx = 0; idx < size; ++idx) {
      const OfferMask avail = table.lattice.available(idx);
      double best = prev[idx];
      if (avail != 0) {
        auto it = cache.find(avail);
        if (it == cache.end())
          it = cache.emplace(avail, enumerate_offer_sequences(avail, true)).first;
        for (const OfferSequence& seq : it->second)
          best = std::max(best, sequence_value(inst, masks, table.lattice, prev, idx, seq));
      }
      cur[idx] = best;
    }
  }
  return table;
}

ValueTable solve_fullinfo(const Instance& inst, const SolveOptions& opt) {
  validate_or_throw(inst);
  ValueTable table = make_table(Variant::kFullInformation, inst, opt);
  const long size = table.lattice.size();
  const auto masks = accept_masks(inst);
  const double no_arrival = inst.no_arrival_prob();

  for (int n = 1; n <= inst.horizon; ++n) {
    const double* prev = table.value.col(n - 1).data();
    double* cur = table.value.col(n).data();
    for (long idx = 0; idx < size; ++idx) {
      const OfferMask avail = table.lattice.available(idx);
      const double stay = prev[idx];
      double val = no_arrival * stay;
      for (int i = 0; i < inst.customer_types(); ++i) {
        OfferMask acceptable = masks[i] & avail;
        if (acceptable == 0) {
          val += inst.lambda(i) * stay;
          continue;
        }
        double best = -1.0;
        while (acceptable) {
          const int j = std::countr_zero(acceptable);
          acceptable &= acceptable - 1;
          best = std::max(best, prev[table.lattice.down(idx, j)]);
        }
        val += inst.lambda(i) * (1.0 + best);
      }
      cur[idx] = val;
    }
  }
  return table;
}

ValueTable evaluate_policy(const Instance& inst, const PolicySpec& policy,
                           const SolveOptions& opt) {
  validate_or_throw(inst);
  Variant variant = Variant::kNonSequential;
  switch (policy.kind) {
    case PolicySpec::Kind::kNonseq:
    case PolicySpec::Kind::kStaticRandomized:
      variant = Variant::kNonSequential;
      break;
    case PolicySpec::Kind::kSeq:
    case PolicySpec::Kind::kSeqMixture:
      variant = Variant::kSequential;
      break;
    case PolicySpec::Kind::kFullInfo:
      variant = Variant::kFullInformation;
      break;
  }
  ValueTable table = make_table(variant, inst, opt);
  const long size = table.lattice.size();
  const ChoiceTables choice = ChoiceTables::build(inst);
  const auto masks = accept_masks(inst);
  const int num_actions = 1 << inst.slot_types();

  if (policy.kind == PolicySpec::Kind::kStaticRandomized) {
    if (policy.action_probs.size() != num_actions)
      throw std::invalid_argument("static randomized policy needs 2^J action probabilities");
    if (policy.action_probs.minCoeff() < -1e-12 ||
        std::abs(policy.action_probs.sum() - 1.0) > 1e-10)
      throw std::invalid_argument("action probabilities must form a distribution");
  }
  if (policy.kind == PolicySpec::Kind::kFullInfo) {
    if (!policy.table || policy.table->lattice.size() != size)
      throw std::invalid_argument("full-information policy needs a value table on this lattice");
  }

  for (int n = 1; n <= inst.horizon; ++n) {
    const double* prev = table.value.col(n - 1).data();
    double* cur = table.value.col(n).data();
    Eigen::VectorXi m = Eigen::VectorXi::Zero(inst.slot_types());
    for (long idx = 0; idx < size; ++idx) {
      const OfferMask avail = table.lattice.available(idx);
      double val = prev[idx];
      switch (policy.kind) {
        case PolicySpec::Kind::kNonseq: {
          const OfferMask mask = policy.nonseq_action(inst, m, n);
          if (mask & ~avail)
            throw std::domain_error("policy '" + policy.name +
                                    "' offers a depleted slot type");
          val = offer_value(choice, table.lattice, prev, idx, mask);
          break;
        }
        case PolicySpec::Kind::kSeq: {
          const OfferSequence seq = policy.seq_action(inst, m, n);
          if (!seq.empty()) {
            validate_sequence(seq, avail);
            val = sequence_value(inst, masks, table.lattice, prev, idx, seq);
          }
          break;
        }
        case PolicySpec::Kind::kStaticRandomized: {
          val = 0.0;
          for (int k = 0; k < num_actions; ++k) {
            const double p = policy.action_probs(k);
            if (p <= 0.0) continue;
            val += p * offer_value(choice, table.lattice, prev, idx,
                                   static_cast<OfferMask>(k) & avail);
          }
          break;
        }
        case PolicySpec::Kind::kSeqMixture: {
          const auto support = policy.seq_mixture(inst, m, n);
          val = 0.0;
          double weight = 0.0;
          for (const auto& [seq, w] : support) {
            weight += w;
            if (seq.empty()) {
              val += w * prev[idx];
              continue;
            }
            validate_sequence(seq, avail);
            val += w * sequence_value(inst, masks, table.lattice, prev, idx, seq);
          }
          if (std::abs(weight - 1.0) > 1e-9)
            throw std::invalid_argument("sequence mixture weights must sum to 1");
          break;
        }
        case PolicySpec::Kind::kFullInfo: {
          const double* guide = policy.table->value.col(n - 1).data();
          const double stay = prev[idx];
          val = inst.no_arrival_prob() * stay;
          for (int i = 0; i < inst.customer_types(); ++i) {
            OfferMask acceptable = masks[i] & avail;
            if (acceptable == 0) {
              val += inst.lambda(i) * stay;
              continue;
            }
            int best_j = -1;
            double best_v = -1.0;
            while (acceptable) {
              const int j = std::countr_zero(acceptable);
              acceptable &= acceptable - 1;
              const double v = guide[table.lattice.down(idx, j)];
              if (v > best_v) {
                best_v = v;
                best_j = j;
              }
            }
            val += inst.lambda(i) * (1.0 + prev[table.lattice.down(idx, best_j)]);
          }
          break;
        }
      }
      cur[idx] = val;
      table.lattice.advance(m);
    }
  }
  return table;
}

Eigen::VectorXd marginal_values(const ValueTable& table, const State& state) {
  if (state.n < 1 || state.n > table.horizon())
    throw std::out_of_range("marginal values need 1 <= n <= N");
  const long idx = table.lattice.index(state.m);
  const int dims = table.lattice.dims();
  Eigen::VectorXd delta =
      Eigen::VectorXd::Constant(dims, std::numeric_limits<double>::quiet_NaN());
  const double here = table.value(idx, state.n - 1);
  for (int j = 0; j < dims; ++j)
    if (state.m(j) > 0) delta(j) = here - table.value(table.lattice.down(idx, j), state.n - 1);
  return delta;
}

double boundary_binomial(double p, int cap, int n) {
  if (cap <= 0 || n <= 0 || p <= 0.0) return 0.0;
  if (p >= 1.0) return std::min(cap, n);
  if (cap >= n) return n * p;
  const double log_p = std::log(p);
  const double log_1p = std::log1p(-p);
  double total = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double log_pmf = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                           std::lgamma(n - k + 1.0) + k * log_p + (n - k) * log_1p;
    total += std::min(cap, k) * std::exp(log_pmf);
  }
  return total;
}

namespace {

void enumerate_rec(OfferMask remaining, bool full, OfferSequence& current,
                   std::vector<OfferSequence>& out) {
  if (!current.empty() && (!full || remaining == 0)) out.push_back(current);
  if (remaining == 0) return;
  for (OfferMask sub = remaining; sub != 0; sub = (sub - 1) & remaining) {
    current.push_back(sub);
    enumerate_rec(remaining & ~sub, full, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<OfferSequence> enumerate_offer_sequences(OfferMask available,
                                                     bool require_full_cover) {
  std::vector<OfferSequence> out;
  OfferSequence current;
  enumerate_rec(available, require_full_cover, current, out);
  return out;
}

OfferSequence optimal_sequence_from_values(const ValueTable& table, const Eigen::VectorXi& m,
                                           int n) {
  if (n < 1 || n > table.horizon()) throw std::out_of_range("period outside table");
  const long idx = table.lattice.index(m);
  const double* prev = table.value.col(n - 1).data();
  std::vector<std::pair<double, int>> keyed;
  for (int j = 0; j < table.lattice.dims(); ++j)
    if (m(j) > 0) keyed.emplace_back(prev[table.lattice.down(idx, j)], j);
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  OfferSequence seq;
  seq.reserve(keyed.size());
  for (const auto& [_, j] : keyed) seq.push_back(OfferMask{1} << j);
  return seq;
}

NonseqActionChoice optimal_nonseq_action(const Instance& inst, const ValueTable& table,
                                         const Eigen::VectorXi& m, int n, double tol) {
  if (n < 1 || n > table.horizon()) throw std::out_of_range("period outside table");
  const ChoiceTables choice = ChoiceTables::build(inst);
  const long idx = table.lattice.index(m);
  const double* prev = table.value.col(n - 1).data();
  const OfferMask avail = available_mask(m);

  double best = prev[idx];
  OfferMask sub = avail;
  while (sub != 0) {
    best = std::max(best, offer_value(choice, table.lattice, prev, idx, sub));
    sub = (sub - 1) & avail;
  }

  NonseqActionChoice out;
  out.optimal_count = prev[idx] >= best - tol ? 1 : 0;
  out.action = prev[idx] >= best - tol ? 0 : std::numeric_limits<OfferMask>::max();
  sub = avail;
  while (sub != 0) {
    if (offer_value(choice, table.lattice, prev, idx, sub) >= best - tol) {
      ++out.optimal_count;
      out.action = std::min(out.action, sub);
    }
    sub = (sub - 1) & avail;
  }
  return out;
}

}  // namespace offerplan
