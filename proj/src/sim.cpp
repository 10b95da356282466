#include "offerplan/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "offerplan/dp.hpp"

namespace offerplan {

namespace {

// Slot picked by a type-`accepts` customer facing a non-sequential offer, or
// -1 when nothing offered is acceptable.
int resolve_offer(OfferMask accepts, OfferMask offer, Rng& rng) {
  OfferMask acceptable = accepts & offer;
  const int count = std::popcount(acceptable);
  if (count == 0) return -1;
  int skip = count == 1 ? 0 : rng.uniform_int(count);
  while (skip-- > 0) acceptable &= acceptable - 1;
  return std::countr_zero(acceptable);
}

int resolve_sequence(OfferMask accepts, const OfferSequence& seq, Rng& rng) {
  for (const OfferMask set : seq) {
    const int pick = resolve_offer(accepts, set, rng);
    if (pick >= 0) return pick;
  }
  return -1;
}

// One arriving customer against one day's remaining capacity; returns the
// booked slot type or -1.
int book_customer(const Instance& inst, const PolicySpec& policy,
                  const std::vector<OfferMask>& masks, int customer, Eigen::VectorXi& m, int n,
                  Rng& rng) {
  const OfferMask avail = available_mask(m);
  const OfferMask accepts = masks[customer];
  int slot = -1;
  switch (policy.kind) {
    case PolicySpec::Kind::kNonseq: {
      const OfferMask offer = policy.nonseq_action(inst, m, n);
      if (offer & ~avail)
        throw std::domain_error("policy '" + policy.name + "' offers a depleted slot type");
      slot = resolve_offer(accepts, offer, rng);
      break;
    }
    case PolicySpec::Kind::kStaticRandomized: {
      const int k = sample_action_index(policy.action_probs, rng);
      // Customers only consider offered types that are actually available.
      slot = resolve_offer(accepts, static_cast<OfferMask>(k) & avail, rng);
      break;
    }
    case PolicySpec::Kind::kSeq: {
      const OfferSequence seq = policy.seq_action(inst, m, n);
      if (!seq.empty()) validate_sequence(seq, avail);
      slot = resolve_sequence(accepts, seq, rng);
      break;
    }
    case PolicySpec::Kind::kSeqMixture: {
      OfferSequence seq;
      if (policy.seq_sampler) {
        seq = policy.seq_sampler(inst, m, n, rng);
      } else {
        const auto support = policy.seq_mixture(inst, m, n);
        Eigen::VectorXd w(static_cast<long>(support.size()));
        for (size_t s = 0; s < support.size(); ++s) w(static_cast<long>(s)) = support[s].second;
        int drawn = rng.categorical(w);
        if (drawn < 0) drawn = static_cast<int>(support.size()) - 1;
        seq = support[static_cast<size_t>(drawn)].first;
      }
      if (!seq.empty()) validate_sequence(seq, avail);
      slot = resolve_sequence(accepts, seq, rng);
      break;
    }
    case PolicySpec::Kind::kFullInfo: {
      OfferMask acceptable = accepts & avail;
      if (acceptable == 0) break;
      const double* guide = policy.table->value.col(n - 1).data();
      const long idx = policy.table->lattice.index(m);
      double best = -1.0;
      while (acceptable) {
        const int j = std::countr_zero(acceptable);
        acceptable &= acceptable - 1;
        const double v = guide[policy.table->lattice.down(idx, j)];
        if (v > best) {
          best = v;
          slot = j;
        }
      }
      break;
    }
  }
  if (slot >= 0) --m(slot);
  return slot;
}

void summarize(const std::vector<int>& counts, double capacity_total, double& mean, double& se,
               double& fill_rate) {
  const double n = static_cast<double>(counts.size());
  double sum = 0.0;
  for (int c : counts) sum += c;
  mean = sum / n;
  double ss = 0.0;
  for (int c : counts) ss += (c - mean) * (c - mean);
  se = counts.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
  fill_rate = capacity_total > 0 ? mean / capacity_total : 0.0;
}

}  // namespace

SimReport simulate_single_day(const Instance& inst, const PolicySpec& policy,
                              const SimConfig& config) {
  if (config.replications < 1) throw std::invalid_argument("need at least one replication");
  const auto masks = accept_masks(inst);
  const bool needs_table =
      policy.kind == PolicySpec::Kind::kFullInfo && policy.table == nullptr;
  if (needs_table) throw std::invalid_argument("full-information policy needs a value table");

  SimReport report;
  report.per_replication.resize(static_cast<size_t>(config.replications));
  for (long rep = 0; rep < config.replications; ++rep) {
    Rng rng = Rng::replication_stream(config.seed, static_cast<std::uint64_t>(rep));
    Eigen::VectorXi m = inst.capacity;
    int filled = 0;
    for (int n = inst.horizon; n >= 1; --n) {
      const int customer = rng.categorical(inst.lambda);
      if (customer < 0) continue;  // no arrival this period
      if (book_customer(inst, policy, masks, customer, m, n, rng) >= 0) ++filled;
    }
    report.per_replication[static_cast<size_t>(rep)] = filled;
  }
  summarize(report.per_replication, inst.capacity.sum(), report.mean_fill, report.std_error,
            report.fill_rate);
  return report;
}

MultiDayReport simulate_multiday(const MultiDayConfig& config, const PolicySpec& within_day) {
  if (config.acceptable_days < 1 || config.acceptable_days > config.window)
    throw std::invalid_argument("acceptable days must lie in 1..window");
  if (config.warmup_days >= config.total_days)
    throw std::invalid_argument("warm-up must be shorter than the run");
  if (within_day.kind != PolicySpec::Kind::kNonseq &&
      within_day.kind != PolicySpec::Kind::kSeq)
    throw std::invalid_argument("multi-day runs need a capacity-only within-day rule");

  const Instance& tpl = config.day_template;
  const auto masks = accept_masks(tpl);
  const double day_capacity = tpl.capacity.sum();
  Rng rng(config.seed);

  // FIFO window of open days; the head closes tonight, a fresh template opens
  // after it. Unfilled slots of the closing day expire.
  std::deque<Eigen::VectorXi> open_days;
  for (int d = 0; d < config.window; ++d) open_days.push_back(tpl.capacity);

  MultiDayReport report;
  std::vector<int> day_choices(static_cast<size_t>(config.acceptable_days));
  for (int day = 1; day <= config.total_days; ++day) {
    int arrivals = config.daily_demand;
    if (config.demand == DemandMode::kPoisson)
      arrivals = rng.poisson(config.daily_demand, 10 * config.daily_demand);
    for (int a = 0; a < arrivals; ++a) {
      const int customer = rng.categorical(tpl.lambda);
      if (customer < 0) continue;
      // D distinct acceptable days, uniform over the open window, visited in
      // uniform random order; the within-day preference stays fixed across
      // the days this customer tries.
      int chosen = 0;
      for (int d = 0; d < config.window && chosen < config.acceptable_days; ++d) {
        const int remaining_slots = config.acceptable_days - chosen;
        if (rng.uniform_int(config.window - d) < remaining_slots)
          day_choices[static_cast<size_t>(chosen++)] = d;
      }
      for (int k = chosen - 1; k > 0; --k)
        std::swap(day_choices[static_cast<size_t>(k)],
                  day_choices[static_cast<size_t>(rng.uniform_int(k + 1))]);
      for (int k = 0; k < chosen; ++k) {
        Eigen::VectorXi& m = open_days[static_cast<size_t>(day_choices[static_cast<size_t>(k)])];
        if (book_customer(tpl, within_day, masks, customer, m, 1, rng) >= 0) break;
      }
    }
    const int filled = static_cast<int>(day_capacity) - open_days.front().sum();
    open_days.pop_front();
    open_days.push_back(tpl.capacity);
    if (day > config.warmup_days) report.per_day.push_back(filled);
  }

  summarize(report.per_day, day_capacity, report.mean_fill, report.std_error, report.fill_rate);
  return report;
}

GapStats gap_statistics(const std::vector<double>& candidate,
                        const std::vector<double>& baseline) {
  if (candidate.empty() || candidate.size() != baseline.size())
    throw std::invalid_argument("gap statistics need matched non-empty value lists");
  std::vector<double> pct(candidate.size());
  for (size_t i = 0; i < candidate.size(); ++i) {
    if (baseline[i] == 0.0) throw std::domain_error("baseline value is zero");
    pct[i] = 100.0 * (candidate[i] - baseline[i]) / baseline[i];
  }
  GapStats stats;
  stats.count = static_cast<int>(pct.size());
  double sum = 0.0;
  for (double v : pct) {
    sum += v;
    if (std::abs(v) > std::abs(stats.max)) stats.max = v;
  }
  stats.average = sum / static_cast<double>(pct.size());
  std::sort(pct.begin(), pct.end());
  const size_t mid = pct.size() / 2;
  stats.median = pct.size() % 2 == 1 ? pct[mid] : 0.5 * (pct[mid - 1] + pct[mid]);
  return stats;
}

}  // namespace offerplan
