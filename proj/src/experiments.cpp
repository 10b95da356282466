#include "offerplan/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>

#include "offerplan/fluid.hpp"
#include "offerplan/rng.hpp"

namespace offerplan {

namespace {

int capacity_floor(int horizon, double fraction) {
  return std::max(1, static_cast<int>(std::ceil(fraction * horizon - 1e-9)));
}

void enumerate_rec(int remaining, int parts, int floor, Eigen::VectorXi& current, int pos,
                   std::vector<Eigen::VectorXi>& out) {
  if (pos == parts - 1) {
    if (remaining >= floor) {
      current(pos) = remaining;
      out.push_back(current);
    }
    return;
  }
  const int max_here = remaining - floor * (parts - 1 - pos);
  for (int b = floor; b <= max_here; ++b) {
    current(pos) = b;
    enumerate_rec(remaining - b, parts, floor, current, pos + 1, out);
  }
}

}  // namespace

ScenarioGrid enumerate_scenarios(int horizon, int slot_types, double floor_fraction) {
  if (slot_types < 1) throw std::invalid_argument("need at least one slot type");
  ScenarioGrid grid;
  grid.horizon = horizon;
  grid.slot_types = slot_types;
  const int floor = capacity_floor(horizon, floor_fraction);
  if (floor * slot_types > horizon)
    throw std::invalid_argument("capacity floor is infeasible for this horizon");
  Eigen::VectorXi current(slot_types);
  enumerate_rec(horizon, slot_types, floor, current, 0, grid.capacities);
  return grid;
}

Eigen::VectorXd lambda_scheme(LambdaScheme scheme, int customer_types) {
  if (customer_types < 1) throw std::invalid_argument("need at least one customer type");
  Eigen::VectorXd lambda(customer_types);
  if (customer_types == 1) {
    lambda(0) = 1.0;
    return lambda;
  }
  const double count = customer_types;
  for (int i = 1; i <= customer_types; ++i) {
    switch (scheme) {
      case LambdaScheme::kUniform:
        lambda(i - 1) = 1.0 / count;
        break;
      case LambdaScheme::kTilt2:
        lambda(i - 1) = 2.0 * (count + i - 2) / (3.0 * count * count - 3.0 * count);
        break;
      case LambdaScheme::kTilt4:
        lambda(i - 1) = 2.0 * (count + 3 * i - 4) / (5.0 * count * count - 5.0 * count);
        break;
    }
  }
  return lambda;
}

std::vector<Instance> generate_random_instances(int slot_types, int horizon, int count,
                                                LambdaScheme scheme, std::uint64_t seed) {
  if (slot_types < 1 || slot_types > kMaxSlotTypes)
    throw std::invalid_argument("slot types outside 1..16");
  Rng rng(seed);
  const std::uint64_t row_universe = (std::uint64_t{1} << ((1 << slot_types) - 1)) - 1;
  std::vector<Instance> out;
  out.reserve(static_cast<size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    // A uniformly sampled non-empty subset of the 2^J - 1 non-zero rows.
    std::uint64_t selection = 0;
    while (selection == 0) selection = rng.next_u64() & row_universe;
    std::vector<OfferMask> rows;
    for (int r = 0; r < (1 << slot_types) - 1; ++r)
      if (selection & (std::uint64_t{1} << r)) rows.push_back(static_cast<OfferMask>(r + 1));

    Instance inst;
    inst.omega = Eigen::MatrixXi::Zero(static_cast<int>(rows.size()), slot_types);
    for (size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < slot_types; ++j)
        if (rows[i] & (OfferMask{1} << j)) inst.omega(static_cast<int>(i), j) = 1;
    inst.lambda = lambda_scheme(scheme, static_cast<int>(rows.size()));
    inst.horizon = horizon;
    inst.capacity = Eigen::VectorXi::Ones(slot_types);
    if (!validate(inst).empty()) continue;  // defensive; should not trigger
    out.push_back(std::move(inst));
  }
  return out;
}

namespace {

struct LabeledLambda {
  std::string label;
  Eigen::VectorXd lambda;
};

Eigen::VectorXd make_lambda(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<long>(values.size()));
  int i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

Eigen::VectorXi envelope_capacity(const std::vector<Eigen::VectorXi>& caps) {
  Eigen::VectorXi env = caps.front();
  for (const auto& b : caps) env = env.cwiseMax(b);
  return env;
}

// Values of a capacity-independent rule at (b, N) for every scenario, read
// off one sweep over the envelope lattice.
std::vector<double> envelope_values(const Instance& base, const std::vector<Eigen::VectorXi>& caps,
                                    const std::function<ValueTable(const Instance&)>& solver) {
  const Instance env = base.with_capacity(envelope_capacity(caps));
  const ValueTable table = solver(env);
  std::vector<double> values;
  values.reserve(caps.size());
  for (const auto& b : caps) values.push_back(table.at(base.horizon, b));
  return values;
}

enum class Side {
  kOfferingAll,
  kDrain,
  kRandomSeq,
  kOptimalNonseq,
  kOptimalSeq,
  kStaticPStar,
};

std::vector<double> side_values(Side side, const Instance& base,
                                const std::vector<Eigen::VectorXi>& caps, EvalMode mode,
                                long sim_days, std::uint64_t seed) {
  switch (side) {
    case Side::kOptimalNonseq:
      return envelope_values(base, caps,
                             [](const Instance& i) { return solve_nonseq(i); });
    case Side::kOptimalSeq:
      return envelope_values(
          base, caps, [](const Instance& i) { return solve_seq(i, SeqMode::kPermutation); });
    case Side::kOfferingAll:
    case Side::kDrain:
    case Side::kRandomSeq: {
      PolicySpec policy = side == Side::kOfferingAll ? offering_all_policy()
                          : side == Side::kDrain     ? drain_policy()
                                                     : random_sequential_policy();
      if (mode == EvalMode::kExactDp)
        return envelope_values(base, caps, [&](const Instance& i) {
          return evaluate_policy(i, policy);
        });
      std::vector<double> values;
      values.reserve(caps.size());
      for (const auto& b : caps) {
        const SimReport report =
            simulate_single_day(base.with_capacity(b), policy, {sim_days, seed});
        values.push_back(report.mean_fill);
      }
      return values;
    }
    case Side::kStaticPStar: {
      std::vector<double> values;
      values.reserve(caps.size());
      for (const auto& b : caps) {
        const Instance inst = base.with_capacity(b);
        const Eigen::VectorXd pstar = extract_pstar(solve_fluid(build_fluid(inst, 1)));
        const PolicySpec policy = static_randomized_policy(pstar);
        if (mode == EvalMode::kExactDp) {
          values.push_back(evaluate_policy(inst, policy).at(inst.horizon, b));
        } else {
          values.push_back(simulate_single_day(inst, policy, {sim_days, seed}).mean_fill);
        }
      }
      return values;
    }
  }
  throw std::logic_error("unreachable");
}

struct GapTableSpec {
  Eigen::MatrixXi omega;
  std::vector<LabeledLambda> lambdas;
  std::vector<int> horizons{20, 30, 40, 50};
  Side candidate = Side::kOfferingAll;
  Side baseline = Side::kOptimalNonseq;
  std::string comparison;
  bool candidate_uses_mode = true;  // baseline is always exact DP
};

TableResult run_gap_table(const std::string& name, const GapTableSpec& spec, EvalMode mode,
                          long sim_days, std::uint64_t seed) {
  TableResult result;
  result.name = name;
  result.comparison = spec.comparison;
  for (const auto& [label, lambda] : spec.lambdas) {
    for (int horizon : spec.horizons) {
      Instance base;
      base.omega = spec.omega;
      base.lambda = lambda;
      base.horizon = horizon;
      base.capacity = Eigen::VectorXi::Ones(spec.omega.cols());
      const ScenarioGrid grid = enumerate_scenarios(horizon, base.slot_types());
      const EvalMode cand_mode = spec.candidate_uses_mode ? mode : EvalMode::kExactDp;
      const auto candidate =
          side_values(spec.candidate, base, grid.capacities, cand_mode, sim_days, seed);
      const auto baseline = side_values(spec.baseline, base, grid.capacities,
                                        EvalMode::kExactDp, sim_days, seed);
      TableCell cell;
      cell.lambda_label = label;
      cell.horizon = horizon;
      cell.scenarios = static_cast<int>(grid.capacities.size());
      cell.stats = gap_statistics(candidate, baseline);
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

std::vector<LabeledLambda> lambda_set(const std::string& which) {
  if (which == "half")
    return {{"(1/2,1/2)", make_lambda({0.5, 0.5})},
            {"(1/3,2/3)", make_lambda({1.0 / 3, 2.0 / 3})},
            {"(1/4,3/4)", make_lambda({0.25, 0.75})}};
  if (which == "n-improvement")
    return {{"(1/2,1/2)", make_lambda({0.5, 0.5})},
            {"(1/4,3/4)", make_lambda({0.25, 0.75})},
            {"(3/4,1/4)", make_lambda({0.75, 0.25})}};
  if (which == "mplus1")
    return {{"(9/20,9/20,1/10)", make_lambda({0.45, 0.45, 0.1})},
            {"(2/5,2/5,1/5)", make_lambda({0.4, 0.4, 0.2})},
            {"(3/10,3/10,2/5)", make_lambda({0.3, 0.3, 0.4})}};
  if (which == "w")
    return {{"(1/3,1/3,1/3)", make_lambda({1.0 / 3, 1.0 / 3, 1.0 / 3})},
            {"(1/5,1/2,3/10)", make_lambda({0.2, 0.5, 0.3})},
            {"(1/10,3/10,3/5)", make_lambda({0.1, 0.3, 0.6})}};
  throw std::logic_error("unknown lambda set");
}

TableResult run_random_gap(int slot_types, EvalMode mode, long sim_days, std::uint64_t seed) {
  struct Row {
    int horizon;
    int instances;
  };
  std::vector<Row> rows;
  if (slot_types == 3) rows = {{10, 100}, {20, 80}, {30, 40}, {40, 10}};
  if (slot_types == 4) rows = {{10, 100}, {20, 10}, {30, 10}};
  if (slot_types == 5) rows = {{10, 100}, {20, 10}};

  TableResult result;
  result.name = "random-gap";
  result.comparison = "offering-all vs optimal-nonseq (J=" + std::to_string(slot_types) + ")";
  const std::vector<std::pair<std::string, LambdaScheme>> schemes = {
      {"lambda(1)", LambdaScheme::kUniform},
      {"lambda(2)", LambdaScheme::kTilt2},
      {"lambda(3)", LambdaScheme::kTilt4}};
  for (const auto& [label, scheme] : schemes) {
    for (const auto& row : rows) {
      const auto instances = generate_random_instances(slot_types, row.horizon, row.instances,
                                                       scheme, seed + row.horizon);
      const ScenarioGrid grid = enumerate_scenarios(row.horizon, slot_types, 0.1);
      std::vector<double> candidate;
      std::vector<double> baseline;
      for (const auto& inst : instances) {
        const auto heur = side_values(Side::kOfferingAll, inst, grid.capacities, mode,
                                      sim_days, seed);
        const auto opt = side_values(Side::kOptimalNonseq, inst, grid.capacities,
                                     EvalMode::kExactDp, sim_days, seed);
        candidate.insert(candidate.end(), heur.begin(), heur.end());
        baseline.insert(baseline.end(), opt.begin(), opt.end());
      }
      TableCell cell;
      cell.lambda_label = label;
      cell.horizon = row.horizon;
      cell.scenarios = static_cast<int>(candidate.size());
      cell.stats = gap_statistics(candidate, baseline);
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

}  // namespace

std::vector<TableResult> run_table(const std::string& name, EvalMode mode, long sim_days,
                                   std::uint64_t seed) {
  const Eigen::MatrixXi m_model = canonical(CanonicalModel::kM);
  const Eigen::MatrixXi n_model = canonical(CanonicalModel::kN);
  const Eigen::MatrixXi w_model = canonical(CanonicalModel::kW);
  const Eigen::MatrixXi mplus1 = canonical(CanonicalModel::kMPlus1);

  if (name == "m-gap") {
    GapTableSpec spec;
    spec.omega = m_model;
    spec.lambdas = lambda_set("half");
    spec.candidate = Side::kOfferingAll;
    spec.baseline = Side::kOptimalNonseq;
    spec.comparison = "offering-all vs optimal-nonseq";
    return {run_gap_table(name, spec, mode, sim_days, seed)};
  }
  if (name == "mplus1-gap") {
    GapTableSpec spec;
    spec.omega = mplus1;
    spec.lambdas = lambda_set("mplus1");
    spec.comparison = "offering-all vs optimal-nonseq";
    return {run_gap_table(name, spec, mode, sim_days, seed)};
  }
  if (name == "random-gap") {
    return {run_random_gap(3, mode, sim_days, seed), run_random_gap(4, mode, sim_days, seed),
            run_random_gap(5, mode, sim_days, seed)};
  }
  if (name == "drain-n" || name == "drain-m" || name == "drain-w") {
    GapTableSpec spec;
    spec.omega = name == "drain-n" ? n_model : name == "drain-m" ? m_model : w_model;
    spec.lambdas = lambda_set(name == "drain-w" ? "w" : "half");
    spec.candidate = Side::kDrain;
    spec.baseline = Side::kOptimalSeq;
    spec.comparison = "drain vs optimal-seq";
    return {run_gap_table(name, spec, mode, sim_days, seed)};
  }
  if (name == "seq-vs-nonseq-n" || name == "seq-vs-nonseq-m" || name == "seq-vs-nonseq-w") {
    GapTableSpec spec;
    spec.omega = name == "seq-vs-nonseq-n"   ? n_model
                 : name == "seq-vs-nonseq-m" ? m_model
                                             : w_model;
    spec.lambdas = lambda_set(name == "seq-vs-nonseq-n"   ? "n-improvement"
                              : name == "seq-vs-nonseq-m" ? "half"
                                                          : "w");
    spec.candidate = Side::kOptimalSeq;
    spec.baseline = Side::kOptimalNonseq;
    spec.comparison = "optimal-seq vs optimal-nonseq";
    spec.candidate_uses_mode = false;  // both optima come from backward induction
    return {run_gap_table(name, spec, mode, sim_days, seed)};
  }
  if (name == "drain-compare") {
    std::vector<TableResult> results;
    const std::vector<std::pair<std::string, Eigen::MatrixXi>> models = {
        {"n", n_model}, {"m", m_model}, {"w", w_model}};
    for (const auto& [tag, omega] : models) {
      for (const Side baseline : {Side::kOfferingAll, Side::kRandomSeq}) {
        GapTableSpec spec;
        spec.omega = omega;
        spec.lambdas = lambda_set(tag == "w" ? "w" : "half");
        spec.candidate = Side::kDrain;
        spec.baseline = baseline;
        spec.comparison = std::string("drain vs ") + (baseline == Side::kOfferingAll
                                                          ? "offering-all"
                                                          : "random-seq") +
                          " (" + tag + " model)";
        // Both sides share the evaluation mode here; the baseline is itself a
        // heuristic.
        TableResult result;
        result.name = name;
        result.comparison = spec.comparison;
        for (const auto& [label, lambda] : spec.lambdas) {
          for (int horizon : spec.horizons) {
            Instance base;
            base.omega = spec.omega;
            base.lambda = lambda;
            base.horizon = horizon;
            base.capacity = Eigen::VectorXi::Ones(spec.omega.cols());
            const ScenarioGrid grid = enumerate_scenarios(horizon, base.slot_types());
            const auto cand =
                side_values(spec.candidate, base, grid.capacities, mode, sim_days, seed);
            const auto ref = side_values(spec.baseline, base, grid.capacities, mode, sim_days,
                                         seed + 1);
            TableCell cell;
            cell.lambda_label = label;
            cell.horizon = horizon;
            cell.scenarios = static_cast<int>(grid.capacities.size());
            cell.stats = gap_statistics(cand, ref);
            result.cells.push_back(std::move(cell));
          }
        }
        results.push_back(std::move(result));
      }
    }
    return results;
  }
  if (name == "pstar-gap") {
    GapTableSpec spec;
    spec.omega = m_model;
    spec.lambdas = lambda_set("half");
    spec.candidate = Side::kStaticPStar;
    spec.baseline = Side::kOptimalNonseq;
    spec.comparison = "pi-pstar vs optimal-nonseq";
    return {run_gap_table(name, spec, mode, sim_days, seed)};
  }
  throw std::invalid_argument("unknown table name: " + name);
}

PolicyMap emit_policy_map(const Instance& inst, Variant variant,
                          const std::map<std::string, int>& fixed,
                          const std::pair<std::string, std::string>& axes) {
  const int slots = inst.slot_types();
  const auto coord_index = [&](const std::string& name) {
    if (name.size() >= 2 && name[0] == 'm') {
      const int j = std::stoi(name.substr(1)) - 1;
      if (j >= 0 && j < slots) return j;
    }
    throw std::invalid_argument("unknown state coordinate: " + name);
  };
  const int axis1 = coord_index(axes.first);
  const int axis2 = coord_index(axes.second);

  auto n_it = fixed.find("n");
  if (n_it == fixed.end()) throw std::invalid_argument("policy map needs a fixed n");
  const int n = n_it->second;
  if (n < 1 || n > inst.horizon) throw std::out_of_range("fixed n outside 1..N");

  Eigen::VectorXi m = Eigen::VectorXi::Zero(slots);
  for (const auto& [name, value] : fixed) {
    if (name == "n") continue;
    const int j = coord_index(name);
    if (value < 0 || value > inst.capacity(j))
      throw std::out_of_range("fixed coordinate outside lattice: " + name);
    m(j) = value;
  }
  for (int j = 0; j < slots; ++j) {
    if (j == axis1 || j == axis2) continue;
    if (fixed.find("m" + std::to_string(j + 1)) == fixed.end())
      throw std::invalid_argument("coordinate m" + std::to_string(j + 1) +
                                  " neither fixed nor an axis");
  }

  const ValueTable table = variant == Variant::kNonSequential
                               ? solve_nonseq(inst)
                               : solve_seq(inst, SeqMode::kPermutation);

  PolicyMap map;
  map.axis1 = axes.first;
  map.axis2 = axes.second;
  for (int a = 0; a <= inst.capacity(axis1); ++a) {
    for (int b = 0; b <= inst.capacity(axis2); ++b) {
      m(axis1) = a;
      m(axis2) = b;
      PolicyMapCell cell;
      cell.a = a;
      cell.b = b;
      if (variant == Variant::kNonSequential) {
        const NonseqActionChoice choice = optimal_nonseq_action(inst, table, m, n);
        cell.action = offer_label(choice.action);
        cell.unique = choice.optimal_count == 1;
      } else {
        const OfferSequence seq = optimal_sequence_from_values(table, m, n);
        cell.action = sequence_label(seq);
        // Unique up to ties in the ordering keys.
        const long idx = table.lattice.index(m);
        std::vector<double> keys;
        for (int j = 0; j < slots; ++j)
          if (m(j) > 0) keys.push_back(table.value(table.lattice.down(idx, j), n - 1));
        std::sort(keys.begin(), keys.end());
        cell.unique = true;
        for (size_t k = 1; k < keys.size(); ++k)
          if (keys[k] - keys[k - 1] <= 1e-9) cell.unique = false;
      }
      map.cells.push_back(std::move(cell));
    }
  }
  return map;
}

PolicySpec make_policy(const std::string& name, const Instance& inst) {
  if (name == "offering-all") return offering_all_policy();
  if (name == "pi1") return pi1_policy();
  if (name == "nested-seq") return nested_sequential_policy();
  if (name == "drain") return drain_policy();
  if (name == "random-seq") return random_sequential_policy();
  if (name == "static-randomized")
    return static_randomized_policy(extract_pstar(solve_fluid(build_fluid(inst, 1))));
  if (name == "optimal-nonseq") {
    SolveOptions opt;
    opt.record_actions = true;
    return optimal_nonseq_policy(std::make_shared<ValueTable>(solve_nonseq(inst, opt)));
  }
  if (name == "optimal-seq")
    return optimal_seq_policy(
        std::make_shared<ValueTable>(solve_seq(inst, SeqMode::kPermutation)));
  if (name == "fullinfo")
    return fullinfo_policy(std::make_shared<ValueTable>(solve_fullinfo(inst)));
  throw std::invalid_argument("unknown policy name: " + name);
}

}  // namespace offerplan
