#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "offerplan/experiments.hpp"
#include "offerplan/fluid.hpp"
#include "offerplan/io.hpp"

using namespace offerplan;
using nlohmann::json;

namespace {

void emit(const json& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload.dump(2) << "\n";
  } else {
    write_text_file(out_path, payload.dump(2) + "\n");
  }
}

std::map<std::string, int> parse_fixed(const std::string& text) {
  std::map<std::string, int> fixed;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    const auto eq = token.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected name=value in --fix, got: " + token);
    fixed[token.substr(0, eq)] = std::stoi(token.substr(eq + 1));
  }
  return fixed;
}

std::pair<std::string, std::string> parse_axes(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected two comma-separated axes, got: " + text);
  return {text.substr(0, comma), text.substr(comma + 1)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slot-offering policies for single-day appointment booking"};
  app.require_subcommand(1);

  // solve
  std::string solve_instance, solve_model = "nonseq", solve_out;
  bool solve_exhaustive = false, solve_actions = false;
  auto* solve_cmd = app.add_subcommand("solve", "Backward-induction value table");
  solve_cmd->add_option("--instance", solve_instance, "instance JSON file")->required();
  solve_cmd->add_option("--model", solve_model, "nonseq|seq|fullinfo");
  solve_cmd->add_flag("--exhaustive", solve_exhaustive,
                      "enumerate ordered partitions in the sequential model");
  solve_cmd->add_flag("--actions", solve_actions, "record optimal offer sets (nonseq)");
  solve_cmd->add_option("--out", solve_out, "output JSON path");

  // fluid
  std::string fluid_instance, fluid_out;
  int fluid_scale = 1;
  auto* fluid_cmd = app.add_subcommand("fluid", "Fluid LP bound and static randomized policy");
  fluid_cmd->add_option("--instance", fluid_instance)->required();
  fluid_cmd->add_option("--scale", fluid_scale, "demand/capacity scaling K");
  fluid_cmd->add_option("--out", fluid_out);

  // simulate
  std::string sim_instance, sim_policy = "offering-all", sim_out, sim_csv;
  long sim_days = 1000;
  std::uint64_t sim_seed = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Single-day Monte Carlo replications");
  sim_cmd->add_option("--instance", sim_instance)->required();
  sim_cmd->add_option("--policy", sim_policy,
                      "offering-all|pi1|nested-seq|drain|random-seq|static-randomized|"
                      "optimal-nonseq|optimal-seq|fullinfo");
  sim_cmd->add_option("--days", sim_days);
  sim_cmd->add_option("--seed", sim_seed);
  sim_cmd->add_option("--out", sim_out);
  sim_cmd->add_option("--csv", sim_csv);

  // policy-map
  std::string map_instance, map_model = "nonseq", map_fix, map_axes, map_out;
  auto* map_cmd = app.add_subcommand("policy-map", "Optimal-action grid for plotting");
  map_cmd->add_option("--instance", map_instance)->required();
  map_cmd->add_option("--model", map_model, "nonseq|seq");
  map_cmd->add_option("--fix", map_fix, "fixed coordinates, e.g. m1=4,n=5")->required();
  map_cmd->add_option("--axes", map_axes, "two swept coordinates, e.g. m2,m3")->required();
  map_cmd->add_option("--out", map_out, "CSV output path (stdout otherwise)");

  // table
  std::string table_name, table_mode = "exact", table_out, table_csv;
  bool table_markdown = false;
  long table_days = 1000;
  std::uint64_t table_seed = 2024;
  auto* table_cmd = app.add_subcommand("table", "Benchmark table reproduction");
  table_cmd
      ->add_option("--name", table_name,
                   "m-gap|mplus1-gap|random-gap|drain-n|drain-m|drain-w|seq-vs-nonseq-n|"
                   "seq-vs-nonseq-m|seq-vs-nonseq-w|drain-compare|pstar-gap")
      ->required();
  table_cmd->add_option("--mode", table_mode, "exact|sim");
  table_cmd->add_option("--days", table_days, "simulated days per scenario in sim mode");
  table_cmd->add_option("--seed", table_seed);
  table_cmd->add_option("--out", table_out, "JSON output path");
  table_cmd->add_option("--csv", table_csv, "CSV output path");
  table_cmd->add_flag("--markdown", table_markdown, "print a paper-style table");

  // multiday
  std::string md_template, md_policy = "offering-all", md_demand = "det", md_out, md_csv;
  int md_days_ahead = 1, md_window = 15, md_daily = 30, md_total = 1200, md_warmup = 200;
  std::uint64_t md_seed = 0;
  auto* md_cmd = app.add_subcommand("multiday", "Rolling-horizon multi-day simulation");
  md_cmd->add_option("--template", md_template, "per-day instance JSON (horizon unused)")
      ->required();
  md_cmd->add_option("--policy", md_policy, "offering-all|pi1|nested-seq");
  md_cmd->add_option("--demand", md_demand, "det|poisson");
  md_cmd->add_option("--D", md_days_ahead, "acceptable days per customer");
  md_cmd->add_option("--window", md_window, "days bookable ahead (T)");
  md_cmd->add_option("--daily-demand", md_daily, "customers per day (N)");
  md_cmd->add_option("--days", md_total, "total simulated days");
  md_cmd->add_option("--warmup", md_warmup, "warm-up days dropped from the report");
  md_cmd->add_option("--seed", md_seed);
  md_cmd->add_option("--out", md_out);
  md_cmd->add_option("--csv", md_csv);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) {
      const Instance inst = load_instance(solve_instance);
      SolveOptions opt;
      opt.record_actions = solve_actions;
      ValueTable table;
      if (solve_model == "nonseq") {
        table = solve_nonseq(inst, opt);
      } else if (solve_model == "seq") {
        table = solve_seq(inst, solve_exhaustive ? SeqMode::kExhaustive : SeqMode::kPermutation,
                          opt);
      } else if (solve_model == "fullinfo") {
        table = solve_fullinfo(inst, opt);
      } else {
        throw std::invalid_argument("unknown model: " + solve_model);
      }
      json payload = value_table_to_json(table);
      payload["value_at_b"] = table.at(inst.horizon, inst.capacity);
      emit(payload, solve_out);
    } else if (fluid_cmd->parsed()) {
      const Instance inst = load_instance(fluid_instance);
      const FluidLP lp = build_fluid(inst, fluid_scale);
      const FluidSolution solution = solve_fluid(lp);
      emit(fluid_to_json(lp, solution, extract_pstar(solution)), fluid_out);
    } else if (sim_cmd->parsed()) {
      const Instance inst = load_instance(sim_instance);
      const PolicySpec policy = make_policy(sim_policy, inst);
      const SimReport report = simulate_single_day(inst, policy, {sim_days, sim_seed});
      json payload = sim_report_to_json(report);
      payload["policy"] = sim_policy;
      payload["seed"] = sim_seed;
      if (!sim_csv.empty()) write_text_file(sim_csv, sim_report_to_csv(report));
      emit(payload, sim_out);
    } else if (map_cmd->parsed()) {
      const Instance inst = load_instance(map_instance);
      const Variant variant =
          map_model == "seq" ? Variant::kSequential : Variant::kNonSequential;
      const PolicyMap map =
          emit_policy_map(inst, variant, parse_fixed(map_fix), parse_axes(map_axes));
      const std::string csv = policy_map_to_csv(map);
      if (map_out.empty()) {
        std::cout << csv;
      } else {
        write_text_file(map_out, csv);
      }
    } else if (table_cmd->parsed()) {
      const EvalMode mode = table_mode == "sim" ? EvalMode::kSimulation : EvalMode::kExactDp;
      const auto tables = run_table(table_name, mode, table_days, table_seed);
      if (!table_csv.empty()) write_text_file(table_csv, tables_to_csv(tables));
      if (table_markdown) {
        std::cout << tables_to_markdown(tables);
        if (!table_out.empty()) write_text_file(table_out, tables_to_json(tables).dump(2) + "\n");
      } else {
        emit(tables_to_json(tables), table_out);
      }
    } else if (md_cmd->parsed()) {
      MultiDayConfig config;
      config.day_template = load_instance(md_template);
      config.window = md_window;
      config.daily_demand = md_daily;
      config.demand = md_demand == "poisson" ? DemandMode::kPoisson : DemandMode::kDeterministic;
      config.acceptable_days = md_days_ahead;
      config.total_days = md_total;
      config.warmup_days = md_warmup;
      config.seed = md_seed;
      const PolicySpec policy = make_policy(md_policy, config.day_template);
      const MultiDayReport report = simulate_multiday(config, policy);
      json payload = multiday_report_to_json(report);
      payload["policy"] = md_policy;
      payload["D"] = md_days_ahead;
      payload["demand"] = md_demand;
      payload["seed"] = md_seed;
      if (!md_csv.empty()) write_text_file(md_csv, multiday_report_to_csv(report));
      emit(payload, md_out);
    }
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
