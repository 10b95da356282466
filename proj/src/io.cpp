#include "offerplan/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace offerplan {

using nlohmann::json;

Instance instance_from_json(const json& j) {
  Instance inst;
  const auto& omega = j.at("omega");
  const int types = static_cast<int>(omega.size());
  if (types == 0) throw std::invalid_argument("omega must have at least one row");
  const int slots = static_cast<int>(omega.at(0).size());
  inst.omega.resize(types, slots);
  for (int i = 0; i < types; ++i) {
    if (static_cast<int>(omega.at(i).size()) != slots)
      throw std::invalid_argument("omega rows must have equal length");
    for (int col = 0; col < slots; ++col) inst.omega(i, col) = omega.at(i).at(col).get<int>();
  }
  const auto& lambda = j.at("lambda");
  inst.lambda.resize(static_cast<long>(lambda.size()));
  for (size_t i = 0; i < lambda.size(); ++i)
    inst.lambda(static_cast<long>(i)) = lambda.at(i).get<double>();
  inst.horizon = j.at("horizon").get<int>();
  const auto& capacity = j.at("capacity");
  inst.capacity.resize(static_cast<long>(capacity.size()));
  for (size_t i = 0; i < capacity.size(); ++i)
    inst.capacity(static_cast<long>(i)) = capacity.at(i).get<int>();
  return inst;
}

json instance_to_json(const Instance& inst) {
  json omega = json::array();
  for (int i = 0; i < inst.customer_types(); ++i) {
    json row = json::array();
    for (int j = 0; j < inst.slot_types(); ++j) row.push_back(inst.omega(i, j));
    omega.push_back(std::move(row));
  }
  json lambda = json::array();
  for (int i = 0; i < inst.lambda.size(); ++i) lambda.push_back(inst.lambda(i));
  json capacity = json::array();
  for (int j = 0; j < inst.capacity.size(); ++j) capacity.push_back(inst.capacity(j));
  return json{{"omega", omega},
              {"lambda", lambda},
              {"horizon", inst.horizon},
              {"capacity", capacity}};
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  json j;
  in >> j;
  Instance inst = instance_from_json(j);
  validate_or_throw(inst);
  return inst;
}

json value_table_to_json(const ValueTable& table) {
  json out;
  switch (table.variant) {
    case Variant::kNonSequential: out["variant"] = "nonseq"; break;
    case Variant::kSequential: out["variant"] = "seq"; break;
    case Variant::kFullInformation: out["variant"] = "fullinfo"; break;
  }
  json radices = json::array();
  for (int j = 0; j < table.lattice.dims(); ++j)
    radices.push_back(table.lattice.capacity()(j) + 1);
  out["radices"] = radices;
  out["horizon"] = table.horizon();
  json values = json::array();
  for (int n = 0; n <= table.horizon(); ++n) {
    json row = json::array();
    for (long idx = 0; idx < table.lattice.size(); ++idx) row.push_back(table.value(idx, n));
    values.push_back(std::move(row));
  }
  out["values"] = values;
  if (table.has_actions()) {
    json actions = json::array();
    const long size = table.lattice.size();
    for (int n = 1; n <= table.horizon(); ++n) {
      json row = json::array();
      for (long idx = 0; idx < size; ++idx)
        row.push_back(table.actions[static_cast<size_t>(n - 1) * size + idx]);
      actions.push_back(std::move(row));
    }
    out["actions"] = actions;
  }
  return out;
}

json fluid_to_json(const FluidLP& lp, const FluidSolution& solution,
                   const Eigen::VectorXd& pstar) {
  json p = json::object();
  for (int k = 0; k < pstar.size(); ++k)
    if (pstar(k) > 0.0) p[std::to_string(k)] = pstar(k);
  return json{{"Z", solution.objective},
              {"periods", lp.periods},
              {"scale", lp.scale},
              {"status", solution.status == FluidSolution::Status::kOptimal ? "optimal"
                                                                            : "numerical-failure"},
              {"p_star", p},
              {"residuals",
               {{"max_constraint", solution.max_constraint_residual},
                {"objective_recompute", solution.objective_recompute_error}}},
              {"iterations", solution.iterations}};
}

json sim_report_to_json(const SimReport& report) {
  return json{{"mean_fill", report.mean_fill},
              {"std_error", report.std_error},
              {"fill_rate", report.fill_rate},
              {"replications", report.per_replication.size()},
              {"per_replication", report.per_replication}};
}

json multiday_report_to_json(const MultiDayReport& report) {
  return json{{"mean_daily_fill", report.mean_fill},
              {"std_error", report.std_error},
              {"fill_rate", report.fill_rate},
              {"days", report.per_day.size()},
              {"per_day", report.per_day}};
}

json tables_to_json(const std::vector<TableResult>& tables) {
  json out = json::array();
  for (const auto& table : tables) {
    json cells = json::array();
    for (const auto& cell : table.cells)
      cells.push_back(json{{"lambda", cell.lambda_label},
                           {"horizon", cell.horizon},
                           {"scenarios", cell.scenarios},
                           {"max", cell.stats.max},
                           {"average", cell.stats.average},
                           {"median", cell.stats.median}});
    out.push_back(json{{"name", table.name}, {"comparison", table.comparison},
                       {"cells", cells}});
  }
  return out;
}

std::string tables_to_csv(const std::vector<TableResult>& tables) {
  std::ostringstream out;
  out << "table,comparison,lambda,horizon,scenarios,statistic,value\n";
  for (const auto& table : tables) {
    for (const auto& cell : table.cells) {
      const auto row = [&](const char* stat, double value) {
        out << table.name << ",\"" << table.comparison << "\",\"" << cell.lambda_label << "\","
            << cell.horizon << "," << cell.scenarios << "," << stat << "," << value << "\n";
      };
      row("max", cell.stats.max);
      row("average", cell.stats.average);
      row("median", cell.stats.median);
    }
  }
  return out.str();
}

std::string tables_to_markdown(const std::vector<TableResult>& tables) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(1);
  for (const auto& table : tables) {
    // One block per lambda vector, paper-style columns.
    std::vector<std::string> lambdas;
    std::vector<int> horizons;
    for (const auto& cell : table.cells) {
      if (std::find(lambdas.begin(), lambdas.end(), cell.lambda_label) == lambdas.end())
        lambdas.push_back(cell.lambda_label);
      if (std::find(horizons.begin(), horizons.end(), cell.horizon) == horizons.end())
        horizons.push_back(cell.horizon);
    }
    out << "### " << table.name << " — " << table.comparison << "\n\n";
    out << "| N | scenarios |";
    for (const auto& l : lambdas) out << " " << l << " max | avg | med |";
    out << "\n|---|---|";
    for (size_t i = 0; i < lambdas.size(); ++i) out << "---|---|---|";
    out << "\n";
    for (int horizon : horizons) {
      int scenarios = 0;
      std::ostringstream line;
      line.setf(std::ios::fixed);
      line.precision(1);
      for (const auto& l : lambdas) {
        for (const auto& cell : table.cells) {
          if (cell.horizon != horizon || cell.lambda_label != l) continue;
          scenarios = cell.scenarios;
          line << " " << cell.stats.max << "% | " << cell.stats.average << "% | "
               << cell.stats.median << "% |";
        }
      }
      out << "| " << horizon << " | " << scenarios << " |" << line.str() << "\n";
    }
    out << "\n";
  }
  return out.str();
}

std::string policy_map_to_csv(const PolicyMap& map) {
  std::ostringstream out;
  out << map.axis1 << "," << map.axis2 << ",action,unique\n";
  for (const auto& cell : map.cells)
    out << cell.a << "," << cell.b << "," << cell.action << "," << (cell.unique ? 1 : 0)
        << "\n";
  return out.str();
}

std::string sim_report_to_csv(const SimReport& report) {
  std::ostringstream out;
  out << "replication,fill\n";
  for (size_t i = 0; i < report.per_replication.size(); ++i)
    out << i << "," << report.per_replication[i] << "\n";
  return out.str();
}

std::string multiday_report_to_csv(const MultiDayReport& report) {
  std::ostringstream out;
  out << "day,fill\n";
  for (size_t i = 0; i < report.per_day.size(); ++i)
    out << i << "," << report.per_day[i] << "\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace offerplan
