#pragma once

#include <string>

#include <json.hpp>

#include "offerplan/dp.hpp"
#include "offerplan/experiments.hpp"
#include "offerplan/fluid.hpp"
#include "offerplan/model.hpp"
#include "offerplan/sim.hpp"

namespace offerplan {

// Instance document:
//   {"omega": [[0|1,...],...], "lambda": [...], "horizon": int,
//    "capacity": [...]}
// lambda0 is implied. Shared by every CLI subcommand.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const Instance& inst);
Instance load_instance(const std::string& path);

nlohmann::json value_table_to_json(const ValueTable& table);
nlohmann::json fluid_to_json(const FluidLP& lp, const FluidSolution& solution,
                             const Eigen::VectorXd& pstar);
nlohmann::json sim_report_to_json(const SimReport& report);
nlohmann::json multiday_report_to_json(const MultiDayReport& report);
nlohmann::json tables_to_json(const std::vector<TableResult>& tables);

std::string tables_to_csv(const std::vector<TableResult>& tables);
std::string tables_to_markdown(const std::vector<TableResult>& tables);
std::string policy_map_to_csv(const PolicyMap& map);
std::string sim_report_to_csv(const SimReport& report);
std::string multiday_report_to_csv(const MultiDayReport& report);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace offerplan
