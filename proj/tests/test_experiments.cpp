#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "offerplan/experiments.hpp"
#include "offerplan/io.hpp"
#include "test_support.hpp"

using namespace offerplan;
using namespace offerplan::testing;

TEST_CASE("scenario grid counts match the benchmark tables") {
  CHECK(enumerate_scenarios(20, 3).capacities.size() == 45);
  CHECK(enumerate_scenarios(30, 3).capacities.size() == 91);
  CHECK(enumerate_scenarios(40, 3).capacities.size() == 153);
  CHECK(enumerate_scenarios(50, 3).capacities.size() == 231);
  CHECK(enumerate_scenarios(20, 2).capacities.size() == 13);
  CHECK(enumerate_scenarios(30, 2).capacities.size() == 19);
  CHECK(enumerate_scenarios(40, 2).capacities.size() == 25);
  CHECK(enumerate_scenarios(50, 2).capacities.size() == 31);
}

TEST_CASE("scenario grids are exhaustive, duplicate-free and ordered") {
  const ScenarioGrid grid = enumerate_scenarios(20, 3);
  std::set<std::vector<int>> seen;
  for (const auto& b : grid.capacities) {
    CHECK(b.sum() == 20);
    CHECK(b.minCoeff() >= 4);
    seen.insert({b(0), b(1), b(2)});
  }
  CHECK(seen.size() == grid.capacities.size());
  CHECK(grid.capacities.front()(0) == 4);

  CHECK_THROWS(enumerate_scenarios(2, 3));  // floor infeasible
}

TEST_CASE("lambda schemes") {
  CHECK(lambda_scheme(LambdaScheme::kUniform, 4) == vec({0.25, 0.25, 0.25, 0.25}));
  const Eigen::VectorXd tilt2 = lambda_scheme(LambdaScheme::kTilt2, 2);
  CHECK(tilt2(0) == doctest::Approx(1.0 / 3));
  CHECK(tilt2(1) == doctest::Approx(2.0 / 3));
  const Eigen::VectorXd tilt4 = lambda_scheme(LambdaScheme::kTilt4, 2);
  CHECK(tilt4(0) == doctest::Approx(0.2));
  CHECK(tilt4(1) == doctest::Approx(0.8));
  for (int types : {1, 2, 3, 5, 8}) {
    CHECK(lambda_scheme(LambdaScheme::kUniform, types).sum() == doctest::Approx(1.0));
    CHECK(lambda_scheme(LambdaScheme::kTilt2, types).sum() == doctest::Approx(1.0));
    CHECK(lambda_scheme(LambdaScheme::kTilt4, types).sum() == doctest::Approx(1.0));
  }
}

TEST_CASE("random instance generation") {
  const auto a = generate_random_instances(3, 10, 25, LambdaScheme::kTilt2, 7);
  const auto b = generate_random_instances(3, 10, 25, LambdaScheme::kTilt2, 7);
  REQUIRE(a.size() == 25);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(validate(a[i]).empty());
    CHECK(a[i].omega == b[i].omega);  // deterministic under the seed
  }
  const auto c = generate_random_instances(3, 10, 25, LambdaScheme::kTilt2, 8);
  bool any_different = false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].omega.rows() != c[i].omega.rows() || a[i].omega != c[i].omega)
      any_different = true;
  CHECK(any_different);
}

TEST_CASE("comparing a policy against itself gives zero gaps") {
  std::vector<double> values;
  const ScenarioGrid grid = enumerate_scenarios(10, 2);
  Instance base = make_instance(CanonicalModel::kN, {0.5, 0.5}, 10, {5, 5});
  for (const auto& b : grid.capacities)
    values.push_back(evaluate_policy(base.with_capacity(b), offering_all_policy()).value.sum());
  // identical candidate and baseline
  const GapStats stats = gap_statistics(values, values);
  CHECK(stats.max == 0.0);
  CHECK(stats.average == 0.0);
  CHECK(stats.median == 0.0);
}

TEST_CASE("policy map on the M+1 instance shows a unique {1,2} region") {
  Instance inst;
  inst.omega = canonical(CanonicalModel::kMPlus1);
  inst.lambda = vec({0.475, 0.475, 0.05});
  inst.horizon = 6;
  inst.capacity = veci({4, 8, 8});
  const PolicyMap map = emit_policy_map(inst, Variant::kNonSequential,
                                        {{"m1", 4}, {"n", 5}}, {"m2", "m3"});
  bool found_unique_12 = false;
  bool boundary_clean = true;
  for (const auto& cell : map.cells) {
    if (cell.action == "12" && cell.unique && cell.a > 0 && cell.b > 0) found_unique_12 = true;
    if (cell.a == 0 && cell.action.find('2') != std::string::npos) boundary_clean = false;
  }
  CHECK(found_unique_12);
  CHECK(boundary_clean);  // row m2 = 0 never offers type 2
}

TEST_CASE("policy map rejects bad coordinates") {
  Instance inst = make_instance(CanonicalModel::kM, {0.5, 0.5}, 4, {2, 2, 2});
  CHECK_THROWS(emit_policy_map(inst, Variant::kNonSequential, {{"m1", 9}, {"n", 2}},
                               {"m2", "m3"}));
  CHECK_THROWS(emit_policy_map(inst, Variant::kNonSequential, {{"m1", 1}}, {"m2", "m3"}));
  CHECK_THROWS(emit_policy_map(inst, Variant::kNonSequential, {{"m1", 1}, {"n", 2}},
                               {"m2", "m9"}));
}

TEST_CASE("make_policy covers every CLI name") {
  const Instance inst = make_instance(CanonicalModel::kM, {0.5, 0.5}, 4, {2, 2, 2});
  for (const std::string name :
       {"offering-all", "pi1", "nested-seq", "drain", "random-seq", "static-randomized",
        "optimal-nonseq", "optimal-seq", "fullinfo"}) {
    const PolicySpec policy = make_policy(name, inst);
    CHECK(policy.name == name);
  }
  CHECK_THROWS(make_policy("nope", inst));
}

TEST_CASE("instance json round trip") {
  const Instance inst = make_instance(CanonicalModel::kM, {0.5, 0.25}, 12, {4, 5, 3});
  const Instance back = instance_from_json(instance_to_json(inst));
  CHECK(back.omega == inst.omega);
  CHECK(back.capacity == inst.capacity);
  CHECK(back.horizon == inst.horizon);
  CHECK((back.lambda - inst.lambda).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS(instance_from_json(nlohmann::json{{"omega", {{1, 0}, {1}}},
                                                 {"lambda", {0.5}},
                                                 {"horizon", 2},
                                                 {"capacity", {1, 1}}}));
}

TEST_CASE("table serialization shapes") {
  TableResult table;
  table.name = "demo";
  table.comparison = "a vs b";
  table.cells.push_back({"(1/2,1/2)", 20, 45, {-4.4, -3.6, -3.6, 45}});
  const std::string csv = tables_to_csv({table});
  CHECK(csv.find("demo") != std::string::npos);
  CHECK(csv.find("average") != std::string::npos);
  const std::string md = tables_to_markdown({table});
  CHECK(md.find("| 20 | 45 |") != std::string::npos);
  const nlohmann::json j = tables_to_json({table});
  CHECK(j.at(0).at("cells").at(0).at("max").get<double>() == doctest::Approx(-4.4));
}
