#pragma once

#include <Eigen/Dense>

#include "offerplan/experiments.hpp"
#include "offerplan/model.hpp"
#include "offerplan/rng.hpp"

namespace offerplan::testing {

inline Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<long>(values.size()));
  int i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

inline Eigen::VectorXi veci(std::initializer_list<int> values) {
  Eigen::VectorXi v(static_cast<long>(values.size()));
  int i = 0;
  for (int x : values) v(i++) = x;
  return v;
}

inline Instance make_instance(CanonicalModel model, std::initializer_list<double> lambda,
                              int horizon, std::initializer_list<int> capacity) {
  Instance inst;
  inst.omega = canonical(model);
  inst.lambda = vec(lambda);
  inst.horizon = horizon;
  inst.capacity = veci(capacity);
  return inst;
}

// Random well-formed instance: distinct non-zero preference rows, arrival
// probabilities with a possibly positive no-arrival mass, small capacities.
inline Instance random_instance(Rng& rng, int max_slots = 3, int max_capacity = 4,
                                int max_horizon = 8) {
  const int slots = 2 + rng.uniform_int(max_slots - 1);
  Instance inst;
  while (true) {
    const int universe = (1 << slots) - 1;
    std::uint64_t selection = 0;
    while (selection == 0)
      selection = rng.next_u64() & ((std::uint64_t{1} << universe) - 1);
    std::vector<int> rows;
    for (int r = 0; r < universe; ++r)
      if (selection & (std::uint64_t{1} << r)) rows.push_back(r + 1);
    inst.omega = Eigen::MatrixXi::Zero(static_cast<int>(rows.size()), slots);
    for (size_t i = 0; i < rows.size(); ++i)
      for (int j = 0; j < slots; ++j)
        if (rows[i] & (1 << j)) inst.omega(static_cast<int>(i), j) = 1;
    break;
  }
  const int types = inst.customer_types();
  inst.lambda.resize(types);
  double total = 0.0;
  for (int i = 0; i < types; ++i) {
    inst.lambda(i) = 0.05 + rng.uniform01();
    total += inst.lambda(i);
  }
  const double arrival_mass = 0.7 + 0.3 * rng.uniform01();  // lambda0 in [0, 0.3]
  inst.lambda *= arrival_mass / total;
  inst.horizon = 1 + rng.uniform_int(max_horizon);
  inst.capacity.resize(slots);
  bool any = false;
  for (int j = 0; j < slots; ++j) {
    inst.capacity(j) = rng.uniform_int(max_capacity + 1);
    any = any || inst.capacity(j) > 0;
  }
  if (!any) inst.capacity(rng.uniform_int(slots)) = 1 + rng.uniform_int(max_capacity);
  return inst;
}

// Random probability vector over the 2^J offer sets.
inline Eigen::VectorXd random_action_probs(Rng& rng, int slots) {
  Eigen::VectorXd p(1 << slots);
  double total = 0.0;
  for (int k = 0; k < p.size(); ++k) {
    p(k) = rng.uniform01();
    total += p(k);
  }
  return p / total;
}

}  // namespace offerplan::testing
