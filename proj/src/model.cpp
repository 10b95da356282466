#include "offerplan/model.hpp"

#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

namespace offerplan {

namespace {
constexpr double kProbabilityTol = 1e-12;
}

Instance Instance::with_horizon(int n) const {
  Instance out = *this;
  out.horizon = n;
  return out;
}

Instance Instance::with_capacity(Eigen::VectorXi b) const {
  Instance out = *this;
  out.capacity = std::move(b);
  return out;
}

Eigen::MatrixXi canonical(CanonicalModel which) {
  Eigen::MatrixXi omega;
  switch (which) {
    case CanonicalModel::kN:
      omega.resize(2, 2);
      omega << 1, 1,  //
          0, 1;
      break;
    case CanonicalModel::kW:
      omega.resize(3, 2);
      omega << 1, 0,  //
          1, 1,       //
          0, 1;
      break;
    case CanonicalModel::kM:
      omega.resize(2, 3);
      omega << 1, 1, 0,  //
          0, 1, 1;
      break;
    case CanonicalModel::kMPlus1:
      omega.resize(3, 3);
      omega << 1, 1, 0,  //
          0, 1, 1,       //
          0, 1, 0;
      break;
  }
  return omega;
}

CanonicalModel canonical_from_name(const std::string& name) {
  if (name == "N" || name == "n") return CanonicalModel::kN;
  if (name == "W" || name == "w") return CanonicalModel::kW;
  if (name == "M" || name == "m") return CanonicalModel::kM;
  if (name == "M_PLUS_1" || name == "m+1" || name == "M+1" || name == "mplus1")
    return CanonicalModel::kMPlus1;
  throw std::invalid_argument("unknown canonical model name: " + name);
}

std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> errors;
  const int types = inst.customer_types();
  const int slots = inst.slot_types();

  if (types == 0 || slots == 0) {
    errors.push_back("choice matrix is empty");
    return errors;
  }
  if (slots > kMaxSlotTypes) errors.push_back("more than 16 slot types");

  bool entries_ok = true;
  for (int i = 0; i < types && entries_ok; ++i)
    for (int j = 0; j < slots; ++j)
      if (inst.omega(i, j) != 0 && inst.omega(i, j) != 1) {
        errors.push_back("choice matrix entries must be 0 or 1");
        entries_ok = false;
        break;
      }

  if (entries_ok) {
    std::set<OfferMask> seen;
    for (int i = 0; i < types; ++i) {
      const OfferMask row = accept_mask(inst, i);
      if (row == 0) {
        errors.push_back("customer type accepts no slot type");
        break;
      }
      if (!seen.insert(row).second) {
        errors.push_back("duplicate customer type");
        break;
      }
    }
  }

  if (inst.lambda.size() != types) {
    errors.push_back("lambda size does not match customer types");
  } else {
    for (int i = 0; i < types; ++i)
      if (inst.lambda(i) <= 0.0) {
        errors.push_back("arrival probability out of range");
        break;
      }
    if (inst.lambda.sum() > 1.0 + kProbabilityTol)
      errors.push_back("arrival probabilities exceed 1");
  }

  if (inst.horizon < 1) errors.push_back("horizon must be at least 1");

  if (inst.capacity.size() != slots) {
    errors.push_back("capacity size does not match slot types");
  } else {
    bool any_positive = false;
    for (int j = 0; j < slots; ++j) {
      if (inst.capacity(j) < 0) {
        errors.push_back("negative capacity");
        break;
      }
      any_positive = any_positive || inst.capacity(j) > 0;
    }
    if (!any_positive) errors.push_back("no slot type has positive capacity");
  }

  return errors;
}

void validate_or_throw(const Instance& inst) {
  const auto errors = validate(inst);
  if (errors.empty()) return;
  std::string message = "invalid instance:";
  for (const auto& e : errors) message += " " + e + ";";
  throw std::invalid_argument(message);
}

OfferMask accept_mask(const Instance& inst, int customer) {
  OfferMask mask = 0;
  for (int j = 0; j < inst.slot_types(); ++j)
    if (inst.omega(customer, j) != 0) mask |= OfferMask{1} << j;
  return mask;
}

std::vector<OfferMask> accept_masks(const Instance& inst) {
  std::vector<OfferMask> masks(inst.customer_types());
  for (int i = 0; i < inst.customer_types(); ++i) masks[i] = accept_mask(inst, i);
  return masks;
}

OfferMask available_mask(const Eigen::VectorXi& m) {
  OfferMask mask = 0;
  for (int j = 0; j < m.size(); ++j)
    if (m(j) > 0) mask |= OfferMask{1} << j;
  return mask;
}

Eigen::VectorXd conditional_choice(const Instance& inst, int customer, OfferMask offer) {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(inst.slot_types());
  const OfferMask acceptable = accept_mask(inst, customer) & offer;
  const int count = std::popcount(acceptable);
  if (count == 0) return q;
  const double share = 1.0 / count;
  for (int j = 0; j < inst.slot_types(); ++j)
    if (acceptable & (OfferMask{1} << j)) q(j) = share;
  return q;
}

OutcomeDistribution outcome_distribution(const Instance& inst, OfferMask offer) {
  OutcomeDistribution out;
  out.q = Eigen::VectorXd::Zero(inst.slot_types());
  for (int i = 0; i < inst.customer_types(); ++i) {
    const OfferMask acceptable = accept_mask(inst, i) & offer;
    const int count = std::popcount(acceptable);
    if (count == 0) continue;
    const double share = inst.lambda(i) / count;
    for (int j = 0; j < inst.slot_types(); ++j)
      if (acceptable & (OfferMask{1} << j)) out.q(j) += share;
  }
  out.q0 = 1.0 - out.q.sum();
  return out;
}

OutcomeDistribution sequence_outcome_distribution(const Instance& inst,
                                                  const OfferSequence& seq) {
  OutcomeDistribution out;
  out.q = Eigen::VectorXd::Zero(inst.slot_types());
  for (int i = 0; i < inst.customer_types(); ++i) {
    const OfferMask accepts = accept_mask(inst, i);
    for (const OfferMask set : seq) {
      const OfferMask acceptable = accepts & set;
      if (acceptable == 0) continue;
      const double share = inst.lambda(i) / std::popcount(acceptable);
      for (int j = 0; j < inst.slot_types(); ++j)
        if (acceptable & (OfferMask{1} << j)) out.q(j) += share;
      break;
    }
  }
  out.q0 = 1.0 - out.q.sum();
  return out;
}

NestedCheck is_nested(const Eigen::MatrixXi& omega) {
  const int slots = static_cast<int>(omega.cols());
  const int types = static_cast<int>(omega.rows());
  std::vector<OfferMask> accepting(slots, 0);  // customers accepting slot j
  for (int j = 0; j < slots; ++j)
    for (int i = 0; i < types; ++i)
      if (omega(i, j) != 0) accepting[j] |= OfferMask{1} << i;

  NestedCheck result;
  for (int j1 = 0; j1 < slots; ++j1) {
    for (int j2 = j1 + 1; j2 < slots; ++j2) {
      const OfferMask a = accepting[j1];
      const OfferMask b = accepting[j2];
      const bool disjoint = (a & b) == 0;
      const bool a_in_b = (a & ~b) == 0;
      const bool b_in_a = (b & ~a) == 0;
      if (!disjoint && !a_in_b && !b_in_a) {
        result.nested = false;
        result.witness_j1 = j1;
        result.witness_j2 = j2;
        return result;
      }
    }
  }
  return result;
}

void validate_sequence(const OfferSequence& seq, OfferMask available) {
  if (seq.empty()) throw std::invalid_argument("offer sequence is empty");
  OfferMask used = 0;
  for (const OfferMask set : seq) {
    if (set == 0) throw std::invalid_argument("offer sequence contains an empty set");
    if (set & used) throw std::invalid_argument("offer sequence sets are not disjoint");
    if (set & ~available)
      throw std::invalid_argument("offer sequence offers a depleted slot type");
    used |= set;
  }
}

namespace {

void append_indices(std::string& out, OfferMask mask, bool wide) {
  bool first = true;
  for (int j = 0; j < kMaxSlotTypes; ++j) {
    if (!(mask & (OfferMask{1} << j))) continue;
    if (wide && !first) out += ',';
    out += std::to_string(j + 1);
    first = false;
  }
}

}  // namespace

std::string offer_label(OfferMask offer) {
  if (offer == 0) return "0";
  const bool wide = (offer >> 9) != 0;
  std::string out;
  append_indices(out, offer, wide);
  return out;
}

std::string sequence_label(const OfferSequence& seq) {
  if (seq.empty()) return "0";
  std::string out;
  for (size_t k = 0; k < seq.size(); ++k) {
    if (k > 0) out += '-';
    out += offer_label(seq[k]);
  }
  return out;
}

}  // namespace offerplan
