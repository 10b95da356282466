#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace offerplan {

// An offer set is a bitmask over slot types. Bit j (0-based) stands for the
// slot type labelled j+1 in file formats, tables and figures.
using OfferMask = std::uint32_t;

inline constexpr int kMaxSlotTypes = 16;

// Sequential offering action: disjoint non-empty sets shown one after another
// until the customer meets an acceptable type or the sequence runs out.
using OfferSequence = std::vector<OfferMask>;

// One booking problem: choice matrix, arrival probabilities, horizon length
// and the initial capacity of every slot type.
struct Instance {
  Eigen::MatrixXi omega;     // I x J, entries in {0,1}; row = customer type
  Eigen::VectorXd lambda;    // arrival probability per customer type
  int horizon = 0;           // number of booking periods N
  Eigen::VectorXi capacity;  // initial slots b_j per type

  int customer_types() const { return static_cast<int>(omega.rows()); }
  int slot_types() const { return static_cast<int>(omega.cols()); }
  double no_arrival_prob() const { return 1.0 - lambda.sum(); }

  Instance with_horizon(int n) const;
  Instance with_capacity(Eigen::VectorXi b) const;
};

// Remaining capacity plus periods to go (time counts backwards; n=0 closes
// the booking window).
struct State {
  Eigen::VectorXi m;
  int n = 0;
};

// Per-period booking outcome: probability q(j) that slot type j is taken,
// plus the no-booking probability q0.
struct OutcomeDistribution {
  Eigen::VectorXd q;
  double q0 = 1.0;
};

enum class CanonicalModel { kN, kW, kM, kMPlus1 };

Eigen::MatrixXi canonical(CanonicalModel which);
CanonicalModel canonical_from_name(const std::string& name);

// Returns every violated instance invariant, empty when the instance is well
// formed.
std::vector<std::string> validate(const Instance& inst);
void validate_or_throw(const Instance& inst);

// Acceptance bitmask of customer type i: bit j set iff omega(i, j) == 1.
OfferMask accept_mask(const Instance& inst, int customer);
std::vector<OfferMask> accept_masks(const Instance& inst);

// Slot types with positive remaining capacity.
OfferMask available_mask(const Eigen::VectorXi& m);

// Probability that a type-`customer` arrival picks each slot type when shown
// `offer`; the zero vector when nothing offered is acceptable.
Eigen::VectorXd conditional_choice(const Instance& inst, int customer, OfferMask offer);

OutcomeDistribution outcome_distribution(const Instance& inst, OfferMask offer);

// Routes every customer type to the first set of the sequence containing an
// acceptable slot type, uniform choice within that set.
OutcomeDistribution sequence_outcome_distribution(const Instance& inst, const OfferSequence& seq);

struct NestedCheck {
  bool nested = true;
  // 0-based offending slot-type pair when not nested.
  int witness_j1 = -1;
  int witness_j2 = -1;
};

// Checks whether the accepting-customer sets of any two slot types are
// disjoint or inclusion-comparable.
NestedCheck is_nested(const Eigen::MatrixXi& omega);

// Throws unless the sequence consists of disjoint non-empty sets of available
// types.
void validate_sequence(const OfferSequence& seq, OfferMask available);

// Compact labels used in policy maps and table output: "13" for {1,3},
// "13-2" for {1,3}-{2}, "0" for the empty offer.
std::string offer_label(OfferMask offer);
std::string sequence_label(const OfferSequence& seq);

}  // namespace offerplan
