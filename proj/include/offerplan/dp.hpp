#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "offerplan/lattice.hpp"
#include "offerplan/model.hpp"
#include "offerplan/policies.hpp"

namespace offerplan {

enum class Variant { kNonSequential, kSequential, kFullInformation };

// Expected fill counts over the whole state lattice for one model variant,
// column n = all states with n periods to go. value(idx, 0) == 0 everywhere.
struct ValueTable {
  Variant variant = Variant::kNonSequential;
  StateLattice lattice;
  Eigen::MatrixXd value;  // lattice.size() x (N+1)

  // Optimal non-sequential offer set per (n, state); filled only when
  // requested. Entry (n-1)*size + idx, n = 1..N.
  std::vector<std::uint16_t> actions;

  bool has_actions() const { return !actions.empty(); }
  int horizon() const { return static_cast<int>(value.cols()) - 1; }
  double at(int n, const Eigen::VectorXi& m) const { return value(lattice.index(m), n); }
  OfferMask action_at(int n, const Eigen::VectorXi& m) const;
};

struct SolveOptions {
  bool record_actions = false;
  // Dense storage guard: (N+1) * lattice size must stay below this.
  long max_cells = 1L << 27;
};

enum class SeqMode { kPermutation, kExhaustive };

// Backward induction for the non-sequential offering model; the maximisation
// ranges over every subset of the available types, the empty set included.
ValueTable solve_nonseq(const Instance& inst, const SolveOptions& opt = {});

// Sequential offering model. kPermutation offers available singletons sorted
// by descending value-to-go after the booking (optimal, no search);
// kExhaustive enumerates every ordered partition of the available set and is
// guarded to at most 6 available types.
ValueTable solve_seq(const Instance& inst, SeqMode mode, const SolveOptions& opt = {});

// Non-sequential model where the scheduler observes the arriving customer's
// type and offers the acceptable available singleton with the largest
// value-to-go.
ValueTable solve_fullinfo(const Instance& inst, const SolveOptions& opt = {});

// Expected fill count of a fixed policy over the same lattice.
ValueTable evaluate_policy(const Instance& inst, const PolicySpec& policy,
                           const SolveOptions& opt = {});

// Marginal value of the m_j-th unit of each slot type at state (m, n):
// V_{n-1}(m) - V_{n-1}(m - e_j). Entries with m_j == 0 are NaN.
Eigen::VectorXd marginal_values(const ValueTable& table, const State& state);

// E[min(cap, Bin(n, p))], the boundary value of a single-slot-type system.
double boundary_binomial(double p, int cap, int n);

// Every ordered collection of disjoint non-empty subsets of `available`;
// full covers only when require_full_cover (ordered set partitions).
std::vector<OfferSequence> enumerate_offer_sequences(OfferMask available,
                                                     bool require_full_cover);

// One-type-at-a-time optimal sequential action read off a solved table:
// available singletons by descending value-to-go, ties by slot index.
OfferSequence optimal_sequence_from_values(const ValueTable& table, const Eigen::VectorXi& m,
                                           int n);

struct NonseqActionChoice {
  OfferMask action = 0;
  int optimal_count = 1;  // maximizers within tolerance
};

// Re-derives the optimal non-sequential offer set at (m, n) from stored
// values; ties resolved to the numerically smallest bitmask.
NonseqActionChoice optimal_nonseq_action(const Instance& inst, const ValueTable& table,
                                         const Eigen::VectorXi& m, int n, double tol = 1e-9);

// ---- shared choice machinery -------------------------------------------

// Per offer-set booking outcome, precomputed for every bitmask. Valid at any
// state where the offered types are all available, since choice probabilities
// depend on the offer set only.
struct ChoiceTables {
  struct Entry {
    int slot;
    double prob;
  };
  std::vector<std::vector<Entry>> per_mask;  // size 2^J
  std::vector<double> booking_prob;          // total booking probability
  double no_arrival = 0.0;

  static ChoiceTables build(const Instance& inst);
};

}  // namespace offerplan
