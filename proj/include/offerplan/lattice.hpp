#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "offerplan/model.hpp"

namespace offerplan {

// Mixed-radix index over capacity vectors 0 <= m_j <= b_j. Index 0 is the
// all-zero state, strides grow with the slot-type index.
class StateLattice {
 public:
  StateLattice() = default;
  explicit StateLattice(const Eigen::VectorXi& capacity);

  long size() const { return size_; }
  int dims() const { return static_cast<int>(cap_.size()); }
  const Eigen::VectorXi& capacity() const { return cap_; }

  long index(const Eigen::VectorXi& m) const;
  Eigen::VectorXi decode(long idx) const;

  // Index of m - e_j; only valid when m_j > 0 at idx.
  long down(long idx, int j) const { return idx - strides_[j]; }
  long up(long idx, int j) const { return idx + strides_[j]; }

  // Availability bitmask of the state at idx (precomputed).
  OfferMask available(long idx) const { return avail_[idx]; }

  // Advances m through the lattice in index order (odometer step). m must
  // currently be a valid state; behaviour at the last state wraps to zero.
  void advance(Eigen::VectorXi& m) const;

 private:
  Eigen::VectorXi cap_;
  Eigen::VectorXi strides_;
  long size_ = 0;
  std::vector<std::uint16_t> avail_;
};

}  // namespace offerplan
