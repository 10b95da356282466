#include "offerplan/lattice.hpp"

#include <stdexcept>

namespace offerplan {

StateLattice::StateLattice(const Eigen::VectorXi& capacity) : cap_(capacity) {
  const int dims = static_cast<int>(capacity.size());
  strides_.resize(dims);
  size_ = 1;
  for (int j = 0; j < dims; ++j) {
    if (capacity(j) < 0) throw std::invalid_argument("negative capacity");
    strides_(j) = static_cast<int>(size_);
    size_ *= capacity(j) + 1;
  }

  avail_.resize(static_cast<size_t>(size_));
  Eigen::VectorXi m = Eigen::VectorXi::Zero(dims);
  for (long idx = 0; idx < size_; ++idx) {
    avail_[idx] = static_cast<std::uint16_t>(available_mask(m));
    advance(m);
  }
}

long StateLattice::index(const Eigen::VectorXi& m) const {
  long idx = 0;
  for (int j = 0; j < dims(); ++j) {
    if (m(j) < 0 || m(j) > cap_(j)) throw std::out_of_range("state outside lattice");
    idx += static_cast<long>(m(j)) * strides_(j);
  }
  return idx;
}

Eigen::VectorXi StateLattice::decode(long idx) const {
  Eigen::VectorXi m(dims());
  for (int j = 0; j < dims(); ++j) {
    m(j) = static_cast<int>(idx % (cap_(j) + 1));
    idx /= cap_(j) + 1;
  }
  return m;
}

void StateLattice::advance(Eigen::VectorXi& m) const {
  for (int j = 0; j < dims(); ++j) {
    if (m(j) < cap_(j)) {
      ++m(j);
      return;
    }
    m(j) = 0;
  }
}

}  // namespace offerplan
