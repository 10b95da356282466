#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace offerplan {

// xoshiro256** seeded through splitmix64. Hand-rolled so that seeded runs are
// bit-identical across standard libraries and platforms. Replication streams
// are derived from (seed, replication index) and are independent of the order
// in which replications execute.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static Rng replication_stream(std::uint64_t seed, std::uint64_t replication);

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform01();

  // Uniform integer in [0, n), n >= 1, without modulo bias.
  int uniform_int(int n);

  // Index i with probability probs[i]; -1 with the residual mass
  // 1 - sum(probs).
  int categorical(const Eigen::VectorXd& probs);

  // Poisson variate truncated at cap.
  int poisson(double mean, int cap);

 private:
  std::uint64_t s_[4];
};

}  // namespace offerplan
