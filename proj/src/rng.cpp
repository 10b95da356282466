#include "offerplan/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace offerplan {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& word : s_) word = splitmix64(sm);
}

Rng Rng::replication_stream(std::uint64_t seed, std::uint64_t replication) {
  // Mix the replication index through splitmix64 so neighbouring streams do
  // not share low bits.
  std::uint64_t sm = replication + 0x632be59bd9b4e019ULL;
  return Rng(seed ^ splitmix64(sm));
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("uniform_int needs n >= 1");
  // Lemire's unbiased bounded generation.
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0ULL - bound) % bound;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<int>(m >> 64);
}

int Rng::categorical(const Eigen::VectorXd& probs) {
  double u = uniform01();
  for (int i = 0; i < probs.size(); ++i) {
    if (u < probs(i)) return i;
    u -= probs(i);
  }
  return -1;
}

int Rng::poisson(double mean, int cap) {
  // Knuth multiplication method; fine for the daily-demand scale used here.
  const double limit = std::exp(-mean);
  double product = 1.0;
  int count = 0;
  while (count < cap) {
    product *= uniform01();
    if (product <= limit) break;
    ++count;
  }
  return count;
}

}  // namespace offerplan
