#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qwalk {

// SplitMix64 finalizer (bijective 64-bit mix).
std::uint64_t mix64(std::uint64_t x);

// Derives the seed of an independent substream from a master seed, a
// component label and an index. The derivation depends only on these three
// values, never on scheduling, so results merge deterministically no matter
// how work is distributed over threads.
std::uint64_t substream_seed(std::uint64_t master, std::string_view component,
                             std::uint64_t index);

// Seeded generator wrapper. Every random draw in the library goes through
// this class so that outputs are reproducible bit for bit given a seed.
class RngStream {
 public:
  static constexpr std::string_view kAlgorithm =
      "mt19937_64+splitmix64-substream";

  explicit RngStream(std::uint64_t seed) : eng_(seed) {}
  RngStream(std::uint64_t master, std::string_view component,
            std::uint64_t index)
      : eng_(substream_seed(master, component, index)) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Geometric on {1, 2, ...}: P(T = k) = p (1-p)^(k-1). Requires 0 < p <= 1.
  int geometric(double p);

 private:
  std::mt19937_64 eng_;
};

}  // namespace qwalk
