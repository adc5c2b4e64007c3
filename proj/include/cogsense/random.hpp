#pragma once

#include <complex>
#include <cstdint>
#include <random>

// Keyed random streams. Every observation instant gets its own stream derived
// from (master_seed, stream id), so instants can be generated in any order or
// in parallel and still reproduce bit for bit.

namespace cogsense {

// splitmix64 finalizer; good enough to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Domain-separated substream seed: same (master, domain, index) always maps
// to the same seed; distinct domains never collide across index ranges.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t domain,
                                    std::uint64_t index) {
  return mix64(mix64(master + 0x9E3779B97F4A7C15ULL * (domain + 1)) +
               0x9E3779B97F4A7C15ULL * (index + 1));
}

inline constexpr std::uint64_t kInstantDomain = 0;
inline constexpr std::uint64_t kSweepDomain = 1;

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return uniform_(engine_); }         // [0, 1)
  double normal() { return normal_(engine_); }           // N(0, 1)

  // Circularly-symmetric complex Gaussian with unit second moment.
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * kInvSqrt2, im * kInvSqrt2};
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  static constexpr double kInvSqrt2 = 0.70710678118654752440;
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace cogsense
