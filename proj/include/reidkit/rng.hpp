#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace reidkit {

// Deterministic random source. All distribution mappings are implemented
// here rather than taken from <random> so that a given seed produces the
// same stream on every platform and standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t randint(std::uint64_t n) {
    // Rejection sampling over the top bits, bias-free.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  int index(int n) { return static_cast<int>(randint(static_cast<std::uint64_t>(n))); }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller; the second deviate is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// splitmix64 step, used to derive child seeds from a master seed.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from (master, tag, ...). Components
// are folded in order, so distinct tag tuples give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) {
  return mix_seed(master ^ mix_seed(tag));
}

template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, Tags... rest) {
  return derive_seed(derive_seed(master, tag), rest...);
}

// Stream tags for the fan-out of one experiment master seed.
namespace seed_tag {
inline constexpr std::uint64_t dataset = 0xD474;
inline constexpr std::uint64_t sampler = 0x5A3B;
inline constexpr std::uint64_t augment = 0xA06;
inline constexpr std::uint64_t weights = 0x1217;
}  // namespace seed_tag

}  // namespace reidkit
