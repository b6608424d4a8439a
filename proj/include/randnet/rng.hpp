#pragma once

#include <cmath>
#include <cstdint>

namespace randnet {

namespace detail {

// splitmix64 finalizer (Steele, Lea, Flood 2014)
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace detail

/// Counter-based generator: the i-th output is mix64(seed + i*golden),
/// i.e. splitmix64 started at `seed`. Stateless apart from the counter,
/// so a stream is reconstructable from (seed, counter) alone and identical
/// on every platform.
class Counter64 {
 public:
  explicit Counter64(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() {
    counter_ += detail::kGolden;
    return detail::mix64(seed_ + counter_);
  }

  // uniform in [0, 1), 53-bit resolution
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_uniform(double a, double b) {
    return a + (b - a) * next_uniform();
  }

  // standard normal via Box-Muller on two counter outputs; the second
  // variate is cached. No library normal_distribution is used anywhere,
  // keeping streams identical across standard libraries.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - next_uniform();  // (0, 1]
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Per-task seed for task `index` under a master seed. Fixed 64-bit hash,
/// part of the reproducibility contract: results of an ensemble run must
/// not depend on how tasks are distributed over workers.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return detail::mix64(master + detail::kGolden * (index + 1));
}

}  // namespace randnet
