#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

namespace latmcts {

// splitmix64 finalizer; spreads structured ids (base seed, trial index,
// stream tag) into well-mixed 64-bit seeds.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b = 0) {
  return mix64(base ^ mix64(a ^ mix64(b)));
}

// Seeded random stream. All draws go through the helpers below so a seed
// pins the exact sequence; std::* distributions are avoided because their
// draw order is implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [0, n), unbiased (rejection)
  uint64_t below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // uniform integer in [lo, hi], inclusive
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo) + 1));
  }

  // index in [0, 4), one word; top bits of the generator output
  int direction_index() { return static_cast<int>(next_u64() >> 62); }

  // independent normal pair via Box-Muller; no cached state, two words in
  std::pair<double, double> normal_pair(double mean, double sd) {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {mean + sd * r * std::cos(a), mean + sd * r * std::sin(a)};
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace latmcts
