#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rsm {

// SplitMix64 finalizer (Vigna / Steele et al.), used only for seed derivation.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Per-stream seed derivation. Stream t of a run seeded with `master` uses
// derive_seed(master, t); the mapping is fixed so reports are reproducible
// across runs and across serial/parallel schedules.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master ^ (stream * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL);
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

// Deterministic generator: std::mt19937_64 has a standard-specified output
// sequence, and all distributions below are hand-rolled so that a (seed,
// call sequence) pair yields identical samples on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// +1 or -1 with probability 1/2 each.
  double rademacher() { return (gen_() >> 63) ? 1.0 : -1.0; }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Difference of two independent Bernoulli(p): atoms {-1, 0, +1} with
  /// probabilities {q, 1-2q, q}, q = p(1-p).
  double signed_bernoulli(double p) {
    const double q = p * (1.0 - p);
    const double u = uniform01();
    if (u < q) return -1.0;
    if (u < 2.0 * q) return 1.0;
    return 0.0;
  }

  /// Standard normal via Box-Muller (one value per two uniforms; no cached
  /// state, so the call sequence alone determines the stream).
  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::mt19937_64 gen_;
};

} // namespace rsm
