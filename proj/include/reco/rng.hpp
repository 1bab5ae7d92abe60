#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace reco {

namespace rng_detail {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ull;

// splitmix64 finalizer; full avalanche on 64 bits.
constexpr uint64_t avalanche(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

constexpr uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace rng_detail

// Collapses a sequence of key words into one 64-bit stream identifier.
constexpr uint64_t mix_key(std::initializer_list<uint64_t> key) {
  uint64_t h = 0x6a09e667f3bcc909ull;
  for (uint64_t w : key) {
    h ^= rng_detail::avalanche(w + rng_detail::kGolden);
    h *= 0x2545f4914f6cdd1dull;
    h = rng_detail::avalanche(h);
  }
  return h;
}

// Stream identifiers for independent substreams of one root seed. Keys are
// mixed through an avalanche hash, so any distinct tuple gives an
// independent stream regardless of evaluation order.
enum StreamTag : uint64_t {
  kStreamEmbeddings = 1,
  kStreamUser = 2,        // (tag, population, user index)
  kStreamSplit = 3,       // (tag, user id) keyed off a fold seed
  kStreamBootstrap = 4,   // (tag, resample index)
  kStreamPolicyRank = 5,  // (tag, context hash) for the random-ranking policy
  kStreamCalibration = 6,
  kStreamAbArm = 7,  // (tag, policy-name hash)
  kStreamCiSeed = 8,
  kStreamHyper = 9,
  kStreamToy = 10,  // test-only toy generators
  kStreamSvdInit = 11,
};

// Deterministic xoshiro256++ generator with explicit key-based seeding.
// Same key words, same sequence, on every platform and thread count. All
// variate transforms are written out explicitly (no std::distribution) so
// streams are reproducible independent of the standard library.
class Rng {
 public:
  explicit Rng(std::initializer_list<uint64_t> key) {
    uint64_t z = mix_key(key);
    for (auto& word : state_) {
      z += rng_detail::kGolden;
      word = rng_detail::avalanche(z);
    }
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = rng_detail::kGolden;
  }

  uint64_t next_u64() {
    const uint64_t result = rng_detail::rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rng_detail::rotl(state_[3], 45);
    return result;
  }

  // Uniform on the open interval (0, 1).
  double uniform() { return static_cast<double>((next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  // Standard normal via Box-Muller (uniform() is never 0 or 1).
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Unbiased integer in [0, bound) via Lemire's multiply-reject method.
  uint64_t uniform_int(uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<uint64_t>(m);
    if (lo < bound) {
      const uint64_t threshold = (0 - bound) % bound;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  // Poisson count; sums of <=500-mean blocks keep exp(-mean) in range.
  int64_t poisson(double mean) {
    int64_t total = 0;
    while (mean > 500.0) {
      total += poisson_small(500.0);
      mean -= 500.0;
    }
    return total + poisson_small(mean);
  }

  // Index sampled from an (approximately normalized) probability vector.
  size_t categorical(const double* probs, size_t n) {
    const double u = uniform();
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
      acc += probs[i];
      if (u < acc) return i;
    }
    return n - 1;
  }

 private:
  static constexpr double kTwoPi = 6.283185307179586476925286766559;

  int64_t poisson_small(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    int64_t k = 0;
    double prod = uniform();
    while (prod > limit) {
      ++k;
      prod *= uniform();
    }
    return k;
  }

  std::array<uint64_t, 4> state_;
};

}  // namespace reco
