#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace waymark {

// splitmix64; used to whiten seeds and to derive per-cell / per-episode keys.
uint64_t mix64(uint64_t x);

// FNV-1a over a string tag, for naming RNG streams ("noise", "episode", ...).
uint64_t hash_tag(std::string_view tag);

// Combine a base seed with a tag and index into one stream key.
uint64_t stream_key(uint64_t seed, std::string_view tag, uint64_t index = 0);

// mt19937_64 with pinned output mappings. The engine is bit-exact by the
// standard; std::uniform_real_distribution et al. are not, so the
// value->sample maps live here and never change.
class Rng {
 public:
  explicit Rng(uint64_t key) : engine_(mix64(key)) {}
  Rng(uint64_t seed, std::string_view tag, uint64_t index = 0)
      : Rng(stream_key(seed, tag, index)) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0,1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo,hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0,n). n must be > 0.
  uint64_t below(uint64_t n) {
    // Lemire-style bounded draw with rejection; unbiased and pinned.
    uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<uint64_t>(m);
    if (lo < n) {
      uint64_t t = (0 - n) % n;
      while (lo < t) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<uint64_t>(n))); }

  bool bernoulli(double p) { return uniform() < p; }

  // Box-Muller, one value per call (the spare is kept).
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace waymark
