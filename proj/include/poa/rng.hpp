#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace poa {

// Philox4x32-10 counter-based generator. Every consumer derives its own
// stream from (seed, path...) so draws are reproducible no matter how work
// is ordered or parallelized.
namespace detail {

inline constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<uint32_t, 4>& ctr, std::array<uint32_t, 2>& key) {
  uint64_t p0 = static_cast<uint64_t>(kPhiloxM0) * ctr[0];
  uint64_t p1 = static_cast<uint64_t>(kPhiloxM1) * ctr[2];
  std::array<uint32_t, 4> out;
  out[0] = static_cast<uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0];
  out[1] = static_cast<uint32_t>(p1);
  out[2] = static_cast<uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1];
  out[3] = static_cast<uint32_t>(p0);
  ctr = out;
  key[0] += kPhiloxW0;
  key[1] += kPhiloxW1;
}

inline std::array<uint32_t, 4> philox10(std::array<uint32_t, 4> ctr,
                                        std::array<uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) philox_round(ctr, key);
  return ctr;
}

// splitmix64 finalizer, used to fold stream path components into a key.
inline uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace detail

// Folds a seed and a path of tags into a 64-bit stream key.
inline uint64_t stream_key(uint64_t seed, std::initializer_list<uint64_t> path) {
  uint64_t k = detail::mix64(seed ^ 0xA0761D6478BD642Full);
  for (uint64_t tag : path) k = detail::mix64(k ^ tag);
  return k;
}

class RandomStream {
 public:
  explicit RandomStream(uint64_t key) : key_{static_cast<uint32_t>(key),
                                             static_cast<uint32_t>(key >> 32)} {}

  RandomStream(uint64_t seed, std::initializer_list<uint64_t> path)
      : RandomStream(stream_key(seed, path)) {}

  uint32_t next_u32() {
    if (have_ == 0) refill();
    return buf_[--have_];
  }

  uint64_t next_u64() {
    uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n).
  uint32_t below(uint32_t n) {
    uint64_t threshold = (~uint64_t{0} % n + 1) % n;  // 2^64 mod n
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return static_cast<uint32_t>(r % n);
    }
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  void refill() {
    std::array<uint32_t, 4> ctr{static_cast<uint32_t>(counter_),
                                static_cast<uint32_t>(counter_ >> 32), 0u, 0u};
    buf_ = detail::philox10(ctr, key_);
    ++counter_;
    have_ = 4;
  }

  std::array<uint32_t, 2> key_;
  uint64_t counter_ = 0;
  std::array<uint32_t, 4> buf_{};
  int have_ = 0;
};

}  // namespace poa
