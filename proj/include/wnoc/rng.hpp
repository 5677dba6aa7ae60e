#pragma once

#include <cstdint>

namespace wnoc {

// Purpose tag baked into every derived stream key. Together with the index
// (node id, run id, ...) it makes stream labels unique by construction, so
// no two streams in a run can alias.
enum class StreamPurpose : std::uint64_t {
  Arrival = 1,
  Destination = 2,
  BrsBackoff = 3,
  BrsChannel = 4,
  SweepRun = 5,
};

namespace rng_detail {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace rng_detail

constexpr std::uint64_t derive_key(std::uint64_t master_seed, StreamPurpose purpose,
                                   std::uint64_t index) {
  std::uint64_t k = rng_detail::mix64(master_seed + rng_detail::kGolden);
  k = rng_detail::mix64(k ^ (static_cast<std::uint64_t>(purpose) * 0xd6e8feb86659fd93ULL));
  k = rng_detail::mix64(k ^ (index * 0xc2b2ae3d27d4eb4fULL));
  return k;
}

// Counter-based stream: draw i is a pure function of (key, i). Sequences are
// therefore stable across platforms, runs and thread schedules. All
// distribution code is hand-rolled on top of next_u64() because the std::
// distributions are implementation-defined and would break the bit-identical
// output contract.
class Rng {
 public:
  Rng() = default;
  Rng(std::uint64_t master_seed, StreamPurpose purpose, std::uint64_t index)
      : key_(derive_key(master_seed, purpose, index)) {}

  std::uint64_t next_u64() { return rng_detail::mix64(key_ ^ (++counter_ * rng_detail::kGolden)); }

  // Uniform in [0,1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in (0,1]; safe for inverse-CDF draws with a pole at 0.
  double next_double_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [lo, hi], rejection sampled.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t range = hi - lo + 1;
    if (range == 0) return next_u64();  // [0, 2^64-1]
    std::uint64_t x, r;
    do {
      x = next_u64();
      r = x % range;
    } while (x - r > std::uint64_t{0} - range);
    return lo + r;
  }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace wnoc
