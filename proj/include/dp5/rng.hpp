#pragma once

#include <cstdint>

namespace dp5 {

// Counter-based generator: output i of stream `seed` is splitmix64(seed, i).
// Stateless per sample, so sample blocks can be handed to workers and the
// stream is reproducible bit-for-bit for a recorded seed regardless of
// scheduling.
struct CounterRng {
  uint64_t seed = 0;
  uint64_t ctr = 0;

  explicit CounterRng(uint64_t s = 0, uint64_t start = 0) : seed(s), ctr(start) {}

  static uint64_t at(uint64_t seed, uint64_t i) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  uint64_t next_u64() { return at(seed, ctr++); }

  // uniform in [0,1)
  double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

  // uniform integer in [lo, hi], hi >= lo
  long long next_in(long long lo, long long hi) {
    return lo + (long long)(next_u64() % (unsigned long long)(hi - lo + 1));
  }
};

}  // namespace dp5
