#pragma once

#include <cstdint>

namespace qsteer {

// SplitMix64 finalizer (Steele/Lea/Flood). Used both as the sequential
// generator step and as the mixing hash for counter-based streams.
inline std::uint64_t splitmix64_mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline double to_unit_double(std::uint64_t h) {
  // 53 high bits -> [0, 1)
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Counter-based uniform draw: the value depends only on
// (seed, stream, index, draw), never on call order.
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t index, std::uint64_t draw) {
  std::uint64_t h = splitmix64_mix(seed);
  h = splitmix64_mix(h + stream);
  h = splitmix64_mix(h + index);
  h = splitmix64_mix(h + draw);
  return to_unit_double(h);
}

// Derives an independent stream seed, e.g. one per grid point.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64_mix(splitmix64_mix(seed) + stream);
}

// Small sequential generator for test data and ensemble sampling.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return splitmix64_mix(state_++); }

  double uniform() { return to_unit_double(next()); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace qsteer
