#pragma once

#include <cstdint>

namespace dpt {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based generator: the n-th draw of stream (seed, instance, tag) is a pure function of
// those four numbers, so streams can be split across threads without coordination.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t instance = 0, std::uint64_t tag = 0)
      : key_(splitmix64(splitmix64(splitmix64(seed) ^ instance) ^ (tag * 0xd6e8feb86659fd93ULL))) {}

  std::uint64_t next() { return splitmix64(key_ ^ splitmix64(counter_++)); }
  // uniform in [0,1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dpt
