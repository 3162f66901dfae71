#pragma once

#include <cstdint>

namespace memsat {

/// SplitMix64 (Steele, Lea & Flood 2014). The state is a 64-bit counter
/// advanced by the golden-ratio increment; each output is a bijective mix of
/// the counter. The first outputs for seed 0 are
///   0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, 0x06c45d188009454f
/// and every instance generator and solver initializer in this project draws
/// from it, so byte-identical results can be produced in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound). Rejection sampling on the top of the
  /// range keeps it unbiased and independent of the standard library.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool coin() { return (next() >> 63) != 0; }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

/// Independent sub-seed for a named consumer of a run-level seed.
/// One --seed reproduces the whole run; each consumer gets its own stream.
enum class SeedStream : std::uint64_t {
  kGenerator = 1,
  kDmmInit = 2,
  kSls = 3,
  kSweep = 4,
};

inline std::uint64_t derive_seed(std::uint64_t seed, SeedStream stream) {
  SplitMix64 mix(seed ^ (static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL));
  return mix.next();
}

}  // namespace memsat
