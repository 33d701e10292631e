#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace mlwng {

/// Seeded pseudo-random source shared by the generators and the game engine.
///
/// Wraps std::mt19937_64 and draws bounded integers and unit reals directly
/// from the raw 64-bit stream, so sequences are identical on every standard
/// library (std::uniform_*_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  __extension__ using u128 = unsigned __int128;

  /// Uniform integer in [0, bound). bound must be > 0.
  std::size_t below(std::size_t bound) {
    // Lemire's nearly-divisionless rejection method.
    const auto range = static_cast<std::uint64_t>(bound);
    u128 product = static_cast<u128>(next_u64()) * range;
    auto low = static_cast<std::uint64_t>(product);
    if (low < range) {
      const std::uint64_t threshold = (0 - range) % range;
      while (low < threshold) {
        product = static_cast<u128>(next_u64()) * range;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::size_t>(product >> 64);
  }

  /// Uniform real in [0, 1) with 53 bits of resolution.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform real in the open interval (0, 1).
  double open_unit() {
    double r = unit();
    while (r == 0.0) r = unit();
    return r;
  }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Order-independent seed for (base, point, run, stream). Any worker can
/// compute the seed of any run without coordinating with the others.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t point, std::uint64_t run,
                                    std::uint64_t stream = 0) {
  std::uint64_t h = mix64(base);
  h = mix64(h ^ point);
  h = mix64(h ^ (run * 0x632be59bd9b4e019ULL));
  return mix64(h ^ (stream + 0x2545f4914f6cdd1dULL));
}

}  // namespace mlwng
