#pragma once

#include <cstdint>
#include <random>

namespace agm {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for stream `stream` of a run seeded with `seed`.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded 64-bit engine with the few draws the library needs. Every draw is
/// computed from raw engine output so results do not depend on the standard
/// library's distribution implementations.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(stream_seed(seed, stream)) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1].
  double uniform_open_zero() { return 1.0 - uniform(); }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  /// Number of failures before the first success of a Bernoulli(p) sequence,
  /// p in (0, 1). Saturates at UINT64_MAX.
  std::uint64_t geometric_skip(double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace agm
