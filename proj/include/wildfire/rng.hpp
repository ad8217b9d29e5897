#pragma once

#include <cstdint>
#include <string_view>

namespace wildfire {

/// Counter-based generator: the i-th output of stream `key` is
/// splitmix64_mix(key * phi + i), so any draw can be computed independently
/// of the others and the sequence is identical on every platform and for
/// every thread schedule.
class CounterRng {
 public:
  static constexpr std::string_view kName = "splitmix64-counter";

  explicit constexpr CounterRng(std::uint64_t key) : key_(mix(key * kGamma + kStreamSalt)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const { return mix(key_ + counter * kGamma); }

  /// Uniform double in [0, 1) with 53 bits of resolution.
  constexpr double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Derive an independent stream from this one.
  constexpr CounterRng substream(std::uint64_t id) const { return CounterRng(bits(id) ^ id); }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kStreamSalt = 0x6a09e667f3bcc909ULL;
  std::uint64_t key_;
};

}  // namespace wildfire
