#pragma once

#include <cstdint>
#include <string_view>

namespace mdc {

/// Counter-based generator, version "splitmix64-ctr/1".
///
/// Draw n of a stream with key K is splitmix64_mix(K + (n + 1) * 0x9E3779B97F4A7C15).
/// Streams are derived by hashing a purpose tag into the key, so draws consumed
/// by one purpose (scenario layout, diffusion noise, random baseline, ...) never
/// shift the draws of another. The generator is a value type: copy it to fork.
class StreamRng {
 public:
  static constexpr std::string_view kVersion = "splitmix64-ctr/1";

  explicit StreamRng(std::uint64_t seed) : key_(mix(seed ^ 0x6A09E667F3BCC908ULL)) {}

  /// Independent child stream for a named purpose.
  StreamRng derive(std::string_view tag) const { return StreamRng(key_, fnv1a(tag)); }
  StreamRng derive(std::uint64_t tag) const { return StreamRng(key_, tag); }

  std::uint64_t next_u64() {
    ++counter_;
    return mix(key_ + counter_ * kGolden);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Unbiased integer in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Standard normal via Box-Muller; consumes two u64 draws per call.
  double normal();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001B3ULL;
    }
    return h;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  StreamRng(std::uint64_t parent_key, std::uint64_t tag)
      : key_(mix(parent_key ^ mix(tag + kGolden))) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace mdc
