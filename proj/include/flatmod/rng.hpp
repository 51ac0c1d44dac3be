#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>

namespace flatmod {

/// Counter-based SplitMix64 stream.
///
/// Output i of a stream is `mix(key + (i + 1) * golden)`, so a stream is fully
/// described by its 64-bit key and position. Keys are derived from a user seed
/// and a stage tag, which gives every generation stage its own substream: the
/// draws consumed by one stage never shift the draws seen by another.
class Stream {
 public:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

  explicit Stream(std::uint64_t key) : key_(key) {}
  Stream(std::uint64_t seed, std::string_view tag, std::uint64_t attempt = 0);

  std::uint64_t next() { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// FNV-1a, used only to turn stage tags into key material.
constexpr std::uint64_t hash_tag(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace flatmod
