#include "flatmod/rng.hpp"

namespace flatmod {

Stream::Stream(std::uint64_t seed, std::string_view tag, std::uint64_t attempt)
    : key_(mix(mix(seed ^ hash_tag(tag)) + (attempt + 1) * kGolden)) {}

std::uint64_t Stream::below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection of the biased low region.
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace flatmod
