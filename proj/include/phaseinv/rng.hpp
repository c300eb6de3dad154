#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace phaseinv {

// Seeded random streams. Every stochastic consumer draws from its own
// sub-stream derived from (master seed, tags...), so results never depend
// on evaluation order or thread count.
using RandomStream = std::mt19937_64;

// FNV-1a hash of a stream name, used as a tag.
constexpr std::uint64_t stream_tag(std::string_view name) {
  std::uint64_t h = 14695981039346656037ull;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

RandomStream make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

}  // namespace phaseinv
