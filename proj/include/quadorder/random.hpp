#pragma once

#include <cstdint>
#include <random>

namespace quadorder {

/// Independent deterministic stream for (seed, stream id). All seeded generators in
/// the library draw from std::mt19937_64 initialized through std::seed_seq, so a
/// corpus item can be regenerated from its seed and index alone.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

} // namespace quadorder
