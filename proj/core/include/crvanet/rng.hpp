#pragma once

#include <cstdint>
#include <random>

namespace crvanet {

using Rng = std::mt19937_64;

/// Independent consumers of randomness. Each gets its own stream so a change
/// in one subsystem's draw count never shifts another's sequence.
enum class Stream : std::uint32_t {
  Mobility = 1,
  PuSchedule = 2,
  SuSchedule = 3,
  Fading = 4,
  SensingNoise = 5,
};

/// Derives a stream from the root seed and up to two indices (e.g. vehicle id,
/// tower id). The same (seed, stream, indices) always yields the same engine.
Rng make_stream(std::uint64_t rootSeed, Stream stream, std::uint64_t a = 0, std::uint64_t b = 0);

} // namespace crvanet
