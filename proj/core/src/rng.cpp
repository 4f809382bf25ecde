#include "crvanet/rng.hpp"

namespace crvanet {

Rng make_stream(std::uint64_t rootSeed, Stream stream, std::uint64_t a, std::uint64_t b) {
  const auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x); };
  const auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
  std::seed_seq seq{lo(rootSeed), hi(rootSeed), static_cast<std::uint32_t>(stream),
                    lo(a),        hi(a),        lo(b),
                    hi(b)};
  return Rng(seq);
}

} // namespace crvanet
