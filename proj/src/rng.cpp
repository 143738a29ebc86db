#include "symgen/rng.hpp"

#include <limits>
#include <stdexcept>

#include "symgen/digest.hpp"

namespace symgen {

RngStream RngStream::derive(std::uint64_t master_seed, std::string_view key) {
  std::string material = "symgen-stream-v1:" + std::to_string(master_seed) + ":";
  material += key;
  auto const digest = sha256(material);
  std::uint64_t seed = 0;
  for (int k = 0; k < 8; ++k)
    seed = (seed << 8) | digest[k];
  return RngStream(seed);
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0)
    throw std::invalid_argument("RngStream::below: bound must be positive");
  // Reject the top partial block so every residue is equally likely.
  std::uint64_t const limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t const r = next();
    if (r < limit)
      return r % bound;
  }
}

} // namespace symgen
