#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace symgen {

/// Deterministic random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Bounded draws use rejection on the raw 64-bit output rather than
/// std::uniform_int_distribution, whose algorithm is implementation-defined.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Stream keyed by (master seed, key): the engine is seeded with the first
  /// eight bytes (big-endian) of SHA-256("symgen-stream-v1:" + seed + ":" + key).
  static RngStream derive(std::uint64_t master_seed, std::string_view key);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform real in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t k = items.size(); k > 1; --k) {
      std::size_t const j = static_cast<std::size_t>(below(k));
      std::swap(items[k - 1], items[j]);
    }
  }

private:
  std::mt19937_64 engine_;
};

} // namespace symgen
