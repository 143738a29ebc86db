#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "symgen/cdelta.hpp"
#include "symgen/parallel.hpp"

namespace symgen {

inline constexpr char kVersion[] = "0.3.1";

struct ConstructOptions {
  std::uint64_t max_rounds = 0;     // 0: 1000 * |S^(i)|
  unsigned threads = 1;             // detection workers; never affects the result
  std::uint64_t max_pairs = 2'000'000;
};

struct Assignment {
  DeltaIndex delta;
  Permutation g;
};

struct ConstructionCertificate {
  unsigned n = 0;
  int family = 0;
  std::uint64_t seed = 0;
  std::uint64_t rounds = 0;         // resampling steps performed
  std::uint64_t max_rounds = 0;
  std::vector<Assignment> assignment; // catalog order

  nlohmann::json to_json() const;
};

struct ConstructFailure {
  unsigned n = 0;
  int family = 0;
  std::uint64_t seed = 0;
  std::uint64_t rounds = 0;
  std::uint64_t residual_bad_pairs = 0;
  std::string reason;

  nlohmann::json to_json() const;
};

using ConstructResult = std::variant<ConstructionCertificate, ConstructFailure>;

/// True when the pair {x, y} is acceptable for family i: FULL_SYMMETRIC for
/// i = 1, FULL_SYMMETRIC or ALTERNATING for i = 2.
bool pair_ok(int family, GenerationClass c);

/// Moser-Tardos resampling over the dependency graph. Each g_Delta is drawn
/// from its own stream derived from (seed, Delta); the bad vertex resampled
/// each round is the least bad pair in catalog order.
ConstructResult construct(unsigned n, int family, std::uint64_t seed,
                          ConstructOptions const &options = {});

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string message) {
    ok = false;
    violations.push_back(std::move(message));
  }
};

/// Re-checks a certificate from its JSON alone: CONSTRUCTION certificates are
/// checked member by member and pair by pair; LLL_THRESHOLD reports are
/// recomputed and compared.
VerifyResult verify(nlohmann::json const &certificate, unsigned threads = 1);

/// SHA-256 of the canonical dump with "checksum" and "metadata.created"
/// removed.
std::string certificate_checksum(nlohmann::json const &doc);

/// Adds version, metadata and checksum. `created` goes in metadata.created.
void seal(nlohmann::json &doc, std::string const &created);

} // namespace symgen
