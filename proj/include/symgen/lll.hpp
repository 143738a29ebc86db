#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "symgen/bounds.hpp"

namespace symgen {

/// 2(|S^(i)| - 2), the valency of every vertex of the dependency graph.
mpz_class dependency_valency(unsigned n, int family);

/// Two vertices (unordered pairs of distinct indices) are adjacent iff they
/// share an index.
bool dependency_adjacent(std::pair<DeltaIndex, DeltaIndex> const &v,
                         std::pair<DeltaIndex, DeltaIndex> const &w);

struct LllReport {
  unsigned n = 0;
  int family = 0;
  mpz_class d;
  long double d_log2 = 0;
  std::map<int, BoundValue> bounds;   // per j, maximised over size pairs
  BoundValue total;                   // max over size pairs of the sum over j
  SizePair worst_sizes;
  bool two_pow = false;               // total <= 2^-(n+3)
  bool lll = false;                   // total <= 1/(e(d+1))
  bool sanity = false;                // 2^-(n+3) <= 1/(e(d+1))
  bool exact_comparison = false;      // decided with rationals rather than log2
  std::vector<std::string> assumptions;

  nlohmann::json to_json() const;
};

/// Evaluates the Local Lemma condition at degree n for family i.
///
/// The maximum over vertices is taken over the diagonal size pairs (s, s): for
/// any pair (s1, s2) each summand is at most its value at (s, s) for whichever
/// of s1, s2 is not n/2.
LllReport lll_certificate(unsigned n, int family);

/// Same maximum, taken over every admissible size pair. Used to check the
/// diagonal reduction.
BoundValue max_total_over_all_pairs(unsigned n, int family);

struct LllSweep {
  int family = 0;
  unsigned n_min = 0, n_max = 0;
  std::vector<std::pair<unsigned, bool>> satisfied; // (n, lll)
  std::optional<unsigned> threshold;  // least n with lll satisfied
  bool monotone = false;              // satisfied for every n from threshold to n_max

  nlohmann::json to_json() const;
};

LllSweep lll_sweep(int family, unsigned n_min, unsigned n_max);

} // namespace symgen
