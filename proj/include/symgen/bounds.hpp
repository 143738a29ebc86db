#pragma once

#include <optional>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "symgen/families.hpp"

namespace symgen {

/// Degrees up to which bounds are also carried as exact rationals.
inline constexpr unsigned kExactBoundMaxDegree = 64;

/// Upper bound on a probability. `log2_upper` is never below log2 of the true
/// value of the expression (rounded outward); -infinity encodes zero.
struct BoundValue {
  std::optional<mpq_class> exact;
  long double log2_upper = 0;
  std::string provenance;

  bool is_zero() const;
};

using SizePair = std::pair<unsigned, unsigned>;

/// Throws std::invalid_argument unless both sizes index members of S^(family)
/// at degree n.
void require_admissible_sizes(unsigned n, int family, SizePair sizes);

/// All unordered size pairs {|Delta_1|, |Delta_2|} realised by vertices of the
/// dependency graph, sorted.
std::vector<SizePair> admissible_size_pairs(unsigned n, int family);

/// Largest f_Delta(K) over K in H_j (j = 3 or 4) for |Delta| = size. These are
/// the exact common values of the non-zero fractions, obtained by counting the
/// cycle words compatible with the block system:
///   j=3, |Delta| = n/2:      6 (n/6)!^6 / (n/2)!^2
///   j=3, |Delta| = a odd:   18 (a/3)!^3 (b/3)!^3 / (a! b!)     (3 | a, b = n-a)
///   j=4, |Delta| = n/2:      4 (n/4)!^4 / (n/2)!^2
///   j=4, |Delta| = a = n/4:  6 (b/3)!^3 / b!                   (b = 3n/4)
/// and zero in every other case.
BoundValue fraction_bound(unsigned n, int j, unsigned delta_size);

/// Upper bound on P(E_v^j) for any vertex v whose two index sets have the
/// given sizes.
BoundValue event_bound(unsigned n, int family, int j, SizePair sizes);

/// Sum over j of event_bound.
BoundValue total_event_bound(unsigned n, int family, SizePair sizes);

/// log2 of max over d*m = n, d >= 2, m >= 5 of d!^m m! (-inf when no shape).
long double max_wreath_order_log2(unsigned n);

/// Rational enclosure of e: kELower < e < kEUpper.
mpq_class e_lower();
mpq_class e_upper();

/// Rounds a log2 value upward by a margin that dominates long-double error.
long double round_up_log2(long double x);
long double round_down_log2(long double x);

/// log2(m!) via lgamma (not rounded).
long double log2_factorial(unsigned m);

/// Lower and upper Stirling bounds for m!, as log2 values:
/// sqrt(2 pi m) (m/e)^m  and  e sqrt(m) (m/e)^m.
std::pair<long double, long double> stirling_bounds_log2(unsigned m);

/// log2 of a positive rational, rounded upward.
long double log2_upper(mpq_class const &q);
long double log2_upper(mpz_class const &z);

} // namespace symgen
