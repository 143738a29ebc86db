#pragma once

#include <functional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "symgen/families.hpp"
#include "symgen/rng.hpp"

namespace symgen {

// C(Delta) is the part of M_Delta inside the designated cycle-type pool: for a
// bisection, the n-cycles alternating between Delta and its complement; for
// |Delta| = a odd < n/2, the elements whose cycles are an a-cycle on Delta and
// an (n-a)-cycle on the complement.

/// Exact |C(Delta)|.
mpz_class cdelta_size(DeltaIndex const &d);

/// (2/n)^2 (n/2)!^2, a lower bound on every |C(Delta)| at degree n.
mpq_class cdelta_lower_bound(unsigned n);

bool in_cdelta(Permutation const &p, DeltaIndex const &d);
bool in_cdelta(std::span<const Point> table, DeltaIndex const &d);

/// Visits every member of C(Delta) once.
void for_each_cdelta(DeltaIndex const &d, std::function<void(std::vector<Point> const &)> const &visit);

/// Uniform draw from C(Delta) via a direct encoding of its members. Reads no
/// state other than `d` and `stream`.
Permutation sample_cdelta(DeltaIndex const &d, RngStream &stream);

/// Key used to derive the sampling stream of Delta from a master seed:
/// "cdelta/n=<n>/delta=<sorted points>".
std::string cdelta_stream_key(DeltaIndex const &d);
RngStream cdelta_stream(std::uint64_t master_seed, DeltaIndex const &d);

inline constexpr unsigned kExactFractionMaxDegree = 12;

struct FractionValue {
  mpz_class hits;  // |C(Delta) ∩ H|
  mpz_class total; // |C(Delta)|

  mpq_class value() const {
    mpq_class q(hits, total);
    q.canonicalize();
    return q;
  }
};

/// f_Delta(H) = |C(Delta) ∩ H| / |C(Delta)| by enumeration of C(Delta).
/// H must be intransitive or imprimitive and n <= kExactFractionMaxDegree.
FractionValue f_delta(DeltaIndex const &d, SubgroupDescriptor const &h);

/// Number of S_n-conjugates of M containing g, counted over every set or
/// partition with the same shape as M. g must be an n-cycle or have cycle
/// type (s, n-s).
unsigned conjugate_count(Permutation const &g, SubgroupDescriptor const &m);

} // namespace symgen
