#include <doctest.h>

#include "oracle.hpp"
#include "symgen/families.hpp"
#include "symgen/perm.hpp"
#include "symgen/rng.hpp"

using namespace symgen;

namespace {

Permutation P(std::string_view s, std::size_t n) { return Permutation::parse(s, n); }

Permutation random_perm(unsigned n, RngStream &rng) {
  std::vector<Point> t(n);
  std::iota(t.begin(), t.end(), Point{0});
  rng.shuffle(std::span<Point>(t));
  return Permutation::from_table(t);
}

} // namespace

TEST_SUITE("perm") {

TEST_CASE("compose and inverse") {
  CHECK(compose(P("(1 2)", 4), P("(1 2)", 4)).is_identity());
  Permutation const p = P("(1 3 4)", 4);
  CHECK(compose(p, Permutation(4)) == p);
  CHECK(compose(p, inverse(p)).is_identity());

  // pointwise: (p o q)(x) = p(q(x))
  Permutation const a = P("(1 2 3)", 4), b = P("(1 2)", 4);
  Permutation const ab = compose(a, b);
  for (unsigned x = 1; x <= 4; ++x)
    CHECK(ab(x) == a(b(x)));
  CHECK(ab.to_string() == "(1 3)");

  CHECK_THROWS_AS(compose(P("(1 2)", 3), P("(1 2)", 4)), DegreeMismatch);
}

TEST_CASE("parse and print") {
  CHECK(P("()", 5).to_string() == "()");
  CHECK(P("(1 2 3)(4 5)", 6).to_string() == "(1 2 3)(4 5)");
  CHECK(P("(4 5)(3 1 2)", 6).to_string() == "(1 2 3)(4 5)");
  CHECK_THROWS(P("(1 7)", 6));
  CHECK_THROWS(P("(1 2)(2 3)", 6));
  CHECK_THROWS(P("(1 2", 6));
}

TEST_CASE("cycle type and parity") {
  CHECK(cycle_type(Permutation(6)) == CycleType{1, 1, 1, 1, 1, 1});
  CHECK(cycle_type(P("(1 2 3 4 5 6)", 6)) == CycleType{6});
  CHECK(cycle_type(P("(1 2 3)(4 5)", 6)) == CycleType{3, 2, 1});
  CHECK(parity(P("(1 2)", 5)) == Parity::odd);
  CHECK(parity(P("(1 2 3)", 5)) == Parity::even);
  CHECK(parity(P("(1 2 3 4 5 6 7 8)", 8)) == Parity::odd);

  RngStream rng(11);
  for (int k = 0; k < 200; ++k) {
    unsigned const n = 2 + static_cast<unsigned>(rng.below(10));
    Permutation const p = random_perm(n, rng);
    auto const type = cycle_type(p);
    std::vector<Point> t(p.table().begin(), p.table().end());
    CHECK(type == oracle::orbit_lengths(t));
    CHECK(std::accumulate(type.begin(), type.end(), 0u) == n);
    CHECK(is_even(p) == oracle::even(t));
    CHECK(is_even(p) == ((n - type.size()) % 2 == 0));
  }
}

TEST_CASE("group order") {
  CHECK(group_order(4, {}) == 1);
  std::vector<Permutation> s4{P("(1 2)", 4), P("(1 2 3 4)", 4)};
  CHECK(group_order(s4) == 24);
  std::vector<Permutation> a4{P("(1 2 3)", 4), P("(2 3 4)", 4)};
  CHECK(group_order(a4) == 12);
  std::vector<Permutation> d8{P("(1 2 3 4)", 4), P("(1 3)", 4)};
  CHECK(group_order(d8) == 8);
  std::vector<Permutation> m{P("(1 2)(3 4)", 6), P("(5 6)", 6)};
  CHECK(group_order(m) == 4);
}

TEST_CASE("stabilizer chain against closure on random subgroups") {
  RngStream rng(5);
  for (int k = 0; k < 60; ++k) {
    unsigned const n = 3 + static_cast<unsigned>(rng.below(5));
    std::size_t const count = 1 + rng.below(3);
    std::vector<Permutation> gens;
    std::vector<oracle::Table> tables;
    for (std::size_t g = 0; g < count; ++g) {
      // sparse generators so that proper subgroups show up
      Permutation p = random_perm(n, rng);
      if (rng.below(2))
        p = Permutation::from_cycles(n, {{1, 2}});
      gens.push_back(p);
      tables.emplace_back(p.table().begin(), p.table().end());
    }
    StabilizerChain const chain(n, gens);
    CHECK(chain.order() == oracle::closure_order(tables, n));
    mpz_class prod = 1;
    for (auto s : chain.transversal_sizes())
      prod *= static_cast<unsigned long>(s);
    CHECK(prod == chain.order());
  }
}

TEST_CASE("membership agrees with closure") {
  std::vector<Permutation> gens{P("(1 2 3)", 5), P("(3 4 5)", 5)};
  StabilizerChain const chain(5, gens);
  CHECK(chain.order() == 60);
  for (auto const &t : oracle::all_tables(5))
    CHECK(chain.contains(Permutation::from_table(t)) == oracle::even(t));
}

TEST_CASE("generation class examples") {
  CHECK(generation_class(P("(1 2)", 6), P("(1 2 3 4 5 6)", 6)) == GenerationClass::full_symmetric);
  CHECK(generation_class(P("(1 2 3)", 6), P("(1 2 3)", 6)) == GenerationClass::proper);
  CHECK(generation_class(P("(1 2 3)", 5), P("(1 2 3 4 5)", 5)) == GenerationClass::alternating);
  CHECK(generation_class(P("(1 2 3)", 4), P("(2 3 4)", 4)) == GenerationClass::alternating);
  CHECK_THROWS_AS(generation_class(P("(1 2)", 4), P("(1 2)", 5)), DegreeMismatch);
}

TEST_CASE("generation class on every pair of S_n, n <= 5, against closure") {
  for (unsigned n = 2; n <= 5; ++n) {
    auto const tables = oracle::all_tables(n);
    std::vector<Permutation> perms;
    for (auto const &t : tables)
      perms.push_back(Permutation::from_table(t));
    std::size_t mismatches = 0, asymmetric = 0;
    for (std::size_t a = 0; a < tables.size(); ++a)
      for (std::size_t b = 0; b < tables.size(); ++b) {
        GenerationClass const c = generation_class(perms[a], perms[b]);
        oracle::Class const o = oracle::classify(tables[a], tables[b]);
        GenerationClass const expected = o == oracle::Class::full  ? GenerationClass::full_symmetric
                                         : o == oracle::Class::alt ? GenerationClass::alternating
                                                                   : GenerationClass::proper;
        mismatches += c != expected;
        asymmetric += c != generation_class(perms[b], perms[a]);
      }
    INFO("n = " << n);
    CHECK(mismatches == 0);
    CHECK(asymmetric == 0);
  }
}

TEST_CASE("group order divides n! and dominates element orders") {
  RngStream rng(99);
  for (int k = 0; k < 300; ++k) {
    unsigned const n = 4 + static_cast<unsigned>(rng.below(13));
    Permutation const x = random_perm(n, rng), y = random_perm(n, rng);
    std::vector<Permutation> gens{x, y};
    mpz_class const order = group_order(gens);
    CHECK(factorial(n) % order == 0);
    CHECK(order >= element_order(x));
    CHECK(order >= element_order(y));
  }
}

TEST_CASE("perm_rank round trip") {
  for (std::uint64_t r = 0; r < 720; ++r)
    CHECK(perm_rank(perm_unrank(r, 6)) == r);
}

}
