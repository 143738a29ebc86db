#include <doctest.h>

#include <map>
#include <tuple>

#include "checks.hpp"
#include "symgen/construct.hpp"
#include "symgen/lll.hpp"

using namespace symgen;

namespace {

struct Search {
  std::vector<std::vector<Permutation>> cand;
  int family = 1;
  std::vector<std::size_t> pick;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, bool> memo;

  bool ok(std::size_t b, std::size_t y, std::size_t a, std::size_t x) {
    auto const key = std::make_tuple(b, y, a, x);
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, pair_ok(family, generation_class(cand[b][y], cand[a][x]))).first;
    return it->second;
  }

  bool dfs(std::size_t a) {
    if (a == cand.size())
      return true;
    for (std::size_t x = 0; x < cand[a].size(); ++x) {
      bool good = true;
      for (std::size_t b = 0; b < a && good; ++b)
        good = ok(b, pick[b], a, x);
      if (good) {
        pick[a] = x;
        if (dfs(a + 1))
          return true;
      }
    }
    return false;
  }
};

// Depth-first search over every choice of one element per C(Delta).
std::optional<std::vector<Permutation>> exhaustive_assignment(unsigned n, int family) {
  Search s;
  s.family = family;
  for (auto const &d : family_catalog(n, family)) {
    std::vector<Permutation> v;
    for (auto const &t : checks::members(d))
      v.push_back(Permutation::from_table(t));
    s.cand.push_back(std::move(v));
  }
  s.pick.assign(s.cand.size(), 0);
  if (!s.dfs(0))
    return std::nullopt;
  std::vector<Permutation> out;
  for (std::size_t a = 0; a < s.cand.size(); ++a)
    out.push_back(s.cand[a][s.pick[a]]);
  return out;
}

nlohmann::json certificate_from(unsigned n, int family, std::vector<Permutation> const &g) {
  ConstructionCertificate c;
  c.n = n;
  c.family = family;
  c.seed = 0;
  auto const cat = family_catalog(n, family);
  for (std::size_t k = 0; k < cat.size(); ++k)
    c.assignment.push_back({cat[k], g[k]});
  nlohmann::json j = c.to_json();
  seal(j, "1970-01-01T00:00:00Z");
  return j;
}

bool mentions(VerifyResult const &v, std::string const &needle) {
  return std::any_of(v.violations.begin(), v.violations.end(),
                     [&](std::string const &s) { return s.find(needle) != std::string::npos; });
}

} // namespace

TEST_SUITE("construct") {

TEST_CASE("no valid assignment exists at n = 6") {
  CHECK_FALSE(exhaustive_assignment(6, 1));
  CHECK_FALSE(exhaustive_assignment(6, 2));
}

TEST_CASE("construct reports failure when rounds run out") {
  ConstructOptions o;
  o.max_rounds = 300;
  ConstructResult const r = construct(6, 1, 42, o);
  REQUIRE(std::holds_alternative<ConstructFailure>(r));
  auto const &f = std::get<ConstructFailure>(r);
  CHECK(f.rounds == 300);
  CHECK(f.residual_bad_pairs > 0);
  CHECK(f.to_json().at("kind") == "FAILURE");
}

TEST_CASE("defaults and limits") {
  ConstructOptions o;
  o.max_rounds = 1;
  auto const r = construct(6, 2, 1, o);
  REQUIRE(std::holds_alternative<ConstructFailure>(r));
  o.max_pairs = 10;
  CHECK_THROWS_AS(construct(6, 1, 1, o), std::length_error);
  CHECK_THROWS_AS(construct(4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(construct(7, 1, 1), OddDegreeError);
}

TEST_CASE("replay is identical across seeds and worker counts") {
  for (std::uint64_t seed : {1u, 42u}) {
    ConstructOptions a, b;
    a.max_rounds = b.max_rounds = 150;
    a.threads = 1;
    b.threads = 4;
    auto const x = construct(8, 1, seed, a), y = construct(8, 1, seed, b);
    auto dump = [](ConstructResult const &r) {
      return std::visit([](auto const &v) { return v.to_json().dump(); }, r);
    };
    CHECK(dump(x) == dump(y));
  }
}

TEST_CASE("verify accepts a valid n = 8 assignment and rejects tampering") {
  auto const g = exhaustive_assignment(8, 1);
  REQUIRE(g);
  nlohmann::json const good = certificate_from(8, 1, *g);
  VerifyResult const ok = verify(good, 2);
  for (auto const &v : ok.violations)
    INFO(v);
  CHECK(ok.ok);

  SUBCASE("identity in place of an n-cycle") {
    nlohmann::json bad = good;
    bad["assignment"][3]["g"] = "()";
    seal(bad, "1970-01-01T00:00:00Z");
    VerifyResult const v = verify(bad);
    CHECK_FALSE(v.ok);
    CHECK(mentions(v, "not an n-cycle"));
    CHECK(mentions(v, "not in C(Delta)"));
  }
  SUBCASE("a proper pair") {
    // replace g_1 by a member of C(Delta_1) that fails with g_0
    auto const cat = family_catalog(8, 1);
    nlohmann::json bad = good;
    std::optional<Permutation> spoiler;
    for (auto const &t : checks::members(cat[1])) {
      Permutation const p = Permutation::from_table(t);
      if (generation_class((*g)[0], p) == GenerationClass::proper) {
        spoiler = p;
        break;
      }
    }
    REQUIRE(spoiler);
    bad["assignment"][1]["g"] = spoiler->to_string();
    seal(bad, "1970-01-01T00:00:00Z");
    VerifyResult const v = verify(bad);
    CHECK_FALSE(v.ok);
    CHECK(mentions(v, "pair [1,2,3,4] / " + nlohmann::json(cat[1].points()).dump() + ": PROPER"));
  }
  SUBCASE("checksum") {
    nlohmann::json bad = good;
    bad["seed"] = 99;
    CHECK(mentions(verify(bad), "checksum mismatch"));
    bad["metadata"]["created"] = "2000-01-01T00:00:00Z";
    bad["seed"] = 0;
    CHECK(verify(bad).ok); // the timestamp is outside the checksum
  }
  SUBCASE("missing and duplicated entries") {
    nlohmann::json bad = good;
    bad["assignment"][5] = bad["assignment"][4];
    seal(bad, "1970-01-01T00:00:00Z");
    VerifyResult const v = verify(bad);
    CHECK(mentions(v, "duplicate index"));
    CHECK(mentions(v, "cardinality"));
  }
  SUBCASE("wrong family member") {
    nlohmann::json bad = good;
    bad["assignment"][0]["delta"] = {2, 3, 4, 5};
    seal(bad, "1970-01-01T00:00:00Z");
    CHECK(mentions(verify(bad), "not a member"));
  }
  SUBCASE("malformed") {
    CHECK(mentions(verify(nlohmann::json{{"kind", "CONSTRUCTION"}}), "malformed certificate"));
    CHECK(mentions(verify(nlohmann::json{{"kind", "OTHER"}}), "unknown certificate kind"));
  }
}

TEST_CASE("verify recomputes local lemma reports") {
  nlohmann::json j = lll_certificate(30, 2).to_json();
  seal(j, "1970-01-01T00:00:00Z");
  CHECK(verify(j).ok);
  j["thresholds"]["lll"] = true;
  j["bounds"]["5"] = -400.0;
  seal(j, "1970-01-01T00:00:00Z");
  VerifyResult const v = verify(j);
  CHECK(mentions(v, "thresholds"));
  CHECK(mentions(v, "bounds.5"));
}

TEST_CASE("pair acceptance by family") {
  CHECK(pair_ok(1, GenerationClass::full_symmetric));
  CHECK_FALSE(pair_ok(1, GenerationClass::alternating));
  CHECK(pair_ok(2, GenerationClass::alternating));
  CHECK_FALSE(pair_ok(2, GenerationClass::proper));
}

}
