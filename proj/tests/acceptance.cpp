// Acceptance runner: `acceptance <k>` checks criterion k and prints one line.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "checks.hpp"
#include "symgen/construct.hpp"
#include "symgen/lll.hpp"

using namespace symgen;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, std::string const &what) {
    if (!ok) {
      if (!pass)
        note << "; ";
      else
        note.str("");
      pass = false;
      note << what;
    }
  }
};

mpz_class closed_form(unsigned n, unsigned a) {
  if (2 * a == n) {
    mpz_class const h = factorial(n / 2);
    return 2 * h * h / n;
  }
  return factorial(a - 1) * factorial(n - a - 1);
}

void counting(Outcome &o) {
  std::size_t deltas = 0;
  for (unsigned n = 4; n <= 10; n += 2)
    for (auto const &d : family_catalog(n, 2)) {
      ++deltas;
      std::size_t count = 0;
      for_each_cdelta(d, [&](std::vector<Point> const &) { ++count; });
      o.require(mpz_class(static_cast<unsigned long>(count)) == closed_form(n, static_cast<unsigned>(d.size())),
                "n=" + std::to_string(n) + " Delta=" + d.key() + ": enumerated " + std::to_string(count));
      o.require(cdelta_size(d) == count, "cdelta_size disagrees at Delta=" + d.key());
    }
  for (unsigned n = 4; n <= 16; n += 2)
    for (int i : {1, 2})
      o.require(family_size(n, i) == static_cast<unsigned long>(family_catalog(n, i).size()),
                "family_size(" + std::to_string(n) + "," + std::to_string(i) + ") != catalog length");
  if (o.pass)
    o.note << deltas << " index sets at n=4..10 match both closed forms; catalog lengths match for n<=16";
}

void covering(Outcome &o) {
  for (unsigned n : {6u, 8u, 10u})
    for (CoverMode m : {CoverMode::cycle_type, CoverMode::exhaustive}) {
      CoverReport const r = covers(n, 2, m);
      o.require(r.covered, "covers(" + std::to_string(n) + ",2," + std::string(to_string(m)) + ") = false");
    }
  for (unsigned n : {6u, 8u}) {
    auto const missed = uncovered_cycle_types(n, sigma_upper_bound_family(n));
    std::string types;
    for (auto const &t : missed)
      types += " " + to_string(t);
    o.require(missed.empty(), "sigma-upper family misses S_" + std::to_string(n) + " types" + types);
  }
  if (o.pass)
    o.note << "M^(2) covers S_6, S_8, S_10 in both modes; sigma-upper family covers S_6 and S_8";
}

void reproduced_values(Outcome &o) {
  auto const s3 = sigma_exact(3), s5 = sigma_exact(5);
  o.require(s3.value == 4, "sigma(S_3) = " + std::to_string(s3.value));
  o.require(s5.value == 16, "sigma(S_5) = " + std::to_string(s5.value));
  o.require(odd_degree_sigma(3) == s3.value && odd_degree_sigma(5) == s5.value, "odd-degree formula mismatch");
  auto const w5 = omega_exact(5, GenerationMode::full);
  o.require(w5.value < 16, "omega(S_5) = " + std::to_string(w5.value));
  std::ostringstream pairs;
  for (unsigned n : {3u, 4u, 5u}) {
    auto const s = sigma_exact(n).value, w = omega_exact(n, GenerationMode::full).value;
    pairs << " n=" << n << ":" << w << "<=" << s;
    o.require(w <= s, "omega > sigma at n=" + std::to_string(n));
  }
  if (o.pass)
    o.note << "sigma(S_3)=4, sigma(S_5)=16, omega(S_5)=" << w5.value << ";" << pairs.str();
}

void lemma_level(Outcome &o) {
  // at most n^2 conjugates
  for (unsigned n : {6u, 8u}) {
    std::vector<SubgroupDescriptor> shapes;
    for (unsigned k = 1; k <= n / 2; ++k) {
      PointSet s(k);
      std::iota(s.begin(), s.end(), 1u);
      shapes.push_back(SubgroupDescriptor::intransitive(n, s));
    }
    for (unsigned m = 2; m <= n / 2; ++m)
      if (n % m == 0)
        shapes.push_back(SubgroupDescriptor::imprimitive(n, checks::standard_partition(n, m)));
    unsigned worst = 0;
    for (auto const &t : oracle::all_tables(n)) {
      if (oracle::orbit_lengths(t).size() > 2)
        continue;
      Permutation const g = Permutation::from_table(t);
      for (auto const &m : shapes)
        worst = std::max(worst, conjugate_count(g, m));
    }
    o.require(worst <= n * n, "n=" + std::to_string(n) + ": an element lies in " + std::to_string(worst) +
                                  " conjugates");
  }
  auto const fb = checks::four_block_structure(8);
  o.require(fb.violations.empty(), "four-block structure: " + (fb.violations.empty() ? "" : fb.violations.front()));
  o.require(fb.max_partitions_per_pair <= 1, "more than one shared 4-block partition at n=8");
  long double log2_fact = 0;
  for (unsigned m = 1; m <= 10000; ++m) {
    log2_fact += std::log2(static_cast<long double>(m));
    auto const [lo, hi] = stirling_bounds_log2(m);
    long double const slack = 1e-12L * (1 + log2_fact);
    if (!(lo <= log2_fact + slack && log2_fact <= hi + slack)) {
      o.require(false, "Stirling fails at m=" + std::to_string(m));
      break;
    }
  }
  std::size_t reps = 0;
  for (auto [n, m] : std::vector<std::pair<unsigned, unsigned>>{{6, 3}, {12, 3}, {8, 4}, {12, 4}}) {
    auto const r = checks::block_fractions(n, m);
    reps += r.representatives;
    o.require(r.violations.empty(), r.violations.empty() ? "" : r.violations.front());
  }
  if (o.pass)
    o.note << "conjugates <= n^2 at n=6,8; four-block structure on " << fb.pairs << " pairs (" << fb.meeting
           << " meet a 4-block partition); Stirling m<=1e4; 3/4-block fractions on " << reps
           << " index-set orbits";
}

void lll_soundness(Outcome &o) {
  std::size_t rows = 0;
  for (auto [n, i] : std::vector<std::pair<unsigned, int>>{{6, 1}, {6, 2}, {8, 1}, {8, 2}, {10, 1}})
    for (auto const &r : checks::soundness(n, i)) {
      ++rows;
      o.require(r.exact <= r.bound, "n=" + std::to_string(n) + " i=" + std::to_string(i) + " j=" +
                                        std::to_string(r.j) + ": exact " + r.exact.get_str() + " > bound " +
                                        r.bound.get_str());
    }
  std::ostringstream th;
  for (int i : {1, 2}) {
    LllSweep const s = lll_sweep(i, 6, 2000);
    o.require(s.threshold.has_value(), "i=" + std::to_string(i) + ": no threshold up to 2000");
    o.require(s.monotone, "i=" + std::to_string(i) + ": satisfaction not monotone after the threshold");
    if (s.threshold)
      th << " n0(i=" << i << ")=" << *s.threshold;
  }
  for (unsigned n = 6; n <= 64; n += 2)
    for (int i : {1, 2})
      o.require(lll_certificate(n, i).sanity, "sanity fails at n=" + std::to_string(n));
  if (o.pass)
    o.note << rows << " (sizes, j) cells sound at n<=10;" << th.str()
           << ", monotone to 2000; sanity holds for 6<=n<=64";
}

void construction(Outcome &o) {
  struct Target {
    unsigned n;
    int i;
    std::size_t size;
  };
  for (Target const t : {Target{6, 1, 10}, Target{8, 1, 35}, Target{6, 2, 16}}) {
    int ok = 0;
    std::ostringstream detail;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      ConstructResult const r = construct(t.n, t.i, seed);
      if (auto const *c = std::get_if<ConstructionCertificate>(&r)) {
        VerifyResult const v = verify(c->to_json());
        o.require(v.ok, "emitted certificate fails verify (n=" + std::to_string(t.n) + ", seed " +
                            std::to_string(seed) + ")");
        ok += v.ok && c->assignment.size() == t.size;
      } else {
        detail << " " << std::get<ConstructFailure>(r).residual_bad_pairs;
      }
    }
    o.require(ok >= 3, "n=" + std::to_string(t.n) + " i=" + std::to_string(t.i) + ": " + std::to_string(ok) +
                           "/5 seeds certified (residual bad pairs:" + detail.str() + ")");
  }
  if (o.pass)
    o.note << "at least 3 of 5 seeds certified for (6,1), (8,1), (6,2)";
}

void generation_probabilities(Outcome &o) {
  for (unsigned n : {3u, 4u, 5u}) {
    GenerationStats const s = generation_counts_exact(n);
    o.require(s.p() == (s.a() + s.b() + 2 * s.c()) / 4, "p != (a+b+2c)/4 at n=" + std::to_string(n));
    o.require(s.b() == s.c(), "b != c at n=" + std::to_string(n));
  }
  GenerationStats const s4 = generation_counts_exact(4);
  McReport const mc = generation_prob_mc(4, 100000, 7);
  auto inside = [](McEstimate const &e, mpq_class const &q) { return e.lo <= q.get_d() && q.get_d() <= e.hi; };
  o.require(inside(mc.p, s4.p()) && inside(mc.a, s4.a()) && inside(mc.b, s4.b()),
            "Monte Carlo interval misses the exact value at n=4");
  for (Graph const &g : {graph_a(5), graph_b(5), generation_graph(5, GenerationMode::full)}) {
    std::vector<std::vector<bool>> adj(g.size(), std::vector<bool>(g.size()));
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = 0; b < g.size(); ++b)
        adj[a][b] = g.adj[a].test(b);
    std::size_t const w = oracle::clique_number(adj);
    o.require(max_clique(g).size() == w, "clique solver disagrees with Bron-Kerbosch");
    o.require(turan_lower_bound(g.size(), g.edge_count()) <= w, "Turan bound exceeds the clique number");
  }
  RngStream rng(2718);
  for (int k = 0; k < 20; ++k) {
    std::size_t const m = 5 + rng.below(26);
    Graph g(m);
    std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
    double const density = 0.2 + 0.75 * rng.unit();
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        if (rng.unit() < density) {
          g.add_edge(a, b);
          adj[a][b] = adj[b][a] = true;
        }
    o.require(turan_lower_bound(m, g.edge_count()) <= oracle::clique_number(adj),
              "Turan bound exceeds the clique number on a random graph");
  }
  if (o.pass)
    o.note << "identities exact at n=3,4,5; MC(n=4, 1e5) intervals contain p,a,b; Turan <= omega on 3+20 graphs";
}

void determinism(Outcome &o) {
  auto sealed = [](nlohmann::json j) {
    seal(j, "1970-01-01T00:00:00Z");
    return j.dump(2);
  };
  for (std::uint64_t seed : {3u, 17u}) {
    std::string first;
    for (unsigned threads : {1u, 2u, 4u}) {
      ConstructOptions opt;
      opt.threads = threads;
      opt.max_rounds = 2000;
      auto const r = construct(8, 1, seed, opt);
      std::string const text = std::visit([&](auto const &v) { return sealed(v.to_json()); }, r);
      if (first.empty())
        first = text;
      o.require(text == first, "construct output differs across worker counts (seed " + std::to_string(seed) + ")");
    }
  }
  std::string mc1 = sealed(generation_prob_mc(6, 20000, 11, 1).to_json());
  o.require(mc1 == sealed(generation_prob_mc(6, 20000, 11, 4).to_json()), "Monte Carlo differs across workers");
  o.require(sealed(generation_counts_exact(5, 1).to_json()) == sealed(generation_counts_exact(5, 3).to_json()),
            "exact counts differ across workers");
  o.require(sealed(lll_certificate(100, 2).to_json()) == sealed(lll_certificate(100, 2).to_json()),
            "local lemma report differs between runs");
  if (o.pass)
    o.note << "construct (n=8, 2 seeds, 1/2/4 workers), Monte Carlo, exact counts and LLL reports byte-identical";
}

} // namespace

int main(int argc, char **argv) {
  std::vector<std::pair<char const *, std::function<void(Outcome &)>>> const criteria{
      {"counting identities", counting},     {"covering", covering},
      {"reproduced values", reproduced_values},   {"lemma-level properties", lemma_level},
      {"local lemma soundness", lll_soundness}, {"construction end-to-end", construction},
      {"generation probabilities", generation_probabilities}, {"determinism", determinism}};
  if (argc != 2) {
    std::cerr << "usage: acceptance <1-8>\n";
    return 2;
  }
  int const k = std::atoi(argv[1]);
  if (k < 1 || k > static_cast<int>(criteria.size())) {
    std::cerr << "no criterion " << argv[1] << "\n";
    return 2;
  }
  Outcome o;
  auto const t0 = std::chrono::steady_clock::now();
  try {
    criteria[k - 1].second(o);
  } catch (std::exception const &e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "criterion " << k << " (" << criteria[k - 1].first << "): " << (o.pass ? "PASS" : "FAIL") << " - "
            << o.note.str() << " [" << std::fixed << std::setprecision(1) << secs << "s]" << std::endl;
  return o.pass ? 0 : 1;
}
