#include "symgen/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "symgen/families.hpp"
#include "symgen/parallel.hpp"
#include "symgen/rng.hpp"

namespace symgen {

// ---- Bitset ----

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : words_)
    c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bitset::any() const {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

bool Bitset::subset_of(Bitset const &other) const {
  for (std::size_t k = 0; k < words_.size(); ++k)
    if (words_[k] & ~other.words_[k])
      return false;
  return true;
}

std::size_t Bitset::count_and(Bitset const &other) const {
  std::size_t c = 0;
  for (std::size_t k = 0; k < words_.size(); ++k)
    c += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
  return c;
}

Bitset &Bitset::operator|=(Bitset const &other) {
  for (std::size_t k = 0; k < words_.size(); ++k)
    words_[k] |= other.words_[k];
  return *this;
}

Bitset &Bitset::operator&=(Bitset const &other) {
  for (std::size_t k = 0; k < words_.size(); ++k)
    words_[k] &= other.words_[k];
  return *this;
}

Bitset Bitset::minus(Bitset const &other) const {
  Bitset out = *this;
  for (std::size_t k = 0; k < words_.size(); ++k)
    out.words_[k] &= ~other.words_[k];
  return out;
}

std::size_t Bitset::first() const { return next(0); }

std::size_t Bitset::next(std::size_t k) const {
  if (k >= size_)
    return size_;
  std::size_t w = k >> 6;
  std::uint64_t word = words_[w] & (~std::uint64_t{0} << (k & 63));
  while (true) {
    if (word)
      return std::min(size_, (w << 6) + static_cast<std::size_t>(std::countr_zero(word)));
    if (++w >= words_.size())
      return size_;
    word = words_[w];
  }
}

std::size_t Bitset::hash() const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (auto w : words_)
    h = (h ^ w) * 0x100000001b3ull;
  return h;
}

// ---- SymmetricGroupTable ----

SymmetricGroupTable::SymmetricGroupTable(unsigned n) : n_(n) {
  if (n < 1 || n > kLatticeMaxDegree)
    throw std::invalid_argument("group tables are limited to 1 <= n <= " +
                                std::to_string(kLatticeMaxDegree));
  std::size_t const order = factorial(n).get_ui();
  elements_.reserve(order);
  for (std::size_t k = 0; k < order; ++k)
    elements_.push_back(Permutation::from_table(perm_unrank(k, n)));
  mul_.resize(order * order);
  inv_.resize(order);
  even_.resize(order);
  for (std::size_t a = 0; a < order; ++a) {
    even_[a] = is_even(elements_[a]);
    inv_[a] = static_cast<std::uint16_t>(index(inverse(elements_[a])));
    for (std::size_t b = 0; b < order; ++b)
      mul_[a * order + b] = static_cast<std::uint16_t>(index(compose(elements_[a], elements_[b])));
  }
}

std::size_t SymmetricGroupTable::index(Permutation const &p) const {
  if (p.degree() != n_)
    throw DegreeMismatch(n_, p.degree());
  return static_cast<std::size_t>(perm_rank(p.table()));
}

Bitset SymmetricGroupTable::closure(std::vector<std::size_t> const &gens) const {
  Bitset seen(order());
  std::vector<std::size_t> queue{identity()};
  seen.set(identity());
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (std::size_t g : gens) {
      std::size_t const y = mul(queue[head], g);
      if (!seen.test(y)) {
        seen.set(y);
        queue.push_back(y);
      }
    }
  return seen;
}

// ---- SubgroupLattice ----

namespace {

struct BitsetHash {
  std::size_t operator()(Bitset const &b) const { return b.hash(); }
};

} // namespace

SubgroupLattice SubgroupLattice::build(unsigned n) {
  SubgroupLattice lat(n);
  auto const &g = lat.table_;
  std::unordered_map<Bitset, std::size_t, BitsetHash> index;
  std::vector<Subgroup> found;
  auto insert = [&](Bitset elements, std::vector<std::size_t> gens) {
    if (index.count(elements))
      return;
    index.emplace(elements, found.size());
    Subgroup h;
    h.order = elements.count();
    h.elements = std::move(elements);
    h.generators = std::move(gens);
    found.push_back(std::move(h));
  };

  std::vector<std::size_t> cyclic_gens;
  for (std::size_t x = 0; x < g.order(); ++x) {
    Bitset c = g.closure({x});
    if (!index.count(c))
      cyclic_gens.push_back(x);
    insert(std::move(c), x == g.identity() ? std::vector<std::size_t>{} : std::vector<std::size_t>{x});
  }
  for (std::size_t k = 0; k < found.size(); ++k)
    for (std::size_t c : cyclic_gens) {
      if (found[k].elements.test(c))
        continue;
      std::vector<std::size_t> gens = found[k].generators;
      gens.push_back(c);
      Bitset joined = g.closure(gens);
      insert(std::move(joined), std::move(gens));
    }

  std::stable_sort(found.begin(), found.end(),
                   [](Subgroup const &a, Subgroup const &b) { return a.order < b.order; });
  std::size_t const full = g.order();
  for (std::size_t k = 0; k < found.size(); ++k) {
    if (found[k].order == full)
      continue;
    bool maximal = true;
    for (std::size_t l = k + 1; l < found.size() && maximal; ++l)
      if (found[l].order > found[k].order && found[l].order < full &&
          found[k].elements.subset_of(found[l].elements))
        maximal = false;
    found[k].maximal = maximal;
  }
  lat.subgroups_ = std::move(found);
  return lat;
}

std::vector<std::size_t> SubgroupLattice::maximal() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < subgroups_.size(); ++k)
    if (subgroups_[k].maximal)
      out.push_back(k);
  return out;
}

std::size_t SubgroupLattice::recount() const {
  auto const &g = table_;
  std::unordered_map<Bitset, std::vector<std::size_t>, BitsetHash> seen;
  std::vector<Bitset> queue;
  Bitset trivial(g.order());
  trivial.set(g.identity());
  seen.emplace(trivial, std::vector<std::size_t>{});
  queue.push_back(trivial);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Bitset const h = queue[head];
    std::vector<std::size_t> const gens = seen.at(h);
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (h.test(x))
        continue;
      std::vector<std::size_t> more = gens;
      more.push_back(x);
      Bitset j = g.closure(more);
      if (!seen.count(j)) {
        seen.emplace(j, std::move(more));
        queue.push_back(std::move(j));
      }
    }
  }
  return seen.size();
}

std::string SubgroupLattice::describe(Subgroup const &h) const {
  std::string s = "order " + std::to_string(h.order) + ": <";
  for (std::size_t k = 0; k < h.generators.size(); ++k) {
    if (k)
      s += ", ";
    s += table_.element(h.generators[k]).to_string();
  }
  return s + ">";
}

// ---- covering number ----

nlohmann::json CoverWitness::to_json() const { return {{"value", value}, {"subgroups", subgroups}}; }

namespace {

void require_small(unsigned n, unsigned lo, unsigned hi, char const *what) {
  if (n < lo || n > hi)
    throw std::invalid_argument(std::string(what) + " supports " + std::to_string(lo) +
                                " <= n <= " + std::to_string(hi));
}

struct CoverSearch {
  std::vector<Bitset> const &sets;
  std::vector<std::vector<std::size_t>> containing; // element -> sets
  std::vector<std::size_t> chosen, best;

  CoverSearch(std::vector<Bitset> const &s, std::size_t universe) : sets(s), containing(universe) {
    for (std::size_t k = 0; k < sets.size(); ++k)
      for (std::size_t x = sets[k].first(); x < universe; x = sets[k].next(x + 1))
        containing[x].push_back(k);
  }

  void greedy(Bitset uncovered) {
    best.clear();
    while (uncovered.any()) {
      std::size_t pick = 0, gain = 0;
      for (std::size_t k = 0; k < sets.size(); ++k) {
        std::size_t const c = sets[k].count_and(uncovered);
        if (c > gain) {
          gain = c;
          pick = k;
        }
      }
      if (gain == 0)
        throw std::logic_error("subgroups do not cover the group");
      best.push_back(pick);
      uncovered = uncovered.minus(sets[pick]);
    }
  }

  void search(Bitset const &uncovered) {
    if (!uncovered.any()) {
      if (chosen.size() < best.size())
        best = chosen;
      return;
    }
    std::size_t const left = uncovered.count();
    std::size_t widest = 0;
    for (auto const &s : sets)
      widest = std::max(widest, s.count_and(uncovered));
    if (widest == 0 || chosen.size() + (left + widest - 1) / widest >= best.size())
      return;
    std::size_t pivot = uncovered.size(), fewest = SIZE_MAX;
    for (std::size_t x = uncovered.first(); x < uncovered.size(); x = uncovered.next(x + 1))
      if (containing[x].size() < fewest) {
        fewest = containing[x].size();
        pivot = x;
      }
    for (std::size_t k : containing[pivot]) {
      chosen.push_back(k);
      search(uncovered.minus(sets[k]));
      chosen.pop_back();
    }
  }
};

CoverWitness witness_from(SubgroupLattice const &lat, std::vector<std::size_t> const &maximal,
                          std::vector<std::size_t> const &picks) {
  CoverWitness w;
  w.value = picks.size();
  for (std::size_t k : picks)
    w.subgroups.push_back(lat.describe(lat.subgroups()[maximal[k]]));
  return w;
}

} // namespace

CoverWitness sigma_exact(unsigned n) {
  require_small(n, 3, 5, "sigma_exact");
  auto const lat = SubgroupLattice::build(n);
  auto const maximal = lat.maximal();
  std::vector<Bitset> sets;
  for (std::size_t k : maximal)
    sets.push_back(lat.subgroups()[k].elements);
  std::size_t const universe = lat.group().order();
  Bitset all(universe);
  for (std::size_t x = 0; x < universe; ++x)
    all.set(x);
  CoverSearch s(sets, universe);
  s.greedy(all);
  s.search(all);
  return witness_from(lat, maximal, s.best);
}

CoverWitness sigma_exhaustive(unsigned n) {
  require_small(n, 3, 5, "sigma_exhaustive");
  auto const lat = SubgroupLattice::build(n);
  auto const maximal = lat.maximal();
  std::size_t const m = maximal.size();
  std::size_t const universe = lat.group().order();
  for (std::size_t k = 1; k <= m; ++k) {
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
      Bitset u(universe);
      for (std::size_t p : pick)
        u |= lat.subgroups()[maximal[p]].elements;
      if (u.count() == universe)
        return witness_from(lat, maximal, pick);
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == m - k + i - 1)
        --i;
      if (i == 0)
        break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j)
        pick[j] = pick[j - 1] + 1;
    }
  }
  throw std::logic_error("maximal subgroups do not cover the group");
}

mpz_class odd_degree_sigma(unsigned n) {
  if (n < 3 || n % 2 == 0)
    throw std::invalid_argument("odd_degree_sigma needs odd n >= 3");
  return mpz_class(1) << (n - 1);
}

// ---- cliques ----

std::uint64_t Graph::edge_count() const {
  std::uint64_t twice = 0;
  for (auto const &row : adj)
    twice += row.count();
  return twice / 2;
}

namespace {

struct CliqueSearch {
  Graph const &g;
  std::vector<std::size_t> current, best;

  void expand(Bitset p) {
    std::vector<std::size_t> order, colour;
    Bitset u = p;
    std::size_t c = 0;
    while (u.any()) {
      ++c;
      Bitset q = u;
      while (q.any()) {
        std::size_t const v = q.first();
        u.reset(v);
        q.reset(v);
        q = q.minus(g.adj[v]);
        order.push_back(v);
        colour.push_back(c);
      }
    }
    for (std::size_t k = order.size(); k-- > 0;) {
      if (current.size() + colour[k] <= best.size())
        return;
      std::size_t const v = order[k];
      current.push_back(v);
      Bitset next = p;
      next &= g.adj[v];
      if (next.any())
        expand(next);
      else if (current.size() > best.size())
        best = current;
      current.pop_back();
      p.reset(v);
    }
  }
};

} // namespace

std::vector<std::size_t> max_clique(Graph const &g) {
  if (g.size() == 0)
    return {};
  CliqueSearch s{g, {}, {}};
  Bitset all(g.size());
  for (std::size_t v = 0; v < g.size(); ++v)
    all.set(v);
  s.expand(all);
  std::sort(s.best.begin(), s.best.end());
  return s.best;
}

std::string_view to_string(GenerationMode m) {
  return m == GenerationMode::full ? "FULL" : "AT_LEAST_ALT";
}

nlohmann::json CliqueWitness::to_json() const { return {{"value", value}, {"elements", elements}}; }

namespace {

std::vector<Permutation> all_permutations(unsigned n) {
  std::size_t const order = factorial(n).get_ui();
  std::vector<Permutation> out;
  out.reserve(order);
  for (std::size_t k = 0; k < order; ++k)
    out.push_back(Permutation::from_table(perm_unrank(k, n)));
  return out;
}

Graph graph_on(std::vector<Permutation> const &v, std::function<bool(GenerationClass)> const &edge) {
  Graph g(v.size());
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b)
      if (edge(generation_class(v[a], v[b])))
        g.add_edge(a, b);
  return g;
}

} // namespace

Graph generation_graph(unsigned n, GenerationMode mode) {
  require_small(n, 2, kLatticeMaxDegree, "generation_graph");
  return graph_on(all_permutations(n), [mode](GenerationClass c) {
    return c == GenerationClass::full_symmetric ||
           (mode == GenerationMode::at_least_alt && c == GenerationClass::alternating);
  });
}

CliqueWitness omega_exact(unsigned n, GenerationMode mode) {
  require_small(n, 3, 5, "omega_exact");
  auto const elements = all_permutations(n);
  auto const clique = max_clique(generation_graph(n, mode));
  CliqueWitness w;
  w.value = clique.size();
  for (std::size_t v : clique)
    w.elements.push_back(elements[v].to_string());
  return w;
}

Graph graph_a(unsigned n, std::vector<Permutation> *vertices) {
  require_small(n, 3, kLatticeMaxDegree, "graph_a");
  std::vector<Permutation> v;
  for (auto &p : all_permutations(n))
    if (is_even(p))
      v.push_back(std::move(p));
  Graph g = graph_on(v, [](GenerationClass c) { return c == GenerationClass::alternating; });
  if (vertices)
    *vertices = std::move(v);
  return g;
}

Graph graph_b(unsigned n, std::vector<Permutation> *vertices) {
  require_small(n, 3, kLatticeMaxDegree, "graph_b");
  std::vector<Permutation> v;
  for (auto &p : all_permutations(n))
    if (!is_even(p))
      v.push_back(std::move(p));
  Graph g = graph_on(v, [](GenerationClass c) { return c == GenerationClass::full_symmetric; });
  if (vertices)
    *vertices = std::move(v);
  return g;
}

// ---- generation probabilities ----

mpq_class GenerationStats::ratio(mpz_class const &h, mpz_class const &t) {
  mpq_class q(h, t);
  q.canonicalize();
  return q;
}

nlohmann::json GenerationStats::to_json() const {
  auto entry = [](mpz_class const &h, mpz_class const &t, mpq_class const &q) {
    return nlohmann::json{{"hits", h.get_str()}, {"pairs", t.get_str()}, {"value", q.get_str()},
                          {"decimal", q.get_d()}};
  };
  return {{"n", n},
          {"p", entry(p_hits, p_total, p())},
          {"a", entry(a_hits, a_total, a())},
          {"b", entry(b_hits, b_total, b())},
          {"c", entry(c_hits, c_total, c())}};
}

GenerationStats generation_counts_exact(unsigned n, unsigned threads) {
  require_small(n, 3, kLatticeMaxDegree, "generation_counts_exact");
  auto const elements = all_permutations(n);
  std::size_t const order = elements.size();
  std::vector<std::uint8_t> even(order);
  for (std::size_t k = 0; k < order; ++k)
    even[k] = is_even(elements[k]);
  // Per-row counts of unordered pairs {x, y} with x <= y; the class is symmetric.
  struct Row {
    std::uint64_t p = 0, a = 0, b = 0, c = 0;
  };
  std::vector<Row> rows(order);
  parallel_for(order, threads, [&](std::size_t x) {
    Row r;
    for (std::size_t y = x; y < order; ++y) {
      GenerationClass const cls = generation_class(elements[x], elements[y]);
      std::uint64_t const mult = x == y ? 1 : 2;
      bool const full = cls == GenerationClass::full_symmetric;
      if (full || cls == GenerationClass::alternating)
        r.p += mult;
      if (even[x] && even[y] && cls == GenerationClass::alternating)
        r.a += mult;
      if (!even[x] && !even[y] && full)
        r.b += mult;
      if (even[x] != even[y] && full)
        ++r.c; // exactly one of the two orders puts the even element first
    }
    rows[x] = r;
  });
  GenerationStats s;
  s.n = n;
  for (auto const &r : rows) {
    s.p_hits += static_cast<unsigned long>(r.p);
    s.a_hits += static_cast<unsigned long>(r.a);
    s.b_hits += static_cast<unsigned long>(r.b);
    s.c_hits += static_cast<unsigned long>(r.c);
  }
  mpz_class const total(static_cast<unsigned long>(order));
  mpz_class const half = total / 2;
  s.p_total = total * total;
  s.a_total = s.b_total = s.c_total = half * half;
  return s;
}

McEstimate wilson(std::uint64_t hits, std::uint64_t trials) {
  constexpr double z = 2.5758293035489004;
  McEstimate e;
  e.hits = hits;
  e.trials = trials;
  if (trials == 0)
    return e;
  double const t = static_cast<double>(trials);
  double const p = static_cast<double>(hits) / t;
  double const denom = 1.0 + z * z / t;
  double const centre = (p + z * z / (2 * t)) / denom;
  double const half = z * std::sqrt(p * (1 - p) / t + z * z / (4 * t * t)) / denom;
  e.estimate = p;
  e.lo = std::max(0.0, centre - half);
  e.hi = std::min(1.0, centre + half);
  return e;
}

nlohmann::json McReport::to_json() const {
  auto entry = [](McEstimate const &e) {
    return nlohmann::json{{"hits", e.hits}, {"trials", e.trials}, {"estimate", e.estimate},
                          {"ci99", {e.lo, e.hi}}};
  };
  return {{"n", n},          {"trials", trials},   {"seed", seed},       {"p", entry(p)},
          {"a", entry(a)},   {"b", entry(b)},      {"reference_1_minus_1_over_n", reference}};
}

McReport generation_prob_mc(unsigned n, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (n < 3)
    throw std::invalid_argument("generation_prob_mc needs n >= 3");
  constexpr std::uint64_t kChunk = 4096;
  std::uint64_t const chunks = (trials + kChunk - 1) / kChunk;
  struct Counts {
    std::uint64_t p = 0, a = 0, b = 0;
  };
  std::vector<Counts> counts(chunks);
  Permutation const swap12 = Permutation::from_cycles(n, {{1, 2}});
  parallel_for(chunks, threads, [&](std::size_t c) {
    RngStream stream = RngStream::derive(
        seed, "mc/n=" + std::to_string(n) + "/chunk=" + std::to_string(c));
    std::uint64_t const todo = std::min(kChunk, trials - c * kChunk);
    std::vector<Point> t(n);
    auto draw = [&] {
      std::iota(t.begin(), t.end(), Point{0});
      stream.shuffle(std::span<Point>(t));
      return Permutation::from_table(t);
    };
    Counts k;
    for (std::uint64_t i = 0; i < todo; ++i) {
      Permutation const x = draw(), y = draw();
      GenerationClass const cls = generation_class(x, y);
      if (cls != GenerationClass::proper)
        ++k.p;
      bool const xe = is_even(x), ye = is_even(y);
      Permutation const xa = xe ? x : compose(x, swap12);
      Permutation const ya = ye ? y : compose(y, swap12);
      if (generation_class(xa, ya) == GenerationClass::alternating)
        ++k.a;
      Permutation const xb = xe ? compose(x, swap12) : x;
      Permutation const yb = ye ? compose(y, swap12) : y;
      if (generation_class(xb, yb) == GenerationClass::full_symmetric)
        ++k.b;
    }
    counts[c] = k;
  });
  Counts sum;
  for (auto const &k : counts) {
    sum.p += k.p;
    sum.a += k.a;
    sum.b += k.b;
  }
  McReport r;
  r.n = n;
  r.trials = trials;
  r.seed = seed;
  r.p = wilson(sum.p, trials);
  r.a = wilson(sum.a, trials);
  r.b = wilson(sum.b, trials);
  r.reference = 1.0 - 1.0 / n;
  return r;
}

std::uint64_t turan_lower_bound(std::uint64_t m, std::uint64_t edges) {
  if (m == 0)
    return 0;
  mpz_class const mm = mpz_class(static_cast<unsigned long>(m)) * static_cast<unsigned long>(m);
  mpz_class const max_edges = mpz_class(static_cast<unsigned long>(m)) * (m - 1) / 2;
  if (mpz_class(static_cast<unsigned long>(edges)) > max_edges)
    throw std::invalid_argument("edge count exceeds m(m-1)/2");
  // edges > (1 - 1/r) m^2/2  <=>  r < m^2 / (m^2 - 2 edges)
  mpz_class const den = mm - 2 * mpz_class(static_cast<unsigned long>(edges));
  mpz_class const ceil = (mm + den - 1) / den;
  return ceil.get_ui(); // (ceil - 1) + 1
}

double proposition_bound(double n, double epsilon, double c1) {
  if (!(c1 > 0) || !(epsilon > 0 && epsilon < 1))
    throw std::invalid_argument("proposition_bound needs c1 > 0 and 0 < epsilon < 1");
  return n - c1 * std::pow(n, epsilon);
}

} // namespace symgen
