#pragma once

// Brute-force reference computations shared by the unit tests and the
// acceptance runner. Nothing here calls the stabilizer chain or the
// membership code it is meant to check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <unordered_set>
#include <vector>

#include <gmpxx.h>

#include "symgen/perm.hpp"

namespace oracle {

using Table = std::vector<symgen::Point>;

inline std::vector<Table> all_tables(unsigned n) {
  std::vector<Table> out;
  Table t(n);
  std::iota(t.begin(), t.end(), symgen::Point{0});
  do
    out.push_back(t);
  while (std::next_permutation(t.begin(), t.end()));
  return out;
}

inline Table mul(Table const &p, Table const &q) {
  Table r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x)
    r[x] = p[q[x]];
  return r;
}

struct TableHash {
  std::size_t operator()(Table const &t) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : t)
      h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

// Order of <gens> by breadth-first closure.
inline std::size_t closure_order(std::vector<Table> const &gens, unsigned n) {
  Table id(n);
  std::iota(id.begin(), id.end(), symgen::Point{0});
  std::unordered_set<Table, TableHash> seen{id};
  std::vector<Table> frontier{id};
  while (!frontier.empty()) {
    std::vector<Table> next;
    for (auto const &x : frontier)
      for (auto const &g : gens) {
        Table y = mul(g, x);
        if (seen.insert(y).second)
          next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return seen.size();
}

inline std::size_t factorial(unsigned n) { return n <= 1 ? 1 : n * factorial(n - 1); }

inline bool even(Table const &t) {
  std::size_t inversions = 0;
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = a + 1; b < t.size(); ++b)
      inversions += t[a] > t[b];
  return inversions % 2 == 0;
}

enum class Class { full, alt, proper };

inline Class classify(Table const &x, Table const &y) {
  unsigned const n = static_cast<unsigned>(x.size());
  std::size_t const order = closure_order({x, y}, n);
  if (order == factorial(n))
    return Class::full;
  if (2 * order == factorial(n) && even(x) && even(y))
    return Class::alt;
  return Class::proper;
}

// Sorted cycle lengths by walking orbits.
inline std::vector<unsigned> orbit_lengths(Table const &t) {
  std::vector<unsigned> out;
  std::vector<bool> seen(t.size(), false);
  for (std::size_t x = 0; x < t.size(); ++x) {
    if (seen[x])
      continue;
    unsigned len = 0;
    for (std::size_t y = x; !seen[y]; y = t[y]) {
      seen[y] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

// Does t map the 1-based set onto itself?
inline bool fixes_set(Table const &t, std::vector<unsigned> const &set) {
  std::set<unsigned> s(set.begin(), set.end());
  for (unsigned x : set)
    if (!s.count(t[x - 1] + 1))
      return false;
  return true;
}

// Does t map every block of the 1-based partition onto some block?
inline bool permutes_blocks(Table const &t, std::vector<std::vector<unsigned>> const &blocks) {
  std::vector<int> block_of(t.size(), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (unsigned x : blocks[b])
      block_of[x - 1] = static_cast<int>(b);
  for (auto const &blk : blocks) {
    int const target = block_of[t[blk.front() - 1]];
    for (unsigned x : blk)
      if (block_of[t[x - 1]] != target)
        return false;
  }
  return true;
}

// All k-subsets of {1..n}, lexicographic.
inline std::vector<std::vector<unsigned>> subsets(unsigned n, unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  auto rec = [&](auto &&self, unsigned from) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (unsigned x = from; x <= n; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

// All partitions of {1..n} into m blocks of size n/m.
inline std::vector<std::vector<std::vector<unsigned>>> block_partitions(unsigned n, unsigned m) {
  unsigned const d = n / m;
  std::vector<std::vector<std::vector<unsigned>>> out;
  std::vector<std::vector<unsigned>> blocks;
  std::vector<bool> used(n + 1, false);
  auto rec = [&](auto &&self) -> void {
    unsigned first = 1;
    while (first <= n && used[first])
      ++first;
    if (first > n) {
      out.push_back(blocks);
      return;
    }
    std::vector<unsigned> rest;
    for (unsigned x = first + 1; x <= n; ++x)
      if (!used[x])
        rest.push_back(x);
    std::vector<bool> pick(rest.size(), false);
    std::fill(pick.begin(), pick.begin() + (d - 1), true);
    do {
      std::vector<unsigned> blk{first};
      for (std::size_t k = 0; k < rest.size(); ++k)
        if (pick[k])
          blk.push_back(rest[k]);
      for (unsigned x : blk)
        used[x] = true;
      blocks.push_back(blk);
      self(self);
      blocks.pop_back();
      for (unsigned x : blk)
        used[x] = false;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  };
  rec(rec);
  return out;
}

// Members of C(Delta) by filtering every permutation of S_n.
inline std::vector<Table> cdelta_by_filter(unsigned n, std::vector<unsigned> const &delta) {
  std::vector<bool> in(n + 1, false);
  for (unsigned x : delta)
    in[x] = true;
  std::vector<Table> out;
  unsigned const a = static_cast<unsigned>(delta.size());
  for (auto const &t : all_tables(n)) {
    auto const type = orbit_lengths(t);
    if (2 * a == n) {
      if (type.size() != 1)
        continue;
      bool alternates = true;
      for (unsigned x = 1; x <= n; ++x)
        alternates &= in[x] != in[t[x - 1] + 1];
      if (alternates)
        out.push_back(t);
    } else {
      if (type.size() != 2 || !fixes_set(t, delta))
        continue;
      out.push_back(t);
    }
  }
  return out;
}

// Bron-Kerbosch with pivoting on an adjacency matrix.
inline std::size_t clique_number(std::vector<std::vector<bool>> const &adj) {
  std::size_t best = 0;
  std::vector<std::size_t> all(adj.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  auto rec = [&](auto &&self, std::size_t r, std::vector<std::size_t> p, std::vector<std::size_t> x) -> void {
    if (p.empty() && x.empty()) {
      best = std::max(best, r);
      return;
    }
    std::size_t pivot = p.empty() ? x.front() : p.front();
    std::vector<std::size_t> cand;
    for (auto v : p)
      if (!adj[pivot][v])
        cand.push_back(v);
    for (auto v : cand) {
      std::vector<std::size_t> np, nx;
      for (auto w : p)
        if (adj[v][w])
          np.push_back(w);
      for (auto w : x)
        if (adj[v][w])
          nx.push_back(w);
      self(self, r + 1, np, nx);
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  };
  rec(rec, 0, all, {});
  return best;
}

} // namespace oracle
