#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "symgen/perm.hpp"

namespace symgen {

class Bitset {
public:
  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  void set(std::size_t k) { words_[k >> 6] |= std::uint64_t{1} << (k & 63); }
  void reset(std::size_t k) { words_[k >> 6] &= ~(std::uint64_t{1} << (k & 63)); }
  bool test(std::size_t k) const { return (words_[k >> 6] >> (k & 63)) & 1; }
  std::size_t count() const;
  bool any() const;
  bool subset_of(Bitset const &other) const;
  std::size_t count_and(Bitset const &other) const;
  Bitset &operator|=(Bitset const &other);
  Bitset &operator&=(Bitset const &other);
  Bitset minus(Bitset const &other) const;
  /// Index of the lowest set bit, or size() if none.
  std::size_t first() const;
  std::size_t next(std::size_t k) const;

  friend bool operator==(Bitset const &, Bitset const &) = default;
  std::size_t hash() const;

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Multiplication table of S_n for n <= 6; elements are indexed by perm_rank.
class SymmetricGroupTable {
public:
  explicit SymmetricGroupTable(unsigned n);

  unsigned degree() const { return n_; }
  std::size_t order() const { return elements_.size(); }
  Permutation const &element(std::size_t k) const { return elements_[k]; }
  std::size_t index(Permutation const &p) const;
  /// Index of element(a) o element(b).
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * order() + b]; }
  std::size_t inv(std::size_t a) const { return inv_[a]; }
  std::size_t identity() const { return 0; }
  bool even(std::size_t a) const { return even_[a]; }

  /// Elements of the subgroup generated by `gens`, by closure.
  Bitset closure(std::vector<std::size_t> const &gens) const;

private:
  unsigned n_;
  std::vector<Permutation> elements_;
  std::vector<std::uint16_t> mul_;
  std::vector<std::uint16_t> inv_;
  std::vector<bool> even_;
};

inline constexpr unsigned kLatticeMaxDegree = 6;

struct Subgroup {
  Bitset elements;
  std::size_t order = 0;
  std::vector<std::size_t> generators;
  bool maximal = false;
};

/// All subgroups of S_n (n <= 6), found by closing the set of cyclic subgroups
/// under joins with cyclic subgroups.
class SubgroupLattice {
public:
  static SubgroupLattice build(unsigned n);

  SymmetricGroupTable const &group() const { return table_; }
  std::vector<Subgroup> const &subgroups() const { return subgroups_; }
  std::vector<std::size_t> maximal() const;

  /// Second count: breadth-first adjunction of single elements starting from
  /// the trivial group.
  std::size_t recount() const;

  std::string describe(Subgroup const &h) const;

private:
  explicit SubgroupLattice(unsigned n) : table_(n) {}

  SymmetricGroupTable table_;
  std::vector<Subgroup> subgroups_; // sorted by order, then by elements
};

struct CoverWitness {
  std::size_t value = 0;
  std::vector<std::string> subgroups; // generators in cycle notation, with order

  nlohmann::json to_json() const;
};

/// sigma(S_n) for 3 <= n <= 5 by branch-and-bound set cover over the maximal
/// subgroups. Branches on the uncovered element lying in the fewest subgroups.
CoverWitness sigma_exact(unsigned n);

/// Same value by trying every k-subset of maximal subgroups for k = 1, 2, ...
CoverWitness sigma_exhaustive(unsigned n);

/// 2^(n-1), the covering number of S_n for odd n >= 3.
mpz_class odd_degree_sigma(unsigned n);

struct Graph {
  std::vector<Bitset> adj;

  explicit Graph(std::size_t vertices = 0) : adj(vertices, Bitset(vertices)) {}
  std::size_t size() const { return adj.size(); }
  void add_edge(std::size_t a, std::size_t b) {
    adj[a].set(b);
    adj[b].set(a);
  }
  std::uint64_t edge_count() const;
};

/// Maximum clique by branch and bound with greedy-colouring bounds. Ties are
/// broken by vertex index, so the witness is reproducible.
std::vector<std::size_t> max_clique(Graph const &g);

enum class GenerationMode { full, at_least_alt };

std::string_view to_string(GenerationMode m);

struct CliqueWitness {
  std::size_t value = 0;
  std::vector<std::string> elements;

  nlohmann::json to_json() const;
};

/// Generation graph of S_n: x ~ y iff <x, y> = S_n (full) or contains A_n.
Graph generation_graph(unsigned n, GenerationMode mode);

/// omega for 3 <= n <= 5 as the clique number of the generation graph.
CliqueWitness omega_exact(unsigned n, GenerationMode mode);

/// Vertices A_n, edges pairs generating A_n.
Graph graph_a(unsigned n, std::vector<Permutation> *vertices = nullptr);
/// Vertices S_n - A_n, edges pairs generating S_n.
Graph graph_b(unsigned n, std::vector<Permutation> *vertices = nullptr);

struct GenerationStats {
  unsigned n = 0;
  // Ordered pair counts and their totals.
  mpz_class p_hits, p_total, a_hits, a_total, b_hits, b_total, c_hits, c_total;

  mpq_class p() const { return ratio(p_hits, p_total); }
  mpq_class a() const { return ratio(a_hits, a_total); }
  mpq_class b() const { return ratio(b_hits, b_total); }
  mpq_class c() const { return ratio(c_hits, c_total); }

  nlohmann::json to_json() const;

private:
  static mpq_class ratio(mpz_class const &h, mpz_class const &t);
};

/// p, a, b, c by enumerating every ordered pair of S_n. 3 <= n <= 6.
GenerationStats generation_counts_exact(unsigned n, unsigned threads = 1);

struct McEstimate {
  std::uint64_t hits = 0, trials = 0;
  double estimate = 0, lo = 0, hi = 0; // Wilson 99% interval
};

struct McReport {
  unsigned n = 0;
  std::uint64_t trials = 0, seed = 0;
  McEstimate p, a, b;
  double reference = 0; // 1 - 1/n

  nlohmann::json to_json() const;
};

McEstimate wilson(std::uint64_t hits, std::uint64_t trials);

/// Monte Carlo estimates of p, a, b. Trials run in chunks of 4096, chunk c
/// drawing from the stream "mc/n=<n>/chunk=<c>"; the counts are integers, so
/// the result does not depend on `threads`.
McReport generation_prob_mc(unsigned n, std::uint64_t trials, std::uint64_t seed,
                            unsigned threads = 1);

/// Clique lower bound forced by Turan's theorem: r + 1 for the largest r with
/// edges > (1 - 1/r) m^2 / 2 (1 when there are no edges but m > 0, 0 for m = 0).
std::uint64_t turan_lower_bound(std::uint64_t m, std::uint64_t edges);

/// n - c1 n^epsilon.
double proposition_bound(double n, double epsilon, double c1);

} // namespace symgen
