#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace symgen {

// Internal point label. Externally points are 1..n.
using Point = std::uint16_t;

class DegreeMismatch : public std::invalid_argument {
public:
  DegreeMismatch(std::size_t lhs, std::size_t rhs);
};

class PermParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A permutation of {1..n}, stored as a 0-based image table.
class Permutation {
public:
  explicit Permutation(std::size_t degree = 0);

  /// Builds from 1-based images; throws std::invalid_argument unless a bijection.
  static Permutation from_images(std::span<const unsigned> images);
  /// Builds from 0-based images without validation beyond size.
  static Permutation from_table(std::vector<Point> table);
  /// Builds from disjoint cycles over 1-based points.
  static Permutation from_cycles(std::size_t degree,
                                 std::vector<std::vector<unsigned>> const &cycles);
  /// Parses cycle notation, e.g. "(1 2 3)(4 5)" or "()".
  static Permutation parse(std::string_view text, std::size_t degree);

  std::size_t degree() const { return table_.size(); }

  /// Image of a 1-based point.
  unsigned operator()(unsigned point) const { return table_[point - 1] + 1u; }
  /// Image of a 0-based point.
  Point at(Point x) const { return table_[x]; }

  std::span<const Point> table() const { return table_; }
  std::vector<unsigned> images() const;

  bool is_identity() const;

  /// Disjoint cycles (length >= 2), each starting at its least point, sorted.
  std::vector<std::vector<unsigned>> cycles() const;
  std::string to_string() const;

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend auto operator<=>(Permutation const &, Permutation const &) = default;

private:
  std::vector<Point> table_;
};

std::ostream &operator<<(std::ostream &os, Permutation const &p);

/// (p o q)(x) = p(q(x)).
Permutation compose(Permutation const &p, Permutation const &q);
Permutation inverse(Permutation const &p);

/// Cycle lengths including fixed points, sorted in decreasing order.
using CycleType = std::vector<unsigned>;

CycleType cycle_type(Permutation const &p);
std::string to_string(CycleType const &type);

enum class Parity { even, odd };

Parity parity(Permutation const &p);
bool is_even(Permutation const &p);
bool is_full_cycle(Permutation const &p);

/// lcm of the cycle lengths.
mpz_class element_order(Permutation const &p);

mpz_class factorial(unsigned n);

/// Stabilizer chain for base 1, 2, ..., n.
///
/// Built with the deterministic incremental Schreier-Sims procedure (Knuth's
/// add/sift formulation). When `stop_at` is given the construction halts as soon
/// as the transversal sizes multiply to at least that value; the caller must
/// only pass an a-priori upper bound on the group order, so the result is still
/// the exact order.
class StabilizerChain {
public:
  StabilizerChain(std::size_t degree, std::span<const Permutation> generators,
                  mpz_class const *stop_at = nullptr);

  std::size_t degree() const { return degree_; }
  mpz_class order() const;
  bool contains(Permutation const &p) const;

  std::vector<unsigned> base() const;
  std::vector<std::size_t> transversal_sizes() const;

  /// Strong generators stored at each level.
  std::vector<std::vector<Permutation>> level_generators() const;

private:
  using Table = std::vector<Point>;

  bool sift(std::size_t level, Table t) const;
  void add(std::size_t level, Table const &t);
  void extend(std::size_t level, Table const &t);
  void note_growth();
  void open_level(std::size_t level);

  std::size_t degree_ = 0;
  std::vector<std::vector<Table>> gens_;
  // Level k holds n coset representatives back to back, allocated when the
  // level first receives a generator.
  std::vector<std::vector<Point>> reps_;
  std::vector<std::vector<Point>> reps_inv_;
  std::vector<std::vector<std::uint8_t>> defined_;
  std::vector<std::vector<Point>> orbit_;    // points with defined reps, insertion order
  mpz_class order_ = 1;
  mpz_class target_;
  bool has_target_ = false;
  bool done_ = false;
};

mpz_class group_order(std::span<const Permutation> generators);
mpz_class group_order(std::size_t degree, std::span<const Permutation> generators);

enum class GenerationClass { full_symmetric, alternating, proper };

std::string_view to_string(GenerationClass c);

/// Classifies <x, y>: the whole of S_n, exactly A_n, or anything else.
GenerationClass generation_class(Permutation const &x, Permutation const &y);

/// True when the group generated by `gens` moves point 1 to every point.
bool is_transitive(std::size_t degree, std::span<const Permutation> gens);

} // namespace symgen

template <>
struct std::hash<symgen::Permutation> {
  std::size_t operator()(symgen::Permutation const &p) const noexcept;
};
