#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "symgen/perm.hpp"

namespace symgen {

/// Raised when an even-degree construction is asked for odd n. For odd n the
/// covering and pairwise-generation numbers are known (2^(n-1)); see
/// `odd_degree_sigma` in oracles.hpp.
class OddDegreeError : public std::invalid_argument {
public:
  explicit OddDegreeError(unsigned n);
};

using PointSet = std::vector<unsigned>; // sorted, 1-based
using Partition = std::vector<PointSet>; // blocks sorted by least element

/// A member of the index set S^(i): a subset of {1..n}.
///
/// Family 1 holds the n/2-subsets containing 1. Family 2 adds every subset of
/// odd size below n/2.
class DeltaIndex {
public:
  static DeltaIndex make(unsigned n, PointSet delta, int family);

  unsigned degree() const { return n_; }
  int family() const { return family_; }
  PointSet const &points() const { return delta_; }
  std::size_t size() const { return delta_.size(); }
  bool is_bisection() const { return 2 * delta_.size() == n_; }
  bool contains(unsigned point) const;
  PointSet complement() const;

  /// Canonical serialization: comma-separated sorted points, e.g. "1,2,3".
  std::string key() const;

  friend bool operator==(DeltaIndex const &a, DeltaIndex const &b) {
    return a.n_ == b.n_ && a.delta_ == b.delta_;
  }
  friend bool operator<(DeltaIndex const &a, DeltaIndex const &b) { return a.delta_ < b.delta_; }

private:
  DeltaIndex(unsigned n, PointSet delta, int family)
      : n_(n), family_(family), delta_(std::move(delta)) {}

  unsigned n_ = 0;
  int family_ = 1;
  PointSet delta_;
};

enum class SubgroupKind { intransitive, imprimitive, primitive_bound };

/// Symbolic maximal subgroup of S_n. Membership is decided from the defining
/// set or partition; elements are never stored.
class SubgroupDescriptor {
public:
  static SubgroupDescriptor intransitive(unsigned n, PointSet delta);
  static SubgroupDescriptor imprimitive(unsigned n, Partition blocks);
  static SubgroupDescriptor primitive_bound(unsigned n, mpz_class order_bound);

  SubgroupKind kind() const { return kind_; }
  unsigned degree() const { return n_; }
  PointSet const &set() const { return delta_; }
  Partition const &blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t block_size() const { return blocks_.empty() ? 0 : blocks_.front().size(); }

  /// Exact order, or the stored bound for PRIMITIVE_BOUND.
  mpz_class order() const;

  /// Throws std::logic_error for PRIMITIVE_BOUND.
  bool contains(Permutation const &p) const;
  bool contains(std::span<const Point> table) const;

  /// Calls `visit` on every element (0-based tables). Not available for
  /// PRIMITIVE_BOUND.
  void for_each_element(std::function<void(std::vector<Point> const &)> const &visit) const;

  std::string describe() const;

  friend bool operator==(SubgroupDescriptor const &a, SubgroupDescriptor const &b) {
    return a.kind_ == b.kind_ && a.n_ == b.n_ && a.delta_ == b.delta_ && a.blocks_ == b.blocks_ &&
           a.order_bound_ == b.order_bound_;
  }

private:
  SubgroupKind kind_ = SubgroupKind::intransitive;
  unsigned n_ = 0;
  PointSet delta_;
  Partition blocks_;
  std::vector<std::uint16_t> block_of_; // 0-based point -> block index, or set membership
  mpz_class order_bound_ = 0;
};

Partition canonical_partition(Partition blocks);

/// |M^(i)|, equal to |S^(i)|.
mpz_class family_size(unsigned n, int family);

/// Streams S^(i) in lexicographic order of the sorted point lists. The visitor
/// returns false to stop early.
void for_each_delta(unsigned n, int family, std::function<bool(DeltaIndex const &)> const &visit);
std::vector<DeltaIndex> family_catalog(unsigned n, int family);

SubgroupDescriptor delta_to_subgroup(DeltaIndex const &d);

/// Every partition of {1..n} into m blocks of equal size, in canonical form.
void for_each_block_partition(unsigned n, unsigned m,
                              std::function<bool(Partition const &)> const &visit);

/// Every k-subset of {1..n} in lexicographic order.
void for_each_subset(unsigned n, unsigned k, std::function<bool(PointSet const &)> const &visit);

/// Integer partitions of n in decreasing-part form, each listed once.
std::vector<CycleType> cycle_types(unsigned n);

enum class CoverMode { cycle_type, exhaustive };

std::string_view to_string(CoverMode m);

/// Why a cycle type is covered by a member of M^(i).
enum class CoverReason {
  all_even,             // swaps the two halves of some bisection
  half_split,           // a union of cycles has size n/2 (includes two cycles of length n/2)
  odd_cycle_below_half, // an odd cycle of length a < n/2 fixes a set of size a
};

std::string_view to_string(CoverReason r);

std::optional<CoverReason> cover_reason(unsigned n, int family, CycleType const &type);

struct CoverReport {
  unsigned n = 0;
  int family = 0;
  CoverMode mode = CoverMode::cycle_type;
  bool covered = false;
  std::vector<CycleType> uncovered_cycle_types; // sorted

  nlohmann::json to_json() const;
};

CoverReport covers(unsigned n, int family, CoverMode mode);

/// Largest n for which exhaustive element enumeration is offered.
inline constexpr unsigned kExhaustiveCoverMaxDegree = 10;

/// Cycle types of elements of S_n lying in none of the given subgroups,
/// decided by marking the elements of each subgroup.
std::vector<CycleType> uncovered_cycle_types(unsigned n,
                                             std::vector<SubgroupDescriptor> const &subgroups);

/// |M^(1)| + sum_{k=1}^{floor(n/3)} C(n, k).
mpz_class sigma_upper_bound(unsigned n);

/// The subgroups counted by sigma_upper_bound: M^(1) and the stabilizers of
/// all sets of size 1..floor(n/3).
std::vector<SubgroupDescriptor> sigma_upper_bound_family(unsigned n);

/// Constants bounding the conjugacy-class counts c_{v,j} of the non-M^(i)
/// maximal subgroups H_j.
struct HFamilyConstants {
  unsigned n = 0;
  int family = 0;
  unsigned c2 = 0;       // primitive classes; taken as n, relies on CFSG
  bool c2_assumed = true;
  unsigned c3 = 0;       // 3-block imprimitive classes present (0 or 1)
  unsigned c4 = 0;       // 4-block imprimitive classes present (0 or 1)
  unsigned c5 = 0;       // classes with at least 5 blocks, counted exactly
  unsigned s4 = 1;       // 4-block members meeting two n-cycle pools
  std::vector<std::pair<unsigned, unsigned>> wreath_shapes; // (block size d, blocks m), m >= 5
  bool c5_within_2sqrt_n = true;
};

HFamilyConstants hfamily_constants(unsigned n, int family);

void require_even_degree(unsigned n);

/// Lexicographic rank of a 0-based permutation table in [0, n!).
std::uint64_t perm_rank(std::span<const Point> table);
std::vector<Point> perm_unrank(std::uint64_t rank, std::size_t n);

} // namespace symgen
