#include "symgen/families.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace symgen {

OddDegreeError::OddDegreeError(unsigned n)
    : std::invalid_argument("degree " + std::to_string(n) +
                            " is odd; the two-block families need even n. For odd n >= 3 "
                            "sigma(S_n) = 2^(n-1), see `exact --what sigma`") {}

void require_even_degree(unsigned n) {
  if (n % 2 != 0)
    throw OddDegreeError(n);
  if (n < 4)
    throw std::invalid_argument("degree must be at least 4, got " + std::to_string(n));
}

namespace {

void require_family(int family) {
  if (family != 1 && family != 2)
    throw std::invalid_argument("family must be 1 or 2, got " + std::to_string(family));
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

std::string join(PointSet const &s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k)
    out += (k ? "," : "") + std::to_string(s[k]);
  return out;
}

bool valid_member(unsigned n, PointSet const &delta, int family) {
  if (2 * delta.size() == n)
    return !delta.empty() && delta.front() == 1;
  return family == 2 && delta.size() % 2 == 1 && 2 * delta.size() < n;
}

} // namespace

DeltaIndex DeltaIndex::make(unsigned n, PointSet delta, int family) {
  require_even_degree(n);
  require_family(family);
  std::sort(delta.begin(), delta.end());
  if (std::adjacent_find(delta.begin(), delta.end()) != delta.end())
    throw std::invalid_argument("repeated point in Delta {" + join(delta) + "}");
  if (!delta.empty() && (delta.front() < 1 || delta.back() > n))
    throw std::invalid_argument("Delta {" + join(delta) + "} not inside 1.." + std::to_string(n));
  if (!valid_member(n, delta, family))
    throw std::invalid_argument("{" + join(delta) + "} is not in S^(" + std::to_string(family) +
                                ") for n = " + std::to_string(n));
  return DeltaIndex(n, std::move(delta), family);
}

bool DeltaIndex::contains(unsigned point) const {
  return std::binary_search(delta_.begin(), delta_.end(), point);
}

PointSet DeltaIndex::complement() const {
  PointSet c;
  for (unsigned x = 1; x <= n_; ++x)
    if (!contains(x))
      c.push_back(x);
  return c;
}

std::string DeltaIndex::key() const { return join(delta_); }

Partition canonical_partition(Partition blocks) {
  for (auto &b : blocks)
    std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](PointSet const &a, PointSet const &b) { return a.front() < b.front(); });
  return blocks;
}

SubgroupDescriptor SubgroupDescriptor::intransitive(unsigned n, PointSet delta) {
  std::sort(delta.begin(), delta.end());
  if (delta.empty() || delta.size() >= n)
    throw std::invalid_argument("intransitive descriptor needs 1 <= |Delta| < n");
  if (std::adjacent_find(delta.begin(), delta.end()) != delta.end() || delta.front() < 1 ||
      delta.back() > n)
    throw std::invalid_argument("invalid point set {" + join(delta) + "}");
  SubgroupDescriptor d;
  d.kind_ = SubgroupKind::intransitive;
  d.n_ = n;
  d.block_of_.assign(n, 0);
  for (unsigned x : delta)
    d.block_of_[x - 1] = 1;
  d.delta_ = std::move(delta);
  return d;
}

SubgroupDescriptor SubgroupDescriptor::imprimitive(unsigned n, Partition blocks) {
  if (blocks.size() < 2)
    throw std::invalid_argument("imprimitive descriptor needs at least two blocks");
  std::size_t const size = blocks.front().size();
  if (size < 2 || size * blocks.size() != n)
    throw std::invalid_argument("blocks must have equal size d > 1 with d*m = n");
  SubgroupDescriptor d;
  d.kind_ = SubgroupKind::imprimitive;
  d.n_ = n;
  d.blocks_ = canonical_partition(std::move(blocks));
  d.block_of_.assign(n, 0xffff);
  for (std::size_t b = 0; b < d.blocks_.size(); ++b) {
    if (d.blocks_[b].size() != size)
      throw std::invalid_argument("blocks must all have the same size");
    for (unsigned x : d.blocks_[b]) {
      if (x < 1 || x > n || d.block_of_[x - 1] != 0xffff)
        throw std::invalid_argument("blocks do not partition 1.." + std::to_string(n));
      d.block_of_[x - 1] = static_cast<std::uint16_t>(b);
    }
  }
  return d;
}

SubgroupDescriptor SubgroupDescriptor::primitive_bound(unsigned n, mpz_class order_bound) {
  SubgroupDescriptor d;
  d.kind_ = SubgroupKind::primitive_bound;
  d.n_ = n;
  d.order_bound_ = std::move(order_bound);
  return d;
}

mpz_class SubgroupDescriptor::order() const {
  switch (kind_) {
  case SubgroupKind::intransitive:
    return factorial(static_cast<unsigned>(delta_.size())) *
           factorial(n_ - static_cast<unsigned>(delta_.size()));
  case SubgroupKind::imprimitive: {
    mpz_class o = factorial(static_cast<unsigned>(blocks_.size()));
    mpz_class const block = factorial(static_cast<unsigned>(block_size()));
    for (std::size_t k = 0; k < blocks_.size(); ++k)
      o *= block;
    return o;
  }
  case SubgroupKind::primitive_bound:
    return order_bound_;
  }
  return 0;
}

bool SubgroupDescriptor::contains(Permutation const &p) const { return contains(p.table()); }

bool SubgroupDescriptor::contains(std::span<const Point> p) const {
  if (p.size() != n_)
    throw DegreeMismatch(n_, p.size());
  switch (kind_) {
  case SubgroupKind::intransitive:
    for (unsigned x : delta_)
      if (block_of_[p[x - 1]] != 1)
        return false;
    return true;
  case SubgroupKind::imprimitive:
    for (auto const &b : blocks_) {
      auto const target = block_of_[p[b.front() - 1]];
      for (unsigned x : b)
        if (block_of_[p[x - 1]] != target)
          return false;
    }
    return true;
  case SubgroupKind::primitive_bound:
    break;
  }
  throw std::logic_error("PRIMITIVE_BOUND descriptors have no element-level membership");
}

namespace {

// All permutations of {0..k-1} as tables, in lexicographic order.
std::vector<std::vector<Point>> all_tables(std::size_t k) {
  std::vector<std::vector<Point>> out;
  std::vector<Point> t(k);
  std::iota(t.begin(), t.end(), Point{0});
  do {
    out.push_back(t);
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

} // namespace

void SubgroupDescriptor::for_each_element(
    std::function<void(std::vector<Point> const &)> const &visit) const {
  std::vector<Point> g(n_);
  switch (kind_) {
  case SubgroupKind::intransitive: {
    PointSet inside, outside;
    for (unsigned x = 0; x < n_; ++x)
      (block_of_[x] ? inside : outside).push_back(x);
    std::vector<unsigned> a = inside, b = outside;
    do {
      for (std::size_t k = 0; k < inside.size(); ++k)
        g[inside[k]] = static_cast<Point>(a[k]);
      do {
        for (std::size_t k = 0; k < outside.size(); ++k)
          g[outside[k]] = static_cast<Point>(b[k]);
        visit(g);
      } while (std::next_permutation(b.begin(), b.end()));
    } while (std::next_permutation(a.begin(), a.end()));
    return;
  }
  case SubgroupKind::imprimitive: {
    std::size_t const m = blocks_.size();
    std::size_t const d = block_size();
    auto const inner = all_tables(d);
    auto const outer = all_tables(m);
    std::vector<std::size_t> digit(m, 0);
    for (auto const &pi : outer) {
      std::fill(digit.begin(), digit.end(), 0);
      for (;;) {
        for (std::size_t b = 0; b < m; ++b) {
          auto const &src = blocks_[b];
          auto const &dst = blocks_[pi[b]];
          auto const &sigma = inner[digit[b]];
          for (std::size_t t = 0; t < d; ++t)
            g[src[t] - 1] = static_cast<Point>(dst[sigma[t]] - 1);
        }
        visit(g);
        std::size_t pos = 0;
        while (pos < m && ++digit[pos] == inner.size())
          digit[pos++] = 0;
        if (pos == m)
          break;
      }
    }
    return;
  }
  case SubgroupKind::primitive_bound:
    break;
  }
  throw std::logic_error("PRIMITIVE_BOUND descriptors cannot be enumerated");
}

std::string SubgroupDescriptor::describe() const {
  std::ostringstream os;
  switch (kind_) {
  case SubgroupKind::intransitive:
    os << "INTRANSITIVE{" << join(delta_) << "}";
    break;
  case SubgroupKind::imprimitive:
    os << "IMPRIMITIVE";
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      os << (b ? "|" : "") << "{" << join(blocks_[b]) << "}";
    break;
  case SubgroupKind::primitive_bound:
    os << "PRIMITIVE_BOUND(" << order_bound_.get_str() << ")";
    break;
  }
  return os.str();
}

mpz_class family_size(unsigned n, int family) {
  require_even_degree(n);
  require_family(family);
  mpz_class const half = binomial(n, n / 2) / 2;
  if (family == 1)
    return half;
  mpz_class pow2 = 1;
  pow2 <<= (n - 2);
  return (n / 2) % 2 == 0 ? half + pow2 : pow2;
}

void for_each_delta(unsigned n, int family, std::function<bool(DeltaIndex const &)> const &visit) {
  require_even_degree(n);
  require_family(family);
  // Depth-first over sorted point lists: a prefix precedes its extensions,
  // which gives lexicographic order.
  PointSet current;
  bool stopped = false;
  std::function<void(unsigned)> walk = [&](unsigned next) {
    if (stopped)
      return;
    if (!current.empty() && valid_member(n, current, family)) {
      if (!visit(DeltaIndex::make(n, current, family))) {
        stopped = true;
        return;
      }
    }
    if (2 * current.size() >= n)
      return;
    for (unsigned x = next; x <= n && !stopped; ++x) {
      if (current.empty() && family == 1 && x != 1)
        break;
      current.push_back(x);
      walk(x + 1);
      current.pop_back();
    }
  };
  walk(1);
}

std::vector<DeltaIndex> family_catalog(unsigned n, int family) {
  std::vector<DeltaIndex> out;
  for_each_delta(n, family, [&](DeltaIndex const &d) {
    out.push_back(d);
    return true;
  });
  return out;
}

SubgroupDescriptor delta_to_subgroup(DeltaIndex const &d) {
  if (d.is_bisection())
    return SubgroupDescriptor::imprimitive(d.degree(), {d.points(), d.complement()});
  return SubgroupDescriptor::intransitive(d.degree(), d.points());
}

void for_each_subset(unsigned n, unsigned k, std::function<bool(PointSet const &)> const &visit) {
  if (k > n)
    return;
  PointSet s(k);
  std::iota(s.begin(), s.end(), 1u);
  for (;;) {
    if (!visit(s))
      return;
    int pos = static_cast<int>(k) - 1;
    while (pos >= 0 && s[pos] == n - k + static_cast<unsigned>(pos) + 1)
      --pos;
    if (pos < 0)
      return;
    ++s[pos];
    for (unsigned j = static_cast<unsigned>(pos) + 1; j < k; ++j)
      s[j] = s[j - 1] + 1;
  }
}

void for_each_block_partition(unsigned n, unsigned m,
                              std::function<bool(Partition const &)> const &visit) {
  if (m == 0 || n % m != 0)
    return;
  unsigned const d = n / m;
  // Each new block starts at the least unassigned point, so every partition
  // is produced once and already in canonical order.
  std::vector<bool> used(n + 1, false);
  Partition blocks;
  bool stopped = false;
  std::function<void()> fill_block;
  std::function<void(PointSet &, unsigned)> extend = [&](PointSet &block, unsigned from) {
    if (stopped)
      return;
    if (block.size() == d) {
      blocks.push_back(block);
      fill_block();
      blocks.pop_back();
      return;
    }
    for (unsigned x = from; x <= n && !stopped; ++x) {
      if (used[x])
        continue;
      used[x] = true;
      block.push_back(x);
      extend(block, x + 1);
      block.pop_back();
      used[x] = false;
    }
  };
  fill_block = [&] {
    if (stopped)
      return;
    unsigned first = 1;
    while (first <= n && used[first])
      ++first;
    if (first > n) {
      if (!visit(blocks))
        stopped = true;
      return;
    }
    used[first] = true;
    PointSet block{first};
    extend(block, first + 1);
    used[first] = false;
  };
  fill_block();
}

std::vector<CycleType> cycle_types(unsigned n) {
  std::vector<CycleType> out;
  CycleType current;
  std::function<void(unsigned, unsigned)> walk = [&](unsigned remaining, unsigned max_part) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      walk(remaining - part, part);
      current.pop_back();
    }
  };
  walk(n, n);
  return out;
}

std::string_view to_string(CoverMode m) {
  return m == CoverMode::cycle_type ? "cycle-type" : "exhaustive";
}

std::string_view to_string(CoverReason r) {
  switch (r) {
  case CoverReason::all_even:
    return "all-even";
  case CoverReason::half_split:
    return "half-split";
  case CoverReason::odd_cycle_below_half:
    return "odd-cycle-below-half";
  }
  return "?";
}

std::optional<CoverReason> cover_reason(unsigned n, int family, CycleType const &type) {
  require_even_degree(n);
  require_family(family);
  if (std::accumulate(type.begin(), type.end(), 0u) != n)
    throw std::invalid_argument("cycle type does not sum to n");
  if (std::all_of(type.begin(), type.end(), [](unsigned l) { return l % 2 == 0; }))
    return CoverReason::all_even;
  if (family == 2 && std::any_of(type.begin(), type.end(),
                                 [n](unsigned l) { return l % 2 == 1 && 2 * l < n; }))
    return CoverReason::odd_cycle_below_half;
  std::vector<bool> reachable(n + 1, false);
  reachable[0] = true;
  for (unsigned l : type)
    for (unsigned s = n; s >= l; --s)
      if (reachable[s - l])
        reachable[s] = true;
  if (reachable[n / 2])
    return CoverReason::half_split;
  return std::nullopt;
}

nlohmann::json CoverReport::to_json() const {
  return {{"n", n},
          {"i", family},
          {"mode", std::string(to_string(mode))},
          {"covered", covered},
          {"uncovered_cycle_types", uncovered_cycle_types}};
}

std::uint64_t perm_rank(std::span<const Point> table) {
  std::size_t const n = table.size();
  std::uint64_t rank = 0;
  std::uint32_t used = 0;
  for (std::size_t k = 0; k < n; ++k) {
    unsigned const smaller_unused =
        static_cast<unsigned>(std::popcount(~used & ((1u << table[k]) - 1u)));
    rank = rank * (n - k) + smaller_unused;
    used |= 1u << table[k];
  }
  return rank;
}

std::vector<Point> perm_unrank(std::uint64_t rank, std::size_t n) {
  std::vector<std::uint64_t> digits(n);
  for (std::size_t k = n; k-- > 0;) {
    digits[k] = rank % (n - k);
    rank /= (n - k);
  }
  std::vector<Point> pool(n);
  std::iota(pool.begin(), pool.end(), Point{0});
  std::vector<Point> table(n);
  for (std::size_t k = 0; k < n; ++k) {
    table[k] = pool[digits[k]];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digits[k]));
  }
  return table;
}

std::vector<CycleType> uncovered_cycle_types(unsigned n,
                                             std::vector<SubgroupDescriptor> const &subgroups) {
  if (n > kExhaustiveCoverMaxDegree)
    throw std::invalid_argument("exhaustive covering is limited to n <= " +
                                std::to_string(kExhaustiveCoverMaxDegree));
  std::uint64_t const total = factorial(n).get_ui();
  std::vector<bool> marked(total, false);
  for (auto const &h : subgroups)
    h.for_each_element([&](std::vector<Point> const &g) { marked[perm_rank(g)] = true; });
  std::set<CycleType> missing;
  for (std::uint64_t r = 0; r < total; ++r)
    if (!marked[r])
      missing.insert(cycle_type(Permutation::from_table(perm_unrank(r, n))));
  return {missing.begin(), missing.end()};
}

CoverReport covers(unsigned n, int family, CoverMode mode) {
  require_even_degree(n);
  require_family(family);
  CoverReport report;
  report.n = n;
  report.family = family;
  report.mode = mode;
  if (mode == CoverMode::cycle_type) {
    for (auto const &type : cycle_types(n))
      if (!cover_reason(n, family, type))
        report.uncovered_cycle_types.push_back(type);
    std::sort(report.uncovered_cycle_types.begin(), report.uncovered_cycle_types.end());
  } else {
    std::vector<SubgroupDescriptor> members;
    for_each_delta(n, family, [&](DeltaIndex const &d) {
      members.push_back(delta_to_subgroup(d));
      return true;
    });
    report.uncovered_cycle_types = uncovered_cycle_types(n, members);
  }
  report.covered = report.uncovered_cycle_types.empty();
  return report;
}

mpz_class sigma_upper_bound(unsigned n) {
  require_even_degree(n);
  mpz_class total = family_size(n, 1);
  for (unsigned k = 1; k <= n / 3; ++k)
    total += binomial(n, k);
  return total;
}

std::vector<SubgroupDescriptor> sigma_upper_bound_family(unsigned n) {
  require_even_degree(n);
  std::vector<SubgroupDescriptor> out;
  for_each_delta(n, 1, [&](DeltaIndex const &d) {
    out.push_back(delta_to_subgroup(d));
    return true;
  });
  for (unsigned k = 1; k <= n / 3; ++k)
    for_each_subset(n, k, [&](PointSet const &s) {
      out.push_back(SubgroupDescriptor::intransitive(n, s));
      return true;
    });
  return out;
}

HFamilyConstants hfamily_constants(unsigned n, int family) {
  require_even_degree(n);
  require_family(family);
  HFamilyConstants c;
  c.n = n;
  c.family = family;
  c.c2 = n;
  c.c3 = (n % 3 == 0 && n / 3 >= 2) ? 1 : 0;
  c.c4 = (n % 4 == 0 && n / 4 >= 2) ? 1 : 0;
  for (unsigned m = 5; m <= n / 2; ++m)
    if (n % m == 0)
      c.wreath_shapes.emplace_back(n / m, m);
  c.c5 = static_cast<unsigned>(c.wreath_shapes.size());
  c.c5_within_2sqrt_n = static_cast<double>(c.c5) * c.c5 <= 4.0 * n;
  c.s4 = 1;
  return c;
}

} // namespace symgen
