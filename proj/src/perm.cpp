#include "symgen/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace symgen {

DegreeMismatch::DegreeMismatch(std::size_t lhs, std::size_t rhs)
    : std::invalid_argument("degree mismatch: " + std::to_string(lhs) + " vs " +
                            std::to_string(rhs)) {}

namespace {

void require_same_degree(Permutation const &p, Permutation const &q) {
  if (p.degree() != q.degree())
    throw DegreeMismatch(p.degree(), q.degree());
}

std::vector<Point> identity_table(std::size_t n) {
  std::vector<Point> t(n);
  std::iota(t.begin(), t.end(), Point{0});
  return t;
}

bool is_identity_table(std::vector<Point> const &a) {
  for (std::size_t x = 0; x < a.size(); ++x)
    if (a[x] != x)
      return false;
  return true;
}

} // namespace

Permutation::Permutation(std::size_t degree) : table_(identity_table(degree)) {}

Permutation Permutation::from_images(std::span<const unsigned> images) {
  std::size_t const n = images.size();
  std::vector<Point> table(n);
  std::vector<bool> seen(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    unsigned const y = images[x];
    if (y < 1 || y > n || seen[y - 1])
      throw std::invalid_argument("image table is not a bijection on 1.." + std::to_string(n));
    seen[y - 1] = true;
    table[x] = static_cast<Point>(y - 1);
  }
  return from_table(std::move(table));
}

Permutation Permutation::from_table(std::vector<Point> table) {
  Permutation p;
  p.table_ = std::move(table);
  return p;
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     std::vector<std::vector<unsigned>> const &cycles) {
  std::vector<Point> table = identity_table(degree);
  std::vector<bool> used(degree, false);
  for (auto const &cycle : cycles) {
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      unsigned const x = cycle[k];
      if (x < 1 || x > degree)
        throw std::invalid_argument("point " + std::to_string(x) + " outside 1.." +
                                    std::to_string(degree));
      if (used[x - 1])
        throw std::invalid_argument("point " + std::to_string(x) + " repeated in cycles");
      used[x - 1] = true;
      table[x - 1] = static_cast<Point>(cycle[(k + 1) % cycle.size()] - 1);
    }
  }
  return from_table(std::move(table));
}

Permutation Permutation::parse(std::string_view text, std::size_t degree) {
  std::vector<std::vector<unsigned>> cycles;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  skip_ws();
  if (pos == text.size())
    throw PermParseError("empty permutation text");
  while (pos < text.size()) {
    if (text[pos] != '(')
      throw PermParseError("expected '(' at offset " + std::to_string(pos) + " in \"" +
                           std::string(text) + "\"");
    ++pos;
    std::vector<unsigned> cycle;
    for (;;) {
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos >= text.size())
        throw PermParseError("unterminated cycle in \"" + std::string(text) + "\"");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        throw PermParseError("unexpected character '" + std::string(1, text[pos]) +
                             "' in \"" + std::string(text) + "\"");
      unsigned long value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<unsigned>(text[pos] - '0');
        if (value > 65535)
          throw PermParseError("point out of range in \"" + std::string(text) + "\"");
        ++pos;
      }
      cycle.push_back(static_cast<unsigned>(value));
    }
    if (!cycle.empty())
      cycles.push_back(std::move(cycle));
    skip_ws();
  }
  try {
    return from_cycles(degree, cycles);
  } catch (std::invalid_argument const &e) {
    throw PermParseError(e.what());
  }
}

std::vector<unsigned> Permutation::images() const {
  std::vector<unsigned> out(table_.size());
  for (std::size_t x = 0; x < table_.size(); ++x)
    out[x] = table_[x] + 1u;
  return out;
}

bool Permutation::is_identity() const { return is_identity_table(table_); }

std::vector<std::vector<unsigned>> Permutation::cycles() const {
  std::vector<std::vector<unsigned>> out;
  std::vector<bool> seen(table_.size(), false);
  for (std::size_t start = 0; start < table_.size(); ++start) {
    if (seen[start] || table_[start] == start)
      continue;
    std::vector<unsigned> cycle;
    for (std::size_t x = start; !seen[x]; x = table_[x]) {
      seen[x] = true;
      cycle.push_back(static_cast<unsigned>(x + 1));
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::string Permutation::to_string() const {
  auto const cs = cycles();
  if (cs.empty())
    return "()";
  std::ostringstream os;
  for (auto const &c : cs) {
    os << '(';
    for (std::size_t k = 0; k < c.size(); ++k)
      os << (k ? " " : "") << c[k];
    os << ')';
  }
  return os.str();
}

std::ostream &operator<<(std::ostream &os, Permutation const &p) { return os << p.to_string(); }

Permutation compose(Permutation const &p, Permutation const &q) {
  require_same_degree(p, q);
  std::vector<Point> r(p.degree());
  for (std::size_t x = 0; x < r.size(); ++x)
    r[x] = p.at(q.at(static_cast<Point>(x)));
  return Permutation::from_table(std::move(r));
}

Permutation inverse(Permutation const &p) {
  std::vector<Point> r(p.degree());
  for (std::size_t x = 0; x < r.size(); ++x)
    r[p.at(static_cast<Point>(x))] = static_cast<Point>(x);
  return Permutation::from_table(std::move(r));
}

CycleType cycle_type(Permutation const &p) {
  CycleType type;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t start = 0; start < p.degree(); ++start) {
    if (seen[start])
      continue;
    unsigned len = 0;
    for (std::size_t x = start; !seen[x]; x = p.at(static_cast<Point>(x))) {
      seen[x] = true;
      ++len;
    }
    type.push_back(len);
  }
  std::sort(type.begin(), type.end(), std::greater<>());
  return type;
}

std::string to_string(CycleType const &type) {
  std::string s = "{";
  for (std::size_t k = 0; k < type.size(); ++k)
    s += (k ? "," : "") + std::to_string(type[k]);
  return s + "}";
}

Parity parity(Permutation const &p) {
  auto const cycles = cycle_type(p).size();
  return (p.degree() - cycles) % 2 == 0 ? Parity::even : Parity::odd;
}

bool is_even(Permutation const &p) { return parity(p) == Parity::even; }

bool is_full_cycle(Permutation const &p) {
  if (p.degree() == 0)
    return false;
  std::size_t len = 0;
  Point x = 0;
  do {
    x = p.at(x);
    ++len;
  } while (x != 0);
  return len == p.degree();
}

mpz_class element_order(Permutation const &p) {
  mpz_class order = 1;
  for (unsigned len : cycle_type(p)) {
    mpz_class l = len;
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), l.get_mpz_t());
  }
  return order;
}

mpz_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

StabilizerChain::StabilizerChain(std::size_t degree, std::span<const Permutation> generators,
                                 mpz_class const *stop_at)
    : degree_(degree), gens_(degree), reps_(degree), reps_inv_(degree), defined_(degree),
      orbit_(degree) {
  for (std::size_t k = 0; k < degree; ++k)
    orbit_[k].push_back(static_cast<Point>(k));
  if (stop_at) {
    target_ = *stop_at;
    has_target_ = true;
    note_growth();
  }
  for (auto const &g : generators) {
    if (g.degree() != degree)
      throw DegreeMismatch(degree, g.degree());
    if (done_)
      break;
    if (!g.is_identity())
      add(0, std::vector<Point>(g.table().begin(), g.table().end()));
  }
}

void StabilizerChain::open_level(std::size_t level) {
  if (!defined_[level].empty())
    return;
  std::size_t const n = degree_;
  reps_[level].resize(n * n);
  reps_inv_[level].resize(n * n);
  defined_[level].assign(n, 0);
  Point *id = reps_[level].data() + level * n;
  std::iota(id, id + n, Point{0});
  std::copy(id, id + n, reps_inv_[level].data() + level * n);
  defined_[level][level] = 1;
}

bool StabilizerChain::sift(std::size_t level, Table t) const {
  Table tmp(degree_);
  for (std::size_t k = level; k < degree_; ++k) {
    Point const j = t[k];
    if (j == k)
      continue;
    if (defined_[k].empty() || !defined_[k][j])
      return false;
    Point const *inv = reps_inv_[k].data() + std::size_t{j} * degree_;
    for (std::size_t x = 0; x < degree_; ++x)
      tmp[x] = inv[t[x]];
    t.swap(tmp);
  }
  return true;
}

void StabilizerChain::add(std::size_t level, Table const &t) {
  if (done_ || level >= degree_ || sift(level, t))
    return;
  open_level(level);
  gens_[level].push_back(t);
  std::vector<Point> const snapshot = orbit_[level];
  Table next(degree_);
  for (Point j : snapshot) {
    if (done_)
      return;
    Point const *r = reps_[level].data() + std::size_t{j} * degree_;
    for (std::size_t x = 0; x < degree_; ++x)
      next[x] = t[r[x]];
    extend(level, next);
  }
}

void StabilizerChain::extend(std::size_t level, Table const &t) {
  if (done_)
    return;
  std::size_t const n = degree_;
  Point const j = t[level];
  if (!defined_[level][j]) {
    Point *r = reps_[level].data() + std::size_t{j} * n;
    Point *ri = reps_inv_[level].data() + std::size_t{j} * n;
    for (std::size_t x = 0; x < n; ++x) {
      r[x] = t[x];
      ri[t[x]] = static_cast<Point>(x);
    }
    defined_[level][j] = 1;
    std::size_t const before = orbit_[level].size();
    orbit_[level].push_back(j);
    mpz_divexact_ui(order_.get_mpz_t(), order_.get_mpz_t(), before);
    order_ *= static_cast<unsigned long>(before + 1);
    note_growth();
    std::size_t const count = gens_[level].size();
    Table next(n);
    for (std::size_t g = 0; g < count; ++g) {
      if (done_)
        return;
      Table const &gen = gens_[level][g];
      for (std::size_t x = 0; x < n; ++x)
        next[x] = gen[r[x]];
      extend(level, next);
    }
  } else {
    Point const *ri = reps_inv_[level].data() + std::size_t{j} * n;
    Table residue(n);
    bool identity = true;
    for (std::size_t x = 0; x < n; ++x) {
      residue[x] = ri[t[x]];
      identity = identity && residue[x] == x;
    }
    if (!identity)
      add(level + 1, residue);
  }
}

void StabilizerChain::note_growth() {
  if (!has_target_)
    return;
  if (order_ >= target_)
    done_ = true;
}

mpz_class StabilizerChain::order() const { return order_; }

bool StabilizerChain::contains(Permutation const &p) const {
  if (p.degree() != degree_)
    throw DegreeMismatch(degree_, p.degree());
  return sift(0, Table(p.table().begin(), p.table().end()));
}

std::vector<unsigned> StabilizerChain::base() const {
  std::vector<unsigned> b(degree_);
  std::iota(b.begin(), b.end(), 1u);
  return b;
}

std::vector<std::size_t> StabilizerChain::transversal_sizes() const {
  std::vector<std::size_t> s;
  for (auto const &orb : orbit_)
    s.push_back(orb.size());
  return s;
}

std::vector<std::vector<Permutation>> StabilizerChain::level_generators() const {
  std::vector<std::vector<Permutation>> out(degree_);
  for (std::size_t k = 0; k < degree_; ++k)
    for (auto const &t : gens_[k])
      out[k].push_back(Permutation::from_table(t));
  return out;
}

mpz_class group_order(std::span<const Permutation> generators) {
  if (generators.empty())
    return 1;
  return group_order(generators.front().degree(), generators);
}

mpz_class group_order(std::size_t degree, std::span<const Permutation> generators) {
  return StabilizerChain(degree, generators).order();
}

std::string_view to_string(GenerationClass c) {
  switch (c) {
  case GenerationClass::full_symmetric:
    return "FULL_SYMMETRIC";
  case GenerationClass::alternating:
    return "ALTERNATING";
  case GenerationClass::proper:
    return "PROPER";
  }
  return "?";
}

bool is_transitive(std::size_t degree, std::span<const Permutation> gens) {
  if (degree == 0)
    return true;
  std::vector<bool> seen(degree, false);
  std::vector<Point> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Point const x = stack.back();
    stack.pop_back();
    for (auto const &g : gens) {
      Point const y = g.at(x);
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == degree;
}

GenerationClass generation_class(Permutation const &x, Permutation const &y) {
  require_same_degree(x, y);
  std::size_t const n = x.degree();
  Permutation const gens[] = {x, y};
  // S_n and A_n are transitive for n >= 3; for smaller n let the order decide.
  if (n >= 3 && !is_transitive(n, gens))
    return GenerationClass::proper;
  bool const both_even = is_even(x) && is_even(y);
  mpz_class const full = factorial(static_cast<unsigned>(n));
  mpz_class const half = full / 2;
  mpz_class const bound = both_even ? half : full;
  mpz_class const order = StabilizerChain(n, gens, &bound).order();
  if (order == full)
    return GenerationClass::full_symmetric;
  if (order == half && both_even)
    return GenerationClass::alternating;
  return GenerationClass::proper;
}

} // namespace symgen

std::size_t std::hash<symgen::Permutation>::operator()(symgen::Permutation const &p) const noexcept {
  auto const t = p.table();
  return std::hash<std::string_view>{}(
      std::string_view(reinterpret_cast<char const *>(t.data()), t.size() * sizeof(symgen::Point)));
}
