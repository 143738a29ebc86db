#include "symgen/cdelta.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace symgen {

mpz_class cdelta_size(DeltaIndex const &d) {
  unsigned const n = d.degree();
  if (d.is_bisection()) {
    mpz_class const h = factorial(n / 2);
    return 2 * h * h / n;
  }
  unsigned const a = static_cast<unsigned>(d.size());
  return factorial(a - 1) * factorial(n - a - 1);
}

mpq_class cdelta_lower_bound(unsigned n) {
  mpz_class const h = factorial(n / 2);
  mpq_class q(4 * h * h, mpz_class(n) * n);
  q.canonicalize();
  return q;
}

namespace {

// Writes the cycle x0 -> x1 -> ... -> x0 into g (0-based points).
template <typename Seq>
void write_cycle(std::vector<Point> &g, Seq const &word) {
  for (std::size_t k = 0; k < word.size(); ++k)
    g[word[k]] = static_cast<Point>(word[(k + 1) % word.size()]);
}

std::vector<Point> zero_based(PointSet const &s) {
  std::vector<Point> out;
  out.reserve(s.size());
  for (unsigned x : s)
    out.push_back(static_cast<Point>(x - 1));
  return out;
}

} // namespace

bool in_cdelta(Permutation const &p, DeltaIndex const &d) { return in_cdelta(p.table(), d); }

bool in_cdelta(std::span<const Point> g, DeltaIndex const &d) {
  unsigned const n = d.degree();
  if (g.size() != n)
    throw DegreeMismatch(n, g.size());
  std::vector<bool> inside(n, false);
  for (unsigned x : d.points())
    inside[x - 1] = true;
  auto cycle_length = [&](Point start) {
    std::size_t len = 0;
    Point x = start;
    do {
      x = g[x];
      ++len;
    } while (x != start && len <= n);
    return len;
  };
  if (d.is_bisection()) {
    for (std::size_t x = 0; x < n; ++x)
      if (inside[x] == inside[g[x]])
        return false;
    return cycle_length(0) == n;
  }
  for (unsigned x : d.points())
    if (!inside[g[x - 1]])
      return false;
  PointSet const comp = d.complement();
  return cycle_length(static_cast<Point>(d.points().front() - 1)) == d.size() &&
         cycle_length(static_cast<Point>(comp.front() - 1)) == comp.size();
}

void for_each_cdelta(DeltaIndex const &d,
                     std::function<void(std::vector<Point> const &)> const &visit) {
  unsigned const n = d.degree();
  std::vector<Point> g(n);
  std::vector<Point> in = zero_based(d.points());
  std::vector<Point> out = zero_based(d.complement());
  if (d.is_bisection()) {
    // Cycle word: 1, out[0], in[1], out[1], in[2], ... with 1 = in[0] fixed.
    std::vector<Point> word(n);
    std::vector<Point> rest(in.begin() + 1, in.end());
    do {
      do {
        word[0] = in[0];
        for (std::size_t k = 0; k < n / 2; ++k) {
          word[2 * k + 1] = out[k];
          if (k + 1 < n / 2)
            word[2 * k + 2] = rest[k];
        }
        write_cycle(g, word);
        visit(g);
      } while (std::next_permutation(out.begin(), out.end()));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return;
  }
  // Least point of each side leads its cycle; the others run over all orders.
  std::vector<Point> in_rest(in.begin() + 1, in.end());
  std::vector<Point> out_rest(out.begin() + 1, out.end());
  std::vector<Point> in_word(in.size()), out_word(out.size());
  do {
    in_word[0] = in[0];
    std::copy(in_rest.begin(), in_rest.end(), in_word.begin() + 1);
    write_cycle(g, in_word);
    do {
      out_word[0] = out[0];
      std::copy(out_rest.begin(), out_rest.end(), out_word.begin() + 1);
      write_cycle(g, out_word);
      visit(g);
    } while (std::next_permutation(out_rest.begin(), out_rest.end()));
  } while (std::next_permutation(in_rest.begin(), in_rest.end()));
}

Permutation sample_cdelta(DeltaIndex const &d, RngStream &stream) {
  unsigned const n = d.degree();
  std::vector<Point> g(n);
  std::vector<Point> in = zero_based(d.points());
  std::vector<Point> out = zero_based(d.complement());
  if (d.is_bisection()) {
    std::span<Point> rest(in.data() + 1, in.size() - 1);
    stream.shuffle(std::span<Point>(out));
    stream.shuffle(rest);
    std::vector<Point> word(n);
    word[0] = in[0];
    for (std::size_t k = 0; k < n / 2; ++k) {
      word[2 * k + 1] = out[k];
      if (k + 1 < n / 2)
        word[2 * k + 2] = in[k + 1];
    }
    write_cycle(g, word);
  } else {
    stream.shuffle(std::span<Point>(in.data() + 1, in.size() - 1));
    stream.shuffle(std::span<Point>(out.data() + 1, out.size() - 1));
    write_cycle(g, in);
    write_cycle(g, out);
  }
  return Permutation::from_table(std::move(g));
}

std::string cdelta_stream_key(DeltaIndex const &d) {
  return "cdelta/n=" + std::to_string(d.degree()) + "/delta=" + d.key();
}

RngStream cdelta_stream(std::uint64_t master_seed, DeltaIndex const &d) {
  return RngStream::derive(master_seed, cdelta_stream_key(d));
}

FractionValue f_delta(DeltaIndex const &d, SubgroupDescriptor const &h) {
  if (h.kind() == SubgroupKind::primitive_bound)
    throw std::invalid_argument("f_delta needs element-level membership; PRIMITIVE_BOUND rejected");
  if (h.degree() != d.degree())
    throw DegreeMismatch(d.degree(), h.degree());
  if (d.degree() > kExactFractionMaxDegree)
    throw std::invalid_argument("exact f_delta is limited to n <= " +
                                std::to_string(kExactFractionMaxDegree));
  FractionValue f;
  unsigned long hits = 0, total = 0;
  for_each_cdelta(d, [&](std::vector<Point> const &g) {
    ++total;
    if (h.contains(g))
      ++hits;
  });
  f.hits = hits;
  f.total = total;
  return f;
}

unsigned conjugate_count(Permutation const &g, SubgroupDescriptor const &m) {
  unsigned const n = m.degree();
  if (g.degree() != n)
    throw DegreeMismatch(n, g.degree());
  CycleType const type = cycle_type(g);
  bool const admissible = type.size() == 1 || (type.size() == 2 && type[1] >= 1);
  if (!admissible)
    throw std::invalid_argument("conjugate_count needs an n-cycle or an (s, n-s) element, got " +
                                to_string(type));
  unsigned count = 0;
  switch (m.kind()) {
  case SubgroupKind::intransitive: {
    unsigned const k = static_cast<unsigned>(m.set().size());
    // Stab(T) = Stab(complement of T); for k = n/2 count each subgroup once.
    for_each_subset(n, k, [&](PointSet const &t) {
      if (2 * k == n && t.front() != 1)
        return false;
      if (SubgroupDescriptor::intransitive(n, t).contains(g))
        ++count;
      return true;
    });
    break;
  }
  case SubgroupKind::imprimitive:
    for_each_block_partition(n, static_cast<unsigned>(m.block_count()), [&](Partition const &p) {
      if (SubgroupDescriptor::imprimitive(n, p).contains(g))
        ++count;
      return true;
    });
    break;
  case SubgroupKind::primitive_bound:
    throw std::invalid_argument("conjugate_count needs an intransitive or imprimitive shape");
  }
  return count;
}

} // namespace symgen
