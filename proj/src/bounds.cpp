#include "symgen/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace symgen {

namespace {

constexpr long double kLn2 = 0.693147180559945309417232121458176568L;
constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();

// Exact rational arithmetic.
struct ExactDomain {
  using T = mpq_class;
  static T zero() { return 0; }
  static T integer(unsigned long k) { return mpq_class(k); }
  static T fact(unsigned k) { return mpq_class(factorial(k)); }
  static T pow2(unsigned long k) {
    mpz_class z = 1;
    z <<= k;
    return mpq_class(z);
  }
  static T mul(T const &a, T const &b) { return a * b; }
  static T div(T const &a, T const &b) { return a / b; }
  static T add(T const &a, T const &b) { return a + b; }
  static T power(T const &a, unsigned k) {
    T r = 1;
    for (unsigned i = 0; i < k; ++i)
      r *= a;
    return r;
  }
  static bool less(T const &a, T const &b) { return a < b; }
};

// log2 arithmetic; values are log2 of the quantity, -inf for zero.
struct Log2Domain {
  using T = long double;
  static T zero() { return kNegInf; }
  static T integer(unsigned long k) { return k == 0 ? kNegInf : std::log2(static_cast<long double>(k)); }
  static T fact(unsigned k) { return log2_factorial(k); }
  static T pow2(unsigned long k) { return static_cast<long double>(k); }
  static T mul(T a, T b) { return (a == kNegInf || b == kNegInf) ? kNegInf : a + b; }
  static T div(T a, T b) { return a == kNegInf ? kNegInf : a - b; }
  static T add(T a, T b) {
    if (a == kNegInf)
      return b;
    if (b == kNegInf)
      return a;
    T const hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log2(1.0L + std::exp2(lo - hi));
  }
  static T power(T a, unsigned k) { return a == kNegInf ? (k ? kNegInf : 0.0L) : a * k; }
  static bool less(T a, T b) { return a < b; }
};

template <typename D>
typename D::T min_of(typename D::T const &a, typename D::T const &b) {
  return D::less(b, a) ? b : a;
}

template <typename D>
typename D::T fraction_formula(unsigned n, int j, unsigned s) {
  using T = typename D::T;
  unsigned const half = n / 2;
  if (j == 3) {
    if (n % 3 != 0 || n < 6)
      return D::zero();
    if (s == half) {
      if (n % 6 != 0)
        return D::zero();
      T num = D::mul(D::integer(6), D::power(D::fact(n / 6), 6));
      return D::div(num, D::power(D::fact(half), 2));
    }
    unsigned const a = s, b = n - s;
    if (a % 3 != 0 || b % 3 != 0)
      return D::zero();
    T num = D::mul(D::integer(18),
                   D::mul(D::power(D::fact(a / 3), 3), D::power(D::fact(b / 3), 3)));
    return D::div(num, D::mul(D::fact(a), D::fact(b)));
  }
  if (j == 4) {
    if (n % 4 != 0 || n < 8)
      return D::zero();
    if (s == half) {
      T num = D::mul(D::integer(4), D::power(D::fact(n / 4), 4));
      return D::div(num, D::power(D::fact(half), 2));
    }
    if (4 * s != n)
      return D::zero();
    unsigned const b = n - s;
    return D::div(D::mul(D::integer(6), D::power(D::fact(b / 3), 3)), D::fact(b));
  }
  throw std::invalid_argument("fraction bounds exist for j = 3, 4 only");
}

// 4 (n/2)!^2 / n^2, the lower bound on |C(Delta)|.
template <typename D>
typename D::T pool_lower_bound(unsigned n) {
  return D::div(D::mul(D::integer(4), D::power(D::fact(n / 2), 2)),
                D::power(D::integer(n), 2));
}

template <typename D>
typename D::T max_wreath_order(unsigned n) {
  using T = typename D::T;
  T best = D::zero();
  for (unsigned m = 5; m <= n / 2; ++m) {
    if (n % m != 0)
      continue;
    unsigned const d = n / m;
    T const order = D::mul(D::power(D::fact(d), m), D::fact(m));
    if (D::less(best, order))
      best = order;
  }
  return best;
}

// max over 5 <= m <= n/2 of q!^(m-r) (q+1)!^r m! with n = qm + r. By log-convexity
// of the Gamma function this dominates Gamma(n/m + 1)^m m!, hence every
// d!^m m! with dm = n, and it is non-decreasing in n.
template <typename D>
typename D::T wreath_envelope(unsigned n) {
  using T = typename D::T;
  thread_local std::map<unsigned, T> memo;
  if (auto it = memo.find(n); it != memo.end())
    return it->second;
  T best = D::zero();
  for (unsigned m = 5; m <= n / 2; ++m) {
    unsigned const q = n / m, r = n % m;
    T const order = D::mul(D::mul(D::power(D::fact(q), m - r), D::power(D::fact(q + 1), r)),
                           D::fact(m));
    if (D::less(best, order))
      best = order;
  }
  memo.emplace(n, best);
  return best;
}

unsigned two_sqrt_floor(unsigned n) {
  unsigned r = static_cast<unsigned>(std::sqrt(4.0 * n));
  while (static_cast<unsigned long>(r) * r > 4ul * n)
    --r;
  while (static_cast<unsigned long>(r + 1) * (r + 1) <= 4ul * n)
    ++r;
  return r;
}

template <typename D>
typename D::T event_formula(unsigned n, int family, int j, SizePair sizes,
                            HFamilyConstants const &c) {
  using T = typename D::T;
  unsigned const half = n / 2;
  T const n2 = D::power(D::integer(n), 2);
  switch (j) {
  case 1:
    return D::zero();
  case 2:
    // c2 * m * max f <= n * n^2 * 4^n / |C|min.
    return D::div(D::mul(D::integer(c.c2), D::mul(n2, D::pow2(2ul * n))),
                  pool_lower_bound<D>(n));
  case 3: {
    T const f = min_of<D>(fraction_formula<D>(n, 3, sizes.first),
                          fraction_formula<D>(n, 3, sizes.second));
    return D::mul(D::integer(c.c3), D::mul(n2, f));
  }
  case 4: {
    if (sizes.first == half && sizes.second == half) {
      T const f = fraction_formula<D>(n, 4, half);
      return D::mul(D::integer(c.s4 * c.c4), D::mul(f, f));
    }
    T const f = min_of<D>(fraction_formula<D>(n, 4, sizes.first),
                          fraction_formula<D>(n, 4, sizes.second));
    return D::mul(D::integer(c.c4), D::mul(n2, f));
  }
  case 5:
    if (c.c5 == 0)
      return D::zero();
    return D::div(D::mul(D::integer(two_sqrt_floor(n)), D::mul(n2, wreath_envelope<D>(n))),
                  pool_lower_bound<D>(n));
  default:
    break;
  }
  (void)family;
  throw std::invalid_argument("j must lie in 1..5");
}

std::string provenance_for(int j, SizePair sizes, unsigned n) {
  switch (j) {
  case 1:
    return "j=1: zero, no intransitive maximal subgroup outside M^(i) meets both pools";
  case 2:
    return "j=2: union bound with c2<=n (CFSG), m<=n^2, |H|<=4^n, |C|>=(2/n)^2(n/2)!^2";
  case 3:
    return "j=3: union bound with c3<=1, m<=n^2, exact 3-block fraction";
  case 4:
    if (2 * sizes.first == n && 2 * sizes.second == n)
      return "j=4: conjugate bound with s4<=1, squared exact 4-block fraction";
    return "j=4: union bound with c4<=1, m<=n^2, exact 4-block fraction";
  case 5:
    return "j=5: union bound with c5<=floor(2 sqrt n), m<=n^2, max_m q!^(m-r)(q+1)!^r m! / ((2/n)^2(n/2)!^2)";
  }
  return {};
}

} // namespace

bool BoundValue::is_zero() const {
  if (exact)
    return *exact == 0;
  return log2_upper == kNegInf;
}

long double log2_factorial(unsigned m) { return std::lgamma(static_cast<long double>(m) + 1.0L) / kLn2; }

long double round_up_log2(long double x) {
  if (x == kNegInf)
    return x;
  return x + 1e-9L * (1.0L + std::fabs(x));
}

long double round_down_log2(long double x) {
  if (x == kNegInf)
    return x;
  return x - 1e-9L * (1.0L + std::fabs(x));
}

long double log2_upper(mpz_class const &z) {
  if (z <= 0)
    throw std::invalid_argument("log2 of a non-positive integer");
  long exp = 0;
  double const mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  // mpz_get_d_2exp truncates; the next representable mantissa bounds from above.
  return round_up_log2(std::log2(static_cast<long double>(mant)) + static_cast<long double>(exp)) +
         1e-15L;
}

long double log2_upper(mpq_class const &q) {
  if (q == 0)
    return kNegInf;
  if (q < 0)
    throw std::invalid_argument("log2 of a negative rational");
  long en = 0, ed = 0;
  double const mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double const md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  long double const v = std::log2(static_cast<long double>(mn)) + en -
                        std::log2(static_cast<long double>(md)) - ed;
  return round_up_log2(v) + 1e-15L;
}

mpq_class e_lower() { return mpq_class(mpz_class("2718281828459045"), mpz_class("1000000000000000")); }
mpq_class e_upper() { return mpq_class(mpz_class("2718281828459046"), mpz_class("1000000000000000")); }

std::pair<long double, long double> stirling_bounds_log2(unsigned m) {
  constexpr long double kPi = 3.141592653589793238462643383279502884L;
  constexpr long double kLog2E = 1.442695040888963407359924681001892137L;
  long double const lm = std::log2(static_cast<long double>(m));
  long double const power = m * (lm - kLog2E);
  long double const lower = 0.5L * std::log2(2.0L * kPi * m) + power;
  long double const upper = kLog2E + 0.5L * lm + power;
  return {lower, upper};
}

void require_admissible_sizes(unsigned n, int family, SizePair sizes) {
  require_even_degree(n);
  if (family != 1 && family != 2)
    throw std::invalid_argument("family must be 1 or 2");
  for (unsigned s : {sizes.first, sizes.second}) {
    bool const ok = 2 * s == n || (family == 2 && s % 2 == 1 && 2 * s < n);
    if (!ok)
      throw std::invalid_argument("size " + std::to_string(s) + " does not index S^(" +
                                  std::to_string(family) + ") at n = " + std::to_string(n));
  }
}

std::vector<SizePair> admissible_size_pairs(unsigned n, int family) {
  require_even_degree(n);
  std::vector<unsigned> sizes;
  if (family == 2)
    for (unsigned a = 1; 2 * a < n; a += 2)
      sizes.push_back(a);
  sizes.push_back(n / 2);
  std::vector<SizePair> pairs;
  for (std::size_t x = 0; x < sizes.size(); ++x)
    for (std::size_t y = x; y < sizes.size(); ++y)
      pairs.emplace_back(sizes[x], sizes[y]);
  return pairs;
}

BoundValue fraction_bound(unsigned n, int j, unsigned delta_size) {
  BoundValue v;
  v.log2_upper = round_up_log2(fraction_formula<Log2Domain>(n, j, delta_size));
  if (n <= kExactBoundMaxDegree)
    v.exact = fraction_formula<ExactDomain>(n, j, delta_size);
  v.provenance = "max f_Delta over H_" + std::to_string(j) + ", |Delta| = " + std::to_string(delta_size);
  return v;
}

BoundValue event_bound(unsigned n, int family, int j, SizePair sizes) {
  require_admissible_sizes(n, family, sizes);
  auto const c = hfamily_constants(n, family);
  BoundValue v;
  v.log2_upper = round_up_log2(event_formula<Log2Domain>(n, family, j, sizes, c));
  if (n <= kExactBoundMaxDegree)
    v.exact = event_formula<ExactDomain>(n, family, j, sizes, c);
  v.provenance = provenance_for(j, sizes, n);
  return v;
}

BoundValue total_event_bound(unsigned n, int family, SizePair sizes) {
  require_admissible_sizes(n, family, sizes);
  auto const c = hfamily_constants(n, family);
  long double log_total = kNegInf;
  mpq_class exact_total = 0;
  for (int j = 1; j <= 5; ++j) {
    log_total = Log2Domain::add(log_total, event_formula<Log2Domain>(n, family, j, sizes, c));
    if (n <= kExactBoundMaxDegree)
      exact_total += event_formula<ExactDomain>(n, family, j, sizes, c);
  }
  BoundValue v;
  v.log2_upper = round_up_log2(log_total);
  if (n <= kExactBoundMaxDegree)
    v.exact = exact_total;
  v.provenance = "sum over j of P(E_v^j) bounds";
  return v;
}

long double max_wreath_order_log2(unsigned n) { return max_wreath_order<Log2Domain>(n); }

} // namespace symgen
