#include "symgen/lll.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace symgen {

namespace {

bool bound_less(BoundValue const &a, BoundValue const &b) {
  if (a.exact && b.exact)
    return *a.exact < *b.exact;
  return a.log2_upper < b.log2_upper;
}

nlohmann::json log2_or_null(BoundValue const &v) {
  if (v.is_zero())
    return nullptr;
  return static_cast<double>(v.log2_upper);
}

std::vector<SizePair> diagonal_pairs(unsigned n, int family) {
  std::vector<SizePair> out;
  if (family == 2)
    for (unsigned a = 1; 2 * a < n; a += 2)
      out.emplace_back(a, a);
  out.emplace_back(n / 2, n / 2);
  return out;
}

} // namespace

mpz_class dependency_valency(unsigned n, int family) {
  return 2 * (family_size(n, family) - 2);
}

bool dependency_adjacent(std::pair<DeltaIndex, DeltaIndex> const &v,
                         std::pair<DeltaIndex, DeltaIndex> const &w) {
  if (v == w)
    return false;
  return v.first == w.first || v.first == w.second || v.second == w.first ||
         v.second == w.second;
}

BoundValue max_total_over_all_pairs(unsigned n, int family) {
  BoundValue best;
  bool first = true;
  for (auto const &sizes : admissible_size_pairs(n, family)) {
    BoundValue t = total_event_bound(n, family, sizes);
    if (first || bound_less(best, t)) {
      best = std::move(t);
      first = false;
    }
  }
  return best;
}

LllReport lll_certificate(unsigned n, int family) {
  require_even_degree(n);
  if (n < 6)
    throw std::invalid_argument("lll_certificate needs n >= 6");
  LllReport r;
  r.n = n;
  r.family = family;
  r.d = dependency_valency(n, family);
  r.d_log2 = log2_upper(r.d);

  auto const pairs = diagonal_pairs(n, family);
  bool first = true;
  for (auto const &sizes : pairs) {
    BoundValue t = total_event_bound(n, family, sizes);
    if (first || bound_less(r.total, t)) {
      r.total = std::move(t);
      r.worst_sizes = sizes;
      first = false;
    }
  }
  for (int j = 1; j <= 5; ++j) {
    BoundValue best;
    bool first_j = true;
    for (auto const &sizes : pairs) {
      BoundValue t = event_bound(n, family, j, sizes);
      if (first_j || bound_less(best, t)) {
        best = std::move(t);
        first_j = false;
      }
    }
    r.bounds.emplace(j, std::move(best));
  }

  mpz_class const two_pow = mpz_class(1) << (n + 3);
  r.sanity = e_upper() * (r.d + 1) <= two_pow;
  if (r.total.exact) {
    r.exact_comparison = true;
    r.two_pow = *r.total.exact * two_pow <= 1;
    r.lll = *r.total.exact * e_upper() * (r.d + 1) <= 1;
  } else {
    long double const t = r.total.log2_upper;
    r.two_pow = t <= -static_cast<long double>(n + 3);
    long double const lhs = round_up_log2(t + log2_upper(e_upper()) + log2_upper(mpz_class(r.d + 1)));
    r.lll = lhs <= 0;
  }
  auto const c = hfamily_constants(n, family);
  if (c.c2_assumed)
    r.assumptions.emplace_back("c2<=n via CFSG");
  r.assumptions.emplace_back("primitive maximal subgroups have order <= 4^n (Praeger-Saxl)");
  return r;
}

nlohmann::json LllReport::to_json() const {
  nlohmann::json j;
  j["kind"] = "LLL_THRESHOLD";
  j["n"] = n;
  j["i"] = family;
  j["d"] = d.get_str();
  j["d_log2"] = static_cast<double>(d_log2);
  nlohmann::json b = nlohmann::json::object();
  nlohmann::json prov = nlohmann::json::object();
  for (auto const &[k, v] : bounds) {
    b[std::to_string(k)] = log2_or_null(v);
    prov[std::to_string(k)] = v.provenance;
  }
  j["bounds"] = b;
  j["provenance"] = prov;
  j["total_log2"] = log2_or_null(total);
  if (total.exact)
    j["total_exact"] = total.exact->get_str();
  j["worst_sizes"] = {worst_sizes.first, worst_sizes.second};
  j["thresholds"] = {{"two_pow", two_pow}, {"lll", lll}, {"sanity", sanity}};
  j["exact_comparison"] = exact_comparison;
  j["assumptions"] = assumptions;
  return j;
}

LllSweep lll_sweep(int family, unsigned n_min, unsigned n_max) {
  if (n_min % 2)
    ++n_min;
  if (n_min < 6)
    n_min = 6;
  if (n_min > n_max)
    throw std::invalid_argument("lll sweep: empty range");
  LllSweep s;
  s.family = family;
  s.n_min = n_min;
  s.n_max = n_max;
  for (unsigned n = n_min; n <= n_max; n += 2) {
    bool const ok = lll_certificate(n, family).lll;
    s.satisfied.emplace_back(n, ok);
    if (ok && !s.threshold)
      s.threshold = n;
  }
  if (s.threshold) {
    s.monotone = true;
    for (auto const &[n, ok] : s.satisfied)
      if (n >= *s.threshold && !ok)
        s.monotone = false;
  }
  return s;
}

nlohmann::json LllSweep::to_json() const {
  nlohmann::json j;
  j["kind"] = "LLL_SWEEP";
  j["i"] = family;
  j["n_min"] = n_min;
  j["n_max"] = n_max;
  j["threshold"] = threshold ? nlohmann::json(*threshold) : nlohmann::json(nullptr);
  j["monotone"] = monotone;
  nlohmann::json rows = nlohmann::json::array();
  for (auto const &[n, ok] : satisfied)
    rows.push_back({{"n", n}, {"lll", ok}});
  j["rows"] = rows;
  return j;
}

} // namespace symgen
