#include "symgen/construct.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "symgen/digest.hpp"
#include "symgen/lll.hpp"

namespace symgen {

bool pair_ok(int family, GenerationClass c) {
  if (c == GenerationClass::full_symmetric)
    return true;
  return family == 2 && c == GenerationClass::alternating;
}

namespace {

nlohmann::json delta_json(DeltaIndex const &d) { return d.points(); }

} // namespace

nlohmann::json ConstructionCertificate::to_json() const {
  nlohmann::json j;
  j["kind"] = "CONSTRUCTION";
  j["n"] = n;
  j["i"] = family;
  j["seed"] = seed;
  j["rounds"] = rounds;
  j["max_rounds"] = max_rounds;
  j["size"] = assignment.size();
  nlohmann::json a = nlohmann::json::array();
  for (auto const &entry : assignment)
    a.push_back({{"delta", delta_json(entry.delta)}, {"g", entry.g.to_string()}});
  j["assignment"] = a;
  return j;
}

nlohmann::json ConstructFailure::to_json() const {
  return {{"kind", "FAILURE"},   {"n", n},
          {"i", family},         {"seed", seed},
          {"rounds", rounds},    {"residual_bad_pairs", residual_bad_pairs},
          {"reason", reason}};
}

ConstructResult construct(unsigned n, int family, std::uint64_t seed, ConstructOptions const &options) {
  require_even_degree(n);
  if (n < 6)
    throw std::invalid_argument("construct needs n >= 6");
  auto const catalog = family_catalog(n, family);
  std::size_t const count = catalog.size();
  std::uint64_t const pairs = static_cast<std::uint64_t>(count) * (count - 1) / 2;
  if (pairs > options.max_pairs)
    throw std::length_error("construct: " + std::to_string(pairs) + " pairs exceed the cap of " +
                            std::to_string(options.max_pairs));
  std::uint64_t const max_rounds = options.max_rounds ? options.max_rounds : 1000ull * count;

  std::vector<RngStream> streams;
  std::vector<Permutation> g;
  streams.reserve(count);
  g.reserve(count);
  for (auto const &d : catalog) {
    streams.push_back(cdelta_stream(seed, d));
    g.push_back(sample_cdelta(d, streams.back()));
  }

  // bad[a * count + b] for a < b
  std::vector<std::uint8_t> bad(count * count, 0);
  auto check = [&](std::size_t a, std::size_t b) {
    return !pair_ok(family, generation_class(g[a], g[b]));
  };
  parallel_for(count, options.threads, [&](std::size_t a) {
    for (std::size_t b = a + 1; b < count; ++b)
      bad[a * count + b] = check(a, b);
  });
  std::set<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t a = 0; a < count; ++a)
    for (std::size_t b = a + 1; b < count; ++b)
      if (bad[a * count + b])
        pending.emplace(a, b);

  std::uint64_t rounds = 0;
  while (!pending.empty()) {
    if (rounds >= max_rounds) {
      ConstructFailure f;
      f.n = n;
      f.family = family;
      f.seed = seed;
      f.rounds = rounds;
      f.residual_bad_pairs = pending.size();
      f.reason = "max_rounds reached";
      return f;
    }
    auto const [a, b] = *pending.begin();
    g[a] = sample_cdelta(catalog[a], streams[a]);
    g[b] = sample_cdelta(catalog[b], streams[b]);
    ++rounds;
    std::vector<std::uint8_t> row_a(count, 0), row_b(count, 0);
    parallel_for(count, options.threads, [&](std::size_t k) {
      if (k != a)
        row_a[k] = check(std::min(a, k), std::max(a, k));
      if (k != b && k != a)
        row_b[k] = check(std::min(b, k), std::max(b, k));
    });
    auto update = [&](std::size_t x, std::size_t y, bool is_bad) {
      std::pair<std::size_t, std::size_t> const key{std::min(x, y), std::max(x, y)};
      if (is_bad)
        pending.insert(key);
      else
        pending.erase(key);
    };
    for (std::size_t k = 0; k < count; ++k) {
      if (k != a)
        update(a, k, row_a[k]);
      if (k != b && k != a)
        update(b, k, row_b[k]);
    }
  }

  ConstructionCertificate c;
  c.n = n;
  c.family = family;
  c.seed = seed;
  c.rounds = rounds;
  c.max_rounds = max_rounds;
  c.assignment.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    c.assignment.push_back({catalog[k], g[k]});
  return c;
}

std::string certificate_checksum(nlohmann::json const &doc) {
  nlohmann::json copy = doc;
  copy.erase("checksum");
  if (copy.contains("metadata") && copy["metadata"].is_object())
    copy["metadata"].erase("created");
  return sha256_hex(copy.dump());
}

void seal(nlohmann::json &doc, std::string const &created) {
  doc["version"] = kVersion;
  doc["metadata"] = {{"version", kVersion}, {"created", created}};
  doc["checksum"] = certificate_checksum(doc);
}

namespace {

std::string points_str(PointSet const &p) { return nlohmann::json(p).dump(); }

void verify_construction(nlohmann::json const &doc, unsigned threads, VerifyResult &out) {
  unsigned const n = doc.at("n").get<unsigned>();
  int const family = doc.at("i").get<int>();
  require_even_degree(n);
  if (family != 1 && family != 2)
    throw std::invalid_argument("family must be 1 or 2");

  std::vector<DeltaIndex> deltas;
  std::vector<Permutation> gs;
  std::set<PointSet> seen;
  for (auto const &entry : doc.at("assignment")) {
    PointSet pts = entry.at("delta").get<PointSet>();
    std::string const gtext = entry.at("g").get<std::string>();
    std::string const label = "delta " + points_str(pts);
    std::optional<DeltaIndex> d;
    try {
      d = DeltaIndex::make(n, pts, family);
    } catch (std::exception const &e) {
      out.fail(label + ": not a member of S^(" + std::to_string(family) + "): " + e.what());
      continue;
    }
    Permutation g;
    try {
      g = Permutation::parse(gtext, n);
    } catch (std::exception const &e) {
      out.fail(label + ": unparseable g: " + e.what());
      continue;
    }
    if (!seen.insert(d->points()).second)
      out.fail(label + ": duplicate index");
    if (!in_cdelta(g, *d)) {
      std::string why;
      if (d->is_bisection())
        why = is_full_cycle(g) ? "n-cycle not alternating across Delta" : "not an n-cycle";
      else
        why = "not an (" + std::to_string(d->size()) + ", " + std::to_string(n - d->size()) +
              ") element with its short cycle on Delta";
      out.fail(label + ": g = " + g.to_string() + " not in C(Delta) (" + why + ")");
    }
    deltas.push_back(*d);
    gs.push_back(std::move(g));
  }

  mpz_class const expected = family_size(n, family);
  if (mpz_class(static_cast<unsigned long>(seen.size())) != expected)
    out.fail("cardinality: " + std::to_string(seen.size()) + " distinct indices, expected " +
             expected.get_str());
  if (doc.contains("size") && doc["size"].get<std::size_t>() != gs.size())
    out.fail("size field " + doc["size"].dump() + " disagrees with the assignment length " +
             std::to_string(gs.size()));

  std::size_t const count = gs.size();
  std::vector<std::vector<std::pair<std::size_t, GenerationClass>>> bad(count);
  parallel_for(count, threads, [&](std::size_t a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      GenerationClass const c = generation_class(gs[a], gs[b]);
      if (!pair_ok(family, c))
        bad[a].emplace_back(b, c);
    }
  });
  for (std::size_t a = 0; a < count; ++a)
    for (auto const &[b, c] : bad[a])
      out.fail("pair " + points_str(deltas[a].points()) + " / " + points_str(deltas[b].points()) +
               ": " + std::string(to_string(c)) + " (" + gs[a].to_string() + ", " +
               gs[b].to_string() + ")");
}

void verify_lll(nlohmann::json const &doc, VerifyResult &out) {
  unsigned const n = doc.at("n").get<unsigned>();
  int const family = doc.at("i").get<int>();
  nlohmann::json const fresh = lll_certificate(n, family).to_json();
  for (char const *key : {"d", "thresholds", "worst_sizes", "assumptions"})
    if (doc.at(key) != fresh.at(key))
      out.fail(std::string(key) + ": recorded " + doc.at(key).dump() + ", recomputed " +
               fresh.at(key).dump());
  auto close = [](nlohmann::json const &x, nlohmann::json const &y) {
    if (x.is_null() || y.is_null())
      return x.is_null() && y.is_null();
    double const a = x.get<double>(), b = y.get<double>();
    return std::fabs(a - b) <= 1e-9 * (1.0 + std::fabs(b));
  };
  if (!close(doc.at("total_log2"), fresh.at("total_log2")))
    out.fail("total_log2: recorded " + doc.at("total_log2").dump() + ", recomputed " +
             fresh.at("total_log2").dump());
  for (auto const &[j, v] : fresh.at("bounds").items())
    if (!doc.at("bounds").contains(j) || !close(doc.at("bounds").at(j), v))
      out.fail("bounds." + j + ": recomputed " + v.dump());
}

} // namespace

VerifyResult verify(nlohmann::json const &doc, unsigned threads) {
  VerifyResult out;
  try {
    if (doc.contains("checksum") && doc["checksum"] != certificate_checksum(doc))
      out.fail("checksum mismatch");
    std::string const kind = doc.at("kind").get<std::string>();
    if (kind == "CONSTRUCTION")
      verify_construction(doc, threads, out);
    else if (kind == "LLL_THRESHOLD")
      verify_lll(doc, out);
    else
      out.fail("unknown certificate kind '" + kind + "'");
  } catch (nlohmann::json::exception const &e) {
    out.fail(std::string("malformed certificate: ") + e.what());
  } catch (std::invalid_argument const &e) {
    out.fail(std::string("invalid certificate: ") + e.what());
  }
  return out;
}

} // namespace symgen
