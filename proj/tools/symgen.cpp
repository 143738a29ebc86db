#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "symgen/construct.hpp"
#include "symgen/families.hpp"
#include "symgen/lll.hpp"
#include "symgen/oracles.hpp"

using nlohmann::json;
using namespace symgen;

namespace {

enum Exit { kOk = 0, kUsage = 1, kVerifyFailed = 2, kLimit = 3 };

struct Config {
  std::string format = "json";
  std::string output;
  unsigned threads = 1;
  std::uint64_t seed = 1;
};

std::uint64_t default_seed() {
  if (char const *env = std::getenv("SYMGEN_SEED")) {
    try {
      return std::stoull(env);
    } catch (std::exception const &) {
      std::cerr << "warning: ignoring unparseable SYMGEN_SEED='" << env << "'\n";
    }
  }
  return 1;
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (char const *epoch = std::getenv("SOURCE_DATE_EPOCH"))
    t = static_cast<std::time_t>(std::stoll(epoch));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string scalar_text(json const &v) {
  if (v.is_string())
    return v.get<std::string>();
  return v.dump();
}

// Aligned text view of a JSON document: scalars as "key  value" rows, arrays
// of objects as column tables.
void render_text(json const &doc, std::ostream &os, std::string const &prefix = "") {
  if (!doc.is_object()) {
    os << prefix << scalar_text(doc) << "\n";
    return;
  }
  std::size_t width = 0;
  for (auto const &[k, v] : doc.items())
    if (!v.is_structured() || (v.is_array() && (v.empty() || !v.front().is_object())))
      width = std::max(width, k.size());
  for (auto const &[k, v] : doc.items()) {
    if (v.is_object()) {
      os << prefix << k << ":\n";
      render_text(v, os, prefix + "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << prefix << k << ":\n";
      std::vector<std::string> cols;
      for (auto const &[c, _] : v.front().items())
        cols.push_back(c);
      std::vector<std::size_t> w(cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c) {
        w[c] = cols[c].size();
        for (auto const &row : v)
          w[c] = std::max(w[c], scalar_text(row.value(cols[c], json())).size());
      }
      os << prefix << "  ";
      for (std::size_t c = 0; c < cols.size(); ++c)
        os << std::left << std::setw(static_cast<int>(w[c] + 2)) << cols[c];
      os << "\n";
      for (auto const &row : v) {
        os << prefix << "  ";
        for (std::size_t c = 0; c < cols.size(); ++c)
          os << std::left << std::setw(static_cast<int>(w[c] + 2))
             << scalar_text(row.value(cols[c], json()));
        os << "\n";
      }
    } else {
      os << prefix << std::left << std::setw(static_cast<int>(width + 2)) << k << scalar_text(v)
         << "\n";
    }
  }
}

void emit(json const &doc, Config const &cfg) {
  std::ofstream file;
  std::ostream *os = &std::cout;
  if (!cfg.output.empty() && cfg.output != "-") {
    file.open(cfg.output);
    if (!file)
      throw std::runtime_error("cannot write " + cfg.output);
    os = &file;
  }
  if (cfg.format == "text")
    render_text(doc, *os);
  else
    *os << doc.dump(2) << "\n";
}

json with_config(json doc, json config) {
  doc["config"] = std::move(config);
  seal(doc, timestamp());
  return doc;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Pairwise generation of symmetric groups: coverings, local-lemma bounds, "
               "constructions and small-degree oracles"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  cfg.seed = default_seed();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("-o,--output", cfg.output, "Output file (default stdout)");
  app.add_option("--threads", cfg.threads, "Worker count hint; never changes results")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();

  unsigned n = 0;
  int family = 1;

  auto *cover = app.add_subcommand("cover", "Check whether M^(i) covers S_n");
  std::string mode = "cycle-type";
  cover->add_option("--n", n, "Degree")->required();
  cover->add_option("--i", family, "Family (1 or 2)")->check(CLI::IsMember({1, 2}))->capture_default_str();
  cover->add_option("--mode", mode, "cycle-type or exhaustive (n <= 10)")
      ->check(CLI::IsMember({"cycle-type", "exhaustive"}))
      ->capture_default_str();

  auto *lll = app.add_subcommand("lll", "Local Lemma bound report for one n or a sweep");
  unsigned n_min = 6, n_max = 0;
  lll->add_option("--n", n, "Single degree");
  lll->add_option("--n-min", n_min, "Sweep start")->capture_default_str();
  lll->add_option("--n-max", n_max, "Sweep end");
  lll->add_option("--i", family, "Family (1 or 2)")->check(CLI::IsMember({1, 2}))->capture_default_str();

  auto *cons = app.add_subcommand("construct", "Moser-Tardos construction with certificate");
  ConstructOptions copts;
  cons->add_option("--n", n, "Degree")->required();
  cons->add_option("--i", family, "Family (1 or 2)")->check(CLI::IsMember({1, 2}))->capture_default_str();
  cons->add_option("--seed", cfg.seed, "Master seed (default: $SYMGEN_SEED or 1)")->capture_default_str();
  cons->add_option("--max-rounds", copts.max_rounds, "Resampling limit (0: 1000 |S|)")->capture_default_str();
  cons->add_option("--max-pairs", copts.max_pairs, "Largest pair count attempted")->capture_default_str();

  auto *ver = app.add_subcommand("verify", "Re-check a certificate file");
  std::string path;
  ver->add_option("path", path, "Certificate JSON")->required();

  auto *exact = app.add_subcommand("exact", "Exact small-degree oracles");
  std::string what = "sigma", gen_mode = "full";
  exact->add_option("--n", n, "Degree")->required();
  exact->add_option("--what", what, "sigma, omega, counts, lattice or turan")
      ->check(CLI::IsMember({"sigma", "omega", "counts", "lattice", "turan"}))
      ->capture_default_str();
  exact->add_option("--mode", gen_mode, "Generation mode for omega")
      ->check(CLI::IsMember({"full", "at-least-alt"}))
      ->capture_default_str();

  auto *prob = app.add_subcommand("probgen", "Monte Carlo estimate of generation probabilities");
  std::uint64_t trials = 100000;
  prob->add_option("--n", n, "Degree")->required()->check(CLI::Range(3u, 40u));
  prob->add_option("--trials", trials, "Trial count")->check(CLI::Range(std::uint64_t{1000}, std::uint64_t{1} << 40))->capture_default_str();
  prob->add_option("--seed", cfg.seed, "Master seed (default: $SYMGEN_SEED or 1)")->capture_default_str();

  auto *sup = app.add_subcommand("sigma-upper", "|M^(1)| + sum_{k<=n/3} C(n,k)");
  sup->add_option("--n", n, "Degree")->required();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const &e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const &e) {
    return app.exit(e);
  } catch (CLI::CallForVersion const &e) {
    return app.exit(e);
  } catch (CLI::ParseError const &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (cover->parsed()) {
      CoverMode const m = mode == "exhaustive" ? CoverMode::exhaustive : CoverMode::cycle_type;
      CoverReport const r = covers(n, family, m);
      emit(with_config(r.to_json(), {{"command", "cover"}, {"n", n}, {"i", family}, {"mode", mode}}), cfg);
      return family == 2 && !r.covered ? kVerifyFailed : kOk;
    }
    if (lll->parsed()) {
      if (n != 0) {
        emit(with_config(lll_certificate(n, family).to_json(),
                         {{"command", "lll"}, {"n", n}, {"i", family}}),
             cfg);
        return kOk;
      }
      if (n_max == 0)
        throw std::invalid_argument("lll needs --n or --n-max");
      emit(with_config(lll_sweep(family, n_min, n_max).to_json(),
                       {{"command", "lll"}, {"n_min", n_min}, {"n_max", n_max}, {"i", family}}),
           cfg);
      return kOk;
    }
    if (cons->parsed()) {
      copts.threads = cfg.threads;
      json config = {{"command", "construct"}, {"n", n},
                     {"i", family},            {"seed", cfg.seed},
                     {"max_rounds", copts.max_rounds}, {"max_pairs", copts.max_pairs}};
      ConstructResult r;
      try {
        r = construct(n, family, cfg.seed, copts);
      } catch (std::length_error const &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kLimit;
      }
      if (auto const *c = std::get_if<ConstructionCertificate>(&r)) {
        emit(with_config(c->to_json(), config), cfg);
        return kOk;
      }
      auto const &f = std::get<ConstructFailure>(r);
      emit(with_config(f.to_json(), config), cfg);
      std::cerr << "construct: no certificate after " << f.rounds << " rounds, "
                << f.residual_bad_pairs << " bad pairs remain\n";
      return kLimit;
    }
    if (ver->parsed()) {
      std::ifstream in(path);
      if (!in) {
        std::cerr << json{{"error", "cannot open"}, {"path", path}}.dump() << "\n";
        return kUsage;
      }
      json doc;
      try {
        doc = json::parse(in);
      } catch (json::parse_error const &e) {
        std::cerr << json{{"error", "parse"}, {"path", path}, {"byte", e.byte}, {"message", e.what()}}.dump()
                  << "\n";
        return kUsage;
      }
      VerifyResult const v = verify(doc, cfg.threads);
      emit({{"path", path}, {"ok", v.ok}, {"violations", v.violations}}, cfg);
      return v.ok ? kOk : kVerifyFailed;
    }
    if (exact->parsed()) {
      json out;
      if (what == "sigma") {
        if (n > 5 && n % 2 == 1)
          out = {{"n", n}, {"sigma", odd_degree_sigma(n).get_str()}, {"source", "2^(n-1) for odd n"}};
        else
          out = {{"n", n}, {"sigma", sigma_exact(n).to_json()}, {"check", sigma_exhaustive(n).to_json()}};
      } else if (what == "omega") {
        GenerationMode const gm = gen_mode == "full" ? GenerationMode::full : GenerationMode::at_least_alt;
        out = {{"n", n}, {"mode", std::string(to_string(gm))}, {"omega", omega_exact(n, gm).to_json()}};
      } else if (what == "counts") {
        GenerationStats const s = generation_counts_exact(n, cfg.threads);
        out = s.to_json();
        out["identity_p_eq_(a+b+2c)/4"] = s.p() == (s.a() + s.b() + 2 * s.c()) / 4;
        out["identity_b_eq_c"] = s.b() == s.c();
      } else if (what == "lattice") {
        auto const lat = SubgroupLattice::build(n);
        json maximal = json::array();
        for (std::size_t k : lat.maximal())
          maximal.push_back(lat.describe(lat.subgroups()[k]));
        out = {{"n", n}, {"subgroups", lat.subgroups().size()}, {"maximal", maximal}};
      } else {
        json rows = json::array();
        for (int which = 0; which < 2; ++which) {
          Graph const g = which == 0 ? graph_a(n) : graph_b(n);
          std::uint64_t const m = g.size(), e = g.edge_count();
          rows.push_back({{"graph", which == 0 ? "A(n)" : "B(n)"},
                          {"vertices", m},
                          {"edges", e},
                          {"turan_bound", turan_lower_bound(m, e)},
                          {"clique_number", max_clique(g).size()}});
        }
        out = {{"n", n}, {"graphs", rows}};
      }
      emit(with_config(out, {{"command", "exact"}, {"n", n}, {"what", what}, {"mode", gen_mode}}), cfg);
      return kOk;
    }
    if (prob->parsed()) {
      emit(with_config(generation_prob_mc(n, trials, cfg.seed, cfg.threads).to_json(),
                       {{"command", "probgen"}, {"n", n}, {"trials", trials}, {"seed", cfg.seed}}),
           cfg);
      return kOk;
    }
    if (sup->parsed()) {
      require_even_degree(n);
      mpz_class const v = sigma_upper_bound(n);
      if (cfg.format == "text")
        std::cout << v.get_str() << "\n";
      else
        emit(with_config({{"n", n}, {"sigma_upper_bound", v.get_str()}},
                         {{"command", "sigma-upper"}, {"n", n}}),
             cfg);
      return kOk;
    }
  } catch (std::invalid_argument const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
