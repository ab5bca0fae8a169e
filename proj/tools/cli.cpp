#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "fixdyn/claims.hpp"
#include "fixdyn/dynamics.hpp"
#include "fixdyn/errors.hpp"
#include "fixdyn/ff.hpp"
#include "fixdyn/nfcount.hpp"
#include "fixdyn/report.hpp"
#include "fixdyn/stats.hpp"

namespace fixdyn::cli {

namespace {

using report::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t field_cap = kDefaultFieldCap;
  std::uint64_t exp_cap = kDefaultExponentCap;
  std::uint64_t sieve_cap = kDefaultSieveCap;
  std::string format = "csv";
  std::string out_path;
  unsigned jobs = 1;
};

// Strict: unknown keys and non-positive caps are rejected.
void apply_config_file(const std::string& path, RunConfig& cfg, const CLI::App& app) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  auto given = [&](const char* flag) { return app.get_option(flag)->count() > 0; };
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "field_cap") {
        if (!given("--field-cap")) cfg.field_cap = value.get<std::uint64_t>();
      } else if (key == "exp_cap") {
        if (!given("--exp-cap")) cfg.exp_cap = value.get<std::uint64_t>();
      } else if (key == "sieve_cap") {
        if (!given("--sieve-cap")) cfg.sieve_cap = value.get<std::uint64_t>();
      } else if (key == "format") {
        if (!given("--format")) cfg.format = value.get<std::string>();
      } else if (key == "out") {
        if (!given("--out")) cfg.out_path = value.get<std::string>();
      } else if (key == "jobs") {
        if (!given("--jobs")) cfg.jobs = value.get<unsigned>();
      } else {
        throw UsageError("unknown config key '" + key + "'");
      }
    } catch (const json::exception& e) {
      throw UsageError("config key '" + key + "' has the wrong type: " + e.what());
    }
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.field_cap == 0 || cfg.exp_cap == 0 || cfg.sieve_cap == 0) throw UsageError("caps must be positive");
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("--format must be csv or json");
  if (cfg.jobs == 0) throw UsageError("--jobs must be positive");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    cur.erase(std::remove_if(cur.begin(), cur.end(), [](unsigned char ch) { return std::isspace(ch); }), cur.end());
    if (!cur.empty()) items.push_back(cur);
  }
  return items;
}

std::vector<std::int64_t> parse_int_list(const std::string& text, const char* flag) {
  std::vector<std::int64_t> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad integer '") + item + "' in " + flag);
    }
  }
  return out;
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::uint64_t power_or_cap(std::uint64_t p, unsigned n, std::uint64_t cap) {
  std::uint64_t size = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (size > cap / p) {
      throw CapExceeded("F_" + std::to_string(p) + "^" + std::to_string(n) + " exceeds the field cap of " +
                        std::to_string(cap));
    }
    size *= p;
  }
  return size;
}

class Output {
 public:
  Output(const RunConfig& cfg, std::ostream& fallback) : cfg_(cfg), fallback_(fallback) {}

  void emit(const std::string& csv, const json& doc) {
    const std::string body = cfg_.format == "json" ? doc.dump(2) + "\n" : csv;
    if (cfg_.out_path.empty()) {
      fallback_ << body;
      return;
    }
    std::ofstream file(cfg_.out_path, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot write " + cfg_.out_path);
    file << body;
  }

 private:
  const RunConfig& cfg_;
  std::ostream& fallback_;
};

struct CensusArgs {
  std::vector<std::uint64_t> p;
  std::vector<unsigned> n;
  std::vector<unsigned> ell{1};
  std::vector<std::uint64_t> d;
  std::string family = "prime-power";
  std::string c = "all";
};

int cmd_census(const CensusArgs& a, const RunConfig& cfg, Output& out) {
  const auto family = dynamics::parse_family(a.family);
  if (a.p.empty() || a.n.empty()) throw UsageError("census needs --p and --n");
  if (family == dynamics::Family::Raw && a.d.empty()) throw UsageError("raw family needs --d");
  const std::vector<std::string> c_items = a.c == "all" ? std::vector<std::string>{} : split_list(a.c);

  std::vector<dynamics::CensusRecord> rows;
  for (auto p : sorted_unique(a.p)) {
    for (auto n : sorted_unique(a.n)) {
      power_or_cap(p, n, cfg.field_cap);
      const auto field = ff::Field::canonical(p, n);
      const auto exponents = family == dynamics::Family::Raw ? sorted_unique(a.d) : std::vector<std::uint64_t>{0};
      const auto ells = family == dynamics::Family::Raw ? std::vector<unsigned>{0} : sorted_unique(a.ell);
      for (auto ell : ells) {
        for (auto d : exponents) {
          dynamics::MapSpec map;
          try {
            map = dynamics::MapSpec::make(family, p, ell, d, std::int64_t{0}, cfg.exp_cap);
          } catch (const CapExceeded& e) {
            throw CapExceeded("point (p=" + std::to_string(p) + ", n=" + std::to_string(n) +
                              ", ell=" + std::to_string(ell) + "): " + e.what());
          }
          std::vector<dynamics::CensusRecord> batch;
          if (a.c == "all") {
            batch = dynamics::census_all(field, map, cfg.field_cap);
          } else {
            std::vector<ff::Element> coefficients;
            for (const auto& item : c_items) coefficients.push_back(field.parse(item));
            coefficients = sorted_unique(std::move(coefficients));
            batch = dynamics::census(field, map, coefficients, cfg.field_cap);
          }
          std::sort(batch.begin(), batch.end(), [](const auto& x, const auto& y) { return x.c_index < y.c_index; });
          rows.insert(rows.end(), batch.begin(), batch.end());
        }
      }
    }
  }
  out.emit(report::census_csv(rows), report::census_json(rows));
  return kExitOk;
}

struct ClaimsArgs {
  std::vector<std::uint64_t> p;
  std::vector<unsigned> n;
  std::vector<unsigned> ell{1};
  std::string expect;
  std::size_t max_witnesses = 16;
};

int cmd_claims(const ClaimsArgs& a, const RunConfig& cfg, Output& out, std::ostream& err) {
  std::vector<claims::GridPoint> grid;
  for (auto p : sorted_unique(a.p)) {
    for (auto n : sorted_unique(a.n)) {
      for (auto ell : sorted_unique(a.ell)) grid.push_back({p, n, ell});
    }
  }
  claims::CheckOptions opts;
  opts.field_cap = cfg.field_cap;
  opts.exp_cap = cfg.exp_cap;
  opts.jobs = cfg.jobs;
  opts.max_witnesses = a.max_witnesses;
  const auto reports = claims::check_all(grid, opts);
  out.emit(report::claims_csv(reports), report::claims_json(reports));

  if (a.expect.empty()) return kExitOk;
  std::ifstream in(a.expect);
  if (!in) throw UsageError("cannot read expectation file " + a.expect);
  json expected;
  try {
    expected = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("expectation file is not valid JSON: " + std::string(e.what()));
  }
  std::vector<std::string> diffs;
  try {
    diffs = report::compare_expectations(expected, reports);
  } catch (const json::exception& e) {
    throw UsageError("expectation file has an unexpected layout: " + std::string(e.what()));
  }
  for (const auto& line : diffs) err << "regression: " << line << '\n';
  return diffs.empty() ? kExitOk : kExitRegression;
}

struct AvgArgs {
  std::string family = "prime-power";
  unsigned n = 1;
  unsigned ell = 1;
  std::string selector = "p|c";
  std::string c;
};

int cmd_avg(const AvgArgs& a, const RunConfig& cfg, Output& out) {
  stats::AverageOptions opts;
  opts.field_cap = cfg.field_cap;
  opts.exp_cap = cfg.exp_cap;
  opts.sieve_cap = cfg.sieve_cap;
  opts.jobs = cfg.jobs;
  const auto rows = stats::average_report(dynamics::parse_family(a.family), a.n, a.ell,
                                          stats::parse_selector(a.selector), parse_int_list(a.c, "--c"), opts);
  out.emit(report::average_csv(rows), report::average_json(rows));
  return kExitOk;
}

struct DensityArgs {
  std::string kind;
  unsigned n = 1;
  unsigned ell = 1;
  std::string c;
  std::string plot_path;
};

int cmd_density(const DensityArgs& a, const RunConfig& cfg, Output& out) {
  const auto rows = stats::density_table(stats::parse_density_kind(a.kind), a.n, a.ell, parse_int_list(a.c, "--c"),
                                         cfg.sieve_cap);
  out.emit(report::density_csv(rows), report::density_json(rows));
  if (!a.plot_path.empty()) {
    std::ofstream plot(a.plot_path, std::ios::binary | std::ios::trunc);
    if (!plot) throw UsageError("cannot write " + a.plot_path);
    plot << report::density_plot_data(rows);
  }
  return kExitOk;
}

struct NfArgs {
  unsigned d = 0;
  std::string X;
  std::optional<double> height;
  std::optional<std::uint64_t> squarefree;
  std::optional<std::int64_t> trinomials;
  double bound_constant = 4.0;
  std::uint64_t q_max = nfcount::kDefaultMaxModPrime;
  std::uint64_t trial_bound = nfcount::kDefaultTrialBound;
};

int cmd_nf(const NfArgs& a, Output& out) {
  const int modes = (!a.X.empty()) + a.height.has_value() + a.squarefree.has_value() + a.trinomials.has_value();
  if (modes != 1) throw UsageError("nf needs exactly one of --X, --height, --squarefree, --trinomials");
  if (a.d < 2) throw UsageError("nf needs --d >= 2");

  if (!a.X.empty()) {
    std::vector<nfcount::FieldCountRow> rows;
    for (auto x : parse_int_list(a.X, "--X")) {
      if (x < 1) throw UsageError("--X values must be >= 1");
      rows.push_back(nfcount::count_by_disc(a.d, static_cast<std::uint64_t>(x), a.bound_constant, a.q_max));
    }
    out.emit(report::field_count_csv(rows), report::field_count_json(rows));
  } else if (a.height) {
    const std::uint64_t count = nfcount::count_by_height(a.d, *a.height);
    std::ostringstream csv;
    csv << "d,h_max,count\n" << a.d << ',' << *a.height << ',' << count << '\n';
    out.emit(csv.str(), json{{"d", a.d}, {"h_max", *a.height}, {"count", count}});
  } else if (a.squarefree) {
    const auto rep = nfcount::squarefree_disc_fraction(a.d, *a.squarefree, a.trial_bound);
    out.emit(report::squarefree_csv(rep), report::squarefree_json(rep));
  } else {
    if (*a.trinomials < 0) throw UsageError("--trinomials must be >= 0");
    std::vector<report::TrinomialRow> rows;
    for (std::int64_t c = -*a.trinomials; c <= *a.trinomials; ++c) {
      auto tri = nfcount::Trinomial::of(a.d, c);
      const auto irr = nfcount::irreducibility_status(a.d, c, a.q_max).status;
      const auto sq = nfcount::is_squarefree(tri.disc, a.trial_bound);
      rows.push_back({std::move(tri), irr, sq});
    }
    out.emit(report::trinomial_csv(rows), report::trinomial_json(rows));
  }
  return kExitOk;
}

struct OrbitArgs {
  std::uint64_t p = 0;
  unsigned n = 1;
  std::optional<std::uint64_t> d;
  std::string family;
  unsigned ell = 1;
  std::string c = "0";
};

int cmd_orbits(const OrbitArgs& a, const RunConfig& cfg, Output& out) {
  const auto family = a.family.empty() ? dynamics::Family::Raw : dynamics::parse_family(a.family);
  if (family == dynamics::Family::Raw && !a.d) throw UsageError("orbits needs --d or --family");
  power_or_cap(a.p, a.n, cfg.field_cap);
  const auto field = ff::Field::canonical(a.p, a.n);
  const auto map = dynamics::MapSpec::make(family, a.p, a.ell, a.d.value_or(0), field.parse(a.c), cfg.exp_cap);
  const auto census = dynamics::orbit_census(field, map, cfg.field_cap);
  out.emit(report::orbit_csv(census), report::orbit_json(census));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed-point census and claim checker for z^d + c over finite fields"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string config_path;
  app.add_option("--out", cfg.out_path, "Write results to this file instead of stdout");
  app.add_option("--format", cfg.format, "Output format: csv or json");
  app.add_option("--jobs", cfg.jobs, "Worker threads for independent tasks");
  app.add_option("--field-cap", cfg.field_cap, "Largest field (p^n) any exhaustive scan may visit");
  app.add_option("--exp-cap", cfg.exp_cap, "Largest map degree d");
  app.add_option("--sieve-cap", cfg.sieve_cap, "Largest prime-sieve limit");
  app.add_option("--config", config_path, "JSON config file; flags override its values");

  CensusArgs census;
  auto* census_cmd = app.add_subcommand("census", "Fixed-point counts per coefficient");
  census_cmd->add_option("--p", census.p, "Primes")->delimiter(',')->required();
  census_cmd->add_option("--n", census.n, "Extension degrees")->delimiter(',')->required();
  census_cmd->add_option("--ell", census.ell, "Exponents ell")->delimiter(',');
  census_cmd->add_option("--d", census.d, "Map degrees for --family raw")->delimiter(',');
  census_cmd->add_option("--family", census.family, "prime-power, pminus1 or raw");
  census_cmd->add_option("--c", census.c, "'all' or a comma list of integers / elements such as 2*t+1");

  ClaimsArgs claims_args;
  auto* claims_cmd = app.add_subcommand("claims", "Check every registered claim over a grid");
  claims_cmd->add_option("--p", claims_args.p, "Primes")->delimiter(',');
  claims_cmd->add_option("--n", claims_args.n, "Extension degrees")->delimiter(',');
  claims_cmd->add_option("--ell", claims_args.ell, "Exponents ell")->delimiter(',');
  claims_cmd->add_option("--expect", claims_args.expect, "Pinned verdicts; exit 3 on any difference");
  claims_cmd->add_option("--max-witnesses", claims_args.max_witnesses, "Witnesses kept per grid point");

  AvgArgs avg;
  auto* avg_cmd = app.add_subcommand("avg", "Average fixed-point counts over qualifying primes");
  avg_cmd->add_option("--family", avg.family, "prime-power or pminus1");
  avg_cmd->add_option("--n", avg.n, "Extension degree");
  avg_cmd->add_option("--ell", avg.ell, "Exponent ell");
  avg_cmd->add_option("--selector", avg.selector, "p|c, p|c-1, p|c+1 or p!|c (aliases pc, pc-1, pc+1, pnc)");
  avg_cmd->add_option("--c", avg.c, "Comma list of coefficient bounds")->required();

  DensityArgs density;
  auto* density_cmd = app.add_subcommand("density", "Prime densities by divisibility class");
  density_cmd->add_option("--kind", density.kind, "nc3, nc0, mc2, mc1 or mc0")->required();
  density_cmd->add_option("--n", density.n, "Extension degree (label)");
  density_cmd->add_option("--ell", density.ell, "Exponent ell (label)");
  density_cmd->add_option("--c", density.c, "Comma list of coefficient bounds")->required();
  density_cmd->add_option("--emit-plot-data", density.plot_path, "Also write c,ratio pairs to this file");

  NfArgs nf;
  auto* nf_cmd = app.add_subcommand("nf", "Trinomial discriminants, heights and counts");
  nf_cmd->add_option("--d", nf.d, "Trinomial degree")->required();
  nf_cmd->add_option("--X", nf.X, "Comma list of discriminant bounds");
  nf_cmd->add_option("--height", nf.height, "Count c with |c|^(1/d) <= H");
  nf_cmd->add_option("--squarefree", nf.squarefree, "Squarefree-discriminant fraction over c in [1, C]");
  nf_cmd->add_option("--trinomials", nf.trinomials, "Per-c table for c in [-C, C]");
  nf_cmd->add_option("--A", nf.bound_constant, "Constant in the count <= A X^(d/(2d-2)) check");
  nf_cmd->add_option("--q-max", nf.q_max, "Largest prime used for irreducibility certificates");
  nf_cmd->add_option("--trial-bound", nf.trial_bound, "Trial-division bound for squarefree tests");

  OrbitArgs orbits;
  auto* orbits_cmd = app.add_subcommand("orbits", "Functional-graph decomposition of z -> z^d + c");
  orbits_cmd->add_option("--p", orbits.p, "Prime")->required();
  orbits_cmd->add_option("--n", orbits.n, "Extension degree");
  orbits_cmd->add_option("--d", orbits.d, "Map degree (raw family)");
  orbits_cmd->add_option("--family", orbits.family, "prime-power or pminus1 instead of --d");
  orbits_cmd->add_option("--ell", orbits.ell, "Exponent ell for --family");
  orbits_cmd->add_option("--c", orbits.c, "Coefficient (integer or element)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (!config_path.empty()) apply_config_file(config_path, cfg, app);
    validate(cfg);
    Output output(cfg, out);
    if (census_cmd->parsed()) return cmd_census(census, cfg, output);
    if (claims_cmd->parsed()) return cmd_claims(claims_args, cfg, output, err);
    if (avg_cmd->parsed()) return cmd_avg(avg, cfg, output);
    if (density_cmd->parsed()) return cmd_density(density, cfg, output);
    if (nf_cmd->parsed()) return cmd_nf(nf, output);
    if (orbits_cmd->parsed()) return cmd_orbits(orbits, cfg, output);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fixdyn::cli
