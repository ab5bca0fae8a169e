#include "fixdyn/claims.hpp"

#include <sstream>
#include <stdexcept>

#include "fixdyn/parallel.hpp"

namespace fixdyn::claims {

namespace {

using dynamics::Family;

std::map<std::string, std::uint64_t> prime_power_predictions() { return {{"0", 3}, {"nonzero", 0}}; }

std::map<std::string, std::uint64_t> p_minus_one_predictions() { return {{"0", 2}, {"1", 1}, {"-1", 0}}; }

std::vector<ClaimSpec> build_registry() {
  std::vector<ClaimSpec> r;
  // Prime-power family: hypotheses n >= 2 over O_K, or n = 1 over Z.
  r.push_back({ClaimId::C2_1, Family::PrimePower, {3, 3, 2, std::nullopt, 1},
               "$N_{c}(3) = 3$ for every coefficient", false, prime_power_predictions()});
  r.push_back({ClaimId::C2_2, Family::PrimePower, {std::nullopt, 3, 2, std::nullopt, 1},
               "$N_{c}(p) = 3$ for every $c\\in p\\mathcal{O}_{K}$", true, prime_power_predictions()});
  r.push_back({ClaimId::C2_3, Family::PrimePower, {std::nullopt, 3, 2, std::nullopt, std::nullopt},
               "$N_{c}(p) = 3$ for any point", true, prime_power_predictions()});
  r.push_back({ClaimId::C2_4, Family::PrimePower, {std::nullopt, 3, 1, 1, std::nullopt},
               "$N_{c}(p) = 3$ for every coefficient $c = pt$", true, prime_power_predictions()});
  r.push_back({ClaimId::C3_1, Family::PMinusOnePower, {5, 5, 2, std::nullopt, 1},
               "$M_{c}(5) = 1$ or $2$", false, p_minus_one_predictions()});
  r.push_back({ClaimId::C3_2, Family::PMinusOnePower, {std::nullopt, 5, 2, std::nullopt, 1},
               "$M_{c}(p) = 1$ or $2$ for every $c", false, p_minus_one_predictions()});
  r.push_back({ClaimId::C3_3, Family::PMinusOnePower, {std::nullopt, 5, 2, std::nullopt, std::nullopt},
               "$M_{c}(p) = 1$ or $2$ for any $c", false, p_minus_one_predictions()});
  r.push_back({ClaimId::C3_4, Family::PMinusOnePower, {std::nullopt, 5, 1, 1, std::nullopt},
               "$M_{c}(p) = 1$ or $2$ for any coefficient", false, p_minus_one_predictions()});
  return r;
}

std::string coverage_note(const ClaimSpec& spec) {
  std::ostringstream out;
  out << "every residue c of F_{p^n} scanned; compared classes:";
  for (const auto& [cls, count] : spec.named) out << ' ' << cls << "->" << count;
  if (spec.named.count("nonzero") == 0) out << "; other residues recorded informationally";
  return out.str();
}

PointResult check_point(const ClaimSpec& spec, const GridPoint& g, const CheckOptions& opts) {
  PointResult res;
  res.point = g;
  if (!spec.applicability.admits(g)) {
    res.status = Verdict::NotApplicable;
    res.reason = "requires " + spec.applicability.describe();
    return res;
  }
  try {
    const auto map = dynamics::MapSpec::make(spec.family, g.p, g.ell, 0, std::int64_t{0}, opts.exp_cap);
    std::uint64_t size = 1;
    for (unsigned i = 0; i < g.n; ++i) {
      if (size > opts.field_cap / g.p) throw CapExceeded("field exceeds the scan cap");
      size *= g.p;
    }
    const auto field = ff::Field::canonical(g.p, g.n);
    const auto counts = dynamics::fixed_point_histogram(field, map.degree, opts.field_cap);
    ff::Element c = field.zero();
    for (std::uint64_t idx = 0; idx < counts.size(); ++idx, field.increment(c)) {
      const std::string cls = dynamics::coefficient_class(field, c);
      const std::uint64_t actual = counts[idx];
      ++res.class_counts[cls][actual];
      const auto predicted = spec.prediction(cls);
      if (predicted && *predicted != actual) {
        ++res.mismatch_count;
        if (res.witnesses.size() < opts.max_witnesses) {
          res.witnesses.push_back(Witness{g, field.render(c), *predicted, actual});
        }
      }
    }
    res.status = res.mismatch_count == 0 ? Verdict::Holds : Verdict::Fails;
  } catch (const CapExceeded& e) {
    res.status = Verdict::Skipped;
    res.reason = e.what();
    res.class_counts.clear();
  }
  return res;
}

}  // namespace

std::string to_string(ClaimId id) {
  switch (id) {
    case ClaimId::C2_1: return "C-2.1";
    case ClaimId::C2_2: return "C-2.2";
    case ClaimId::C2_3: return "C-2.3";
    case ClaimId::C2_4: return "C-2.4";
    case ClaimId::C3_1: return "C-3.1";
    case ClaimId::C3_2: return "C-3.2";
    case ClaimId::C3_3: return "C-3.3";
    case ClaimId::C3_4: return "C-3.4";
  }
  return "?";
}

ClaimId parse_claim_id(std::string_view text) {
  for (const auto& spec : registry()) {
    if (to_string(spec.id) == text) return spec.id;
  }
  throw std::invalid_argument("unknown claim id '" + std::string(text) + "'");
}

bool Applicability::admits(const GridPoint& g) const {
  if (p_exact && g.p != *p_exact) return false;
  if (g.p < p_min || !ff::is_prime(g.p)) return false;
  if (g.n < n_min) return false;
  if (n_exact && g.n != *n_exact) return false;
  if (g.ell < 1) return false;
  if (ell_exact && g.ell != *ell_exact) return false;
  return true;
}

std::string Applicability::describe() const {
  std::ostringstream out;
  if (p_exact) {
    out << "p=" << *p_exact;
  } else {
    out << "prime p>=" << p_min;
  }
  if (n_exact) {
    out << ", n=" << *n_exact;
  } else {
    out << ", n>=" << n_min;
  }
  if (ell_exact) {
    out << ", ell=" << *ell_exact;
  } else {
    out << ", ell>=1";
  }
  return out.str();
}

std::optional<std::uint64_t> ClaimSpec::prediction(std::string_view coefficient_class) const {
  if (auto it = named.find(std::string(coefficient_class)); it != named.end()) return it->second;
  if (coefficient_class != "0") {
    if (auto it = named.find("nonzero"); it != named.end()) return it->second;
  }
  return std::nullopt;
}

const std::vector<ClaimSpec>& registry() {
  static const std::vector<ClaimSpec> specs = build_registry();
  return specs;
}

const ClaimSpec& lookup(ClaimId id) {
  for (const auto& spec : registry()) {
    if (spec.id == id) return spec;
  }
  throw std::logic_error("claim missing from registry");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::Fails: return "FAILS";
    case Verdict::NotApplicable: return "NOT-APPLICABLE";
    case Verdict::Skipped: return "SKIPPED";
  }
  return "?";
}

Verdict parse_verdict(std::string_view text) {
  for (auto v : {Verdict::Holds, Verdict::Fails, Verdict::NotApplicable, Verdict::Skipped}) {
    if (to_string(v) == text) return v;
  }
  throw std::invalid_argument("unknown verdict '" + std::string(text) + "'");
}

ClaimReport check(ClaimId id, const std::vector<GridPoint>& grid, const CheckOptions& opts) {
  const ClaimSpec& spec = lookup(id);
  ClaimReport report;
  report.id = id;
  report.quote = spec.quote;
  report.conditional = spec.conditional;
  report.coverage = coverage_note(spec);
  report.points = parallel_map(grid.size(), opts.jobs, [&](std::size_t i) { return check_point(spec, grid[i], opts); });
  return report;
}

std::vector<ClaimReport> check_all(const std::vector<GridPoint>& grid, const CheckOptions& opts) {
  std::vector<ClaimReport> out;
  for (const auto& spec : registry()) out.push_back(check(spec.id, grid, opts));
  return out;
}

}  // namespace fixdyn::claims
