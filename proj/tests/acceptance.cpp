// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fixdyn/claims.hpp"
#include "fixdyn/dynamics.hpp"
#include "fixdyn/nfcount.hpp"
#include "fixdyn/report.hpp"
#include "fixdyn/stats.hpp"

using namespace fixdyn;
using dynamics::Family;
using dynamics::MapSpec;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) detail << what;
    pass = pass && ok;
  }
};

struct GridCase {
  std::uint64_t p;
  unsigned n;
  unsigned ell;
};

std::vector<GridCase> small_grid() {
  std::vector<GridCase> grid;
  for (std::uint64_t p : {3, 5, 7, 11}) {
    for (unsigned n : {1u, 2u}) {
      for (unsigned ell : {1u, 2u}) {
        std::uint64_t q = 1;
        for (unsigned i = 0; i < n; ++i) q *= p;
        if (q <= 15000) grid.push_back({p, n, ell});
      }
    }
  }
  return grid;
}

std::vector<Family> families_for(std::uint64_t p) {
  if (p >= 5) return {Family::PrimePower, Family::PMinusOnePower};
  return {Family::PrimePower};
}

void criterion1(Outcome& o) {
  std::uint64_t checked = 0;
  for (const auto& g : small_grid()) {
    const auto fs = ff::Field::canonical(g.p, g.n);
    for (auto family : families_for(g.p)) {
      const auto base = MapSpec::make(family, g.p, g.ell, 0, std::int64_t{0});
      for (const auto& c : ff::enumerate(fs)) {
        const auto m = base.with_coefficient(c);
        const auto scan = dynamics::fixed_point_count(fs, m);
        const auto gcd = dynamics::gcd_root_count(fs, m);
        ++checked;
        o.expect(scan == gcd, "mismatch at p=" + std::to_string(g.p) + " n=" + std::to_string(g.n) +
                                  " ell=" + std::to_string(g.ell) + " c=" + fs.render(c));
      }
    }
  }
  o.detail << (o.pass ? "" : "; ") << checked << " (map, c) pairs compared";
}

void criterion2(Outcome& o) {
  for (unsigned n = 1; n <= 3; ++n) {
    const auto fs = ff::Field::canonical(3, n);
    const auto count = dynamics::fixed_point_count(fs, MapSpec::prime_power(3, 1, std::int64_t{0}));
    o.expect(count == 3, "N_0 over F_3^" + std::to_string(n) + " = " + std::to_string(count));
  }
  for (std::uint64_t p : {5, 7, 11, 13}) {
    const auto fs = ff::Field::canonical(p, 1);
    for (unsigned ell : {1u, 2u}) {
      const std::int64_t cs[] = {0, 1, static_cast<std::int64_t>(p) - 1};
      const std::uint64_t want[] = {2, 1, 0};
      for (int i = 0; i < 3; ++i) {
        const auto count = dynamics::fixed_point_count(fs, MapSpec::p_minus_one_power(p, ell, cs[i]));
        o.expect(count == want[i], "M_c(" + std::to_string(p) + "), ell=" + std::to_string(ell) +
                                       ", c=" + std::to_string(cs[i]) + " gave " + std::to_string(count));
      }
    }
  }
}

void criterion3(Outcome& o) {
  struct Pin {
    claims::ClaimId id;
    claims::GridPoint point;
    std::string c;
    std::uint64_t predicted;
    std::uint64_t actual;
  };
  const Pin pins[] = {
      {claims::ClaimId::C2_1, {3, 2, 1}, "t", 0, 3},
      {claims::ClaimId::C2_2, {5, 2, 1}, "0", 3, 5},
      {claims::ClaimId::C2_3, {3, 2, 2}, "0", 3, 9},
      {claims::ClaimId::C3_1, {5, 2, 1}, "0", 2, 4},
  };
  for (const auto& pin : pins) {
    const auto rep = claims::check(pin.id, {pin.point});
    const auto& pt = rep.points.at(0);
    bool witnessed = false;
    for (const auto& w : pt.witnesses) {
      witnessed = witnessed || (w.c == pin.c && w.predicted == pin.predicted && w.actual == pin.actual);
    }
    o.expect(pt.status == claims::Verdict::Fails && witnessed,
             claims::to_string(pin.id) + " gave " + claims::to_string(pt.status) + " without the pinned witness");
  }
}

void criterion4(Outcome& o) {
  const auto n3 = stats::density_table(stats::DensityKind::Nc3, 1, 1, {100, 1000, 10000});
  const auto n0 = stats::density_table(stats::DensityKind::Nc0, 1, 1, {10000});
  o.expect(*n3[1].ratio < *n3[0].ratio && *n3[2].ratio < *n3[1].ratio, "Nc=3 ratios not strictly decreasing");
  o.expect(n3[2].ratio->to_double() < 0.05, "Nc=3 ratio at 10^4 is " + n3[2].ratio->str());
  o.expect(n0[0].ratio->to_double() > 0.95, "Nc=0 ratio at 10^4 is " + n0[0].ratio->str());
  o.detail << "Nc=3: " << n3[0].ratio->str() << ", " << n3[1].ratio->str() << ", " << n3[2].ratio->str()
           << "; Nc=0 at 10^4: " << n0[0].ratio->str();
}

void criterion5(Outcome& o) {
  const auto rows = stats::average_report(Family::PrimePower, 1, 1, stats::Selector::Divides, {3, 15});
  o.expect(rows[0].ratio == stats::Rational::of(3, 1), "average at c=3 is not 3");
  o.expect(rows[1].ratio == stats::Rational::of(4, 1), "average at c=15 is not 4");
}

void criterion6(Outcome& o) {
  for (unsigned d = 2; d <= 10; ++d) {
    for (std::int64_t c = -30; c <= 30; ++c) {
      o.expect(nfcount::trinomial_disc(d, c) == nfcount::closed_form_disc(d, c),
               "disagreement at d=" + std::to_string(d) + " c=" + std::to_string(c));
    }
  }
  o.expect(nfcount::trinomial_disc(3, 1) == -23, "Delta(3,1) != -23");
  o.expect(nfcount::trinomial_disc(4, 1) == 229, "Delta(4,1) != 229");
}

void criterion7(Outcome& o) {
  o.expect(nfcount::count_by_disc(3, 100).count == 2, "count_by_disc(3, 100) != 2");
  o.expect(nfcount::count_by_height(3, 2) == 17, "count_by_height(3, 2) != 17");
  for (std::uint64_t X : {100ULL, 1000ULL, 10000ULL}) {
    const auto row = nfcount::count_by_disc(3, X, 4.0);
    o.expect(row.bound_ok, "bound fails at X=" + std::to_string(X));
    char buf[96];
    std::snprintf(buf, sizeof buf, "%sX=%llu: %llu <= %.1f", X == 100 ? "" : ", ",
                  static_cast<unsigned long long>(X), static_cast<unsigned long long>(row.count), row.bound_value);
    o.detail << buf;
  }
}

void criterion8(Outcome& o) {
  for (const auto& g : small_grid()) {
    const auto fs = ff::Field::canonical(g.p, g.n);
    const std::uint64_t q = *fs.cardinality();
    for (auto family : families_for(g.p)) {
      const auto base = MapSpec::make(family, g.p, g.ell, 0, std::int64_t{0});
      for (const auto& c : ff::enumerate(fs)) {
        const auto m = base.with_coefficient(c);
        const auto orbit = dynamics::orbit_census(fs, m);
        const auto ones = static_cast<std::uint64_t>(
            std::count(orbit.cycle_lengths.begin(), orbit.cycle_lengths.end(), std::uint64_t{1}));
        const auto total = std::accumulate(orbit.component_sizes.begin(), orbit.component_sizes.end(), std::uint64_t{0});
        const std::string where = " at p=" + std::to_string(g.p) + " n=" + std::to_string(g.n) +
                                  " ell=" + std::to_string(g.ell) + " c=" + fs.render(c);
        o.expect(ones == dynamics::fixed_point_count(fs, m), "cycle-length-1 multiplicity differs" + where);
        o.expect(total == q, "component sizes do not sum to p^n" + where);
      }
    }
  }
}

void criterion9(Outcome& o) {
  const auto rep = nfcount::squarefree_disc_fraction(3, 10);
  o.expect(rep.squarefree == 5 && rep.C == 10 && rep.fraction == stats::Rational::of(5, 10),
           "fraction is " + std::to_string(rep.squarefree) + "/" + std::to_string(rep.C));
  const auto csv = report::squarefree_csv(rep);
  o.expect(csv.find("0.607927") != std::string::npos, "reference constant missing from report");
  o.detail << "5/10 with reference 0.607927 shown alongside";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"dual-oracle equivalence", criterion1},
      {"confirmed points", criterion2},
      {"falsification witnesses", criterion3},
      {"density trend", criterion4},
      {"average tables", criterion5},
      {"discriminant oracles", criterion6},
      {"discriminant and height counts", criterion7},
      {"orbit-census consistency", criterion8},
      {"squarefree-discriminant fraction", criterion9},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("AC%zu %s  %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(), o.detail.str().c_str());
  }
  return failures == 0 ? 0 : 1;
}
