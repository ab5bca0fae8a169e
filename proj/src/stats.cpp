#include "fixdyn/stats.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fixdyn/parallel.hpp"

namespace fixdyn::stats {

Rational Rational::of(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

std::string Rational::str() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
}

std::vector<std::uint64_t> prime_sieve(std::uint64_t limit, std::uint64_t cap) {
  if (limit > cap) throw CapExceeded("sieve limit " + std::to_string(limit) + " exceeds the cap of " + std::to_string(cap));
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

std::string to_string(Selector s) {
  switch (s) {
    case Selector::Divides: return "p|c";
    case Selector::DividesMinusOne: return "p|c-1";
    case Selector::DividesPlusOne: return "p|c+1";
    case Selector::NotDivides: return "p!|c";
  }
  return "?";
}

Selector parse_selector(std::string_view text) {
  if (text == "p|c" || text == "pc") return Selector::Divides;
  if (text == "p|c-1" || text == "pc-1") return Selector::DividesMinusOne;
  if (text == "p|c+1" || text == "pc+1") return Selector::DividesPlusOne;
  if (text == "p!|c" || text == "pnc") return Selector::NotDivides;
  throw std::invalid_argument("unknown selector '" + std::string(text) + "'");
}

namespace {

bool divides(std::uint64_t p, std::int64_t v) { return v % static_cast<std::int64_t>(p) == 0; }

std::int64_t selector_target(Selector s, std::int64_t c) {
  switch (s) {
    case Selector::DividesMinusOne: return c - 1;
    case Selector::DividesPlusOne: return c + 1;
    default: return c;
  }
}

}  // namespace

std::vector<AverageRow> average_report(dynamics::Family family, unsigned n, unsigned ell, Selector selector,
                                       const std::vector<std::int64_t>& c_list, const AverageOptions& opts) {
  if (family == dynamics::Family::Raw) throw std::invalid_argument("averages need the prime-power or pminus1 family");
  const std::uint64_t floor = family == dynamics::Family::PrimePower ? 3 : 5;
  std::int64_t widest = 0;
  for (auto c : c_list) {
    if (c < 1) throw std::invalid_argument("coefficient bound " + std::to_string(c) + " must be positive");
    widest = std::max(widest, c + 1);
  }
  const auto primes = prime_sieve(static_cast<std::uint64_t>(widest), opts.sieve_cap);

  return parallel_map(c_list.size(), opts.jobs, [&](std::size_t i) {
    AverageRow row;
    row.c = c_list[i];
    row.selector = selector;
    row.prime_floor = floor;
    const std::int64_t target = selector_target(selector, row.c);
    const std::int64_t bound = selector == Selector::NotDivides ? row.c : target;
    for (auto p : primes) {
      if (p < floor) continue;
      if (static_cast<std::int64_t>(p) > bound) break;
      const bool qualifies = selector == Selector::NotDivides ? !divides(p, row.c) : divides(p, target);
      if (!qualifies) continue;
      const auto field = ff::Field::canonical(p, n);
      const auto map = dynamics::MapSpec::make(family, p, ell, 0, row.c, opts.exp_cap);
      row.numerator += dynamics::fixed_point_count(field, map, opts.field_cap);
      ++row.denominator;
      row.primes.push_back(p);
    }
    if (row.denominator > 0) {
      row.ratio = Rational::of(static_cast<std::int64_t>(row.numerator), static_cast<std::int64_t>(row.denominator));
    }
    return row;
  });
}

std::string to_string(DensityKind k) {
  switch (k) {
    case DensityKind::Nc3: return "nc3";
    case DensityKind::Nc0: return "nc0";
    case DensityKind::Mc2: return "mc2";
    case DensityKind::Mc1: return "mc1";
    case DensityKind::Mc0: return "mc0";
  }
  return "?";
}

DensityKind parse_density_kind(std::string_view text) {
  for (auto k : {DensityKind::Nc3, DensityKind::Nc0, DensityKind::Mc2, DensityKind::Mc1, DensityKind::Mc0}) {
    if (to_string(k) == text) return k;
  }
  throw std::invalid_argument("unknown density kind '" + std::string(text) + "'");
}

std::vector<DensityRow> density_table(DensityKind kind, unsigned n, unsigned ell,
                                      const std::vector<std::int64_t>& c_list, std::uint64_t sieve_cap) {
  const bool prime_power = kind == DensityKind::Nc3 || kind == DensityKind::Nc0;
  const std::uint64_t floor = prime_power ? 3 : 5;
  std::int64_t widest = 0;
  for (auto c : c_list) {
    if (c < 1) throw std::invalid_argument("coefficient bound " + std::to_string(c) + " must be positive");
    widest = std::max(widest, c);
  }
  const auto primes = prime_sieve(static_cast<std::uint64_t>(widest), sieve_cap);

  std::vector<DensityRow> rows;
  for (auto c : c_list) {
    DensityRow row{c, kind, n, ell, 0, 0, std::nullopt};
    for (auto p : primes) {
      if (p < floor) continue;
      if (static_cast<std::int64_t>(p) > c) break;
      ++row.denominator;
      bool hit = false;
      switch (kind) {
        case DensityKind::Nc3:
        case DensityKind::Mc2: hit = divides(p, c); break;
        case DensityKind::Nc0: hit = !divides(p, c); break;
        case DensityKind::Mc1: hit = divides(p, c - 1); break;
        case DensityKind::Mc0: hit = divides(p, c + 1); break;
      }
      if (hit) ++row.numerator;
    }
    if (row.denominator > 0) {
      row.ratio = Rational::of(static_cast<std::int64_t>(row.numerator), static_cast<std::int64_t>(row.denominator));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace fixdyn::stats
