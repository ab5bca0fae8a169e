#pragma once

// Finite-bound tables for the average fixed-point counts and the prime
// densities of coefficients with N_c(p) = 3, 0 and M_c(p) = 2, 1, 0, over
// integer coefficients c. All ratios are exact.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixdyn/dynamics.hpp"
#include "fixdyn/errors.hpp"

namespace fixdyn::stats {

// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t num, std::int64_t den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;  // "num/den", or "num" when den = 1

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);
};

// All primes <= limit, ascending. Throws CapExceeded above the cap.
std::vector<std::uint64_t> prime_sieve(std::uint64_t limit, std::uint64_t cap = kDefaultSieveCap);

// Which primes enter an average for a given coefficient c. The range bound
// follows the divisibility target: p <= c, p <= c - 1 or p <= c + 1.
enum class Selector { Divides, DividesMinusOne, DividesPlusOne, NotDivides };
std::string to_string(Selector s);  // "p|c", "p|c-1", "p|c+1", "p!|c"
Selector parse_selector(std::string_view text);

struct AverageRow {
  std::int64_t c = 0;
  Selector selector = Selector::Divides;
  std::uint64_t prime_floor = 3;
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
  std::vector<std::uint64_t> primes;  // qualifying primes, ascending
  std::optional<Rational> ratio;      // absent when denominator = 0
};

struct AverageOptions {
  std::uint64_t field_cap = kDefaultFieldCap;
  std::uint64_t exp_cap = kDefaultExponentCap;
  std::uint64_t sieve_cap = kDefaultSieveCap;
  unsigned jobs = 1;
};

// Sums dynamics::fixed_point_count over F_{p^n} with coefficient c mod p for
// every qualifying prime p >= floor (3 for PrimePower, 5 for PMinusOnePower).
std::vector<AverageRow> average_report(dynamics::Family family, unsigned n, unsigned ell, Selector selector,
                                       const std::vector<std::int64_t>& c_list, const AverageOptions& opts = {});

enum class DensityKind { Nc3, Nc0, Mc2, Mc1, Mc0 };
std::string to_string(DensityKind k);  // "nc3", "nc0", "mc2", "mc1", "mc0"
DensityKind parse_density_kind(std::string_view text);

struct DensityRow {
  std::int64_t c = 0;
  DensityKind kind = DensityKind::Nc3;
  unsigned n = 1;
  unsigned ell = 1;
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
  std::optional<Rational> ratio;
};

// Numerator: primes p in [floor, c] satisfying the kind's divisibility
// condition (p|c, p!|c, p|c, p|c-1, p|c+1). Denominator: all primes in
// [floor, c]. n and ell label the row; the condition does not depend on them.
std::vector<DensityRow> density_table(DensityKind kind, unsigned n, unsigned ell,
                                      const std::vector<std::int64_t>& c_list,
                                      std::uint64_t sieve_cap = kDefaultSieveCap);

}  // namespace fixdyn::stats
