#pragma once

// Exact discriminants, heights and desk-scale counts for the trinomials
// f(x) = x^d - x + c. The polynomial discriminant stands in for the field
// discriminant of Q[x]/(f); the two differ by a square factor.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fixdyn/stats.hpp"

namespace fixdyn::nfcount {

// (-1)^{d(d-1)/2} Res(f, f'), with the resultant taken as the determinant
// of the (2d-1) x (2d-1) Sylvester matrix.
mpz_class trinomial_disc(unsigned d, std::int64_t c);

// (-1)^{d(d-1)/2} (d^d c^{d-1} - (d-1)^{d-1}).
mpz_class closed_form_disc(unsigned d, std::int64_t c);

double height(unsigned d, std::int64_t c);  // |c|^{1/d}

struct Trinomial {
  unsigned d = 2;
  std::int64_t c = 0;
  mpz_class disc;
  double height = 0.0;

  static Trinomial of(unsigned d, std::int64_t c);
};

enum class Irreducibility { Reducible, Irreducible, Unknown };
std::string to_string(Irreducibility s);  // REDUCIBLE, IRREDUCIBLE, UNKNOWN

// Distinct-degree factorization of f mod q: factor degrees with
// multiplicity, ascending.
struct ModPattern {
  std::uint64_t q = 0;
  std::vector<unsigned> degrees;
};

struct IrreducibilityResult {
  Irreducibility status = Irreducibility::Unknown;
  std::optional<std::int64_t> integer_root;  // REDUCIBLE certificate
  bool zero_discriminant = false;            // REDUCIBLE certificate (repeated factor)
  // IRREDUCIBLE certificate: either a single pattern {d}, or patterns whose
  // achievable proper factor degrees have empty intersection.
  std::vector<ModPattern> patterns;
};

inline constexpr std::uint64_t kDefaultMaxModPrime = 200;

// Never guesses: REDUCIBLE needs an integer root, c = 0 or a zero
// discriminant; IRREDUCIBLE needs a mod-q factor-degree certificate from
// primes q <= q_max not dividing the discriminant.
IrreducibilityResult irreducibility_status(unsigned d, std::int64_t c, std::uint64_t q_max = kDefaultMaxModPrime);

// Factor degrees of f mod q for squarefree f (q must not divide disc f).
ModPattern mod_factor_pattern(unsigned d, std::int64_t c, std::uint64_t q);

// Re-verifies a certificate from scratch.
bool certificate_holds(unsigned d, std::int64_t c, const IrreducibilityResult& r);

struct FieldCountRow {
  unsigned d = 2;
  std::uint64_t X = 1;
  std::uint64_t count = 0;    // irreducible c with |disc| < X
  std::uint64_t unknown = 0;  // c with |disc| < X and undecided status
  std::vector<std::int64_t> admitted;  // the counted c, ascending
  stats::Rational exponent_ref;        // d / (2d - 2)
  double bound_constant = 4.0;
  double bound_value = 0.0;  // A * X^{d/(2d-2)}
  bool bound_ok = false;
};

FieldCountRow count_by_disc(unsigned d, std::uint64_t X, double bound_constant = 4.0,
                            std::uint64_t q_max = kDefaultMaxModPrime);

// #{c in Z : |c|^{1/d} <= h_max} = 2 floor(h_max^d) + 1, computed exactly.
std::uint64_t count_by_height(unsigned d, double h_max);

enum class Squarefree { Yes, No, Unknown };
std::string to_string(Squarefree s);  // yes, no, unknown

// Trial division by primes up to `trial_bound`; a cofactor r that is 1, is
// below trial_bound^3 and not a perfect square, or passes a perfect-square
// test decides the answer. Anything else is Unknown.
Squarefree is_squarefree(const mpz_class& value, std::uint64_t trial_bound);

struct SquarefreeReport {
  unsigned d = 2;
  std::uint64_t C = 1;
  std::uint64_t squarefree = 0;
  std::uint64_t unknown = 0;
  stats::Rational fraction;  // squarefree / C
  double reference = 0.0;    // 1 / zeta(2) = 6 / pi^2, for display only
};

inline constexpr std::uint64_t kDefaultTrialBound = 100'000;

SquarefreeReport squarefree_disc_fraction(unsigned d, std::uint64_t C,
                                          std::uint64_t trial_bound = kDefaultTrialBound);

}  // namespace fixdyn::nfcount
