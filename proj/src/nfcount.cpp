#include "fixdyn/nfcount.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

#include "fixdyn/dynamics.hpp"
#include "fixdyn/ff.hpp"
#include "fixdyn/poly.hpp"

namespace fixdyn::nfcount {

namespace {

mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }

int disc_sign(unsigned d) {
  const std::uint64_t e = static_cast<std::uint64_t>(d) * (d - 1) / 2;
  return e % 2 == 0 ? 1 : -1;
}

void require_degree(unsigned d) {
  if (d < 2) throw std::invalid_argument("trinomial degree must be at least 2");
}

// Fraction-free Gaussian elimination (Bareiss); exact over Z.
mpz_class determinant(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

ff::FpPoly trinomial_mod(unsigned d, std::int64_t c, const ff::PrimeModulus& q) {
  ff::FpPoly f(d + 1, 0);
  f[d] = 1;
  f[1] = q.neg(1);
  f[0] = q.add(f[0], q.reduce(c));
  poly::normalize(q, f);
  return f;
}

// Proper factor degrees (strictly between 0 and d) realizable as a sum of a
// sub-multiset of the pattern.
std::set<unsigned> proper_subset_sums(const ModPattern& pattern, unsigned d) {
  std::vector<bool> reach(d + 1, false);
  reach[0] = true;
  for (unsigned deg : pattern.degrees) {
    for (unsigned s = d; s-- > 0;) {
      if (reach[s] && s + deg <= d) reach[s + deg] = true;
    }
  }
  std::set<unsigned> out;
  for (unsigned s = 1; s < d; ++s) {
    if (reach[s]) out.insert(s);
  }
  return out;
}

bool patterns_exclude_factors(const std::vector<ModPattern>& patterns, unsigned d) {
  if (patterns.empty()) return false;
  std::set<unsigned> possible = proper_subset_sums(patterns.front(), d);
  for (std::size_t i = 1; i < patterns.size() && !possible.empty(); ++i) {
    const auto next = proper_subset_sums(patterns[i], d);
    std::set<unsigned> both;
    std::set_intersection(possible.begin(), possible.end(), next.begin(), next.end(),
                          std::inserter(both, both.begin()));
    possible = std::move(both);
  }
  return possible.empty();
}

}  // namespace

mpz_class trinomial_disc(unsigned d, std::int64_t c) {
  require_degree(d);
  // f = x^d - x + c and f' = d x^{d-1} - 1, coefficients highest degree first.
  std::vector<mpz_class> f(d + 1, 0);
  f[0] = 1;
  f[d - 1] = -1;
  f[d] += to_mpz(c);
  std::vector<mpz_class> df(d, 0);
  df[0] = d;
  df[d - 1] -= 1;

  const std::size_t size = 2 * d - 1;
  std::vector<std::vector<mpz_class>> sylvester(size, std::vector<mpz_class>(size, 0));
  for (std::size_t row = 0; row + 1 < d; ++row) {
    for (std::size_t j = 0; j < f.size(); ++j) sylvester[row][row + j] = f[j];
  }
  for (std::size_t row = 0; row < d; ++row) {
    for (std::size_t j = 0; j < df.size(); ++j) sylvester[d - 1 + row][row + j] = df[j];
  }
  return disc_sign(d) * determinant(std::move(sylvester));
}

mpz_class closed_form_disc(unsigned d, std::int64_t c) {
  require_degree(d);
  mpz_class dd;
  mpz_class cc;
  mpz_class tail;
  mpz_ui_pow_ui(dd.get_mpz_t(), d, d);
  mpz_pow_ui(cc.get_mpz_t(), to_mpz(c).get_mpz_t(), d - 1);
  mpz_ui_pow_ui(tail.get_mpz_t(), d - 1, d - 1);
  return disc_sign(d) * (dd * cc - tail);
}

double height(unsigned d, std::int64_t c) {
  require_degree(d);
  return std::pow(std::fabs(static_cast<double>(c)), 1.0 / d);
}

Trinomial Trinomial::of(unsigned d, std::int64_t c) { return Trinomial{d, c, closed_form_disc(d, c), nfcount::height(d, c)}; }

std::string to_string(Irreducibility s) {
  switch (s) {
    case Irreducibility::Reducible: return "REDUCIBLE";
    case Irreducibility::Irreducible: return "IRREDUCIBLE";
    case Irreducibility::Unknown: return "UNKNOWN";
  }
  return "?";
}

ModPattern mod_factor_pattern(unsigned d, std::int64_t c, std::uint64_t q) {
  require_degree(d);
  const ff::PrimeModulus field(q);
  ff::FpPoly rest = trinomial_mod(d, c, field);
  const ff::FpPoly gcd_with_derivative = poly::gcd(field, rest, poly::derivative(field, rest, q));
  if (poly::degree<ff::PrimeModulus>(gcd_with_derivative) != 0) {
    throw std::invalid_argument("trinomial is not squarefree modulo " + std::to_string(q));
  }

  ModPattern out{q, {}};
  const ff::FpPoly x{0, 1};
  ff::FpPoly h = x;
  for (unsigned k = 1; 2 * k <= static_cast<unsigned>(poly::degree<ff::PrimeModulus>(rest)); ++k) {
    h = poly::powmod(field, h, q, rest);
    const ff::FpPoly g = poly::gcd(field, rest, poly::sub(field, h, x));
    const int gdeg = poly::degree<ff::PrimeModulus>(g);
    if (gdeg > 0) {
      for (int i = 0; i < gdeg / static_cast<int>(k); ++i) out.degrees.push_back(k);
      rest = poly::divmod(field, rest, g).first;
      h = poly::mod(field, h, rest);
    }
  }
  if (poly::degree<ff::PrimeModulus>(rest) > 0) {
    out.degrees.push_back(static_cast<unsigned>(poly::degree<ff::PrimeModulus>(rest)));
  }
  std::sort(out.degrees.begin(), out.degrees.end());
  return out;
}

IrreducibilityResult irreducibility_status(unsigned d, std::int64_t c, std::uint64_t q_max) {
  require_degree(d);
  IrreducibilityResult out;
  const auto roots = dynamics::integral_fixed_points(d, c);
  if (!roots.roots.empty()) {
    out.status = Irreducibility::Reducible;
    out.integer_root = roots.roots.front();
    return out;
  }
  const mpz_class disc = closed_form_disc(d, c);
  if (disc == 0) {
    out.status = Irreducibility::Reducible;
    out.zero_discriminant = true;
    return out;
  }
  for (std::uint64_t q = 2; q <= q_max; ++q) {
    if (!ff::is_prime(q)) continue;
    if (mpz_divisible_ui_p(disc.get_mpz_t(), q) != 0) continue;
    ModPattern pattern = mod_factor_pattern(d, c, q);
    if (pattern.degrees.size() == 1) {
      out.status = Irreducibility::Irreducible;
      out.patterns = {std::move(pattern)};
      return out;
    }
    out.patterns.push_back(std::move(pattern));
    if (patterns_exclude_factors(out.patterns, d)) {
      out.status = Irreducibility::Irreducible;
      return out;
    }
  }
  out.patterns.clear();
  return out;
}

bool certificate_holds(unsigned d, std::int64_t c, const IrreducibilityResult& r) {
  switch (r.status) {
    case Irreducibility::Reducible: {
      if (r.zero_discriminant) return closed_form_disc(d, c) == 0;
      if (!r.integer_root) return false;
      mpz_class value;
      mpz_pow_ui(value.get_mpz_t(), to_mpz(*r.integer_root).get_mpz_t(), d);
      return value - to_mpz(*r.integer_root) + to_mpz(c) == 0;
    }
    case Irreducibility::Irreducible: {
      std::vector<ModPattern> recomputed;
      for (const auto& pattern : r.patterns) {
        ModPattern again = mod_factor_pattern(d, c, pattern.q);
        if (again.degrees != pattern.degrees) return false;
        recomputed.push_back(std::move(again));
      }
      return patterns_exclude_factors(recomputed, d);
    }
    case Irreducibility::Unknown:
      return true;
  }
  return false;
}

FieldCountRow count_by_disc(unsigned d, std::uint64_t X, double bound_constant, std::uint64_t q_max) {
  require_degree(d);
  if (X < 1) throw std::invalid_argument("discriminant bound X must be at least 1");
  FieldCountRow row;
  row.d = d;
  row.X = X;
  row.exponent_ref = stats::Rational::of(d, 2 * static_cast<std::int64_t>(d) - 2);
  row.bound_constant = bound_constant;

  const mpz_class limit(std::to_string(X));
  // |disc| is increasing in |c| for |c| >= 1; walk outward until three
  // consecutive magnitudes contribute nothing.
  unsigned quiet = 0;
  for (std::int64_t m = 0; quiet < 3; ++m) {
    bool any_below = false;
    for (std::int64_t c : {m, -m}) {
      if (m == 0 && c < 0) continue;
      if (abs(closed_form_disc(d, c)) >= limit) continue;
      any_below = true;
      const auto status = irreducibility_status(d, c, q_max).status;
      if (status == Irreducibility::Irreducible) {
        ++row.count;
        row.admitted.push_back(c);
      } else if (status == Irreducibility::Unknown) {
        ++row.unknown;
      }
    }
    quiet = (any_below || m == 0) ? 0 : quiet + 1;
  }
  std::sort(row.admitted.begin(), row.admitted.end());
  row.bound_value = bound_constant * std::pow(static_cast<double>(X), row.exponent_ref.to_double());
  row.bound_ok = static_cast<double>(row.count) <= row.bound_value;
  return row;
}

std::uint64_t count_by_height(unsigned d, double h_max) {
  require_degree(d);
  if (!(h_max >= 0.0) || !std::isfinite(h_max)) throw std::invalid_argument("height bound must be finite and >= 0");
  const mpq_class h(h_max);  // exact binary value of the double
  mpq_class power = 1;
  for (unsigned i = 0; i < d; ++i) power *= h;
  mpz_class floor_value;
  mpz_fdiv_q(floor_value.get_mpz_t(), power.get_num_mpz_t(), power.get_den_mpz_t());
  const mpz_class total = 2 * floor_value + 1;
  if (!total.fits_ulong_p()) throw std::overflow_error("height count exceeds 64 bits");
  return total.get_ui();
}

std::string to_string(Squarefree s) {
  switch (s) {
    case Squarefree::Yes: return "yes";
    case Squarefree::No: return "no";
    case Squarefree::Unknown: return "unknown";
  }
  return "?";
}

namespace {

Squarefree squarefree_with_primes(const mpz_class& value, const std::vector<std::uint64_t>& primes,
                                  std::uint64_t trial_bound) {
  mpz_class r = abs(value);
  if (r == 0) return Squarefree::No;
  for (auto p : primes) {
    if (mpz_divisible_ui_p(r.get_mpz_t(), p) == 0) continue;
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
    if (mpz_divisible_ui_p(r.get_mpz_t(), p) != 0) return Squarefree::No;
  }
  if (r == 1) return Squarefree::Yes;
  if (mpz_perfect_square_p(r.get_mpz_t()) != 0) return Squarefree::No;
  // No prime factor <= B remains: below B^3 the cofactor is a prime or a
  // product of two primes, and not a square.
  mpz_class cube;
  mpz_ui_pow_ui(cube.get_mpz_t(), trial_bound, 3);
  if (r < cube) return Squarefree::Yes;
  if (mpz_probab_prime_p(r.get_mpz_t(), 30) == 2) return Squarefree::Yes;
  return Squarefree::Unknown;
}

}  // namespace

Squarefree is_squarefree(const mpz_class& value, std::uint64_t trial_bound) {
  return squarefree_with_primes(value, stats::prime_sieve(trial_bound, std::numeric_limits<std::uint64_t>::max()),
                                trial_bound);
}

SquarefreeReport squarefree_disc_fraction(unsigned d, std::uint64_t C, std::uint64_t trial_bound) {
  require_degree(d);
  if (C < 1) throw std::invalid_argument("coefficient range C must be at least 1");
  const auto primes = stats::prime_sieve(trial_bound, std::numeric_limits<std::uint64_t>::max());
  SquarefreeReport out;
  out.d = d;
  out.C = C;
  for (std::uint64_t c = 1; c <= C; ++c) {
    switch (squarefree_with_primes(closed_form_disc(d, static_cast<std::int64_t>(c)), primes, trial_bound)) {
      case Squarefree::Yes: ++out.squarefree; break;
      case Squarefree::Unknown: ++out.unknown; break;
      case Squarefree::No: break;
    }
  }
  out.fraction = stats::Rational::of(static_cast<std::int64_t>(out.squarefree), static_cast<std::int64_t>(C));
  out.reference = 6.0 / (std::numbers::pi * std::numbers::pi);
  return out;
}

}  // namespace fixdyn::nfcount
