#include "fixdyn/ff.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fixdyn/poly.hpp"

namespace fixdyn::ff {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e > 0) {
    if (e & 1U) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t u) {
  if (u < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (u % small == 0) return u == small;
  }
  std::uint64_t d = u - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // These twelve bases are sufficient for all n < 3.3e24.
  constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t a : bases) {
    std::uint64_t x = powmod64(a, d, u);
    if (x == 1 || x == u - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod64(x, x, u);
      if (x == u - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

PrimeModulus::value_type PrimeModulus::add(value_type a, value_type b) const noexcept {
  const value_type r = a + b;
  return (r >= p_ || r < a) ? r - p_ : r;
}

PrimeModulus::value_type PrimeModulus::sub(value_type a, value_type b) const noexcept {
  return a >= b ? a - b : a + (p_ - b);
}

PrimeModulus::value_type PrimeModulus::mul(value_type a, value_type b) const noexcept {
  return mulmod64(a, b, p_);
}

PrimeModulus::value_type PrimeModulus::pow(value_type a, std::uint64_t e) const noexcept {
  return powmod64(a, e, p_);
}

PrimeModulus::value_type PrimeModulus::inv(value_type a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
  return powmod64(a, p_ - 2, p_);
}

PrimeModulus::value_type PrimeModulus::reduce(std::int64_t v) const noexcept {
  const auto m = static_cast<std::int64_t>(p_ > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())
                                               ? 0
                                               : p_);
  if (m == 0) {
    // p exceeds every int64 magnitude: v is already reduced up to sign.
    return v >= 0 ? static_cast<std::uint64_t>(v) : p_ - static_cast<std::uint64_t>(-(v + 1)) - 1;
  }
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

bool is_irreducible(const PrimeModulus& p, const FpPoly& f) {
  const int n = poly::degree<PrimeModulus>(f);
  if (n < 1) return false;
  if (n == 1) return true;
  const FpPoly t{0, 1};
  FpPoly h = t;
  for (int k = 1; 2 * k <= n; ++k) {
    h = poly::powmod(p, h, p.value(), f);
    const FpPoly g = poly::gcd(p, f, poly::sub(p, h, t));
    if (poly::degree<PrimeModulus>(g) != 0) return false;
  }
  return true;
}

FpPoly find_irreducible(const PrimeModulus& p, unsigned n) {
  if (n == 0) throw std::invalid_argument("extension degree must be at least 1");
  FpPoly cand(n + 1, 0);
  cand[n] = 1;
  const std::uint64_t q = p.value();
  for (;;) {
    bool has_root = false;
    if (n >= 2) {
      // Cheap rejection before the gcd certificate; only feasible for small p.
      if (cand[0] == 0) {
        has_root = true;
      } else if (q <= 64) {
        for (std::uint64_t x = 0; x < q && !has_root; ++x) has_root = poly::evaluate(p, cand, x) == 0;
      }
    }
    if (!has_root && is_irreducible(p, cand)) return cand;
    // Next candidate: a_0 is the least significant digit.
    unsigned i = 0;
    while (i < n) {
      if (++cand[i] < q) break;
      cand[i] = 0;
      ++i;
    }
    if (i == n) throw std::logic_error("no irreducible polynomial found");
  }
}

Field::Field(PrimeModulus p, FpPoly modulus) : p_(p), n_(0), modulus_(std::move(modulus)) {
  for (auto c : modulus_) {
    if (c >= p_.value()) throw std::invalid_argument("modulus coefficient out of range");
  }
  poly::normalize(p_, modulus_);
  if (modulus_.size() < 2) throw std::invalid_argument("modulus must have degree >= 1");
  if (modulus_.back() != 1) throw std::invalid_argument("modulus must be monic");
  n_ = static_cast<unsigned>(modulus_.size() - 1);
  if (n_ >= 2 && modulus_[0] == 0) throw std::invalid_argument("modulus has the root 0");
  if (!is_irreducible(p_, modulus_)) throw std::invalid_argument("modulus is not irreducible");

  std::uint64_t size = 1;
  bool fits = true;
  for (unsigned i = 0; i < n_ && fits; ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() / p_.value()) {
      fits = false;
    } else {
      size *= p_.value();
    }
  }
  if (fits) size_ = size;
}

Field Field::canonical(std::uint64_t p, unsigned n) {
  PrimeModulus prime(p);
  return Field(prime, find_irreducible(prime, n));
}

std::uint64_t Field::checked_cardinality(std::uint64_t cap) const {
  if (!size_ || *size_ > cap) {
    std::ostringstream msg;
    msg << "field F_" << p_.value() << "^" << n_ << " exceeds the scan cap of " << cap << " elements";
    throw CapExceeded(msg.str());
  }
  return *size_;
}

Element Field::zero() const { return Element{std::vector<std::uint64_t>(n_, 0)}; }

Element Field::one() const {
  Element e = zero();
  e.coeffs[0] = 1;
  return e;
}

Element Field::generator() const {
  if (n_ >= 2) {
    Element e = zero();
    e.coeffs[1] = 1;
    return e;
  }
  return Element{{p_.neg(modulus_[0])}};
}

Element Field::embed(std::int64_t v) const {
  Element e = zero();
  e.coeffs[0] = p_.reduce(v);
  return e;
}

bool Field::is_zero(const Element& a) const {
  check_member(a);
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](auto c) { return c == 0; });
}

bool Field::in_prime_subfield(const Element& a) const {
  check_member(a);
  return std::all_of(a.coeffs.begin() + 1, a.coeffs.end(), [](auto c) { return c == 0; });
}

void Field::check_member(const Element& a) const {
  if (a.coeffs.size() != n_) {
    throw std::invalid_argument("element has " + std::to_string(a.coeffs.size()) +
                                " coordinates, field degree is " + std::to_string(n_));
  }
  for (auto c : a.coeffs) {
    if (c >= p_.value()) throw std::invalid_argument("element coordinate out of range");
  }
}

Element Field::add(const Element& a, const Element& b) const {
  check_member(a);
  check_member(b);
  Element r = a;
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = p_.add(a.coeffs[i], b.coeffs[i]);
  return r;
}

Element Field::sub(const Element& a, const Element& b) const {
  check_member(a);
  check_member(b);
  Element r = a;
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = p_.sub(a.coeffs[i], b.coeffs[i]);
  return r;
}

Element Field::neg(const Element& a) const {
  check_member(a);
  Element r = a;
  for (auto& c : r.coeffs) c = p_.neg(c);
  return r;
}

Element Field::mul(const Element& a, const Element& b) const {
  check_member(a);
  check_member(b);
  std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      prod[i + j] = p_.add(prod[i + j], p_.mul(a.coeffs[i], b.coeffs[j]));
    }
  }
  // t^n = -(a_{n-1} t^{n-1} + ... + a_0), modulus is monic.
  for (std::size_t k = prod.size(); k-- > n_;) {
    const std::uint64_t top = prod[k];
    if (top == 0) continue;
    for (unsigned i = 0; i < n_; ++i) {
      prod[k - n_ + i] = p_.sub(prod[k - n_ + i], p_.mul(top, modulus_[i]));
    }
  }
  prod.resize(n_);
  return Element{std::move(prod)};
}

Element Field::pow(const Element& a, std::uint64_t e) const {
  check_member(a);
  Element result = one();
  Element base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

Element Field::inv(const Element& a) const {
  if (is_zero(a)) throw std::domain_error("inverse of zero in F_p^n");
  FpPoly as_poly = a.coeffs;
  poly::normalize(p_, as_poly);
  FpPoly r = poly::inverse_mod(p_, as_poly, modulus_);
  r.resize(n_, 0);
  return Element{std::move(r)};
}

std::uint64_t Field::index_of(const Element& a) const {
  check_member(a);
  if (!size_) throw CapExceeded("field too large to index");
  std::uint64_t idx = 0;
  for (unsigned i = n_; i-- > 0;) idx = idx * p_.value() + a.coeffs[i];
  return idx;
}

Element Field::element_at(std::uint64_t index) const {
  if (!size_ || index >= *size_) throw std::out_of_range("element index out of range");
  Element e = zero();
  for (unsigned i = 0; i < n_; ++i) {
    e.coeffs[i] = index % p_.value();
    index /= p_.value();
  }
  return e;
}

bool Field::increment(Element& a) const {
  for (unsigned i = 0; i < n_; ++i) {
    if (++a.coeffs[i] < p_.value()) return true;
    a.coeffs[i] = 0;
  }
  return false;
}

std::string Field::render(const Element& a) const {
  check_member(a);
  std::string out;
  for (unsigned k = n_; k-- > 0;) {
    const std::uint64_t c = a.coeffs[k];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (k == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += 't';
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

namespace {

[[noreturn]] void bad_element(std::string_view text, const char* why) {
  throw std::invalid_argument("cannot parse field element '" + std::string(text) + "': " + why);
}

std::uint64_t parse_digits(std::string_view text, std::string_view s, std::size_t& pos) {
  const std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data() + start, s.data() + pos, v);
  if (ec != std::errc() || pos == start) bad_element(text, "expected a number");
  return v;
}

}  // namespace

Element Field::parse(std::string_view text) const {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) bad_element(text, "empty");

  // Accumulate sum of terms as a polynomial in t, then reduce mod pi.
  FpPoly acc;
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (!first) {
      bad_element(text, "expected '+' or '-'");
    }
    first = false;
    if (pos >= s.size()) bad_element(text, "dangling sign");

    std::uint64_t coef = 1;
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      const std::uint64_t raw = parse_digits(text, s, pos);
      coef = raw % p_.value();
      have_coef = true;
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        if (pos >= s.size() || s[pos] != 't') bad_element(text, "expected 't' after '*'");
      }
    }
    std::uint64_t power = 0;
    if (pos < s.size() && s[pos] == 't') {
      ++pos;
      power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        power = parse_digits(text, s, pos);
      }
    } else if (!have_coef) {
      bad_element(text, "expected a coefficient or 't'");
    }
    if (power > 4096) bad_element(text, "exponent too large");
    if (acc.size() <= power) acc.resize(power + 1, 0);
    acc[power] = negative ? p_.sub(acc[power], coef) : p_.add(acc[power], coef);
  }
  poly::normalize(p_, acc);
  FpPoly reduced = poly::mod(p_, acc, modulus_);
  reduced.resize(n_, 0);
  return Element{std::move(reduced)};
}

std::vector<Element> enumerate(const Field& field, std::uint64_t cap) {
  std::vector<Element> out;
  out.reserve(field.checked_cardinality(cap));
  for_each_element(field, cap, [&](std::uint64_t, const Element& e) { out.push_back(e); });
  return out;
}

void for_each_element(const Field& field, std::uint64_t cap,
                      const std::function<void(std::uint64_t, const Element&)>& visit) {
  const std::uint64_t size = field.checked_cardinality(cap);
  Element e = field.zero();
  for (std::uint64_t idx = 0; idx < size; ++idx) {
    visit(idx, e);
    field.increment(e);
  }
}

}  // namespace fixdyn::ff
