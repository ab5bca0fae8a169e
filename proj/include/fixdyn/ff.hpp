#pragma once

// Exact arithmetic in F_p and F_{p^n} = F_p[t]/(pi).
//
// A Field models the residue ring O_K/pO_K for a prime p inert in a degree-n
// number field. Elements are coefficient vectors in the basis 1, t, ...,
// t^{n-1}. Every operation is a pure function; Field objects are immutable
// and may be shared freely across threads.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fixdyn/errors.hpp"

namespace fixdyn::ff {

// Deterministic for every 64-bit input (Miller-Rabin with a fixed base set).
bool is_prime(std::uint64_t u);

// A prime p, also usable as the coefficient context for poly:: routines.
class PrimeModulus {
 public:
  using value_type = std::uint64_t;

  // Throws std::invalid_argument if p is not prime.
  explicit PrimeModulus(std::uint64_t p);

  std::uint64_t value() const noexcept { return p_; }

  value_type zero() const noexcept { return 0; }
  value_type one() const noexcept { return 1; }
  bool is_zero(value_type a) const noexcept { return a == 0; }
  value_type add(value_type a, value_type b) const noexcept;
  value_type sub(value_type a, value_type b) const noexcept;
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept;
  value_type pow(value_type a, std::uint64_t e) const noexcept;
  // Throws std::domain_error on zero.
  value_type inv(value_type a) const;
  value_type reduce(std::int64_t v) const noexcept;

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint64_t p_;
};

// Polynomial over F_p, lowest degree first, no trailing zeros.
using FpPoly = std::vector<std::uint64_t>;

// Lexicographically least monic irreducible of degree n over F_p, ordering
// candidates t^n + a_{n-1} t^{n-1} + ... + a_0 by (a_{n-1}, ..., a_0).
FpPoly find_irreducible(const PrimeModulus& p, unsigned n);

// Full irreducibility test: no factor of degree k <= deg/2, certified by
// gcd(t^{p^k} - t, f) = 1.
bool is_irreducible(const PrimeModulus& p, const FpPoly& f);

struct Element {
  std::vector<std::uint64_t> coeffs;

  friend auto operator<=>(const Element&, const Element&) = default;
};

class Field {
 public:
  using value_type = Element;

  // Validates the modulus (monic, degree >= 1, irreducible); throws
  // std::invalid_argument otherwise.
  Field(PrimeModulus p, FpPoly modulus);

  // Uses find_irreducible for the modulus.
  static Field canonical(std::uint64_t p, unsigned n);

  const PrimeModulus& prime() const noexcept { return p_; }
  std::uint64_t characteristic() const noexcept { return p_.value(); }
  unsigned degree() const noexcept { return n_; }
  const FpPoly& modulus() const noexcept { return modulus_; }

  // p^n, or nullopt when it does not fit in 64 bits.
  std::optional<std::uint64_t> cardinality() const noexcept { return size_; }
  // Throws CapExceeded unless p^n <= cap.
  std::uint64_t checked_cardinality(std::uint64_t cap) const;

  Element zero() const;
  Element one() const;
  Element generator() const;  // class of t; reduces to -a_0 when n = 1
  Element embed(std::int64_t v) const;
  bool is_zero(const Element& a) const;
  bool in_prime_subfield(const Element& a) const;

  // All arithmetic throws std::invalid_argument on an element that does not
  // belong to this field (wrong length or out-of-range coordinate).
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  // pow(a, 0) = 1 for every a, including 0, so that z^d + c is total.
  Element pow(const Element& a, std::uint64_t e) const;
  Element inv(const Element& a) const;
  Element frobenius(const Element& a) const { return pow(a, p_.value()); }

  // Base-p counting order on the coefficient vector, a_0 fastest.
  std::uint64_t index_of(const Element& a) const;
  Element element_at(std::uint64_t index) const;
  // Advances a to the next element in counting order; false after the last.
  bool increment(Element& a) const;

  // Polynomial in t, highest degree first: "2*t^2+t+1", "0".
  std::string render(const Element& a) const;
  // Inverse of render; also accepts a bare (possibly negative) integer, which
  // is embedded through the prime subfield. Throws std::invalid_argument.
  Element parse(std::string_view text) const;

  void check_member(const Element& a) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }

 private:
  PrimeModulus p_;
  unsigned n_;
  FpPoly modulus_;
  std::optional<std::uint64_t> size_;
};

// All p^n elements in counting order. Throws CapExceeded above the cap.
std::vector<Element> enumerate(const Field& field, std::uint64_t cap = kDefaultFieldCap);

// Visits every element in counting order with its index, without
// materializing the whole field.
void for_each_element(const Field& field, std::uint64_t cap,
                      const std::function<void(std::uint64_t, const Element&)>& visit);

}  // namespace fixdyn::ff
