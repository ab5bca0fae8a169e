#pragma once

// Dense univariate polynomial arithmetic over an arbitrary finite field.
//
// A polynomial is a std::vector of coefficients, lowest degree first, with no
// trailing zero coefficients (the zero polynomial is the empty vector). The
// coefficient field is supplied as a context object `F` providing
//
//   using value_type;
//   value_type zero() const, one() const;
//   bool is_zero(const value_type&) const;
//   value_type add(a, b), sub(a, b), neg(a), mul(a, b), inv(a) const;
//
// Both the prime field (ff::PrimeModulus) and the extension field
// (ff::Field) satisfy this interface.

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fixdyn::poly {

template <class F>
using Poly = std::vector<typename F::value_type>;

template <class F>
void normalize(const F& f, Poly<F>& a) {
  while (!a.empty() && f.is_zero(a.back())) a.pop_back();
}

// Degree of a normalized polynomial; -1 for zero.
template <class F>
int degree(const Poly<F>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class F>
Poly<F> add(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
  normalize(f, r);
  return r;
}

template <class F>
Poly<F> sub(const F& f, const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r(std::max(a.size(), b.size()), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.sub(r[i], b[i]);
  normalize(f, r);
  return r;
}

template <class F>
Poly<F> mul(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (a.empty() || b.empty()) return {};
  Poly<F> r(a.size() + b.size() - 1, f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (f.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
  }
  normalize(f, r);
  return r;
}

// Quotient and remainder of a by a nonzero b.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const F& f, const Poly<F>& a, const Poly<F>& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  Poly<F> rem = a;
  if (rem.size() < b.size()) return {Poly<F>{}, rem};
  const auto lead_inv = f.inv(b.back());
  Poly<F> quo(rem.size() - b.size() + 1, f.zero());
  for (std::size_t k = rem.size(); k-- >= b.size();) {
    if (f.is_zero(rem[k])) continue;
    const auto factor = f.mul(rem[k], lead_inv);
    const std::size_t shift = k - (b.size() - 1);
    quo[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) {
      rem[shift + i] = f.sub(rem[shift + i], f.mul(factor, b[i]));
    }
  }
  normalize(f, quo);
  normalize(f, rem);
  return {std::move(quo), std::move(rem)};
}

template <class F>
Poly<F> mod(const F& f, const Poly<F>& a, const Poly<F>& m) {
  return divmod(f, a, m).second;
}

template <class F>
Poly<F> make_monic(const F& f, Poly<F> a) {
  if (a.empty()) return a;
  const auto lead_inv = f.inv(a.back());
  for (auto& coef : a) coef = f.mul(coef, lead_inv);
  return a;
}

// Monic greatest common divisor (zero if both inputs are zero).
template <class F>
Poly<F> gcd(const F& f, Poly<F> a, Poly<F> b) {
  while (!b.empty()) {
    Poly<F> r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(f, std::move(a));
}

template <class F>
Poly<F> mulmod(const F& f, const Poly<F>& a, const Poly<F>& b, const Poly<F>& m) {
  return mod(f, mul(f, a, b), m);
}

// base^e mod m by square-and-multiply.
template <class F>
Poly<F> powmod(const F& f, Poly<F> base, std::uint64_t e, const Poly<F>& m) {
  Poly<F> result = mod(f, Poly<F>{f.one()}, m);
  base = mod(f, base, m);
  while (e > 0) {
    if (e & 1U) result = mulmod(f, result, base, m);
    e >>= 1U;
    if (e > 0) base = mulmod(f, base, base, m);
  }
  return result;
}

// Inverse of a modulo m; requires gcd(a, m) = 1.
template <class F>
Poly<F> inverse_mod(const F& f, const Poly<F>& a, const Poly<F>& m) {
  Poly<F> r0 = m;
  Poly<F> r1 = mod(f, a, m);
  Poly<F> s0;
  Poly<F> s1{f.one()};
  while (!r1.empty()) {
    auto [q, r2] = divmod(f, r0, r1);
    Poly<F> s2 = sub(f, s0, mul(f, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw std::domain_error("polynomial is not invertible modulo m");
  const auto scale = f.inv(r0[0]);
  for (auto& coef : s0) coef = f.mul(coef, scale);
  return mod(f, s0, m);
}

template <class F>
typename F::value_type evaluate(const F& f, const Poly<F>& a, const typename F::value_type& x) {
  auto acc = f.zero();
  for (std::size_t k = a.size(); k-- > 0;) acc = f.add(f.mul(acc, x), a[k]);
  return acc;
}

template <class F>
Poly<F> derivative(const F& f, const Poly<F>& a, std::uint64_t characteristic) {
  if (a.size() <= 1) return {};
  Poly<F> r(a.size() - 1, f.zero());
  for (std::size_t k = 1; k < a.size(); ++k) {
    auto term = f.zero();
    // k * a[k] as repeated addition of k mod characteristic copies.
    std::uint64_t times = k % characteristic;
    auto unit = a[k];
    while (times > 0) {
      if (times & 1U) term = f.add(term, unit);
      unit = f.add(unit, unit);
      times >>= 1U;
    }
    r[k - 1] = term;
  }
  normalize(f, r);
  return r;
}

}  // namespace fixdyn::poly
