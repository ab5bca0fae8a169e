#include "fixdyn/dynamics.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fixdyn/poly.hpp"

namespace fixdyn::dynamics {

namespace {

std::uint64_t checked_power(std::uint64_t base, unsigned ell, std::uint64_t exp_cap) {
  std::uint64_t d = 1;
  for (unsigned i = 0; i < ell; ++i) {
    if (d > exp_cap / base) {
      std::ostringstream msg;
      msg << "degree " << base << "^" << ell << " exceeds the exponent cap of " << exp_cap;
      throw CapExceeded(msg.str());
    }
    d *= base;
  }
  return d;
}

}  // namespace

std::string to_string(Family family) {
  switch (family) {
    case Family::PrimePower:
      return "prime-power";
    case Family::PMinusOnePower:
      return "pminus1";
    case Family::Raw:
      return "raw";
  }
  return "raw";
}

Family parse_family(std::string_view text) {
  if (text == "prime-power") return Family::PrimePower;
  if (text == "pminus1") return Family::PMinusOnePower;
  if (text == "raw") return Family::Raw;
  throw std::invalid_argument("unknown family '" + std::string(text) + "'");
}

MapSpec MapSpec::prime_power(std::uint64_t p, unsigned ell, Coefficient c, std::uint64_t exp_cap) {
  if (p < 3 || !ff::is_prime(p)) throw std::invalid_argument("prime-power family needs a prime p >= 3");
  if (ell < 1) throw std::invalid_argument("ell must be at least 1");
  return MapSpec{Family::PrimePower, p, ell, checked_power(p, ell, exp_cap), std::move(c)};
}

MapSpec MapSpec::p_minus_one_power(std::uint64_t p, unsigned ell, Coefficient c, std::uint64_t exp_cap) {
  if (p < 5 || !ff::is_prime(p)) throw std::invalid_argument("(p-1)-power family needs a prime p >= 5");
  if (ell < 1) throw std::invalid_argument("ell must be at least 1");
  return MapSpec{Family::PMinusOnePower, p, ell, checked_power(p - 1, ell, exp_cap), std::move(c)};
}

MapSpec MapSpec::raw(std::uint64_t d, Coefficient c, std::uint64_t exp_cap) {
  if (d < 2) throw std::invalid_argument("map degree must be at least 2");
  if (d > exp_cap) throw CapExceeded("degree " + std::to_string(d) + " exceeds the exponent cap");
  return MapSpec{Family::Raw, 0, 0, d, std::move(c)};
}

MapSpec MapSpec::make(Family family, std::uint64_t p, unsigned ell, std::uint64_t d, Coefficient c,
                      std::uint64_t exp_cap) {
  switch (family) {
    case Family::PrimePower:
      return prime_power(p, ell, std::move(c), exp_cap);
    case Family::PMinusOnePower:
      return p_minus_one_power(p, ell, std::move(c), exp_cap);
    case Family::Raw:
      break;
  }
  return raw(d, std::move(c), exp_cap);
}

MapSpec MapSpec::with_coefficient(Coefficient next) const {
  MapSpec copy = *this;
  copy.c = std::move(next);
  return copy;
}

ff::Element coefficient_in(const ff::Field& fs, const MapSpec& m) {
  if (m.family != Family::Raw && m.p != fs.characteristic()) {
    throw std::invalid_argument("map family is defined for p = " + std::to_string(m.p) +
                                " but the field has characteristic " + std::to_string(fs.characteristic()));
  }
  if (const auto* v = std::get_if<std::int64_t>(&m.c)) return fs.embed(*v);
  const auto& e = std::get<ff::Element>(m.c);
  fs.check_member(e);
  return e;
}

std::string coefficient_class(const ff::Field& fs, const ff::Element& c) {
  if (!fs.in_prime_subfield(c)) return "other";
  const std::uint64_t v = c.coeffs[0];
  if (v == 0) return "0";
  if (v == 1) return "1";
  if (v == fs.characteristic() - 1) return "-1";
  return "other";
}

ff::Element eval_map(const ff::Field& fs, const MapSpec& m, const ff::Element& z) {
  return fs.add(fs.pow(z, m.degree), coefficient_in(fs, m));
}

std::uint64_t fixed_point_count(const ff::Field& fs, const MapSpec& m, std::uint64_t field_cap) {
  const ff::Element c = coefficient_in(fs, m);
  std::uint64_t count = 0;
  ff::for_each_element(fs, field_cap, [&](std::uint64_t, const ff::Element& z) {
    if (fs.add(fs.pow(z, m.degree), c) == z) ++count;
  });
  return count;
}

std::vector<ff::Element> fixed_points(const ff::Field& fs, const MapSpec& m, std::uint64_t field_cap) {
  const ff::Element c = coefficient_in(fs, m);
  std::vector<ff::Element> roots;
  ff::for_each_element(fs, field_cap, [&](std::uint64_t, const ff::Element& z) {
    if (fs.add(fs.pow(z, m.degree), c) == z) roots.push_back(z);
  });
  return roots;
}

std::vector<std::uint64_t> fixed_point_histogram(const ff::Field& fs, std::uint64_t degree,
                                                 std::uint64_t field_cap) {
  std::vector<std::uint64_t> counts(fs.checked_cardinality(field_cap), 0);
  ff::for_each_element(fs, field_cap, [&](std::uint64_t, const ff::Element& z) {
    // z is fixed by z^d + c exactly when c = z - z^d.
    ++counts[fs.index_of(fs.sub(z, fs.pow(z, degree)))];
  });
  return counts;
}

std::uint64_t gcd_root_count(const ff::Field& fs, const MapSpec& m) {
  using Poly = poly::Poly<ff::Field>;
  const ff::Element c = coefficient_in(fs, m);
  Poly f(m.degree + 1, fs.zero());
  f[m.degree] = fs.one();
  f[1] = fs.neg(fs.one());
  f[0] = fs.add(f[0], c);
  poly::normalize(fs, f);

  const Poly z{fs.zero(), fs.one()};
  Poly frob = poly::mod(fs, z, f);
  for (unsigned i = 0; i < fs.degree(); ++i) frob = poly::powmod(fs, frob, fs.characteristic(), f);
  const Poly g = poly::gcd(fs, f, poly::sub(fs, frob, z));
  return static_cast<std::uint64_t>(poly::degree<ff::Field>(g));
}

namespace {

CensusRecord make_record(const ff::Field& fs, const MapSpec& m, const ff::Element& c, std::uint64_t count) {
  CensusRecord r;
  r.p = fs.characteristic();
  r.n = fs.degree();
  r.ell = m.ell;
  r.family = m.family;
  r.degree = m.degree;
  r.c_class = coefficient_class(fs, c);
  r.c_repr = fs.render(c);
  r.c_index = fs.index_of(c);
  r.fixed_count = count;
  return r;
}

}  // namespace

std::vector<CensusRecord> census(const ff::Field& fs, const MapSpec& m, const std::vector<ff::Element>& coefficients,
                                 std::uint64_t field_cap) {
  std::vector<CensusRecord> out;
  out.reserve(coefficients.size());
  for (const auto& c : coefficients) {
    const MapSpec at_c = m.with_coefficient(c);
    out.push_back(make_record(fs, m, c, fixed_point_count(fs, at_c, field_cap)));
  }
  return out;
}

std::vector<CensusRecord> census_all(const ff::Field& fs, const MapSpec& m, std::uint64_t field_cap) {
  coefficient_in(fs, m);  // characteristic check
  const auto counts = fixed_point_histogram(fs, m.degree, field_cap);
  std::vector<CensusRecord> out;
  out.reserve(counts.size());
  ff::Element c = fs.zero();
  for (std::uint64_t idx = 0; idx < counts.size(); ++idx, fs.increment(c)) {
    out.push_back(make_record(fs, m, c, counts[idx]));
  }
  return out;
}

OrbitCensus orbit_census(const ff::Field& fs, const MapSpec& m, std::uint64_t field_cap) {
  const std::uint64_t size = fs.checked_cardinality(field_cap);
  const ff::Element c = coefficient_in(fs, m);

  std::vector<std::uint64_t> next(size);
  ff::for_each_element(fs, field_cap, [&](std::uint64_t idx, const ff::Element& z) {
    next[idx] = fs.index_of(fs.add(fs.pow(z, m.degree), c));
  });

  constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> component(size, kUnset);
  std::vector<std::uint64_t> tail(size, 0);
  std::vector<std::uint64_t> on_path(size, kUnset);  // position in the current walk
  std::vector<std::uint64_t> path;

  OrbitCensus out;
  out.element_total = size;
  for (std::uint64_t start = 0; start < size; ++start) {
    if (component[start] != kUnset) continue;
    path.clear();
    std::uint64_t v = start;
    while (component[v] == kUnset && on_path[v] == kUnset) {
      on_path[v] = path.size();
      path.push_back(v);
      v = next[v];
    }
    std::size_t tree_end = path.size();
    if (component[v] == kUnset) {
      // v closes a new cycle inside this walk.
      const std::uint64_t id = out.cycle_lengths.size();
      const std::size_t cycle_start = on_path[v];
      out.cycle_lengths.push_back(path.size() - cycle_start);
      out.component_sizes.push_back(0);
      for (std::size_t i = cycle_start; i < path.size(); ++i) {
        component[path[i]] = id;
        tail[path[i]] = 0;
      }
      out.component_sizes[id] += path.size() - cycle_start;
      tree_end = cycle_start;
    }
    for (std::size_t i = tree_end; i-- > 0;) {
      const std::uint64_t u = path[i];
      const std::uint64_t succ = next[u];
      component[u] = component[succ];
      tail[u] = tail[succ] + 1;
      out.max_tail_length = std::max(out.max_tail_length, tail[u]);
      ++out.component_sizes[component[u]];
    }
    for (auto u : path) on_path[u] = kUnset;
  }

  out.component_count = out.cycle_lengths.size();
  out.fixed_point_count =
      static_cast<std::uint64_t>(std::count(out.cycle_lengths.begin(), out.cycle_lengths.end(), 1U));
  // Deterministic presentation: components ordered by (cycle length, size).
  std::vector<std::size_t> order(out.cycle_lengths.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (out.cycle_lengths[a] != out.cycle_lengths[b]) return out.cycle_lengths[a] < out.cycle_lengths[b];
    return out.component_sizes[a] < out.component_sizes[b];
  });
  std::vector<std::uint64_t> lengths;
  std::vector<std::uint64_t> sizes;
  for (auto i : order) {
    lengths.push_back(out.cycle_lengths[i]);
    sizes.push_back(out.component_sizes[i]);
  }
  out.cycle_lengths = std::move(lengths);
  out.component_sizes = std::move(sizes);
  return out;
}

IntegralFixedPoints integral_fixed_points(std::uint64_t d, std::int64_t c) {
  if (d < 2) throw std::invalid_argument("map degree must be at least 2");
  IntegralFixedPoints out;
  auto is_root = [&](std::int64_t z) {
    mpz_class value;
    mpz_pow_ui(value.get_mpz_t(), mpz_class(static_cast<long>(z)).get_mpz_t(), d);
    value -= static_cast<long>(z);
    value += static_cast<long>(c);
    return value == 0;
  };

  if (c == 0) {
    // z (z^{d-1} - 1): roots 0, 1, and -1 when d - 1 is even.
    out.roots = {0, 1};
    if (d % 2 == 1) out.roots.insert(out.roots.begin(), -1);
  } else {
    // |c| fits in uint64 even for INT64_MIN.
    const std::uint64_t mag = c < 0 ? static_cast<std::uint64_t>(-(c + 1)) + 1 : static_cast<std::uint64_t>(c);
    std::vector<std::int64_t> candidates;
    auto push = [&](std::uint64_t divisor) {
      if (divisor <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        const auto s = static_cast<std::int64_t>(divisor);
        candidates.push_back(s);
        candidates.push_back(-s);
      }
    };
    for (std::uint64_t k = 1; k <= mag / k; ++k) {
      if (mag % k != 0) continue;
      push(k);
      if (k != mag / k) push(mag / k);
    }
    for (auto z : candidates) {
      if (is_root(z)) out.roots.push_back(z);
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
  }
  out.within_four_root_bound = out.roots.size() <= 4;
  return out;
}

}  // namespace fixdyn::dynamics
