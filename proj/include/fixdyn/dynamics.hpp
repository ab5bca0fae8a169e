#pragma once

// Fixed points of phi_{d,c}(z) = z^d + c on F_{p^n}, i.e. the roots of
// z^d - z + c, counted by exhaustive scan and, independently, by
// deg gcd(z^d - z + c, z^{p^n} - z).

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "fixdyn/errors.hpp"
#include "fixdyn/ff.hpp"

namespace fixdyn::dynamics {

enum class Family { PrimePower, PMinusOnePower, Raw };

std::string to_string(Family family);
// Accepts "prime-power", "pminus1" and "raw". Throws std::invalid_argument.
Family parse_family(std::string_view text);

// An integer coefficient is embedded through the prime subfield; an element
// is used verbatim.
using Coefficient = std::variant<std::int64_t, ff::Element>;

struct MapSpec {
  Family family = Family::Raw;
  std::uint64_t p = 0;  // 0 for Raw
  unsigned ell = 0;     // 0 for Raw
  std::uint64_t degree = 0;
  Coefficient c = std::int64_t{0};

  // d = p^ell. Throws std::invalid_argument for p < 3 or ell < 1 and
  // CapExceeded when d exceeds exp_cap.
  static MapSpec prime_power(std::uint64_t p, unsigned ell, Coefficient c,
                             std::uint64_t exp_cap = kDefaultExponentCap);
  // d = (p-1)^ell, p >= 5.
  static MapSpec p_minus_one_power(std::uint64_t p, unsigned ell, Coefficient c,
                                   std::uint64_t exp_cap = kDefaultExponentCap);
  static MapSpec raw(std::uint64_t d, Coefficient c, std::uint64_t exp_cap = kDefaultExponentCap);
  // Dispatches on family; p and ell are ignored for Raw, d for the others.
  static MapSpec make(Family family, std::uint64_t p, unsigned ell, std::uint64_t d, Coefficient c,
                      std::uint64_t exp_cap = kDefaultExponentCap);

  MapSpec with_coefficient(Coefficient next) const;
};

// The coefficient as an element of fs. Throws std::invalid_argument if the
// map's family fixes a characteristic different from fs, or if an element
// coefficient does not belong to fs.
ff::Element coefficient_in(const ff::Field& fs, const MapSpec& m);

// Label of c's residue class: "0", "1", "-1" or "other".
std::string coefficient_class(const ff::Field& fs, const ff::Element& c);

ff::Element eval_map(const ff::Field& fs, const MapSpec& m, const ff::Element& z);

std::uint64_t fixed_point_count(const ff::Field& fs, const MapSpec& m,
                                std::uint64_t field_cap = kDefaultFieldCap);

std::vector<ff::Element> fixed_points(const ff::Field& fs, const MapSpec& m,
                                      std::uint64_t field_cap = kDefaultFieldCap);

// Fixed-point counts for every coefficient at once: entry i is the count for
// c = element_at(i). One pass over the field computes z^d - z for each z and
// tallies -(z^d - z).
std::vector<std::uint64_t> fixed_point_histogram(const ff::Field& fs, std::uint64_t degree,
                                                 std::uint64_t field_cap = kDefaultFieldCap);

// deg gcd(f, z^{p^n} - z) with f = z^d - z + c, computed in F_{p^n}[z]/(f)
// by n successive p-th powers. Needs no scan cap.
std::uint64_t gcd_root_count(const ff::Field& fs, const MapSpec& m);

struct CensusRecord {
  std::uint64_t p = 0;
  unsigned n = 0;
  unsigned ell = 0;
  Family family = Family::Raw;
  std::uint64_t degree = 0;
  std::string c_class;
  std::string c_repr;
  std::uint64_t c_index = 0;
  std::uint64_t fixed_count = 0;
};

// One record per coefficient, in the order given.
std::vector<CensusRecord> census(const ff::Field& fs, const MapSpec& m, const std::vector<ff::Element>& coefficients,
                                 std::uint64_t field_cap = kDefaultFieldCap);

// One record per residue of fs, in counting order (single histogram pass).
std::vector<CensusRecord> census_all(const ff::Field& fs, const MapSpec& m,
                                     std::uint64_t field_cap = kDefaultFieldCap);

struct OrbitCensus {
  std::uint64_t component_count = 0;
  std::vector<std::uint64_t> cycle_lengths;    // ascending
  std::vector<std::uint64_t> component_sizes;  // aligned with cycle_lengths
  std::uint64_t fixed_point_count = 0;
  std::uint64_t max_tail_length = 0;
  std::uint64_t element_total = 0;
};

// Decomposes the functional graph z -> phi(z) on all of F_{p^n}. Nodes on a
// cycle have tail length 0.
OrbitCensus orbit_census(const ff::Field& fs, const MapSpec& m,
                         std::uint64_t field_cap = kDefaultFieldCap);

struct IntegralFixedPoints {
  std::vector<std::int64_t> roots;  // ascending
  bool within_four_root_bound = true;  // at most 4 integral fixed points
};

// All z in Z with z^d - z + c = 0 (rational root theorem: z divides c).
// Throws std::invalid_argument for d < 2.
IntegralFixedPoints integral_fixed_points(std::uint64_t d, std::int64_t c);

}  // namespace fixdyn::dynamics
