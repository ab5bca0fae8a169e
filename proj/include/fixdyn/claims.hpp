#pragma once

// Registry of the published fixed-point counts for phi_{p^l,c} and
// phi_{(p-1)^l,c}, and a checker that compares every prediction against the
// exhaustive-scan count over a parameter grid.
//
// Predictions are encoded from the theorem statements as written. A mismatch
// is reported as a FAILS verdict with re-checkable witnesses; it is data,
// not an error.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fixdyn/dynamics.hpp"
#include "fixdyn/errors.hpp"

namespace fixdyn::claims {

enum class ClaimId { C2_1, C2_2, C2_3, C2_4, C3_1, C3_2, C3_3, C3_4 };

std::string to_string(ClaimId id);  // "C-2.1", ...
ClaimId parse_claim_id(std::string_view text);

struct GridPoint {
  std::uint64_t p = 0;
  unsigned n = 0;
  unsigned ell = 0;

  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

// Hypotheses on (p, n, ell). Absent bounds are unconstrained.
struct Applicability {
  std::optional<std::uint64_t> p_exact;
  std::uint64_t p_min = 2;
  unsigned n_min = 1;
  std::optional<unsigned> n_exact;
  std::optional<unsigned> ell_exact;

  bool admits(const GridPoint& g) const;
  std::string describe() const;
};

struct ClaimSpec {
  ClaimId id;
  dynamics::Family family;
  Applicability applicability;
  std::string quote;      // verbatim anchor from the statement
  bool conditional;       // stated under an assumed theorem
  // Named predictions: "0", "1", "-1", and "nonzero" (every nonzero residue).
  std::map<std::string, std::uint64_t> named;

  // Predicted count for a coefficient of the given class ("0", "1", "-1",
  // "other"), or nullopt when the statement is silent on that class.
  std::optional<std::uint64_t> prediction(std::string_view coefficient_class) const;
};

const std::vector<ClaimSpec>& registry();
const ClaimSpec& lookup(ClaimId id);

enum class Verdict { Holds, Fails, NotApplicable, Skipped };
std::string to_string(Verdict v);  // HOLDS, FAILS, NOT-APPLICABLE, SKIPPED
Verdict parse_verdict(std::string_view text);

struct Witness {
  GridPoint point;
  std::string c;
  std::uint64_t predicted = 0;
  std::uint64_t actual = 0;
};

struct PointResult {
  GridPoint point;
  Verdict status = Verdict::NotApplicable;
  std::string reason;  // set for NOT-APPLICABLE and SKIPPED
  std::uint64_t mismatch_count = 0;
  std::vector<Witness> witnesses;  // first `max_witnesses` mismatches, in enumeration order
  // class -> (fixed-point count -> number of coefficients); covers every
  // scanned residue including classes the statement is silent on.
  std::map<std::string, std::map<std::uint64_t, std::uint64_t>> class_counts;
};

struct ClaimReport {
  ClaimId id;
  std::string quote;
  bool conditional = false;
  std::string coverage;
  std::vector<PointResult> points;
};

struct CheckOptions {
  std::uint64_t field_cap = kDefaultFieldCap;
  std::uint64_t exp_cap = kDefaultExponentCap;
  std::size_t max_witnesses = 16;
  unsigned jobs = 1;
};

ClaimReport check(ClaimId id, const std::vector<GridPoint>& grid, const CheckOptions& opts = {});

// One report per registry claim, ordered by claim id.
std::vector<ClaimReport> check_all(const std::vector<GridPoint>& grid, const CheckOptions& opts = {});

}  // namespace fixdyn::claims
