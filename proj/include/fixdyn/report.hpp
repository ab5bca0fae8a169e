#pragma once

// CSV and JSON renderings of every record type. JSON carries exact integers
// and rationals (as "num/den" strings); CSV renders ratios as decimals with
// six fixed places. Output depends only on the records, never on time or
// scheduling.

#include <string>
#include <vector>

#include <json.hpp>

#include "fixdyn/claims.hpp"
#include "fixdyn/dynamics.hpp"
#include "fixdyn/ff.hpp"
#include "fixdyn/nfcount.hpp"
#include "fixdyn/stats.hpp"

namespace fixdyn::report {

using json = nlohmann::ordered_json;

std::string decimal6(const stats::Rational& r);

json field_json(const ff::Field& field);

std::string census_csv(const std::vector<dynamics::CensusRecord>& rows);
json census_json(const std::vector<dynamics::CensusRecord>& rows);

std::string orbit_csv(const dynamics::OrbitCensus& census);
json orbit_json(const dynamics::OrbitCensus& census);

json claims_json(const std::vector<claims::ClaimReport>& reports);
std::string claims_csv(const std::vector<claims::ClaimReport>& reports);

// Compares pinned verdicts against a run. `expected` uses the claims_json
// layout; only the fields claim, grid[].{p,n,ell,status} are consulted and
// only pinned points are compared. Returns one line per difference.
std::vector<std::string> compare_expectations(const json& expected, const std::vector<claims::ClaimReport>& actual);

std::string average_csv(const std::vector<stats::AverageRow>& rows);
json average_json(const std::vector<stats::AverageRow>& rows);

std::string density_csv(const std::vector<stats::DensityRow>& rows);
json density_json(const std::vector<stats::DensityRow>& rows);

// "c,ratio" pairs for external plotting; rows without a ratio are omitted.
std::string density_plot_data(const std::vector<stats::DensityRow>& rows);

std::string field_count_csv(const std::vector<nfcount::FieldCountRow>& rows);
json field_count_json(const std::vector<nfcount::FieldCountRow>& rows);

struct TrinomialRow {
  nfcount::Trinomial trinomial;
  nfcount::Irreducibility irreducibility;
  nfcount::Squarefree squarefree;
};
std::string trinomial_csv(const std::vector<TrinomialRow>& rows);
json trinomial_json(const std::vector<TrinomialRow>& rows);

std::string squarefree_csv(const nfcount::SquarefreeReport& r);
json squarefree_json(const nfcount::SquarefreeReport& r);

}  // namespace fixdyn::report
