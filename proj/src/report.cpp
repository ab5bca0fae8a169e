#include "fixdyn/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace fixdyn::report {

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

json ratio_json(const std::optional<stats::Rational>& r) { return r ? json(r->str()) : json(nullptr); }

std::string ratio_csv(const std::optional<stats::Rational>& r) { return r ? decimal6(*r) : std::string(); }

}  // namespace

std::string decimal6(const stats::Rational& r) {
  // Exact rounding half away from zero at the sixth place.
  const __int128 scaled = static_cast<__int128>(r.num) * 1'000'000;
  const __int128 den = r.den;
  __int128 q = scaled / den;
  const __int128 rem = scaled % den;
  if (2 * (rem < 0 ? -rem : rem) >= den) q += (scaled < 0 ? -1 : 1);
  const bool negative = q < 0;
  const __int128 mag = negative ? -q : q;
  const auto whole = static_cast<long long>(mag / 1'000'000);
  const auto frac = static_cast<long long>(mag % 1'000'000);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%lld.%06lld", negative ? "-" : "", whole, frac);
  return buf;
}

json field_json(const ff::Field& field) {
  return json{{"p", field.characteristic()}, {"n", field.degree()}, {"modulus", field.modulus()}};
}

std::string census_csv(const std::vector<dynamics::CensusRecord>& rows) {
  std::ostringstream out;
  out << "p,n,ell,family,c_class,c_repr,fixed_count\n";
  for (const auto& r : rows) {
    out << r.p << ',' << r.n << ',' << r.ell << ',' << dynamics::to_string(r.family) << ',' << r.c_class << ','
        << r.c_repr << ',' << r.fixed_count << '\n';
  }
  return out.str();
}

json census_json(const std::vector<dynamics::CensusRecord>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"p", r.p},
                   {"n", r.n},
                   {"ell", r.ell},
                   {"family", dynamics::to_string(r.family)},
                   {"d", r.degree},
                   {"c_class", r.c_class},
                   {"c_repr", r.c_repr},
                   {"fixed_count", r.fixed_count}});
  }
  return arr;
}

std::string orbit_csv(const dynamics::OrbitCensus& c) {
  std::ostringstream out;
  out << "components,cycle_lengths,fixed_points,max_tail\n" << c.component_count << ',';
  for (std::size_t i = 0; i < c.cycle_lengths.size(); ++i) out << (i ? ";" : "") << c.cycle_lengths[i];
  out << ',' << c.fixed_point_count << ',' << c.max_tail_length << '\n';
  return out.str();
}

json orbit_json(const dynamics::OrbitCensus& c) {
  return json{{"components", c.component_count},
              {"cycle_lengths", c.cycle_lengths},
              {"fixed_points", c.fixed_point_count},
              {"max_tail", c.max_tail_length},
              {"component_sizes", c.component_sizes},
              {"elements", c.element_total}};
}

json claims_json(const std::vector<claims::ClaimReport>& reports) {
  json arr = json::array();
  for (const auto& rep : reports) {
    json grid = json::array();
    for (const auto& pt : rep.points) {
      json witnesses = json::array();
      for (const auto& w : pt.witnesses) {
        witnesses.push_back({{"c", w.c}, {"predicted", w.predicted}, {"actual", w.actual}});
      }
      json entry{{"p", pt.point.p},
                 {"n", pt.point.n},
                 {"ell", pt.point.ell},
                 {"status", claims::to_string(pt.status)},
                 {"witnesses", witnesses}};
      if (!pt.reason.empty()) entry["reason"] = pt.reason;
      if (pt.status == claims::Verdict::Holds || pt.status == claims::Verdict::Fails) {
        entry["mismatches"] = pt.mismatch_count;
        json classes = json::object();
        for (const auto& [cls, hist] : pt.class_counts) {
          json h = json::object();
          for (const auto& [count, mult] : hist) h[std::to_string(count)] = mult;
          classes[cls] = h;
        }
        entry["class_counts"] = classes;
      }
      grid.push_back(entry);
    }
    arr.push_back({{"claim", claims::to_string(rep.id)},
                   {"quote", rep.quote},
                   {"conditional", rep.conditional},
                   {"coverage", rep.coverage},
                   {"grid", grid}});
  }
  return arr;
}

std::string claims_csv(const std::vector<claims::ClaimReport>& reports) {
  std::ostringstream out;
  out << "claim,p,n,ell,status,c,predicted,actual\n";
  for (const auto& rep : reports) {
    for (const auto& pt : rep.points) {
      const std::string head = claims::to_string(rep.id) + "," + std::to_string(pt.point.p) + "," +
                               std::to_string(pt.point.n) + "," + std::to_string(pt.point.ell) + "," +
                               claims::to_string(pt.status);
      if (pt.witnesses.empty()) {
        out << head << ",,,\n";
        continue;
      }
      for (const auto& w : pt.witnesses) out << head << ',' << w.c << ',' << w.predicted << ',' << w.actual << '\n';
    }
  }
  return out.str();
}

std::vector<std::string> compare_expectations(const json& expected, const std::vector<claims::ClaimReport>& actual) {
  if (!expected.is_array()) throw std::invalid_argument("expectation file must hold a JSON array of claim reports");
  std::map<std::tuple<std::string, std::uint64_t, unsigned, unsigned>, std::string> observed;
  for (const auto& rep : actual) {
    for (const auto& pt : rep.points) {
      observed[{claims::to_string(rep.id), pt.point.p, pt.point.n, pt.point.ell}] = claims::to_string(pt.status);
    }
  }
  std::vector<std::string> diffs;
  for (const auto& rep : expected) {
    const std::string id = rep.at("claim").get<std::string>();
    for (const auto& pt : rep.at("grid")) {
      const auto key = std::make_tuple(id, pt.at("p").get<std::uint64_t>(), pt.at("n").get<unsigned>(),
                                       pt.at("ell").get<unsigned>());
      const std::string want = pt.at("status").get<std::string>();
      std::ostringstream where;
      where << id << " at (p=" << std::get<1>(key) << ", n=" << std::get<2>(key) << ", ell=" << std::get<3>(key) << ")";
      auto it = observed.find(key);
      if (it == observed.end()) {
        diffs.push_back(where.str() + ": pinned " + want + " but point was not run");
      } else if (it->second != want) {
        diffs.push_back(where.str() + ": pinned " + want + ", got " + it->second);
      }
    }
  }
  return diffs;
}

std::string average_csv(const std::vector<stats::AverageRow>& rows) {
  std::ostringstream out;
  out << "c,selector,numerator,denominator,ratio\n";
  for (const auto& r : rows) {
    out << r.c << ',' << stats::to_string(r.selector) << ',' << r.numerator << ',' << r.denominator << ','
        << ratio_csv(r.ratio) << '\n';
  }
  return out.str();
}

json average_json(const std::vector<stats::AverageRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"c", r.c},
                   {"selector", stats::to_string(r.selector)},
                   {"prime_floor", r.prime_floor},
                   {"primes", r.primes},
                   {"numerator", r.numerator},
                   {"denominator", r.denominator},
                   {"ratio", ratio_json(r.ratio)}});
  }
  return arr;
}

std::string density_csv(const std::vector<stats::DensityRow>& rows) {
  std::ostringstream out;
  out << "c,kind,numerator,denominator,ratio\n";
  for (const auto& r : rows) {
    out << r.c << ',' << stats::to_string(r.kind) << ',' << r.numerator << ',' << r.denominator << ','
        << ratio_csv(r.ratio) << '\n';
  }
  return out.str();
}

json density_json(const std::vector<stats::DensityRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"c", r.c},
                   {"kind", stats::to_string(r.kind)},
                   {"n", r.n},
                   {"ell", r.ell},
                   {"numerator", r.numerator},
                   {"denominator", r.denominator},
                   {"ratio", ratio_json(r.ratio)}});
  }
  return arr;
}

std::string density_plot_data(const std::vector<stats::DensityRow>& rows) {
  std::ostringstream out;
  out << "c,ratio\n";
  for (const auto& r : rows) {
    if (r.ratio) out << r.c << ',' << decimal6(*r.ratio) << '\n';
  }
  return out.str();
}

std::string field_count_csv(const std::vector<nfcount::FieldCountRow>& rows) {
  std::ostringstream out;
  out << "d,X,count,unknown,exponent_ref,bound_constant,bound_value,bound_ok\n";
  for (const auto& r : rows) {
    out << r.d << ',' << r.X << ',' << r.count << ',' << r.unknown << ',' << decimal6(r.exponent_ref) << ','
        << fixed6(r.bound_constant) << ',' << fixed6(r.bound_value) << ',' << (r.bound_ok ? "true" : "false") << '\n';
  }
  return out.str();
}

json field_count_json(const std::vector<nfcount::FieldCountRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"d", r.d},
                   {"X", r.X},
                   {"count", r.count},
                   {"unknown", r.unknown},
                   {"admitted", r.admitted},
                   {"exponent_ref", r.exponent_ref.str()},
                   {"bound_ok", r.bound_ok}});
  }
  return arr;
}

std::string trinomial_csv(const std::vector<TrinomialRow>& rows) {
  std::ostringstream out;
  out << "d,c,disc,height,irreducibility,squarefree\n";
  for (const auto& r : rows) {
    out << r.trinomial.d << ',' << r.trinomial.c << ',' << r.trinomial.disc.get_str() << ','
        << fixed6(r.trinomial.height) << ',' << nfcount::to_string(r.irreducibility) << ','
        << nfcount::to_string(r.squarefree) << '\n';
  }
  return out.str();
}

json trinomial_json(const std::vector<TrinomialRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    // Discriminants can exceed 64 bits; carried as decimal strings.
    arr.push_back({{"d", r.trinomial.d},
                   {"c", r.trinomial.c},
                   {"disc", r.trinomial.disc.get_str()},
                   {"irreducibility", nfcount::to_string(r.irreducibility)},
                   {"squarefree", nfcount::to_string(r.squarefree)}});
  }
  return arr;
}

std::string squarefree_csv(const nfcount::SquarefreeReport& r) {
  std::ostringstream out;
  out << "d,C,squarefree,unknown,fraction,reference_inv_zeta2\n"
      << r.d << ',' << r.C << ',' << r.squarefree << ',' << r.unknown << ',' << decimal6(r.fraction) << ','
      << fixed6(r.reference) << '\n';
  return out.str();
}

json squarefree_json(const nfcount::SquarefreeReport& r) {
  return json{{"d", r.d},
              {"C", r.C},
              {"squarefree", r.squarefree},
              {"unknown", r.unknown},
              {"fraction", r.fraction.str()},
              {"reference_inv_zeta2", fixed6(r.reference)}};
}

}  // namespace fixdyn::report
