#include <gtest/gtest.h>

#include <cmath>

#include "fixdyn/stats.hpp"

using namespace fixdyn;
using stats::DensityKind;
using stats::Rational;
using stats::Selector;

namespace {

bool slow_prime(std::int64_t u) {
  if (u < 2) return false;
  for (std::int64_t q = 2; q * q <= u; ++q) {
    if (u % q == 0) return false;
  }
  return true;
}

std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

}  // namespace

TEST(Rational, ReducesAndRenders) {
  EXPECT_EQ(Rational::of(8, 2), (Rational{4, 1}));
  EXPECT_EQ(Rational::of(6, -4), (Rational{-3, 2}));
  EXPECT_EQ(Rational::of(2, 9).str(), "2/9");
  EXPECT_EQ(Rational::of(4, 1).str(), "4");
  EXPECT_TRUE(Rational::of(1, 3) < Rational::of(1, 2));
  EXPECT_THROW(Rational::of(1, 0), std::domain_error);
}

TEST(PrimeSieve, Examples) {
  EXPECT_EQ(stats::prime_sieve(10), (std::vector<std::uint64_t>{2, 3, 5, 7}));
  const auto thirty = stats::prime_sieve(30);
  EXPECT_EQ(thirty.size(), 10u);
  EXPECT_EQ(thirty.back(), 29u);
  EXPECT_EQ(stats::prime_sieve(2), (std::vector<std::uint64_t>{2}));
  EXPECT_TRUE(stats::prime_sieve(1).empty());
  EXPECT_THROW(stats::prime_sieve(1000, 999), CapExceeded);
}

TEST(PrimeSieve, AgreesWithTrialDivision) {
  std::vector<std::uint64_t> expected;
  for (std::int64_t u = 0; u <= 20000; ++u) {
    if (slow_prime(u)) expected.push_back(static_cast<std::uint64_t>(u));
  }
  EXPECT_EQ(stats::prime_sieve(20000), expected);
}

TEST(Selector, Strings) {
  for (auto s : {Selector::Divides, Selector::DividesMinusOne, Selector::DividesPlusOne, Selector::NotDivides}) {
    EXPECT_EQ(stats::parse_selector(stats::to_string(s)), s);
  }
  EXPECT_EQ(stats::parse_selector("pc+1"), Selector::DividesPlusOne);
  EXPECT_THROW(stats::parse_selector("p||c"), std::invalid_argument);
}

TEST(AverageReport, Examples) {
  const auto a = stats::average_report(dynamics::Family::PrimePower, 1, 1, Selector::Divides, {15, 3});
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].numerator, 8u);
  EXPECT_EQ(a[0].denominator, 2u);
  EXPECT_EQ(a[0].ratio, Rational::of(4, 1));
  EXPECT_EQ(a[0].primes, (std::vector<std::uint64_t>{3, 5}));
  EXPECT_EQ(a[1].numerator, 3u);
  EXPECT_EQ(a[1].ratio, Rational::of(3, 1));

  const auto m = stats::average_report(dynamics::Family::PMinusOnePower, 1, 1, Selector::DividesPlusOne, {4});
  EXPECT_EQ(m[0].numerator, 0u);
  EXPECT_EQ(m[0].denominator, 1u);
  EXPECT_EQ(m[0].ratio, Rational::of(0, 1));
  EXPECT_EQ(m[0].prime_floor, 5u);
}

TEST(AverageReport, EmptyQualifyingSetHasNoRatio) {
  const auto r = stats::average_report(dynamics::Family::PrimePower, 1, 1, Selector::Divides, {4});
  EXPECT_EQ(r[0].denominator, 0u);
  EXPECT_FALSE(r[0].ratio.has_value());
}

TEST(AverageReport, NumeratorMatchesCensusRecords) {
  for (auto sel : {Selector::Divides, Selector::DividesMinusOne, Selector::DividesPlusOne, Selector::NotDivides}) {
    for (auto family : {dynamics::Family::PrimePower, dynamics::Family::PMinusOnePower}) {
      for (unsigned n : {1u, 2u}) {
        const std::int64_t c = 60;
        const auto row = stats::average_report(family, n, 1, sel, {c})[0];
        std::uint64_t numerator = 0;
        std::uint64_t denominator = 0;
        for (std::int64_t p = row.prime_floor; p <= c + 1; ++p) {
          if (!slow_prime(p)) continue;
          const bool take = sel == Selector::Divides         ? (p <= c && c % p == 0)
                            : sel == Selector::DividesMinusOne ? (p <= c - 1 && (c - 1) % p == 0)
                            : sel == Selector::DividesPlusOne  ? (p <= c + 1 && (c + 1) % p == 0)
                                                               : (p <= c && c % p != 0);
          if (!take) continue;
          const auto fs = ff::Field::canonical(p, n);
          const auto m = dynamics::MapSpec::make(family, p, 1, 0, fs.embed(c));
          const auto records = dynamics::census(fs, m, {fs.embed(c)});
          numerator += records.at(0).fixed_count;
          ++denominator;
        }
        EXPECT_EQ(row.numerator, numerator) << stats::to_string(sel);
        EXPECT_EQ(row.denominator, denominator) << stats::to_string(sel);
      }
    }
  }
}

TEST(AverageReport, DeterministicAcrossJobs) {
  stats::AverageOptions threaded;
  threaded.jobs = 3;
  const std::vector<std::int64_t> cs{30, 105, 210};
  const auto a = stats::average_report(dynamics::Family::PrimePower, 1, 1, Selector::Divides, cs);
  const auto b = stats::average_report(dynamics::Family::PrimePower, 1, 1, Selector::Divides, cs, threaded);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    EXPECT_EQ(a[i].numerator, b[i].numerator);
    EXPECT_EQ(a[i].ratio, b[i].ratio);
  }
}

TEST(DensityTable, Examples) {
  auto one = [](DensityKind k, std::int64_t c) { return stats::density_table(k, 1, 1, {c}).at(0); };
  auto r = one(DensityKind::Nc3, 30);
  EXPECT_EQ(r.numerator, 2u);
  EXPECT_EQ(r.denominator, 9u);
  r = one(DensityKind::Nc3, 4);
  EXPECT_EQ(r.numerator, 0u);
  EXPECT_EQ(r.denominator, 1u);
  r = one(DensityKind::Nc0, 30);
  EXPECT_EQ(r.numerator, 7u);
  EXPECT_EQ(r.denominator, 9u);
  r = one(DensityKind::Mc1, 6);
  EXPECT_EQ(r.numerator, 1u);
  EXPECT_EQ(r.denominator, 1u);
}

TEST(DensityTable, PartitionAndBounds) {
  std::vector<std::int64_t> cs;
  for (std::int64_t c = 5; c <= 400; c += 7) cs.push_back(c);
  const auto n3 = stats::density_table(DensityKind::Nc3, 1, 1, cs);
  const auto n0 = stats::density_table(DensityKind::Nc0, 1, 1, cs);
  const auto m2 = stats::density_table(DensityKind::Mc2, 1, 1, cs);
  const auto m1 = stats::density_table(DensityKind::Mc1, 1, 1, cs);
  const auto m0 = stats::density_table(DensityKind::Mc0, 1, 1, cs);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto c = cs[i];
    EXPECT_EQ(n3[i].numerator + n0[i].numerator, n3[i].denominator);
    EXPECT_LE(static_cast<double>(n3[i].numerator), std::log2(static_cast<double>(c)));
    EXPECT_LE(m2[i].numerator + m1[i].numerator + m0[i].numerator, m2[i].denominator);

    // Oracle: direct counts by trial division.
    std::uint64_t div = 0;
    std::uint64_t all3 = 0;
    std::uint64_t minus = 0;
    for (std::int64_t p = 3; p <= c; ++p) {
      if (!slow_prime(p)) continue;
      ++all3;
      if (c % p == 0) ++div;
      if (p >= 5 && mod(c - 1, p) == 0) ++minus;
    }
    EXPECT_EQ(n3[i].numerator, div);
    EXPECT_EQ(n3[i].denominator, all3);
    EXPECT_EQ(m1[i].numerator, minus);
  }
}

TEST(DensityTable, TrendTowardZero) {
  const auto rows = stats::density_table(DensityKind::Nc3, 1, 1, {100, 1000, 10000});
  EXPECT_TRUE(*rows[1].ratio < *rows[0].ratio);
  EXPECT_TRUE(*rows[2].ratio < *rows[1].ratio);
  EXPECT_LT(rows[2].ratio->to_double(), 0.05);
}
