#include <gtest/gtest.h>

#include "fqspread/census.hpp"
#include "fqspread/construct.hpp"
#include "fqspread/expt.hpp"
#include "oracle.hpp"

using namespace fqs;

namespace {

FVector vec(std::initializer_list<std::uint32_t> xs) {
  FVector v;
  for (auto x : xs) v.push_back(Felt(x));
  return v;
}

std::vector<oracle::Vec> to_long(const PointSet& P) {
  std::vector<oracle::Vec> out;
  for (const auto& v : P) {
    oracle::Vec w;
    for (Felt x : v) w.push_back(x.index);
    out.push_back(w);
  }
  return out;
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

}  // namespace

TEST(Family, OneModFourExamples) {
  const Field F = Field::make(5, 1);
  EXPECT_EQ(iso_family_1mod4(F, 2).vectors, std::vector<FVector>{vec({1, 2})});
  const IsotropicFamily f4 = iso_family_1mod4(F, 4);
  EXPECT_EQ(f4.vectors, (std::vector<FVector>{vec({1, 2, 0, 0}), vec({0, 0, 1, 2})}));
  EXPECT_TRUE(is_valid_family(F, f4));
  EXPECT_EQ(code_of([&] { iso_family_1mod4(Field::make(7, 1), 2); }), ErrorCode::BadResidue);
  EXPECT_EQ(code_of([&] { iso_family_1mod4(F, 3); }), ErrorCode::OddDimension);
}

TEST(Family, ThreeModFourExamples) {
  const Field F3 = Field::make(3, 1);
  EXPECT_EQ(iso_family_3mod4(F3, 4).vectors, (std::vector<FVector>{vec({1, 1, 1, 0}), vec({0, 2, 1, 1})}));
  const Field F7 = Field::make(7, 1);
  const IsotropicFamily f7 = iso_family_3mod4(F7, 4);
  EXPECT_EQ(f7.vectors, (std::vector<FVector>{vec({1, 2, 3, 0}), vec({0, 4, 2, 1})}));
  EXPECT_TRUE(is_valid_family(F7, f7));
  EXPECT_EQ(code_of([&] { iso_family_3mod4(F3, 6); }), ErrorCode::BadDimension);
  EXPECT_EQ(code_of([&] { iso_family_3mod4(Field::make(5, 1), 4); }), ErrorCode::BadResidue);
}

TEST(Family, ValidAcrossFieldsAndDimensions) {
  for (std::uint64_t q : {3u, 5u, 7u, 9u, 11u, 13u, 25u, 27u})
    for (std::size_t d : {2u, 4u, 6u, 8u}) {
      const Field F = Field::from_order(q);
      if (F.q_mod_4() == 3 && d % 4 != 0) {
        EXPECT_EQ(code_of([&] { half_dimension_family(F, d); }), ErrorCode::BadDimension);
        continue;
      }
      const IsotropicFamily fam = half_dimension_family(F, d);
      EXPECT_EQ(fam.size(), d / 2);
      EXPECT_TRUE(is_valid_family(F, fam)) << "q=" << q << " d=" << d;
    }
}

TEST(Family, InvalidFamiliesRejected) {
  const Field F = Field::make(5, 1);
  EXPECT_FALSE(is_valid_family(F, IsotropicFamily{{vec({1, 0})}}));
  EXPECT_FALSE(is_valid_family(F, IsotropicFamily{{vec({1, 2}), vec({2, 4})}}));
  EXPECT_FALSE(is_valid_family(F, IsotropicFamily{{vec({1, 2, 0, 0}), vec({1, 3, 0, 0})}}));
}

TEST(Span, OrderAndErrors) {
  const Field F = Field::make(3, 1);
  const PointSet S = span(F, 2, {vec({1, 0}), vec({0, 1})});
  ASSERT_EQ(S.size(), 9u);
  EXPECT_EQ(S[0], vec({0, 0}));
  EXPECT_EQ(S[1], vec({0, 1}));
  EXPECT_EQ(S[3], vec({1, 0}));
  EXPECT_EQ(S[8], vec({2, 2}));
  EXPECT_EQ(code_of([&] { span(F, 2, {vec({1, 1}), vec({2, 2})}); }), ErrorCode::DependentInput);
  EXPECT_EQ(code_of([&] { span(F, 2, {vec({1, 1, 0})}); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([&] { span(Field::make(5, 1), 4, {vec({1, 0, 0, 0}), vec({0, 1, 0, 0})}, 10); }),
            ErrorCode::BudgetExceeded);
}

TEST(Con1, SizeAndNoDefinedSpread) {
  for (auto [q, d] : std::vector<std::pair<std::uint64_t, std::size_t>>{{5, 2}, {13, 2}, {5, 4}, {3, 4}, {9, 2}}) {
    const Field F = Field::from_order(q);
    const PointSet P = con1_set(F, d);
    EXPECT_EQ(P.size(), ipow(q, d / 2));
    const SpreadCensus c = distinct_spreads(F, P);
    EXPECT_EQ(c.defined_count, 0u) << "q=" << q << " d=" << d;
    EXPECT_EQ(c.undefined_triples, P.size() * (P.size() - 1) * (P.size() - 2));
  }
}

TEST(Con1, OracleCensusOnPrimeFields) {
  for (auto [p, d] : std::vector<std::pair<long, std::size_t>>{{5, 2}, {5, 4}, {3, 4}}) {
    const Field F = Field::make(static_cast<std::uint32_t>(p), 1);
    const oracle::SpreadTally t = oracle::spread_census(to_long(con1_set(F, d)), p);
    EXPECT_TRUE(t.values.empty());
  }
  const oracle::SpreadTally t = oracle::spread_census(to_long(con1_set(Field::make(5, 1), 2)), 5);
  EXPECT_EQ(t.undefined, 60);
}

TEST(Con2, SizeAndAtMostOneSpread) {
  for (auto [q, d] : std::vector<std::pair<std::uint64_t, std::size_t>>{{5, 3}, {13, 3}, {3, 5}, {9, 3}, {5, 5}}) {
    const Field F = Field::from_order(q);
    const PointSet P = con2_set(F, d);
    EXPECT_EQ(P.size(), ipow(q, (d + 1) / 2));
    const SpreadCensus c = distinct_spreads(F, P);
    EXPECT_LE(c.defined_count, 1u) << "q=" << q << " d=" << d;
  }
}

TEST(Con2, OracleSeesTheSingleValueZero) {
  for (auto [p, d] : std::vector<std::pair<long, std::size_t>>{{5, 3}, {3, 5}}) {
    const Field F = Field::make(static_cast<std::uint32_t>(p), 1);
    const oracle::SpreadTally t = oracle::spread_census(to_long(con2_set(F, d)), p);
    EXPECT_EQ(t.values, std::set<long>{0});
  }
}

TEST(Con2, Errors) {
  EXPECT_EQ(code_of([] { con2_set(Field::make(7, 1), 3); }), ErrorCode::BadResidue);
  EXPECT_EQ(code_of([] { con2_set(Field::make(5, 1), 4); }), ErrorCode::BadDimension);
  EXPECT_EQ(code_of([] { con2_set(Field::make(5, 1), 1); }), ErrorCode::BadDimension);
}
