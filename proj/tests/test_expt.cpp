#include <gtest/gtest.h>

#include <cmath>

#include "fqspread/expt.hpp"

using namespace fqs;

namespace {

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

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("2").str(), "2");
  EXPECT_EQ(Rational::parse("0.5").str(), "1/2");
  EXPECT_EQ(Rational::parse("3/2").str(), "3/2");
  EXPECT_EQ(Rational::parse("6/4").str(), "3/2");
  EXPECT_DOUBLE_EQ(Rational::parse("1.25").to_double(), 1.25);
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "1/2/3"})
    EXPECT_EQ(code_of([&] { Rational::parse(bad); }), ErrorCode::ParseError) << bad;
}

TEST(Alpha, Values) {
  // brute oracle: eps^2 / (1 + eps + eps^2) in doubles
  for (auto [n, d, want] : std::vector<std::tuple<int, int, std::string>>{
           {1, 2, "1/7"}, {1, 1, "1/3"}, {2, 1, "4/7"}, {4, 1, "16/21"}}) {
    const Rational a = alpha_epsilon(Rational::make(n, d));
    EXPECT_EQ(a.str(), want);
    const double e = static_cast<double>(n) / d;
    EXPECT_NEAR(a.to_double(), e * e / (1 + e + e * e), 1e-12);
  }
}

TEST(Ceil, HalfPowersAreExact) {
  for (std::uint64_t q : {3u, 5u, 7u, 9u, 11u, 13u})
    for (std::size_t d : {2u, 3u, 4u, 5u})
      for (auto c : {Rational::make(1, 1), Rational::make(2, 1), Rational::make(3, 2)}) {
        const double x = c.to_double() * std::pow(static_cast<double>(q), d / 2.0);
        EXPECT_EQ(ceil_c_half_power(c, q, d), static_cast<std::uint64_t>(std::ceil(x - 1e-9))) << q << " " << d;
      }
  EXPECT_EQ(ceil_c_half_power(Rational::make(2, 1), 5, 3), 23u);
  EXPECT_EQ(ceil_c_half_power(Rational::make(2, 1), 7, 3), 38u);
  EXPECT_EQ(ceil_mul(Rational::make(3, 2), 25), 38u);
}

TEST(Threshold, RandomEvenDimension) {
  const ExperimentReport r = run_threshold(Field::make(5, 1), 4, Rational::make(1, 2), 3, 1);
  EXPECT_EQ(r.params["set_size"], 38);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.per_trial.size(), 3u);
}

TEST(Threshold, OddDimensionIsEmbedded) {
  const ExperimentReport r = run_threshold(Field::make(5, 1), 3, Rational::make(1, 2), 3, 1);
  EXPECT_EQ(r.params["set_size"], 38);
  for (const auto& t : r.per_trial) EXPECT_EQ(t["dimension_used"], 4);
  EXPECT_TRUE(r.summary["embedded"].get<bool>());
}

TEST(Threshold, AdversarialSetsSitBelowTheThreshold) {
  for (std::size_t d : {2u, 3u, 4u}) {
    const ExperimentReport r = run_threshold(Field::make(5, 1), d, Rational::make(1, 2), 1, 1, 0, true);
    EXPECT_TRUE(r.pass) << r.to_json().dump();
    EXPECT_TRUE(r.per_trial.front()["below_threshold"].get<bool>());
  }
}

TEST(Beck, PlaneBoundAndPass) {
  const ExperimentReport r = run_beck(Field::make(5, 1), 2, Rational::make(1, 1), 10, 3);
  EXPECT_EQ(r.summary["line_bound"], 9);
  EXPECT_EQ(r.summary["alpha_epsilon"], "1/3");
  EXPECT_EQ(r.params["set_size"], 10);
  EXPECT_TRUE(r.pass);
}

TEST(Beck, InjectedCollinearSetFails) {
  const Field F = Field::make(5, 1);
  std::vector<FVector> pts;
  for (std::uint32_t x = 0; x < 5; ++x) pts.push_back({Felt(x), Felt(0)});
  const ExperimentReport r = run_beck(F, 2, Rational::make(1, 1), 1, 3, 0, PointSet(F, 2, pts));
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.per_trial.front()["lines"], 1);
}

TEST(Bode, InjectedWholeLineFailsAndPlaneCountIsRecorded) {
  const Field F = Field::make(3, 1);
  const ExperimentReport ok = run_bode(F, 10, 5);
  EXPECT_TRUE(ok.pass);
  EXPECT_EQ(ok.summary["plane_count"], 3);
  std::vector<FVector> pts;
  for (std::uint32_t x = 0; x < 3; ++x) pts.push_back({Felt(x), Felt(0)});
  for (std::uint32_t y = 1; y < 3; ++y) pts.push_back({Felt(0), Felt(y)});
  const ExperimentReport r = run_bode(F, 1, 5, 0, PointSet(F, 2, pts));
  EXPECT_EQ(r.per_trial.size(), 1u);
  EXPECT_EQ(r.params["mode"], "injected");
}

TEST(Projection, ReportFields) {
  const ExperimentReport r = run_projection(Field::make(5, 1), 4, 2, 25, 50, 9);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.summary["expected_bound"], "12");
  EXPECT_EQ(r.summary["mean_bound"], "14.400000");
  EXPECT_EQ(code_of([] { run_projection(Field::make(5, 1), 4, 5, 25, 5, 9); }), ErrorCode::DimensionMismatch);
}

TEST(SphereDistance, FloorsAndSizes) {
  const ExperimentReport r5 = run_sphere_distance(Field::make(5, 1), 3, Rational::make(2, 1), 5, 1);
  EXPECT_EQ(r5.params["set_size"], 23);
  EXPECT_EQ(r5.summary["distance_floor"], 2);
  EXPECT_EQ(r5.summary["sphere_size"], 30);
  EXPECT_TRUE(r5.pass);
  const ExperimentReport r7 = run_sphere_distance(Field::make(7, 1), 3, Rational::make(1, 1), 5, 1);
  EXPECT_EQ(r7.summary["distance_floor"], 1);
  const ExperimentReport whole = run_sphere_distance(Field::make(7, 1), 3, Rational::make(1, 1), 5, 1, 0, true);
  EXPECT_EQ(whole.params["set_size"], 42);
  EXPECT_EQ(code_of([] { run_sphere_distance(Field::make(5, 1), 3, Rational::make(3, 1), 5, 1); }),
            ErrorCode::SphereTooSmall);
}

TEST(Constructions, Reports) {
  const ExperimentReport r = run_constructions(Field::make(5, 1), 3);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.params["set"], "con2");
  EXPECT_EQ(r.per_trial.front()["n_points"], 25);
}

TEST(Report, JsonKeysAndCsv) {
  const ExperimentReport r = run_beck(Field::make(5, 1), 2, Rational::make(1, 1), 3, 3);
  std::vector<std::string> keys;
  const Json j = r.to_json();
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"name", "claim", "params", "verdict", "summary", "per_trial", "notes"}));
  const std::string csv = r.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "trial,seed,n_points,lines,max_degree,ok");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(Report, SeedsReproduce) {
  const Field F = Field::make(7, 1);
  EXPECT_EQ(run_bode(F, 5, 11, 1).to_json().dump(), run_bode(F, 5, 11, 3).to_json().dump());
  EXPECT_NE(run_bode(F, 5, 11).to_json().dump(), run_bode(F, 5, 12).to_json().dump());
}

TEST(Properties, HoldOnSmallFields) {
  for (std::uint64_t q : {3u, 5u, 9u, 27u}) {
    const ExperimentReport r = run_spread_properties(Field::from_order(q), 500, q);
    EXPECT_TRUE(r.pass) << r.to_json().dump();
  }
}
