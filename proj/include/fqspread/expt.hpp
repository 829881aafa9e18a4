#pragma once

// Seeded, reproducible experiments. Each one samples point sets, runs a
// census and checks a concrete desk-scale assertion per trial. Trial t of a
// run seeded with s always uses derive_seed(s, t), so reports are identical
// across runs and worker counts.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fqspread/census.hpp"
#include "fqspread/construct.hpp"
#include "fqspread/error.hpp"
#include "fqspread/field.hpp"
#include "fqspread/geom.hpp"
#include "fqspread/parallel.hpp"
#include "fqspread/pointset.hpp"
#include "fqspread/random.hpp"

namespace fqs {

using Json = nlohmann::ordered_json;

// Positive rational with exact comparisons; parsed from "2", "0.5" or "3/2".
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d) {
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    return g == 0 ? Rational{0, 1} : Rational{n / g, d / g};
  }

  static Rational parse(std::string_view s) {
    auto bad = [&] { return Error(ErrorCode::ParseError, "bad rational '" + std::string(s) + "'"); };
    if (s.empty() || s.size() > 15) throw bad();
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      const Rational a = parse(s.substr(0, slash));
      const Rational b = parse(s.substr(slash + 1));
      if (a.den != 1 || b.den != 1) throw bad();
      return make(a.num, b.num);
    }
    std::int64_t n = 0, d = 1;
    bool dot = false, any = false;
    for (char ch : s) {
      if (ch == '.' && !dot) {
        dot = true;
        continue;
      }
      if (ch < '0' || ch > '9') throw bad();
      n = n * 10 + (ch - '0');
      if (dot) d *= 10;
      any = true;
    }
    if (!any) throw bad();
    return make(n, d);
  }

  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

// eps^2 / (1 + eps + eps^2)
inline Rational alpha_epsilon(const Rational& eps) {
  const std::int64_t n = eps.num, d = eps.den;
  return Rational::make(n * n, d * d + n * d + n * n);
}

inline std::uint64_t ipow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

// ceil(x * n) for rational x and integer n.
inline std::uint64_t ceil_mul(const Rational& x, std::uint64_t n) {
  const unsigned __int128 top = static_cast<unsigned __int128>(x.num) * n;
  return static_cast<std::uint64_t>((top + static_cast<std::uint64_t>(x.den) - 1) / static_cast<std::uint64_t>(x.den));
}

// ceil(c * q^{d/2}); exact for odd d via (m * den)^2 >= (num)^2 q^d.
inline std::uint64_t ceil_c_half_power(const Rational& c, std::uint64_t q, std::size_t d) {
  using u128 = unsigned __int128;
  const u128 rhs = static_cast<u128>(c.num) * static_cast<u128>(c.num) * ipow(q, d);
  std::uint64_t m = 0;
  {
    const double est = c.to_double() * std::pow(static_cast<double>(q), static_cast<double>(d) / 2.0);
    m = est > 2.0 ? static_cast<std::uint64_t>(est) - 2 : 0;
  }
  while (static_cast<u128>(m) * m * static_cast<u128>(c.den) * static_cast<u128>(c.den) < rhs) ++m;
  return m;
}

struct ExperimentReport {
  std::string name;
  std::string claim;
  Json params = Json::object();
  Json summary = Json::object();
  std::vector<Json> per_trial;
  std::vector<std::string> notes;
  bool pass = false;

  Json to_json() const {
    Json j;
    j["name"] = name;
    j["claim"] = claim;
    j["params"] = params;
    j["verdict"] = pass ? "pass" : "fail";
    j["summary"] = summary;
    j["per_trial"] = per_trial;
    j["notes"] = notes;
    return j;
  }

  // One row per trial, columns from the first trial's keys.
  std::string to_csv() const {
    std::ostringstream os;
    if (per_trial.empty()) {
      os << "name,verdict\n" << name << ',' << (pass ? "pass" : "fail") << '\n';
      return os.str();
    }
    std::vector<std::string> cols;
    for (auto it = per_trial.front().begin(); it != per_trial.front().end(); ++it) cols.push_back(it.key());
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& row : per_trial) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) os << ',';
        const auto& v = row.contains(cols[i]) ? row[cols[i]] : Json();
        os << (v.is_string() ? v.get<std::string>() : v.dump());
      }
      os << '\n';
    }
    return os.str();
  }
};

namespace detail {

// Evaluates fn(t) for t in [0, trials), results in trial order.
inline std::vector<Json> run_trials(std::uint64_t trials, unsigned workers, const std::function<Json(std::uint64_t)>& fn) {
  auto parts = parallel_chunks<std::vector<Json>>(trials, workers, {}, [&](auto& out, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t t = b; t < e; ++t) out.push_back(fn(t));
  });
  std::vector<Json> all;
  for (auto& p : parts)
    for (auto& j : p) all.push_back(std::move(j));
  return all;
}

inline bool all_ok(const std::vector<Json>& trials) {
  return std::all_of(trials.begin(), trials.end(), [](const Json& j) { return j.at("ok").get<bool>(); });
}

inline Json felts_to_json(const std::vector<Felt>& v) {
  Json a = Json::array();
  for (Felt x : v) a.push_back(x.index);
  return a;
}

}  // namespace detail

// Uniform random subset of F_q^d of the given size.
inline PointSet random_subset(const Field& F, std::size_t d, std::uint64_t size, std::uint64_t seed,
                              std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::uint64_t total = space_size(F, d, budget);
  if (size > total) throw Error(ErrorCode::TooFewPoints, "subset larger than the space");
  Rng rng(seed);
  PointSet out(F.q(), d);
  for (auto idx : sample_without_replacement(rng, total, size)) out.add(point_from_index(F, d, idx));
  return out;
}

inline PointSet random_subset_of(const Field& F, const std::vector<FVector>& pool, std::size_t d, std::uint64_t size,
                                 std::uint64_t seed) {
  if (size > pool.size()) throw Error(ErrorCode::TooFewPoints, "subset larger than the pool");
  Rng rng(seed);
  PointSet out(F.q(), d);
  for (auto idx : sample_without_replacement(rng, pool.size(), size)) out.add(pool[idx]);
  return out;
}

inline PointSet embed_with_zero(const PointSet& P) {
  PointSet out(P.q(), P.dim() + 1);
  for (const auto& v : P) {
    FVector w = v;
    w.push_back(Felt(0));
    out.add(w);
  }
  return out;
}

// Any 2q-1 points of F_q^2 determine all q spreads.
inline ExperimentReport run_bode(const Field& F, std::uint64_t trials, std::uint64_t seed, unsigned workers = 0,
                                 const std::optional<PointSet>& inject = std::nullopt) {
  ExperimentReport rep;
  rep.name = "bode";
  rep.claim = "|P| >= 2q-1 in F_q^2 => exactly q distinct spreads";
  const std::uint64_t q = F.q();
  const std::uint64_t size = 2 * q - 1;
  rep.params = {{"field", F.name()}, {"d", 2}, {"set_size", inject ? inject->size() : size},
                {"trials", inject ? 1 : trials}, {"seed", seed}, {"mode", inject ? "injected" : "random"}};
  // Every defined planar spread s has s(1-s) a square, so the whole plane
  // may determine fewer than q values; that count is recorded alongside.
  std::optional<std::uint64_t> plane_count;
  if (ipow(q, 6) <= kDefaultTripleBudget)
    plane_count = distinct_spreads(F, whole_space(F, 2), kDefaultTripleBudget, workers).defined_count;
  auto trial = [&](const PointSet& P, std::uint64_t t, std::uint64_t s) {
    const SpreadCensus c = distinct_spreads(F, P, kDefaultTripleBudget, 1);
    Json j{{"trial", t}, {"seed", s}, {"n_points", P.size()}, {"defined_count", c.defined_count},
           {"undefined_triples", c.undefined_triples}};
    if (plane_count) j["attains_plane_count"] = c.defined_count == *plane_count;
    j["ok"] = c.defined_count == q;
    return j;
  };
  if (inject) {
    if (inject->dim() != 2) throw Error(ErrorCode::DimensionMismatch, "bode experiment is planar");
    if (inject->size() < size) throw Error(ErrorCode::TooFewPoints, "injected set smaller than 2q-1");
    rep.per_trial.push_back(trial(*inject, 0, seed));
  } else {
    rep.per_trial = detail::run_trials(trials, workers, [&](std::uint64_t t) {
      const std::uint64_t s = derive_seed(seed, t);
      return trial(random_subset(F, 2, size, s), t, s);
    });
  }
  rep.pass = detail::all_ok(rep.per_trial);
  rep.summary = {{"required_count", q}};
  if (plane_count) rep.summary["plane_count"] = *plane_count;
  return rep;
}

// |P| >= (1+eps) q^{ceil(d/2)} gives many spreads; odd d goes through the
// embedding into d+1 with a zero last coordinate. In adversarial mode the
// extremal subspace set is used instead and its sharp count is asserted.
inline ExperimentReport run_threshold(const Field& F, std::size_t d, const Rational& eps, std::uint64_t trials,
                                      std::uint64_t seed, unsigned workers = 0, bool adversarial = false) {
  if (d < 2) throw Error(ErrorCode::BadDimension, "threshold experiment needs d >= 2");
  ExperimentReport rep;
  rep.name = "threshold";
  const std::uint64_t q = F.q();
  const std::size_t half = (d + 1) / 2;
  const std::uint64_t size = ceil_mul(Rational::make(eps.num + eps.den, eps.den), ipow(q, half));
  const std::uint64_t floor_count = q / 4;
  const bool odd = d % 2 == 1;
  rep.params = {{"field", F.name()}, {"d", d}, {"epsilon", eps.str()}, {"set_size", size},
                {"trials", adversarial ? 1 : trials}, {"seed", seed}, {"mode", adversarial ? "adversarial" : "random"}};
  rep.notes.push_back("count floor floor(q/4) stands in for the unspecified constant c; raw counts are recorded");

  if (adversarial) {
    rep.claim = odd ? "subspace of size q^{(d+1)/2} determines at most one spread"
                    : "totally isotropic subspace of size q^{d/2} determines no spread";
    const PointSet P = odd ? con2_set(F, d) : con1_set(F, d);
    const SpreadCensus c = distinct_spreads(F, P, kDefaultTripleBudget, workers);
    const bool sharp = odd ? c.defined_count <= 1 : c.defined_count == 0;
    rep.per_trial.push_back(Json{{"trial", 0}, {"seed", seed}, {"n_points", P.size()},
                                 {"defined_count", c.defined_count}, {"below_threshold", P.size() < size},
                                 {"ok", sharp && P.size() < size}});
    rep.summary = {{"threshold_size", size}};
    rep.pass = detail::all_ok(rep.per_trial);
    return rep;
  }

  rep.claim = "|P| >= (1+eps) q^{ceil(d/2)} => at least c*q distinct spreads";
  if (size > ipow(q, d)) throw Error(ErrorCode::TooFewPoints, "threshold set larger than F_q^d");
  rep.per_trial = detail::run_trials(trials, workers, [&](std::uint64_t t) {
    const std::uint64_t s = derive_seed(seed, t);
    PointSet P = random_subset(F, d, size, s);
    if (odd) P = embed_with_zero(P);
    const SpreadCensus c = distinct_spreads(F, P, kDefaultTripleBudget, 1);
    return Json{{"trial", t}, {"seed", s}, {"n_points", P.size()}, {"dimension_used", P.dim()},
                {"defined_count", c.defined_count}, {"ok", c.defined_count >= floor_count && c.defined_count >= 1}};
  });
  rep.summary = {{"count_floor", floor_count}, {"embedded", odd}};
  rep.pass = detail::all_ok(rep.per_trial);
  return rep;
}

// |P| >= (1+eps) q^{d-1} spans at least alpha_eps q^{2d-2} lines.
inline ExperimentReport run_beck(const Field& F, std::size_t d, const Rational& eps, std::uint64_t trials,
                                 std::uint64_t seed, unsigned workers = 0,
                                 const std::optional<PointSet>& inject = std::nullopt) {
  ExperimentReport rep;
  rep.name = "beck";
  rep.claim = "|P| >= (1+eps) q^{d-1} => at least alpha_eps q^{2d-2} spanned lines";
  const std::uint64_t q = F.q();
  const Rational alpha = alpha_epsilon(eps);
  const std::uint64_t size = ceil_mul(Rational::make(eps.num + eps.den, eps.den), ipow(q, d - 1));
  if (!inject && size > ipow(q, d)) throw Error(ErrorCode::TooFewPoints, "line experiment set larger than F_q^d");
  const std::uint64_t bound = ceil_mul(alpha, ipow(q, 2 * d - 2));
  rep.params = {{"field", F.name()}, {"d", d}, {"epsilon", eps.str()}, {"set_size", inject ? inject->size() : size},
                {"trials", inject ? 1 : trials}, {"seed", seed}, {"mode", inject ? "injected" : "random"}};
  rep.summary = {{"alpha_epsilon", alpha.str()}, {"line_bound", bound}};
  auto trial = [&](const PointSet& P, std::uint64_t t, std::uint64_t s) {
    const LineCensus c = spanned_lines(F, P, kDefaultTripleBudget, 1);
    return Json{{"trial", t}, {"seed", s}, {"n_points", P.size()}, {"lines", c.lines},
                {"max_degree", c.max_degree}, {"ok", c.lines >= bound}};
  };
  if (inject) {
    rep.per_trial.push_back(trial(*inject, 0, seed));
  } else {
    rep.per_trial = detail::run_trials(trials, workers, [&](std::uint64_t t) {
      const std::uint64_t s = derive_seed(seed, t);
      return trial(random_subset(F, d, size, s), t, s);
    });
  }
  rep.pass = detail::all_ok(rep.per_trial);
  return rep;
}

// Mean collisions of random rank-k projections against C(n,2) q^{-k},
// with 20% slack for sampling noise.
inline ExperimentReport run_projection(const Field& F, std::size_t d, std::size_t k, std::uint64_t n_points,
                                       std::uint64_t trials, std::uint64_t seed, unsigned workers = 0) {
  ExperimentReport rep;
  rep.name = "projection";
  rep.claim = "random projection to F_q^k has mean collisions < C(|P|,2) q^{-k}";
  const std::uint64_t q = F.q();
  if (k < 1 || k > d) throw Error(ErrorCode::DimensionMismatch, "projection needs 1 <= k <= d");
  if (trials == 0) throw Error(ErrorCode::TooFewPoints, "projection experiment needs at least one trial");
  const std::uint64_t set_seed = derive_seed(~seed, 0);
  const PointSet P = random_subset(F, d, n_points, set_seed);
  const std::uint64_t pairs = n_points * (n_points - (n_points ? 1 : 0)) / 2;
  rep.params = {{"field", F.name()}, {"d", d}, {"k", k}, {"n_points", n_points}, {"trials", trials},
                {"seed", seed}, {"set_seed", set_seed}};

  rep.per_trial = detail::run_trials(trials, workers, [&](std::uint64_t t) {
    const std::uint64_t s = derive_seed(seed, t);
    const CollisionResult c = project_and_count(F, P, random_projection(F, d, k, s));
    // Bonferroni: |pi(P)| >= |P| - collisions
    return Json{{"trial", t}, {"seed", s}, {"collisions", c.collisions}, {"image_size", c.image_size},
                {"ok", c.image_size + c.collisions >= n_points}};
  });

  std::uint64_t total = 0, best = UINT64_MAX, best_trial = 0, best_image = 0;
  for (const auto& j : rep.per_trial) {
    const auto c = j.at("collisions").get<std::uint64_t>();
    total += c;
    if (c < best) {
      best = c;
      best_trial = j.at("trial").get<std::uint64_t>();
      best_image = j.at("image_size").get<std::uint64_t>();
    }
  }
  const std::uint64_t qk = ipow(q, k);
  // mean <= 1.2 * pairs / q^k  <=>  10 * total * q^k <= 12 * pairs * trials
  const bool mean_ok = static_cast<unsigned __int128>(10) * total * qk <=
                       static_cast<unsigned __int128>(12) * pairs * trials;
  std::ostringstream mean;
  mean.precision(6);
  mean << std::fixed << static_cast<double>(total) / static_cast<double>(trials);
  std::ostringstream bound;
  bound.precision(6);
  bound << std::fixed << 1.2 * static_cast<double>(pairs) / static_cast<double>(qk);
  rep.summary = {{"total_collisions", total},   {"mean_collisions", mean.str()}, {"mean_bound", bound.str()},
                 {"expected_bound", Rational::make(static_cast<std::int64_t>(pairs), static_cast<std::int64_t>(qk)).str()},
                 {"min_collisions", best},      {"min_trial", best_trial},       {"min_image_size", best_image}};
  rep.pass = mean_ok && detail::all_ok(rep.per_trial);
  return rep;
}

// Extremal subspace sets: q^{d/2} points with no spread (d even), or
// q^{(d+1)/2} points with at most one (d odd).
inline ExperimentReport run_constructions(const Field& F, std::size_t d, unsigned workers = 0) {
  ExperimentReport rep;
  rep.name = "constructions";
  const bool odd = d % 2 == 1;
  rep.claim = odd ? "subspace of size q^{(d+1)/2} determines at most one spread"
                  : "totally isotropic subspace of size q^{d/2} determines no spread";
  rep.params = {{"field", F.name()}, {"d", d}, {"set", odd ? "con2" : "con1"}};
  const PointSet P = odd ? con2_set(F, d) : con1_set(F, d);
  const std::uint64_t expected_size = ipow(F.q(), odd ? (d + 1) / 2 : d / 2);
  const SpreadCensus c = distinct_spreads(F, P, kDefaultTripleBudget, workers);
  const bool count_ok = odd ? c.defined_count <= 1 : c.defined_count == 0;
  rep.per_trial.push_back(Json{{"trial", 0},
                               {"n_points", P.size()},
                               {"expected_size", expected_size},
                               {"defined_count", c.defined_count},
                               {"undefined_triples", c.undefined_triples},
                               {"triples_scanned", c.triples_scanned},
                               {"ok", count_ok && P.size() == expected_size}});
  rep.summary = {{"defined_spread_values", detail::felts_to_json(c.defined_values)}};
  rep.pass = detail::all_ok(rep.per_trial);
  return rep;
}

// Random subsets of the unit sphere of size ceil(C q^{d/2}) determine at
// least min(floor(q/2), floor(Cq/4)) nonzero distances.
inline ExperimentReport run_sphere_distance(const Field& F, std::size_t d, const Rational& C, std::uint64_t trials,
                                            std::uint64_t seed, unsigned workers = 0, bool whole_sphere = false) {
  if (d < 3) throw Error(ErrorCode::BadDimension, "sphere distance experiment needs d >= 3");
  ExperimentReport rep;
  rep.name = "sphere-distance";
  rep.claim = "|P| >= C q^{d/2} on the unit sphere => at least min(q/2, Cq/4) distances";
  const std::uint64_t q = F.q();
  const std::vector<FVector> sphere = sphere_points(F, d, F.one());
  const std::uint64_t size = whole_sphere ? sphere.size() : ceil_c_half_power(C, q, d);
  if (size > sphere.size())
    throw Error(ErrorCode::SphereTooSmall,
                "need " + std::to_string(size) + " points, unit sphere has " + std::to_string(sphere.size()));
  const std::uint64_t threshold =
      std::min<std::uint64_t>(q / 2, static_cast<std::uint64_t>(C.num) * q / (4 * static_cast<std::uint64_t>(C.den)));
  rep.params = {{"field", F.name()}, {"d", d}, {"C", C.str()}, {"set_size", size},
                {"trials", whole_sphere ? 1 : trials}, {"seed", seed}, {"mode", whole_sphere ? "whole-sphere" : "random"}};
  rep.summary = {{"sphere_size", sphere.size()}, {"distance_floor", threshold}};
  auto trial = [&](const PointSet& P, std::uint64_t t, std::uint64_t s) {
    const DistanceCensus c = distinct_distances(F, P, 1);
    return Json{{"trial", t}, {"seed", s}, {"n_points", P.size()}, {"nonzero_distances", c.nonzero_values.size()},
                {"distances_with_zero", c.values.size()}, {"ok", c.nonzero_values.size() >= threshold}};
  };
  if (whole_sphere) {
    rep.per_trial.push_back(trial(PointSet(F, d, sphere), 0, seed));
  } else {
    rep.per_trial = detail::run_trials(trials, workers, [&](std::uint64_t t) {
      const std::uint64_t s = derive_seed(seed, t);
      return trial(random_subset_of(F, sphere, d, size, s), t, s);
    });
  }
  rep.pass = detail::all_ok(rep.per_trial);
  return rep;
}

inline ExperimentReport run_sphere_equiv(const Field& F, std::size_t d, unsigned workers = 0) {
  ExperimentReport rep;
  rep.name = "sphere-equiv";
  rep.claim = "on S_1: equal spreads at the origin <=> ||a-b|| = ||c-d|| or ||a-b|| = ||c+d||";
  rep.params = {{"field", F.name()}, {"d", d}};
  const SphereEquivReport r = sphere_equiv_check(F, d, kDefaultTripleBudget, workers);
  Json bad = Json::array();
  for (const auto& v : r.violations) {
    Json quad = Json::array();
    for (const auto& p : v) quad.push_back(PointSet::format_point(p));
    bad.push_back(quad);
  }
  rep.per_trial.push_back(Json{{"trial", 0},
                               {"sphere_size", r.sphere_size},
                               {"quadruples_checked", r.quadruples_checked},
                               {"excluded_undefined", r.excluded_undefined},
                               {"violations", r.violation_count},
                               {"ok", r.violation_count == 0}});
  rep.summary = {{"violation_examples", bad}};
  rep.pass = r.violation_count == 0;
  return rep;
}

// Randomized invariance checks for the spread: arm symmetry, arm scaling,
// rigid motions, and k_spread(k=2) agreement, Undefined included.
inline ExperimentReport run_spread_properties(const Field& F, std::uint64_t cases, std::uint64_t seed,
                                              unsigned workers = 0) {
  ExperimentReport rep;
  rep.name = "spread-properties";
  rep.claim = "spread is symmetric, scale invariant, rigid-motion invariant, and equals k_spread at k=2";
  rep.params = {{"field", F.name()}, {"cases", cases}, {"seed", seed}};

  struct Tally {
    std::uint64_t symmetry = 0, scaling = 0, rigid = 0, kspread = 0, undefined_cases = 0;
  };
  auto parts = parallel_chunks<Tally>(cases, workers, Tally{}, [&](Tally& t, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) {
      Rng rng(derive_seed(seed, i));
      const std::size_t d = 2 + uniform_below(rng, 3);
      auto rand_vec = [&] {
        FVector v(d);
        for (auto& x : v) x = Felt(static_cast<std::uint32_t>(uniform_below(rng, F.q())));
        return v;
      };
      auto rand_nonzero = [&] { return Felt(static_cast<std::uint32_t>(1 + uniform_below(rng, F.q() - 1))); };
      const FVector a = rand_vec(), b = rand_vec(), c = rand_vec();
      const SpreadValue s = spread(F, a, b, c);
      if (!s.defined()) ++t.undefined_cases;

      if (spread(F, a, c, b) != s) ++t.symmetry;

      const FVector u = vsub(F, b, a), w = vsub(F, c, a);
      const Felt r = rand_nonzero(), sc = rand_nonzero();
      if (spread(F, a, vadd(F, a, vscale(F, r, u)), vadd(F, a, vscale(F, sc, w))) != s) ++t.scaling;

      const Matrix M = random_orthogonal(F, d, rng());
      const FVector z = rand_vec();
      auto move = [&](const FVector& x) { return vadd(F, apply(F, M, x), z); };
      if (!is_orthogonal(F, M) || spread(F, move(a), move(b), move(c)) != s) ++t.rigid;

      const std::vector<FVector> pts{a, b, c};
      if (k_spread(F, pts) != s) ++t.kspread;
    }
  });
  Tally sum;
  for (const auto& p : parts) {
    sum.symmetry += p.symmetry;
    sum.scaling += p.scaling;
    sum.rigid += p.rigid;
    sum.kspread += p.kspread;
    sum.undefined_cases += p.undefined_cases;
  }
  rep.per_trial = {
      Json{{"property", "symmetry"}, {"cases", cases}, {"failures", sum.symmetry}, {"ok", sum.symmetry == 0}},
      Json{{"property", "scaling"}, {"cases", cases}, {"failures", sum.scaling}, {"ok", sum.scaling == 0}},
      Json{{"property", "rigid_motion"}, {"cases", cases}, {"failures", sum.rigid}, {"ok", sum.rigid == 0}},
      Json{{"property", "k_spread_k2"}, {"cases", cases}, {"failures", sum.kspread}, {"ok", sum.kspread == 0}},
  };
  rep.summary = {{"undefined_cases", sum.undefined_cases}};
  rep.pass = detail::all_ok(rep.per_trial);
  return rep;
}

}  // namespace fqs
