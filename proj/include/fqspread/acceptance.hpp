#pragma once

// The fixed desk-scale acceptance criteria. Each criterion runs its checks,
// times itself against its wall-clock limit, and reports one result line.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fqspread/census.hpp"
#include "fqspread/construct.hpp"
#include "fqspread/expt.hpp"
#include "fqspread/field.hpp"

namespace fqs {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool checks_pass = false;
  double elapsed_s = 0.0;
  double limit_s = 0.0;
  std::vector<std::string> details;

  bool pass() const { return checks_pass && elapsed_s <= limit_s; }

  std::string line() const {
    std::string s = std::string(pass() ? "PASS" : "FAIL") + " [" + std::to_string(id) + "] " + title;
    char buf[64];
    std::snprintf(buf, sizeof buf, " (%.2fs / %.0fs)", elapsed_s, limit_s);
    return s + buf;
  }

  Json to_json() const {
    return Json{{"id", id}, {"title", title}, {"pass", pass()}, {"checks_pass", checks_pass},
                {"limit_s", limit_s}, {"details", details}};
  }
};

namespace detail {

inline CriterionResult timed(int id, std::string title, double limit_s,
                             const std::function<bool(std::vector<std::string>&)>& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.limit_s = limit_s;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.checks_pass = body(r.details);
  } catch (const std::exception& e) {
    r.checks_pass = false;
    r.details.push_back(std::string("exception: ") + e.what());
  }
  r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline bool note(std::vector<std::string>& out, bool ok, const std::string& what) {
  out.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  return ok;
}

}  // namespace detail

inline CriterionResult criterion_constructions(unsigned workers = 0) {
  return detail::timed(1, "sharpness constructions: con1 has no spread, con2 at most one", 60, [&](auto& out) {
    bool ok = true;
    for (auto [q, d] : std::vector<std::pair<int, int>>{{5, 2}, {5, 4}, {13, 2}, {3, 4}, {7, 4}, {5, 3}, {13, 3}, {3, 5}}) {
      const Field F = Field::from_order(static_cast<std::uint64_t>(q));
      const ExperimentReport r = run_constructions(F, static_cast<std::size_t>(d), workers);
      const auto& t = r.per_trial.front();
      ok &= detail::note(out, r.pass,
                         "q=" + std::to_string(q) + " d=" + std::to_string(d) + " |P|=" + t["n_points"].dump() +
                             " defined=" + t["defined_count"].dump());
    }
    return ok;
  });
}

inline CriterionResult criterion_bode(unsigned workers = 0) {
  return detail::timed(2, "2q-1 random points of F_q^2 give exactly q spreads", 120, [&](auto& out) {
    bool ok = true;
    for (int q : {3, 5, 7, 9}) {
      const Field F = Field::from_order(static_cast<std::uint64_t>(q));
      const ExperimentReport r = run_bode(F, 100, 2024 + static_cast<std::uint64_t>(q), workers);
      std::uint64_t best = 0;
      for (const auto& t : r.per_trial) best = std::max(best, t["defined_count"].get<std::uint64_t>());
      std::string plane = r.summary.contains("plane_count") ? r.summary["plane_count"].dump() : "?";
      ok &= detail::note(out, r.pass && r.per_trial.size() == 100,
                         "q=" + std::to_string(q) + " 100 trials, max count " + std::to_string(best) +
                             ", whole plane gives " + plane);
    }
    return ok;
  });
}

inline CriterionResult criterion_iso_triple() {
  return detail::timed(3, "no isotropic orthogonal triple in F_3^6; one in F_5^6 and F_3^8", 60, [&](auto& out) {
    bool ok = true;
    const Field F3 = Field::make(3, 1), F5 = Field::make(5, 1);
    ok &= detail::note(out, !search_iso_triple(F3, 6).has_value(), "F_3^6: NoneFound");
    const auto t56 = search_iso_triple(F5, 6);
    const auto fam56 = iso_family_1mod4(F5, 6);
    ok &= detail::note(out, t56 && is_valid_family(F5, *t56) && fam56.size() == 3 && is_valid_family(F5, fam56),
                       "F_5^6: triple found, (1,i) family of 3 valid");
    const auto t38 = search_iso_triple(F3, 8);
    const auto fam38 = iso_family_3mod4(F3, 8);
    ok &= detail::note(out, t38 && is_valid_family(F3, *t38) && fam38.size() == 4 && is_valid_family(F3, fam38),
                       "F_3^8: triple found, block family of 4 valid");
    return ok;
  });
}

inline CriterionResult criterion_beck(unsigned workers = 0) {
  return detail::timed(4, "2q random points of F_q^2 span >= ceil(q^2/3) lines; plane has q(q+1)", 60, [&](auto& out) {
    bool ok = true;
    const Rational one = Rational::make(1, 1);
    for (std::uint64_t q : {5u, 7u, 11u}) {
      const Field F = Field::from_order(q);
      const ExperimentReport r = run_beck(F, 2, one, 100, 77 + q, workers);
      const bool bound_ok = r.summary["line_bound"].get<std::uint64_t>() == (q * q + 2) / 3;
      ok &= detail::note(out, r.pass && bound_ok && r.per_trial.size() == 100,
                         "q=" + std::to_string(q) + " bound=" + r.summary["line_bound"].dump());
      const LineCensus plane = spanned_lines(F, whole_space(F, 2), kDefaultTripleBudget, workers);
      ok &= detail::note(out, plane.lines == q * (q + 1),
                         "q=" + std::to_string(q) + " plane lines=" + std::to_string(plane.lines));
    }
    return ok;
  });
}

inline CriterionResult criterion_projection(unsigned workers = 0) {
  return detail::timed(5, "mean projection collisions <= 14.4 (F_5, d=4, k=2, |P|=25); k=d gives 0", 30,
                       [&](auto& out) {
                         const Field F = Field::make(5, 1);
                         const ExperimentReport r = run_projection(F, 4, 2, 25, 200, 31337, workers);
                         bool ok = detail::note(out, r.pass, "k=2 mean=" + r.summary["mean_collisions"].get<std::string>());
                         const ExperimentReport ctl = run_projection(F, 4, 4, 25, 200, 31337, workers);
                         ok &= detail::note(out, ctl.pass && ctl.summary["total_collisions"].get<std::uint64_t>() == 0,
                                            "k=d total collisions=" + ctl.summary["total_collisions"].dump());
                         return ok;
                       });
}

inline CriterionResult criterion_sphere_equiv(unsigned workers = 0) {
  return detail::timed(6, "spread/distance equivalence on the unit sphere has no violations", 120, [&](auto& out) {
    bool ok = true;
    for (auto [q, d] : std::vector<std::pair<int, int>>{{5, 2}, {7, 2}, {5, 3}, {7, 3}}) {
      const Field F = Field::from_order(static_cast<std::uint64_t>(q));
      const ExperimentReport r = run_sphere_equiv(F, static_cast<std::size_t>(d), workers);
      ok &= detail::note(out, r.pass,
                         "q=" + std::to_string(q) + " d=" + std::to_string(d) +
                             " checked=" + r.per_trial.front()["quadruples_checked"].dump());
    }
    return ok;
  });
}

inline CriterionResult criterion_properties(unsigned workers = 0) {
  return detail::timed(7, "spread symmetry, scaling, rigid motion, k=2 agreement (10000 cases/field)", 60,
                       [&](auto& out) {
                         bool ok = true;
                         for (int q : {5, 7, 9, 13}) {
                           const Field F = Field::from_order(static_cast<std::uint64_t>(q));
                           const ExperimentReport r = run_spread_properties(F, 10000, 99 + static_cast<std::uint64_t>(q), workers);
                           ok &= detail::note(out, r.pass,
                                              "q=" + std::to_string(q) +
                                                  " undefined cases=" + r.summary["undefined_cases"].dump());
                         }
                         return ok;
                       });
}

inline CriterionResult criterion_sphere_distance(unsigned workers = 0) {
  return detail::timed(8, "random 2q^{3/2} subsets of S_1 in F_q^3 meet the distance floor", 60, [&](auto& out) {
    bool ok = true;
    for (std::uint64_t q : {5u, 7u}) {
      const Field F = Field::from_order(q);
      const ExperimentReport r = run_sphere_distance(F, 3, Rational::make(2, 1), 20, 555 + q, workers);
      ok &= detail::note(out, r.pass && r.per_trial.size() == 20,
                         "q=" + std::to_string(q) + " floor=" + r.summary["distance_floor"].dump() +
                             " size=" + r.params["set_size"].dump());
    }
    return ok;
  });
}

inline CriterionResult criterion_reproducibility() {
  return detail::timed(9, "identical seeds give identical reports; censuses ignore worker count", 120, [&](auto& out) {
    bool ok = true;
    const Field F5 = Field::make(5, 1), F9 = Field::make(3, 2);
    const Rational half = Rational::make(1, 2), one = Rational::make(1, 1), two = Rational::make(2, 1);
    const std::vector<std::pair<std::string, std::function<ExperimentReport(unsigned)>>> runs{
        {"bode", [&](unsigned w) { return run_bode(F9, 20, 7, w); }},
        {"threshold", [&](unsigned w) { return run_threshold(F5, 3, half, 5, 7, w); }},
        {"beck", [&](unsigned w) { return run_beck(F5, 2, one, 20, 7, w); }},
        {"projection", [&](unsigned w) { return run_projection(F5, 4, 2, 25, 50, 7, w); }},
        {"constructions", [&](unsigned w) { return run_constructions(F5, 3, w); }},
        {"sphere-distance", [&](unsigned w) { return run_sphere_distance(F5, 3, two, 5, 7, w); }},
        {"sphere-equiv", [&](unsigned w) { return run_sphere_equiv(F5, 2, w); }},
    };
    for (const auto& [name, run] : runs) {
      const std::string a = run(1).to_json().dump();
      const std::string b = run(1).to_json().dump();
      const std::string c = run(4).to_json().dump();
      ok &= detail::note(out, a == b && a == c, name + ": byte-identical across reruns and worker counts");
    }
    const PointSet P = random_subset(F5, 3, 40, 11);
    const SpreadCensus s1 = distinct_spreads(F5, P, kDefaultTripleBudget, 1);
    const SpreadCensus s4 = distinct_spreads(F5, P, kDefaultTripleBudget, 4);
    const LineCensus l1 = spanned_lines(F5, P, kDefaultTripleBudget, 1);
    const LineCensus l4 = spanned_lines(F5, P, kDefaultTripleBudget, 4);
    ok &= detail::note(out,
                       s1.defined_values == s4.defined_values && s1.undefined_triples == s4.undefined_triples &&
                           l1.lines == l4.lines && l1.degrees == l4.degrees,
                       "census results equal for 1 and 4 workers");
    return ok;
  });
}

inline std::vector<CriterionResult> run_acceptance(unsigned workers = 0) {
  return {criterion_constructions(workers), criterion_bode(workers),        criterion_iso_triple(),
          criterion_beck(workers),          criterion_projection(workers),  criterion_sphere_equiv(workers),
          criterion_properties(workers),    criterion_sphere_distance(workers), criterion_reproducibility()};
}

}  // namespace fqs
