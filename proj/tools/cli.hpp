#pragma once

// Command-line front end. run_cli() is the whole program; main() only
// forwards argv and the standard streams, so tests can drive it in-process.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fqspread/fqspread.hpp"

namespace fqs::cli {

struct CliConfig {
  std::string field;
  std::size_t d = 2;
  std::uint64_t seed = 0;
  std::uint64_t budget = 100'000'000;
  std::string format = "json";
  std::string out;
  unsigned workers = 0;
  bool timing = false;

  // spread eval
  std::string apex, arm_b, arm_c;
  // files
  std::string points;
  // census occurrences, sphere
  std::uint64_t gamma = 0;
  std::uint64_t t = 1;
  // experiments
  std::string epsilon = "1";
  std::string C = "2";
  std::uint64_t trials = 0;
  std::size_t k = 2;
  std::uint64_t n_points = 0;
  bool adversarial = false;
  bool whole = false;
  std::string inject;
};

namespace detail {

inline Field require_field(const CliConfig& cfg) {
  if (cfg.field.empty()) throw Error(ErrorCode::ParseError, "--field is required");
  return Field::parse(cfg.field);
}

inline PointSet load_points(const CliConfig& cfg) {
  if (cfg.points.empty()) throw Error(ErrorCode::ParseError, "--points is required");
  std::ifstream in(cfg.points);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + cfg.points + "'");
  return read_point_set(in);
}

// Field for a loaded point set: --field when given (must agree), else from q.
inline Field field_for(const CliConfig& cfg, const PointSet& P) {
  if (cfg.field.empty()) return Field::from_order(P.q());
  Field F = Field::parse(cfg.field);
  if (F.q() != P.q())
    throw Error(ErrorCode::DimensionMismatch,
                "--field " + cfg.field + " does not match point file q=" + std::to_string(P.q()));
  return F;
}

inline std::string felt_list_csv(const char* header, const std::vector<Felt>& values) {
  std::string s = std::string(header) + "\n";
  for (Felt v : values) s += std::to_string(v.index) + "\n";
  return s;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Spreads, distances and extremal constructions over F_q^d", "fqspread"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--field", cfg.field, "field as p^r, e.g. 5^1 or 3^2");
  app.add_option("--d", cfg.d, "dimension");
  app.add_option("--seed", cfg.seed, "master seed")->envname("FQSPREAD_SEED");
  app.add_option("--budget", cfg.budget, "enumeration cap")->envname("FQSPREAD_BUDGET");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--workers", cfg.workers, "worker threads (0 = hardware)");
  app.add_flag("--timing", cfg.timing, "include elapsed_ms in census output");

  std::function<std::string()> action;
  int status_on_fail = 0;  // experiments set this when the verdict fails

  auto* field_cmd = app.add_subcommand("field", "field information")->require_subcommand(1);
  field_cmd->add_subcommand("info", "describe the field and element encoding")->callback([&] {
    action = [&] {
      const Field F = detail::require_field(cfg);
      Json j{{"field", F.name()}, {"p", F.p()}, {"r", F.r()}, {"q", F.q()}, {"modulus", F.modulus()},
             {"q_mod_4", F.q_mod_4()}, {"minus_one_is_square", F.is_square(F.minus_one())},
             {"encoding", "element index = sum c_i p^i encodes sum c_i a^i, a a root of the modulus (c_0 first)"}};
      return j.dump(2) + "\n";
    };
  });

  auto* spread_cmd = app.add_subcommand("spread", "single spread evaluation")->require_subcommand(1);
  auto* spread_eval = spread_cmd->add_subcommand("eval", "spread at --apex between --b and --c");
  spread_eval->add_option("--apex", cfg.apex)->required();
  spread_eval->add_option("--b", cfg.arm_b)->required();
  spread_eval->add_option("--c", cfg.arm_c)->required();
  spread_eval->callback([&] {
    action = [&] {
      const Field F = detail::require_field(cfg);
      const FVector a = parse_point(cfg.apex, F.q(), cfg.d);
      const FVector b = parse_point(cfg.arm_b, F.q(), cfg.d);
      const FVector c = parse_point(cfg.arm_c, F.q(), cfg.d);
      return spread(F, a, b, c).to_string() + "\n";
    };
  });

  auto* kspread_cmd = app.add_subcommand("kspread", "higher-order spread")->require_subcommand(1);
  auto* kspread_eval = kspread_cmd->add_subcommand("eval", "k-spread of the k+1 points in --points");
  kspread_eval->add_option("--points", cfg.points)->required();
  kspread_eval->callback([&] {
    action = [&] {
      const PointSet P = detail::load_points(cfg);
      const Field F = detail::field_for(cfg, P);
      return k_spread(F, P.points()).to_string() + "\n";
    };
  });

  auto* construct_cmd = app.add_subcommand("construct", "extremal point sets")->require_subcommand(1);
  construct_cmd->add_subcommand("con1", "totally isotropic subspace of size q^{d/2}")->callback([&] {
    action = [&] {
      const Field F = detail::require_field(cfg);
      std::ostringstream os;
      write_point_set(os, con1_set(F, cfg.d, cfg.budget));
      return os.str();
    };
  });
  construct_cmd->add_subcommand("con2", "subspace of size q^{(d+1)/2} with at most one spread")->callback([&] {
    action = [&] {
      const Field F = detail::require_field(cfg);
      std::ostringstream os;
      write_point_set(os, con2_set(F, cfg.d, cfg.budget));
      return os.str();
    };
  });
  construct_cmd->add_subcommand("iso", "mutually orthogonal isotropic family of d/2 vectors")->callback([&] {
    action = [&] {
      const Field F = detail::require_field(cfg);
      const IsotropicFamily fam = F.q_mod_4() == 1 ? iso_family_1mod4(F, cfg.d) : iso_family_3mod4(F, cfg.d);
      std::ostringstream os;
      write_point_set(os, PointSet(F, cfg.d, fam.vectors));
      return os.str();
    };
  });

  auto* census_cmd = app.add_subcommand("census", "exhaustive counts over a point-set file")->require_subcommand(1);
  census_cmd->add_option("--points", cfg.points, "point-set file");
  auto census_action = [&](const std::string& kind) {
    return [&, kind] {
      action = [&, kind] {
        const PointSet P = detail::load_points(cfg);
        const Field F = detail::field_for(cfg, P);
        const auto t0 = std::chrono::steady_clock::now();
        Json j{{"field", F.name()}, {"d", P.dim()}, {"n_points", P.size()}};
        std::string csv;
        if (kind == "spreads") {
          const SpreadCensus c = distinct_spreads(F, P, cfg.budget, cfg.workers);
          j["defined_spread_values"] = fqs::detail::felts_to_json(c.defined_values);
          j["defined_count"] = c.defined_count;
          j["undefined_triples"] = c.undefined_triples;
          j["triples_scanned"] = c.triples_scanned;
          csv = detail::felt_list_csv("spread", c.defined_values);
        } else if (kind == "distances") {
          const DistanceCensus c = distinct_distances(F, P, cfg.workers);
          j["distance_values"] = fqs::detail::felts_to_json(c.values);
          j["nonzero_distance_values"] = fqs::detail::felts_to_json(c.nonzero_values);
          j["pairs"] = c.pairs;
          csv = detail::felt_list_csv("distance", c.values);
        } else if (kind == "lines") {
          const LineCensus c = spanned_lines(F, P, cfg.budget, cfg.workers);
          j["lines"] = c.lines;
          j["max_degree"] = c.max_degree;
          csv = "lines,max_degree\n" + std::to_string(c.lines) + "," + std::to_string(c.max_degree) + "\n";
        } else {
          const Felt gamma = F.elem(cfg.gamma);
          const std::uint64_t n = spread_occurrences(F, P, gamma, cfg.budget, cfg.workers);
          j["gamma"] = gamma.index;
          j["occurrences"] = n;
          csv = "gamma,occurrences\n" + std::to_string(gamma.index) + "," + std::to_string(n) + "\n";
        }
        if (cfg.timing)
          j["elapsed_ms"] =
              std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
        return cfg.format == "csv" ? csv : j.dump(2) + "\n";
      };
    };
  };
  census_cmd->add_subcommand("spreads", "distinct spreads")->callback(census_action("spreads"));
  census_cmd->add_subcommand("distances", "distinct distances")->callback(census_action("distances"));
  census_cmd->add_subcommand("lines", "spanned lines and max point degree")->callback(census_action("lines"));
  auto* occ = census_cmd->add_subcommand("occurrences", "ordered triples with spread --gamma");
  occ->add_option("--gamma", cfg.gamma)->required();
  occ->callback(census_action("occurrences"));

  auto* search_cmd = app.add_subcommand("search", "exhaustive searches")->require_subcommand(1);
  search_cmd->add_subcommand("iso-triple", "three orthogonal independent isotropic vectors")->callback([&] {
    action = [&] {
      const Field F = detail::require_field(cfg);
      const auto fam = search_iso_triple(F, cfg.d, cfg.budget);
      if (!fam) return std::string("NoneFound\n");
      std::ostringstream os;
      write_point_set(os, PointSet(F, cfg.d, fam->vectors));
      return os.str();
    };
  });

  auto* sphere_cmd = app.add_subcommand("sphere", "points with ||x|| = --t");
  sphere_cmd->add_option("--t", cfg.t, "radius as an element index");
  sphere_cmd->callback([&] {
    action = [&] {
      const Field F = detail::require_field(cfg);
      std::ostringstream os;
      write_point_set(os, PointSet(F, cfg.d, sphere_points(F, cfg.d, F.elem(cfg.t), cfg.budget)));
      return os.str();
    };
  });

  auto* exp_cmd = app.add_subcommand("experiment", "seeded experiments")->require_subcommand(1);
  exp_cmd->add_option("--epsilon", cfg.epsilon, "epsilon as decimal or p/q");
  exp_cmd->add_option("--trials", cfg.trials, "trial count (0 = experiment default)");
  exp_cmd->add_option("--k", cfg.k, "projection target dimension");
  exp_cmd->add_option("--C", cfg.C, "sphere size constant");
  exp_cmd->add_option("--n", cfg.n_points, "projection set size (0 = q^k)");
  exp_cmd->add_flag("--adversarial", cfg.adversarial, "threshold: use the extremal construction");
  exp_cmd->add_flag("--whole", cfg.whole, "sphere-distance: use all of S_1");
  exp_cmd->add_option("--inject", cfg.inject, "bode/beck: point-set file used as the single trial");

  auto report_action = [&](std::function<ExperimentReport()> run) {
    return [&, run] {
      action = [&, run] {
        const ExperimentReport r = run();
        if (!r.pass) status_on_fail = 1;
        return cfg.format == "csv" ? r.to_csv() : r.to_json().dump(2) + "\n";
      };
    };
  };
  auto trials_or = [&](std::uint64_t dflt) { return cfg.trials ? cfg.trials : dflt; };
  auto injected = [&]() -> std::optional<PointSet> {
    if (cfg.inject.empty()) return std::nullopt;
    std::ifstream in(cfg.inject);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + cfg.inject + "'");
    return read_point_set(in);
  };

  exp_cmd->add_subcommand("bode", "2q-1 planar points give all spreads")->callback(report_action([&] {
    return run_bode(detail::require_field(cfg), trials_or(100), cfg.seed, cfg.workers, injected());
  }));
  exp_cmd->add_subcommand("threshold", "spread count above (1+eps) q^{ceil(d/2)}")->callback(report_action([&] {
    return run_threshold(detail::require_field(cfg), cfg.d, Rational::parse(cfg.epsilon), trials_or(20), cfg.seed,
                         cfg.workers, cfg.adversarial);
  }));
  exp_cmd->add_subcommand("beck", "spanned-line lower bound")->callback(report_action([&] {
    return run_beck(detail::require_field(cfg), cfg.d, Rational::parse(cfg.epsilon), trials_or(100), cfg.seed,
                    cfg.workers, injected());
  }));
  exp_cmd->add_subcommand("projection", "random projection collisions")->callback(report_action([&] {
    const Field F = detail::require_field(cfg);
    const std::uint64_t n = cfg.n_points ? cfg.n_points : ipow(F.q(), cfg.k);
    return run_projection(F, cfg.d, cfg.k, n, trials_or(200), cfg.seed, cfg.workers);
  }));
  exp_cmd->add_subcommand("constructions", "extremal constructions census")->callback(report_action([&] {
    return run_constructions(detail::require_field(cfg), cfg.d, cfg.workers);
  }));
  exp_cmd->add_subcommand("sphere-distance", "distance floor on the unit sphere")->callback(report_action([&] {
    return run_sphere_distance(detail::require_field(cfg), cfg.d, Rational::parse(cfg.C), trials_or(20), cfg.seed,
                               cfg.workers, cfg.whole);
  }));
  exp_cmd->add_subcommand("sphere-equiv", "spread/distance equivalence on S_1")->callback(report_action([&] {
    return run_sphere_equiv(detail::require_field(cfg), cfg.d, cfg.workers);
  }));
  exp_cmd->add_subcommand("all", "the full acceptance suite")->callback([&] {
    action = [&] {
      const auto results = run_acceptance(cfg.workers);
      bool all_pass = true;
      Json crit = Json::array();
      std::string csv = "id,verdict,title\n";
      for (const auto& r : results) {
        all_pass = all_pass && r.pass();
        crit.push_back(r.to_json());
        csv += std::to_string(r.id) + "," + (r.pass() ? "pass" : "fail") + "," + r.title + "\n";
      }
      if (!all_pass) status_on_fail = 1;
      Json j{{"name", "all"}, {"verdict", all_pass ? "pass" : "fail"}, {"criteria", crit}};
      return cfg.format == "csv" ? csv : j.dump(2) + "\n";
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string text = action();
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + cfg.out + "'");
      f << text;
    }
  } catch (const Error& e) {
    err << "ERROR " << error_name(e.code()) << '\n' << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "ERROR " << error_name(ErrorCode::InternalError) << '\n' << e.what() << '\n';
    return 1;
  }
  return status_on_fail;
}

}  // namespace fqs::cli
