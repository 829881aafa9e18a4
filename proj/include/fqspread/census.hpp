#pragma once

// Exhaustive counting engines over point sets: distinct spreads, distances,
// spanned lines, spread occurrences, projection collisions, and the
// exhaustive searches behind the construction checks.
//
// Sweeps split their outer index range across workers; every worker keeps
// local tallies that are merged in chunk order, so results do not depend on
// the worker count.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fqspread/construct.hpp"
#include "fqspread/error.hpp"
#include "fqspread/field.hpp"
#include "fqspread/geom.hpp"
#include "fqspread/linalg.hpp"
#include "fqspread/parallel.hpp"
#include "fqspread/pointset.hpp"
#include "fqspread/random.hpp"

namespace fqs {

inline constexpr std::uint64_t kDefaultTripleBudget = 1'000'000'000;

struct SpreadCensus {
  std::vector<Felt> defined_values;  // sorted by index
  std::uint64_t defined_count = 0;
  std::uint64_t undefined_triples = 0;
  std::uint64_t triples_scanned = 0;
};

struct DistanceCensus {
  std::vector<Felt> values;          // over unordered pairs, including 0
  std::vector<Felt> nonzero_values;  // same set without 0
  std::uint64_t pairs = 0;
};

struct LineCensus {
  std::uint64_t lines = 0;
  std::uint64_t max_degree = 0;
  std::vector<std::uint64_t> degrees;  // spanned lines through each point of P
};

namespace detail {

inline void require_field(const Field& F, const PointSet& P) {
  if (P.q() != F.q())
    throw Error(ErrorCode::DimensionMismatch,
                "point set over q=" + std::to_string(P.q()) + " used with field q=" + std::to_string(F.q()));
}

inline void require_points(const PointSet& P, std::size_t at_least) {
  if (P.size() < at_least)
    throw Error(ErrorCode::TooFewPoints,
                "need at least " + std::to_string(at_least) + " points, got " + std::to_string(P.size()));
}

inline void require_budget(std::uint64_t work, std::uint64_t budget, const char* what) {
  if (work > budget)
    throw Error(ErrorCode::BudgetExceeded,
                std::string(what) + " needs " + std::to_string(work) + " steps, budget is " + std::to_string(budget));
}

inline std::uint64_t ordered_triples(std::uint64_t n) { return n * (n - 1) * (n - 2); }

// Calls visit(state, value) once per unordered arm pair {b, c} at every apex
// a; each visit stands for the two ordered triples (a,b,c) and (a,c,b),
// which share a value by symmetry.
template <typename State, typename Visit>
std::vector<State> sweep_apex_pairs(const Field& F, const PointSet& P, unsigned workers, const State& init,
                                    Visit visit) {
  const std::size_t n = P.size();
  return parallel_chunks<State>(n, workers, init, [&](State& st, std::uint64_t begin, std::uint64_t end) {
    std::vector<FVector> arms;
    std::vector<Felt> norms;
    arms.reserve(n);
    norms.reserve(n);
    for (std::uint64_t a = begin; a < end; ++a) {
      arms.clear();
      norms.clear();
      for (std::size_t i = 0; i < n; ++i) {
        if (i == a) continue;
        arms.push_back(vsub(F, P[i], P[a]));
        norms.push_back(norm(F, arms.back()));
      }
      for (std::size_t i = 0; i < arms.size(); ++i) {
        if (norms[i].index == 0) {
          // every pair using this arm is undefined
          for (std::size_t j = i + 1; j < arms.size(); ++j) visit(st, SpreadValue::undefined());
          continue;
        }
        for (std::size_t j = i + 1; j < arms.size(); ++j)
          visit(st, spread_of_arms(F, dot(F, arms[i], arms[j]), norms[i], norms[j]));
      }
    }
  });
}

}  // namespace detail

inline SpreadCensus distinct_spreads(const Field& F, const PointSet& P, std::uint64_t budget = kDefaultTripleBudget,
                                     unsigned workers = 0) {
  detail::require_field(F, P);
  detail::require_points(P, 3);
  const std::uint64_t triples = detail::ordered_triples(P.size());
  detail::require_budget(triples, budget, "spread census");

  struct Tally {
    std::vector<std::uint8_t> seen;
    std::uint64_t undefined = 0;
  };
  const Tally init{std::vector<std::uint8_t>(F.q(), 0), 0};
  auto parts = detail::sweep_apex_pairs<Tally>(F, P, workers, init, [](Tally& t, const SpreadValue& s) {
    if (s.defined())
      t.seen[s.value().index] = 1;
    else
      t.undefined += 2;
  });

  SpreadCensus out;
  out.triples_scanned = triples;
  std::vector<std::uint8_t> seen(F.q(), 0);
  for (const auto& part : parts) {
    out.undefined_triples += part.undefined;
    for (std::uint32_t v = 0; v < F.q(); ++v) seen[v] |= part.seen[v];
  }
  for (std::uint32_t v = 0; v < F.q(); ++v)
    if (seen[v]) out.defined_values.push_back(Felt(v));
  out.defined_count = out.defined_values.size();
  return out;
}

// Ordered triples (a, b, c) with spread(a, b, c) = Value(gamma).
inline std::uint64_t spread_occurrences(const Field& F, const PointSet& P, Felt gamma,
                                        std::uint64_t budget = kDefaultTripleBudget, unsigned workers = 0) {
  detail::require_field(F, P);
  detail::require_points(P, 3);
  detail::require_budget(detail::ordered_triples(P.size()), budget, "occurrence census");
  auto parts = detail::sweep_apex_pairs<std::uint64_t>(F, P, workers, 0, [gamma](std::uint64_t& c, const SpreadValue& s) {
    if (s.defined() && s.value() == gamma) c += 2;
  });
  std::uint64_t total = 0;
  for (auto c : parts) total += c;
  return total;
}

inline DistanceCensus distinct_distances(const Field& F, const PointSet& P, unsigned workers = 0) {
  detail::require_field(F, P);
  detail::require_points(P, 2);
  const std::size_t n = P.size();
  auto parts = parallel_chunks<std::vector<std::uint8_t>>(
      n, workers, std::vector<std::uint8_t>(F.q(), 0), [&](auto& seen, std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i)
          for (std::size_t j = i + 1; j < n; ++j) seen[dist(F, P[i], P[j]).index] = 1;
      });
  DistanceCensus out;
  out.pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  for (std::uint32_t v = 0; v < F.q(); ++v) {
    bool hit = false;
    for (const auto& part : parts) hit = hit || part[v];
    if (!hit) continue;
    out.values.push_back(Felt(v));
    if (v != 0) out.nonzero_values.push_back(Felt(v));
  }
  return out;
}

inline LineCensus spanned_lines(const Field& F, const PointSet& P, std::uint64_t budget = kDefaultTripleBudget,
                                unsigned workers = 0) {
  detail::require_field(F, P);
  detail::require_points(P, 2);
  const std::size_t n = P.size();
  detail::require_budget(static_cast<std::uint64_t>(n) * n, budget, "line census");

  struct Tally {
    std::unordered_set<CanonLine, CanonLineHash> lines;
    std::vector<std::uint64_t> degrees;  // indexed by point, only this chunk's points filled
  };
  const Tally init{{}, std::vector<std::uint64_t>(n, 0)};
  auto parts = parallel_chunks<Tally>(n, workers, init, [&](Tally& t, std::uint64_t begin, std::uint64_t end) {
    std::unordered_set<FVector, FVectorHash> dirs;
    for (std::uint64_t i = begin; i < end; ++i) {
      dirs.clear();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        FVector dir = vsub(F, P[j], P[i]);
        normalize_direction(F, dir);
        dirs.insert(std::move(dir));
        if (j > i) t.lines.insert(line_through(F, P[i], P[j]));
      }
      t.degrees[i] = dirs.size();
    }
  });

  LineCensus out;
  out.degrees.assign(n, 0);
  std::unordered_set<CanonLine, CanonLineHash> all;
  for (auto& part : parts) {
    all.merge(part.lines);
    for (std::size_t i = 0; i < n; ++i) out.degrees[i] += part.degrees[i];
  }
  out.lines = all.size();
  out.max_degree = *std::max_element(out.degrees.begin(), out.degrees.end());
  return out;
}

// Number of affine lines in F_q^d: q^{d-1} (q^d - 1) / (q - 1).
inline std::uint64_t affine_line_count(std::uint64_t q, std::size_t d) {
  std::uint64_t qd = 1;
  for (std::size_t i = 0; i < d; ++i) qd *= q;
  return qd / q * ((qd - 1) / (q - 1));
}

struct Projection {
  Matrix matrix;  // k x d, rank k

  std::size_t k() const noexcept { return matrix.rows(); }
  std::size_t d() const noexcept { return matrix.cols(); }
};

// Uniform k x d matrix, redrawn until it has rank k.
inline Projection random_projection(const Field& F, std::size_t d, std::size_t k, std::uint64_t seed) {
  if (k < 1 || k > d)
    throw Error(ErrorCode::DimensionMismatch, "projection needs 1 <= k <= d, got k=" + std::to_string(k));
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Matrix m(k, d);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < d; ++j) m.at(i, j) = Felt(static_cast<std::uint32_t>(uniform_below(rng, F.q())));
    if (rank(F, m) == k) return Projection{std::move(m)};
  }
  throw Error(ErrorCode::InternalError, "no full-rank projection after 1000 draws");
}

struct CollisionResult {
  std::uint64_t collisions = 0;  // unordered pairs with equal images
  std::uint64_t image_size = 0;
};

inline CollisionResult project_and_count(const Field& F, const PointSet& P, const Projection& proj) {
  detail::require_field(F, P);
  if (proj.d() != P.dim())
    throw Error(ErrorCode::DimensionMismatch,
                "projection from dimension " + std::to_string(proj.d()) + " applied to dimension " + std::to_string(P.dim()));
  std::unordered_map<FVector, std::uint64_t, FVectorHash> images;
  for (const auto& x : P) ++images[apply(F, proj.matrix, x)];
  CollisionResult out;
  out.image_size = images.size();
  for (const auto& [img, count] : images) out.collisions += count * (count - 1) / 2;
  return out;
}

inline std::uint64_t collision_count(const Field& F, const PointSet& P, const Projection& proj) {
  return project_and_count(F, P, proj).collisions;
}

// Exhaustive search for three mutually orthogonal, independent isotropic
// vectors. Only vectors with leading coordinate 1 are considered, one per
// line through the origin; returns the first triple in that order.
inline std::optional<IsotropicFamily> search_iso_triple(const Field& F, std::size_t d,
                                                        std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::uint64_t total = space_size(F, d, budget);
  std::vector<FVector> reps;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    FVector v = point_from_index(F, d, idx);
    std::size_t j = 0;
    while (v[j].index == 0) ++j;
    if (v[j] != F.one()) continue;
    if (norm(F, v).index == 0) reps.push_back(std::move(v));
  }
  const std::size_t m = reps.size();
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> nbrs;
    for (std::size_t j = i + 1; j < m; ++j)
      if (dot(F, reps[i], reps[j]).index == 0) nbrs.push_back(j);
    for (std::size_t x = 0; x < nbrs.size(); ++x)
      for (std::size_t y = x + 1; y < nbrs.size(); ++y) {
        const FVector& b = reps[nbrs[x]];
        const FVector& c = reps[nbrs[y]];
        if (dot(F, b, c).index != 0) continue;
        IsotropicFamily fam{{reps[i], b, c}};
        if (rank(F, fam.vectors) == 3) return fam;
      }
  }
  return std::nullopt;
}

struct SphereEquivReport {
  std::uint64_t sphere_size = 0;
  std::uint64_t quadruples_checked = 0;
  std::uint64_t excluded_undefined = 0;
  std::uint64_t violation_count = 0;
  std::vector<std::array<FVector, 4>> violations;  // first few, in sweep order
};

// On the unit sphere, spread(0,a,b) = spread(0,c,d) exactly when
// dist(a,b) = dist(c,d) or dist(a,b) = ||c+d||. Checks every ordered
// quadruple of sphere points and lists the ones where the two sides disagree.
inline SphereEquivReport sphere_equiv_check(const Field& F, std::size_t d, std::uint64_t budget = kDefaultTripleBudget,
                                            unsigned workers = 0, std::size_t keep = 16) {
  const std::vector<FVector> S = sphere_points(F, d, F.one(), budget);
  const std::uint64_t n = S.size();
  detail::require_budget(n * n * n * n, budget, "sphere equivalence check");

  const FVector origin(d, F.zero());
  std::vector<SpreadValue> spr(n * n);
  std::vector<Felt> dst(n * n), plus(n * n);
  for (std::uint64_t i = 0; i < n; ++i)
    for (std::uint64_t j = 0; j < n; ++j) {
      spr[i * n + j] = spread(F, origin, S[i], S[j]);
      dst[i * n + j] = dist(F, S[i], S[j]);
      plus[i * n + j] = norm(F, vadd(F, S[i], S[j]));
    }

  struct Tally {
    std::uint64_t checked = 0;
    std::uint64_t excluded = 0;
    std::uint64_t violations = 0;
    std::vector<std::array<std::uint64_t, 4>> kept;
  };
  auto parts = parallel_chunks<Tally>(n, workers, Tally{}, [&](Tally& t, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t a = begin; a < end; ++a)
      for (std::uint64_t b = 0; b < n; ++b) {
        const SpreadValue& s1 = spr[a * n + b];
        const Felt dab = dst[a * n + b];
        for (std::uint64_t c = 0; c < n; ++c)
          for (std::uint64_t e = 0; e < n; ++e) {
            const SpreadValue& s2 = spr[c * n + e];
            if (!s1.defined() || !s2.defined()) {
              ++t.excluded;
              continue;
            }
            ++t.checked;
            const bool same_spread = s1 == s2;
            const bool same_distance = dab == dst[c * n + e] || dab == plus[c * n + e];
            if (same_spread != same_distance) {
              ++t.violations;
              if (t.kept.size() < keep) t.kept.push_back({a, b, c, e});
            }
          }
      }
  });

  SphereEquivReport out;
  out.sphere_size = n;
  for (const auto& part : parts) {
    out.quadruples_checked += part.checked;
    out.excluded_undefined += part.excluded;
    out.violation_count += part.violations;
    for (const auto& q : part.kept)
      if (out.violations.size() < keep) out.violations.push_back({S[q[0]], S[q[1]], S[q[2]], S[q[3]]});
  }
  return out;
}

}  // namespace fqs
