#pragma once

// Totally isotropic families and the subspace point sets built from them.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fqspread/error.hpp"
#include "fqspread/field.hpp"
#include "fqspread/geom.hpp"
#include "fqspread/linalg.hpp"
#include "fqspread/pointset.hpp"

namespace fqs {

struct IsotropicFamily {
  std::vector<FVector> vectors;

  std::size_t size() const noexcept { return vectors.size(); }
};

// Norms zero, pairwise dots zero, full rank.
inline bool is_valid_family(const Field& F, const IsotropicFamily& fam) {
  for (std::size_t i = 0; i < fam.size(); ++i) {
    if (norm(F, fam.vectors[i]).index != 0) return false;
    for (std::size_t j = i + 1; j < fam.size(); ++j)
      if (dot(F, fam.vectors[i], fam.vectors[j]).index != 0) return false;
  }
  return rank(F, fam.vectors) == fam.size();
}

// (1, i) placed in each coordinate pair, i the smaller square root of -1.
inline IsotropicFamily iso_family_1mod4(const Field& F, std::size_t d) {
  if (F.q_mod_4() != 1) throw Error(ErrorCode::BadResidue, "q=" + std::to_string(F.q()) + " is not 1 mod 4");
  if (d == 0 || d % 2 != 0) throw Error(ErrorCode::OddDimension, "d=" + std::to_string(d) + " must be even");
  const Felt i = F.sqrt(F.minus_one());
  IsotropicFamily fam;
  for (std::size_t j = 0; j < d / 2; ++j) {
    FVector v(d, F.zero());
    v[2 * j] = F.one();
    v[2 * j + 1] = i;
    fam.vectors.push_back(std::move(v));
  }
  return fam;
}

// Lexicographically least isotropic (a, b, c) with a != 0, scanning a, then
// b, then c by index.
inline std::array<Felt, 3> least_isotropic_triple(const Field& F) {
  for (std::uint32_t a = 1; a < F.q(); ++a)
    for (std::uint32_t b = 0; b < F.q(); ++b)
      for (std::uint32_t c = 0; c < F.q(); ++c) {
        const FVector v{Felt(a), Felt(b), Felt(c)};
        if (norm(F, v).index == 0) return {Felt(a), Felt(b), Felt(c)};
      }
  throw Error(ErrorCode::InternalError, "no isotropic triple in F_" + std::to_string(F.q()) + "^3");
}

// Blocks of four coordinates carrying (a,b,c,0) and (0,-c,b,a).
inline IsotropicFamily iso_family_3mod4(const Field& F, std::size_t d) {
  if (F.q_mod_4() != 3) throw Error(ErrorCode::BadResidue, "q=" + std::to_string(F.q()) + " is not 3 mod 4");
  if (d == 0 || d % 4 != 0) throw Error(ErrorCode::BadDimension, "d=" + std::to_string(d) + " is not 0 mod 4");
  const auto [a, b, c] = least_isotropic_triple(F);
  IsotropicFamily fam;
  for (std::size_t blk = 0; blk < d / 4; ++blk) {
    const std::size_t o = 4 * blk;
    FVector v1(d, F.zero()), v2(d, F.zero());
    v1[o] = a;
    v1[o + 1] = b;
    v1[o + 2] = c;
    v2[o + 1] = F.neg(c);
    v2[o + 2] = b;
    v2[o + 3] = a;
    fam.vectors.push_back(std::move(v1));
    fam.vectors.push_back(std::move(v2));
  }
  return fam;
}

// All q^m combinations sum c_j v_j, coefficient tuples in lexicographic
// order (c_1 most significant).
inline PointSet span(const Field& F, std::size_t d, const std::vector<FVector>& vectors,
                     std::uint64_t budget = kDefaultEnumerationBudget) {
  for (const auto& v : vectors)
    if (v.size() != d) throw Error(ErrorCode::DimensionMismatch, "span input of wrong dimension");
  if (rank(F, vectors) != vectors.size()) throw Error(ErrorCode::DependentInput, "span input is linearly dependent");
  const std::size_t m = vectors.size();
  const std::uint64_t total = space_size(F, m, budget);
  PointSet out(F.q(), d);
  std::vector<std::uint32_t> coef(m, 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    FVector p(d, F.zero());
    for (std::size_t j = 0; j < m; ++j)
      if (coef[j] != 0) p = vadd(F, p, vscale(F, Felt(coef[j]), vectors[j]));
    out.add(p);
    for (std::size_t j = m; j-- > 0;) {
      if (++coef[j] < F.q()) break;
      coef[j] = 0;
    }
  }
  return out;
}

// Family used for a totally isotropic subspace of dimension d/2, d even.
inline IsotropicFamily half_dimension_family(const Field& F, std::size_t d) {
  if (d == 0 || d % 2 != 0) throw Error(ErrorCode::OddDimension, "d=" + std::to_string(d) + " must be even");
  if (F.q_mod_4() == 1) return iso_family_1mod4(F, d);
  if (d % 4 != 0)
    throw Error(ErrorCode::BadDimension, "q=3 mod 4 requires d=0 mod 4, got d=" + std::to_string(d));
  return iso_family_3mod4(F, d);
}

// q^{d/2} points, no defined spread.
inline PointSet con1_set(const Field& F, std::size_t d, std::uint64_t budget = kDefaultEnumerationBudget) {
  return span(F, d, half_dimension_family(F, d).vectors, budget);
}

// q^{(d+1)/2} points, at most one distinct defined spread. The isotropic
// family lives in the first d-1 coordinates; e_d is appended.
inline PointSet con2_set(const Field& F, std::size_t d, std::uint64_t budget = kDefaultEnumerationBudget) {
  if (d < 3 || d % 2 == 0) throw Error(ErrorCode::BadDimension, "d=" + std::to_string(d) + " must be odd and >= 3");
  if (F.q_mod_4() == 3 && d % 4 != 1)
    throw Error(ErrorCode::BadResidue, "q=3 mod 4 requires d=1 mod 4, got d=" + std::to_string(d));
  const IsotropicFamily inner = half_dimension_family(F, d - 1);
  std::vector<FVector> gens;
  for (const auto& v : inner.vectors) {
    FVector w = v;
    w.push_back(F.zero());
    gens.push_back(std::move(w));
  }
  FVector last(d, F.zero());
  last[d - 1] = F.one();
  gens.push_back(std::move(last));
  return span(F, d, gens, budget);
}

}  // namespace fqs
