#pragma once

// Vectors over F_q^d with the quadratic form ||x|| = sum x_i^2, and the
// quantities built from it: dot products, distances, spreads, k-spreads,
// affine lines and spheres.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fqspread/error.hpp"
#include "fqspread/field.hpp"
#include "fqspread/linalg.hpp"
#include "fqspread/random.hpp"

namespace fqs {

using FVector = std::vector<Felt>;

struct FVectorHash {
  std::size_t operator()(const FVector& v) const noexcept {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (Felt x : v) h = (h ^ x.index) * 0x100000001B3ull;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

inline void require_same_dim(const FVector& u, const FVector& v) {
  if (u.size() != v.size())
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions " + std::to_string(u.size()) + " and " + std::to_string(v.size()));
}

inline FVector vadd(const Field& F, const FVector& u, const FVector& v) {
  require_same_dim(u, v);
  FVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = F.add(u[i], v[i]);
  return out;
}

inline FVector vsub(const Field& F, const FVector& u, const FVector& v) {
  require_same_dim(u, v);
  FVector out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = F.sub(u[i], v[i]);
  return out;
}

inline FVector vscale(const Field& F, Felt s, const FVector& v) {
  FVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = F.mul(s, v[i]);
  return out;
}

inline bool is_zero(const FVector& v) {
  for (Felt x : v)
    if (x.index != 0) return false;
  return true;
}

inline Felt dot(const Field& F, const FVector& u, const FVector& v) {
  require_same_dim(u, v);
  Felt acc = F.zero();
  for (std::size_t i = 0; i < u.size(); ++i) acc = F.add(acc, F.mul(u[i], v[i]));
  return acc;
}

inline Felt norm(const Field& F, const FVector& v) { return dot(F, v, v); }

inline Felt dist(const Field& F, const FVector& x, const FVector& y) { return norm(F, vsub(F, x, y)); }

// Either Undefined or a field value. Undefined never compares equal to a value.
class SpreadValue {
 public:
  SpreadValue() = default;
  static SpreadValue undefined() { return SpreadValue(); }
  static SpreadValue of(Felt v) { return SpreadValue(v); }

  bool defined() const noexcept { return value_.has_value(); }
  Felt value() const { return *value_; }

  std::string to_string() const {
    return defined() ? "Value(" + std::to_string(value_->index) + ")" : std::string("Undefined");
  }

  friend bool operator==(const SpreadValue&, const SpreadValue&) = default;

 private:
  explicit SpreadValue(Felt v) : value_(v) {}
  std::optional<Felt> value_;
};

// Spread from already-formed arms u, w and their norms.
inline SpreadValue spread_of_arms(const Field& F, Felt u_dot_w, Felt norm_u, Felt norm_w) {
  if (norm_u.index == 0 || norm_w.index == 0) return SpreadValue::undefined();
  const Felt num = F.square(u_dot_w);
  const Felt den = F.mul(norm_u, norm_w);
  return SpreadValue::of(F.sub(F.one(), F.div(num, den)));
}

// Spread at apex a between the arms a->b and a->c.
inline SpreadValue spread(const Field& F, const FVector& a, const FVector& b, const FVector& c) {
  require_same_dim(a, b);
  require_same_dim(a, c);
  const FVector u = vsub(F, b, a);
  const FVector w = vsub(F, c, a);
  return spread_of_arms(F, dot(F, u, w), norm(F, u), norm(F, w));
}

// Polar-sine analogue det(V^T V) / prod ||v_i|| with v_i = x_{i+1} - x_1.
inline SpreadValue k_spread(const Field& F, std::span<const FVector> points) {
  if (points.size() < 3)
    throw Error(ErrorCode::BadArity, "k_spread needs at least 3 points, got " + std::to_string(points.size()));
  const std::size_t d = points[0].size();
  const std::size_t k = points.size() - 1;
  for (const auto& x : points) require_same_dim(points[0], x);
  if (k > d)
    throw Error(ErrorCode::BadArity,
                "k=" + std::to_string(k) + " exceeds dimension " + std::to_string(d));

  std::vector<FVector> arms;
  arms.reserve(k);
  Felt norm_product = F.one();
  for (std::size_t i = 1; i <= k; ++i) {
    arms.push_back(vsub(F, points[i], points[0]));
    const Felt n = norm(F, arms.back());
    if (n.index == 0) return SpreadValue::undefined();
    norm_product = F.mul(norm_product, n);
  }
  Matrix gram(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      const Felt g = dot(F, arms[i], arms[j]);
      gram.at(i, j) = g;
      gram.at(j, i) = g;
    }
  return SpreadValue::of(F.div(determinant(F, gram), norm_product));
}

// Canonical affine line: dir has leading nonzero coordinate 1 at position j,
// and base has coordinate j equal to zero.
struct CanonLine {
  FVector base;
  FVector dir;

  friend bool operator==(const CanonLine&, const CanonLine&) = default;
  friend auto operator<=>(const CanonLine&, const CanonLine&) = default;
};

struct CanonLineHash {
  std::size_t operator()(const CanonLine& l) const noexcept {
    const FVectorHash hv;
    return hv(l.base) * 31 + hv(l.dir);
  }
};

// Scales v so its first nonzero coordinate is 1. Returns the pivot position.
inline std::size_t normalize_direction(const Field& F, FVector& v) {
  std::size_t j = 0;
  while (j < v.size() && v[j].index == 0) ++j;
  if (j == v.size()) throw Error(ErrorCode::IdenticalPoints, "zero direction");
  const Felt s = F.inv(v[j]);
  for (std::size_t i = j; i < v.size(); ++i) v[i] = F.mul(s, v[i]);
  return j;
}

inline CanonLine line_through(const Field& F, const FVector& p, const FVector& q) {
  require_same_dim(p, q);
  if (p == q) throw Error(ErrorCode::IdenticalPoints, "line through a repeated point");
  FVector dir = vsub(F, q, p);
  const std::size_t j = normalize_direction(F, dir);
  FVector base = vsub(F, p, vscale(F, p[j], dir));
  return CanonLine{std::move(base), std::move(dir)};
}

// Points of F_q^d are numbered by sum x_i q^i (x_0 least significant).
inline FVector point_from_index(const Field& F, std::size_t d, std::uint64_t index) {
  FVector v(d);
  for (std::size_t i = 0; i < d; ++i) {
    v[i] = Felt(static_cast<std::uint32_t>(index % F.q()));
    index /= F.q();
  }
  return v;
}

inline std::uint64_t point_index(const Field& F, const FVector& v) {
  std::uint64_t index = 0;
  for (std::size_t i = v.size(); i-- > 0;) index = index * F.q() + v[i].index;
  return index;
}

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

// q^d, or BudgetExceeded when it passes the budget.
inline std::uint64_t space_size(const Field& F, std::size_t d, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    total *= F.q();
    if (total > budget)
      throw Error(ErrorCode::BudgetExceeded, "q^d exceeds enumeration budget " + std::to_string(budget));
  }
  return total;
}

inline std::vector<FVector> sphere_points(const Field& F, std::size_t d, Felt t,
                                          std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::uint64_t total = space_size(F, d, budget);
  std::vector<FVector> out;
  FVector x(d);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (norm(F, x) == t) out.push_back(x);
    // odometer increment, x_0 fastest
    for (std::size_t i = 0; i < d; ++i) {
      if (++x[i].index < F.q()) break;
      x[i].index = 0;
    }
  }
  return out;
}

// Product of d+2 reflections x -> x - 2 (v.x / ||v||) v with random anisotropic v.
inline Matrix random_orthogonal(const Field& F, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m = Matrix::identity(F, d);
  const Felt two = F.from_int(2);
  for (std::size_t step = 0; step < d + 2; ++step) {
    FVector v(d);
    Felt nv;
    do {
      for (auto& x : v) x = Felt(static_cast<std::uint32_t>(uniform_below(rng, F.q())));
      nv = norm(F, v);
    } while (nv.index == 0);
    const Felt scale = F.div(two, nv);
    Matrix h = Matrix::identity(F, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        h.at(i, j) = F.sub(h.at(i, j), F.mul(scale, F.mul(v[i], v[j])));
    m = multiply(F, h, m);
  }
  return m;
}

inline bool is_orthogonal(const Field& F, const Matrix& m) {
  return m.rows() == m.cols() && multiply(F, transpose(m), m) == Matrix::identity(F, m.rows());
}

inline FVector apply(const Field& F, const Matrix& m, const FVector& v) {
  if (m.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix/vector shape");
  FVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Felt acc = F.zero();
    for (std::size_t j = 0; j < m.cols(); ++j) acc = F.add(acc, F.mul(m.at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

}  // namespace fqs
