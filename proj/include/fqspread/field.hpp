#pragma once

// Exact arithmetic in F_q, q = p^r odd.
//
// Elements are stored as an index in [0, q). For r > 1 the index is read as
// base-p digits (c_0 least significant) encoding c_0 + c_1 a + ... + c_{r-1} a^{r-1},
// where a is a root of the field's modulus polynomial.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fqspread/error.hpp"

namespace fqs {

inline constexpr std::uint64_t kDefaultMaxOrder = std::uint64_t{1} << 20;

struct Felt {
  std::uint32_t index = 0;

  constexpr Felt() = default;
  constexpr explicit Felt(std::uint32_t i) : index(i) {}

  friend constexpr auto operator<=>(const Felt&, const Felt&) = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

// Polynomials over F_p as coefficient vectors, lowest degree first.
using Poly = std::vector<std::uint32_t>;

inline void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b.
inline Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  poly_trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = (lead * b[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    poly_trim(a);
  }
  return a;
}

// Exhaustive trial division by every monic polynomial of degree 1..deg/2.
inline bool poly_is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg <= 1) return true;
  for (std::size_t k = 1; k <= deg / 2; ++k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(k + 1);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < k; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[k] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

// Immutable description of F_q together with its lookup tables.
class Field {
 public:
  static Field make(std::uint64_t p, std::uint64_t r, std::uint64_t max_order = kDefaultMaxOrder) {
    if (p == 2) throw Error(ErrorCode::CharacteristicTwo, "characteristic 2 is not supported");
    if (!detail::is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (r < 1) throw Error(ErrorCode::SizeExceeded, "extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < r; ++i) {
      q *= p;
      if (q > max_order)
        throw Error(ErrorCode::SizeExceeded,
                    std::to_string(p) + "^" + std::to_string(r) + " exceeds order cap " +
                        std::to_string(max_order));
    }
    return Field(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(r),
                 static_cast<std::uint32_t>(q));
  }

  // Accepts "p^r" or a bare prime "p".
  static Field parse(std::string_view text, std::uint64_t max_order = kDefaultMaxOrder) {
    auto to_int = [&](std::string_view s) -> std::uint64_t {
      if (s.empty() || s.size() > 9) throw Error(ErrorCode::ParseError, "bad field '" + std::string(text) + "'");
      std::uint64_t v = 0;
      for (char ch : s) {
        if (ch < '0' || ch > '9') throw Error(ErrorCode::ParseError, "bad field '" + std::string(text) + "'");
        v = v * 10 + static_cast<std::uint64_t>(ch - '0');
      }
      return v;
    };
    const auto caret = text.find('^');
    if (caret == std::string_view::npos) return make(to_int(text), 1, max_order);
    return make(to_int(text.substr(0, caret)), to_int(text.substr(caret + 1)), max_order);
  }

  // Recovers p^r from the order q.
  static Field from_order(std::uint64_t q, std::uint64_t max_order = kDefaultMaxOrder) {
    if (q < 2) throw Error(ErrorCode::NotPrime, "field order must be a prime power");
    std::uint64_t p = 2;
    while (q % p != 0) ++p;
    std::uint64_t r = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
      rest /= p;
      ++r;
    }
    if (rest != 1) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
    return make(p, r, max_order);
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t r() const noexcept { return r_; }
  std::uint32_t q() const noexcept { return q_; }
  // Monic modulus c_0..c_r; empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  std::uint32_t q_mod_4() const noexcept { return q_ % 4; }
  std::string name() const { return std::to_string(p_) + "^" + std::to_string(r_); }

  Felt zero() const noexcept { return Felt(0); }
  Felt one() const noexcept { return Felt(1); }
  Felt minus_one() const noexcept { return neg(one()); }

  Felt elem(std::uint64_t index) const {
    if (index >= q_)
      throw Error(ErrorCode::ParseError,
                  "element index " + std::to_string(index) + " out of range for q=" + std::to_string(q_));
    return Felt(static_cast<std::uint32_t>(index));
  }

  // Image of an integer under Z -> F_p -> F_q.
  Felt from_int(std::int64_t v) const noexcept {
    const std::int64_t m = ((v % static_cast<std::int64_t>(p_)) + p_) % p_;
    return Felt(static_cast<std::uint32_t>(m));
  }

  Felt add(Felt a, Felt b) const noexcept {
    if (r_ == 1) {
      std::uint32_t s = a.index + b.index;
      return Felt(s >= p_ ? s - p_ : s);
    }
    std::uint32_t x = a.index, y = b.index, out = 0, place = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
      std::uint32_t s = x % p_ + y % p_;
      if (s >= p_) s -= p_;
      out += s * place;
      place *= p_;
      x /= p_;
      y /= p_;
    }
    return Felt(out);
  }

  Felt neg(Felt a) const noexcept {
    if (r_ == 1) return Felt(a.index == 0 ? 0 : p_ - a.index);
    std::uint32_t x = a.index, out = 0, place = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
      const std::uint32_t c = x % p_;
      out += (c == 0 ? 0 : p_ - c) * place;
      place *= p_;
      x /= p_;
    }
    return Felt(out);
  }

  Felt sub(Felt a, Felt b) const noexcept { return add(a, neg(b)); }

  Felt mul(Felt a, Felt b) const noexcept {
    if (r_ == 1) {
      return Felt(static_cast<std::uint32_t>(std::uint64_t{a.index} * b.index % p_));
    }
    if (a.index == 0 || b.index == 0) return Felt(0);
    std::uint32_t e = log_[a.index] + log_[b.index];
    if (e >= q_ - 1) e -= q_ - 1;
    return Felt(exp_[e]);
  }

  Felt square(Felt a) const noexcept { return mul(a, a); }

  Felt inv(Felt a) const {
    if (a.index == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return Felt(inv_[a.index]);
  }

  Felt div(Felt a, Felt b) const {
    if (b.index == 0) throw Error(ErrorCode::DivisionByZero, "division by zero");
    return mul(a, Felt(inv_[b.index]));
  }

  Felt pow(Felt a, std::uint64_t e) const noexcept {
    Felt result = one();
    while (e > 0) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }

  // Euler's criterion; zero counts as a square.
  bool is_square(Felt a) const noexcept {
    if (a.index == 0) return true;
    return pow(a, (q_ - 1) / 2) == one();
  }

  // The root with the smaller index, or nullopt for non-squares.
  std::optional<Felt> try_sqrt(Felt a) const noexcept {
    const std::uint32_t s = sqrt_[a.index];
    if (s == kNoRoot) return std::nullopt;
    return Felt(s);
  }

  Felt sqrt(Felt a) const {
    auto s = try_sqrt(a);
    if (!s) throw Error(ErrorCode::NotASquare, "element " + std::to_string(a.index) + " is not a square");
    return *s;
  }

 private:
  static constexpr std::uint32_t kNoRoot = 0xFFFFFFFFu;

  Field(std::uint32_t p, std::uint32_t r, std::uint32_t q) : p_(p), r_(r), q_(q) {
    if (r_ > 1) {
      choose_modulus();
      build_log_tables();
    }
    inv_.assign(q_, 0);
    for (std::uint32_t a = 1; a < q_; ++a) {
      if (inv_[a] != 0) continue;
      // Search is only needed for prime fields; extension fields use logs.
      std::uint32_t b;
      if (r_ > 1) {
        b = exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
      } else {
        b = pow(Felt(a), q_ - 2).index;
      }
      inv_[a] = b;
      inv_[b] = a;
    }
    // Walking t upward means each square keeps its smallest root.
    sqrt_.assign(q_, kNoRoot);
    for (std::uint32_t t = 0; t < q_; ++t) {
      const std::uint32_t s = mul(Felt(t), Felt(t)).index;
      if (sqrt_[s] == kNoRoot) sqrt_[s] = t;
    }
  }

  void choose_modulus() {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < r_; ++i) count *= p_;
    for (std::uint64_t code = 0; code < count; ++code) {
      detail::Poly f(r_ + 1);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < r_; ++i) {
        f[i] = static_cast<std::uint32_t>(c % p_);
        c /= p_;
      }
      f[r_] = 1;
      if (f[0] == 0) continue;
      if (detail::poly_is_irreducible(f, p_)) {
        modulus_ = f;
        return;
      }
    }
    throw Error(ErrorCode::InternalError, "no irreducible modulus found");
  }

  // Multiplication of two indices as polynomials modulo the modulus.
  std::uint32_t poly_mul_index(std::uint32_t a, std::uint32_t b) const {
    detail::Poly x(r_), y(r_);
    for (std::uint32_t i = 0; i < r_; ++i) {
      x[i] = a % p_;
      a /= p_;
      y[i] = b % p_;
      b /= p_;
    }
    detail::Poly prod(2 * r_ - 1, 0);
    for (std::uint32_t i = 0; i < r_; ++i)
      for (std::uint32_t j = 0; j < r_; ++j)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{x[i]} * y[j]) % p_);
    const detail::Poly rem = detail::poly_mod(prod, modulus_, p_);
    std::uint32_t out = 0, place = 1;
    for (std::size_t i = 0; i < rem.size(); ++i) {
      out += rem[i] * place;
      place *= p_;
    }
    return out;
  }

  void build_log_tables() {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    for (std::uint32_t g = 2; g < q_; ++g) {
      std::uint32_t cur = 1;
      std::uint32_t order = 0;
      do {
        exp_[order] = cur;
        cur = poly_mul_index(cur, g);
        ++order;
      } while (cur != 1 && order < q_ - 1);
      if (cur == 1 && order == q_ - 1) {
        for (std::uint32_t i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
        return;
      }
    }
    throw Error(ErrorCode::InternalError, "no multiplicative generator found");
  }

  std::uint32_t p_;
  std::uint32_t r_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> sqrt_;
};

}  // namespace fqs
