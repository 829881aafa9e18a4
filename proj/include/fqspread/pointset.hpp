#pragma once

// Ordered, duplicate-free point collections and their text file format:
//
//   q=<int> d=<int>
//   x_1,...,x_d        (one point per line, Felt indices)

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "fqspread/error.hpp"
#include "fqspread/field.hpp"
#include "fqspread/geom.hpp"

namespace fqs {

class PointSet {
 public:
  PointSet(std::uint32_t q, std::size_t d) : q_(q), d_(d) {}

  PointSet(const Field& F, std::size_t d, const std::vector<FVector>& points) : q_(F.q()), d_(d) {
    points_.reserve(points.size());
    for (const auto& p : points) add(p);
  }

  std::uint32_t q() const noexcept { return q_; }
  std::size_t dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const FVector& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<FVector>& points() const noexcept { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  bool contains(const FVector& v) const { return seen_.count(v) != 0; }

  // Rejects duplicates and malformed coordinates.
  void add(const FVector& v) {
    if (v.size() != d_)
      throw Error(ErrorCode::DimensionMismatch,
                  "point of dimension " + std::to_string(v.size()) + " in a set of dimension " + std::to_string(d_));
    for (Felt x : v)
      if (x.index >= q_) throw Error(ErrorCode::ParseError, "coordinate " + std::to_string(x.index) + " >= q");
    if (!seen_.insert(v).second) throw Error(ErrorCode::ParseError, "duplicate point " + format_point(v));
    points_.push_back(v);
  }

  // Same set with one point dropped.
  PointSet without(std::size_t i) const {
    PointSet out(q_, d_);
    for (std::size_t j = 0; j < points_.size(); ++j)
      if (j != i) out.add(points_[j]);
    return out;
  }

  static std::string format_point(const FVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i].index);
    }
    return s;
  }

 private:
  std::uint32_t q_;
  std::size_t d_;
  std::vector<FVector> points_;
  std::unordered_set<FVector, FVectorHash> seen_;
};

inline PointSet whole_space(const Field& F, std::size_t d, std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::uint64_t total = space_size(F, d, budget);
  PointSet out(F.q(), d);
  for (std::uint64_t i = 0; i < total; ++i) out.add(point_from_index(F, d, i));
  return out;
}

inline FVector parse_point(std::string_view text, std::uint32_t q, std::size_t d) {
  FVector v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view tok =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    std::uint64_t val = 0;
    bool any = false;
    for (char ch : tok) {
      if (ch == ' ' || ch == '\t' || ch == '\r') continue;
      if (ch < '0' || ch > '9') throw Error(ErrorCode::ParseError, "bad coordinate '" + std::string(tok) + "'");
      val = val * 10 + static_cast<std::uint64_t>(ch - '0');
      any = true;
      if (val >= q) throw Error(ErrorCode::ParseError, "coordinate out of range in '" + std::string(text) + "'");
    }
    if (!any) throw Error(ErrorCode::ParseError, "empty coordinate in '" + std::string(text) + "'");
    v.push_back(Felt(static_cast<std::uint32_t>(val)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (v.size() != d)
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(d) + " coordinates in '" + std::string(text) + "'");
  return v;
}

inline void write_point_set(std::ostream& os, const PointSet& P) {
  os << "q=" << P.q() << " d=" << P.dim() << '\n';
  for (const auto& v : P) os << PointSet::format_point(v) << '\n';
}

inline PointSet read_point_set(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::ParseError, "empty point-set file");
  unsigned long long q = 0, d = 0;
  {
    std::istringstream hdr(line);
    std::string a, b;
    hdr >> a >> b;
    if (a.rfind("q=", 0) != 0 || b.rfind("d=", 0) != 0)
      throw Error(ErrorCode::ParseError, "header must be 'q=<int> d=<int>', got '" + line + "'");
    try {
      q = std::stoull(a.substr(2));
      d = std::stoull(b.substr(2));
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad header '" + line + "'");
    }
    if (q < 3 || d < 1 || q > kDefaultMaxOrder) throw Error(ErrorCode::ParseError, "bad header '" + line + "'");
  }
  PointSet out(static_cast<std::uint32_t>(q), static_cast<std::size_t>(d));
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    out.add(parse_point(line, out.q(), out.dim()));
  }
  return out;
}

}  // namespace fqs
