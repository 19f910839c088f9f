#pragma once

// Exact angle evaluation on lattice points. Every decision here is an integer
// equality or sign test on the cross and dot products of the two arms.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "no3theta/errors.hpp"
#include "no3theta/grid.hpp"

namespace no3theta {

/// Target angle. Tangent(+,p,q) is arctan(p/q) in (0,90) degrees,
/// Tangent(-,p,q) is the obtuse angle with tan = -p/q. Right and Collinear
/// are 90 and 180 degrees, which have no finite nonzero tangent.
class AngleSpec {
 public:
  enum class Kind { Tangent, Right, Collinear };

  static AngleSpec tangent(int sign, long long p, long long q) {
    if (sign != 1 && sign != -1) throw DomainError("tangent sign must be +1 or -1");
    if (p <= 0 || q <= 0) throw DomainError("tangent numerator and denominator must be positive");
    const long long g = std::gcd(p, q);
    return AngleSpec(Kind::Tangent, sign, p / g, q / g);
  }
  static AngleSpec right() { return AngleSpec(Kind::Right, 1, 0, 0); }
  static AngleSpec collinear() { return AngleSpec(Kind::Collinear, 1, 0, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_tangent() const noexcept { return kind_ == Kind::Tangent; }
  int sign() const noexcept { return sign_; }
  long long p() const noexcept { return p_; }
  long long q() const noexcept { return q_; }

  bool is_135() const noexcept { return is_tangent() && sign_ < 0 && p_ == 1 && q_ == 1; }

  /// 135 <= theta < 180, i.e. tan in [-1, 0).
  bool in_obtuse_band() const noexcept { return is_tangent() && sign_ < 0 && p_ <= q_; }

  /// Canonical text: deg=90, deg=180, otherwise tan=[-]p/q.
  std::string to_string() const {
    switch (kind_) {
      case Kind::Right: return "deg=90";
      case Kind::Collinear: return "deg=180";
      case Kind::Tangent: break;
    }
    return std::string("tan=") + (sign_ < 0 ? "-" : "") + std::to_string(p_) + "/" +
           std::to_string(q_);
  }

  friend bool operator==(const AngleSpec&, const AngleSpec&) = default;

 private:
  AngleSpec(Kind kind, int sign, long long p, long long q) : kind_(kind), sign_(sign), p_(p), q_(q) {}

  Kind kind_;
  int sign_;
  long long p_;
  long long q_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline long long parse_count(std::string_view digits, std::string_view whole) {
  constexpr long long kMax = 1'000'000'000;
  long long value = 0;
  if (digits.empty()) throw ParseError("malformed angle '" + std::string(whole) + "'");
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || value < 0) {
    throw ParseError("malformed angle '" + std::string(whole) + "'");
  }
  if (value > kMax) throw ParseError("angle component out of range in '" + std::string(whole) + "'");
  return value;
}

}  // namespace detail

/// Parses "tan=[+-]p[/q]" or "deg=D" with D in {45, 90, 135, 180}.
inline AngleSpec parse_theta(std::string_view text) {
  const std::string_view s = detail::trim(text);
  if (s.starts_with("tan=")) {
    std::string_view body = s.substr(4);
    int sign = 1;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
      sign = body.front() == '-' ? -1 : 1;
      body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const long long p = detail::parse_count(body.substr(0, slash), s);
    const long long q = slash == std::string_view::npos ? 1 : detail::parse_count(body.substr(slash + 1), s);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    if (p == 0) throw DegenerateAngle("tan=0 is a zero angle, not an interior angle of a triple");
    return AngleSpec::tangent(sign, p, q);
  }
  if (s.starts_with("deg=")) {
    const std::string_view body = s.substr(4);
    const bool numeric = !body.empty() && std::all_of(body.begin(), body.end(), [](char c) {
      return (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+';
    });
    if (!numeric) throw ParseError("malformed angle '" + std::string(s) + "'");
    if (body == "45") return AngleSpec::tangent(1, 1, 1);
    if (body == "90") return AngleSpec::right();
    if (body == "135") return AngleSpec::tangent(-1, 1, 1);
    if (body == "180") return AngleSpec::collinear();
    if (body == "0") throw DegenerateAngle("deg=0 is not an interior angle of a triple");
    throw NotRepresentable("deg=" + std::string(body) +
                           " has no exact lattice representation; use deg in {45,90,135,180} or tan=p/q");
  }
  throw ParseError("angle must be 'tan=p/q' or 'deg=D', got '" + std::string(s) + "'");
}

/// Cross magnitude and dot product of the arms BA and BC at vertex B.
struct VertexAngle {
  enum class Degeneracy { None, CoincidentPoints, ZeroAngle };

  std::int64_t cross_abs = 0;
  std::int64_t dot = 0;
  Degeneracy degenerate = Degeneracy::None;

  friend bool operator==(const VertexAngle&, const VertexAngle&) = default;
};

inline VertexAngle tangent_at_vertex(const Point& a, const Point& vertex, const Point& c) noexcept {
  const std::int64_t ux = a.x - vertex.x, uy = a.y - vertex.y;
  const std::int64_t wx = c.x - vertex.x, wy = c.y - vertex.y;
  VertexAngle out;
  const std::int64_t cross = ux * wy - wx * uy;
  out.cross_abs = cross < 0 ? -cross : cross;
  out.dot = ux * wx + uy * wy;
  if ((ux == 0 && uy == 0) || (wx == 0 && wy == 0)) {
    out.degenerate = VertexAngle::Degeneracy::CoincidentPoints;
  } else if (out.cross_abs == 0 && out.dot > 0) {
    out.degenerate = VertexAngle::Degeneracy::ZeroAngle;
  }
  return out;
}

inline bool angle_equals(const Point& a, const Point& vertex, const Point& c,
                         const AngleSpec& theta) noexcept {
  if (a == c) return false;
  const VertexAngle va = tangent_at_vertex(a, vertex, c);
  if (va.degenerate != VertexAngle::Degeneracy::None) return false;
  switch (theta.kind()) {
    case AngleSpec::Kind::Right: return va.dot == 0;
    case AngleSpec::Kind::Collinear: return va.cross_abs == 0 && va.dot < 0;
    case AngleSpec::Kind::Tangent: break;
  }
  if (theta.sign() > 0 ? va.dot <= 0 : va.dot >= 0) return false;
  const __int128 dot_abs = va.dot < 0 ? -static_cast<__int128>(va.dot) : va.dot;
  return static_cast<__int128>(va.cross_abs) * theta.q() == static_cast<__int128>(theta.p()) * dot_abs;
}

/// (a, vertex, c) with angle(a, vertex, c) equal to the target. The arms are
/// stored with a < c, so each geometric triple appears once per vertex.
struct ForbiddenTriple {
  Point a;
  Point vertex;
  Point c;

  static ForbiddenTriple canonical(const Point& a, const Point& vertex, const Point& c) {
    return a < c ? ForbiddenTriple{a, vertex, c} : ForbiddenTriple{c, vertex, a};
  }

  bool involves(const Point& p) const noexcept { return a == p || vertex == p || c == p; }

  friend bool operator==(const ForbiddenTriple&, const ForbiddenTriple&) = default;
  friend std::strong_ordering operator<=>(const ForbiddenTriple& l, const ForbiddenTriple& r) {
    if (auto o = l.vertex <=> r.vertex; o != 0) return o;
    if (auto o = l.a <=> r.a; o != 0) return o;
    return l.c <=> r.c;
  }
};

inline std::string to_string(const ForbiddenTriple& t) {
  return to_string(t.a) + "-" + to_string(t.vertex) + "-" + to_string(t.c);
}

/// Thrown where a peaceful construction is required; carries one offending triple.
class NotPeaceful : public Error {
 public:
  explicit NotPeaceful(const ForbiddenTriple& witness)
      : Error("not_peaceful", "construction is not peaceful: " + to_string(witness)), witness_(witness) {}

  const ForbiddenTriple& witness() const noexcept { return witness_; }

 private:
  ForbiddenTriple witness_;
};

namespace detail {

struct Vec {
  long long x;
  long long y;
};

// Directions of the second arm, given the first arm u: u rotated by +theta and
// by -theta (one direction for 180), each reduced to a primitive lattice step.
inline int second_arm_directions(Vec u, const AngleSpec& theta, std::array<Vec, 2>& out) {
  int count = 0;
  auto push = [&](long long dx, long long dy) {
    const long long g = std::gcd(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
    out[count++] = {dx / g, dy / g};
  };
  switch (theta.kind()) {
    case AngleSpec::Kind::Collinear:
      push(-u.x, -u.y);
      break;
    case AngleSpec::Kind::Right:
      push(-u.y, u.x);
      push(u.y, -u.x);
      break;
    case AngleSpec::Kind::Tangent: {
      // Rotation scaled by sqrt(p^2+q^2): cos ~ sign*q, sin ~ p.
      const long long c = theta.sign() * theta.q();
      const long long s = theta.p();
      push(c * u.x - s * u.y, s * u.x + c * u.y);
      push(c * u.x + s * u.y, -s * u.x + c * u.y);
      break;
    }
  }
  return count;
}

}  // namespace detail

/// Calls fn(c) for every grid point c with angle(arm, vertex, c) equal to theta.
template <class Fn>
void for_each_completion(GridDim dim, const Point& vertex, const Point& arm, const AngleSpec& theta,
                         Fn&& fn) {
  if (arm == vertex) return;
  std::array<detail::Vec, 2> dirs{};
  const int count =
      detail::second_arm_directions({arm.x - vertex.x, arm.y - vertex.y}, theta, dirs);
  for (int i = 0; i < count; ++i) {
    const long long n = dim.n();
    long long x = vertex.x + dirs[i].x;
    long long y = vertex.y + dirs[i].y;
    while (x >= 1 && x <= n && y >= 1 && y <= n) {
      fn(Point{static_cast<int>(x), static_cast<int>(y)});
      x += dirs[i].x;
      y += dirs[i].y;
    }
  }
}

/// Streams every forbidden triple of G_n in (vertex, a, c) order without
/// materialising the whole list.
template <class Fn>
void for_each_forbidden_triple(GridDim dim, const AngleSpec& theta, Fn&& fn) {
  std::vector<ForbiddenTriple> at_vertex;
  for (int vi = 0; vi < dim.cell_count(); ++vi) {
    const Point v = dim.point(vi);
    at_vertex.clear();
    for (int ai = 0; ai < dim.cell_count(); ++ai) {
      const Point a = dim.point(ai);
      if (a == v) continue;
      for_each_completion(dim, v, a, theta, [&](const Point& c) {
        if (a < c) at_vertex.push_back({a, v, c});
      });
    }
    std::sort(at_vertex.begin(), at_vertex.end());
    for (const auto& t : at_vertex) fn(t);
  }
}

inline constexpr int kDefaultMaterializeCap = 64;

inline std::vector<ForbiddenTriple> forbidden_triples(GridDim dim, const AngleSpec& theta,
                                                      int max_n = kDefaultMaterializeCap) {
  if (dim.n() > max_n) {
    throw Refused("refusing to materialise all triples for n=" + std::to_string(dim.n()) +
                  " (cap " + std::to_string(max_n) + "); stream with for_each_forbidden_triple");
  }
  std::vector<ForbiddenTriple> out;
  for_each_forbidden_triple(dim, theta, [&](const ForbiddenTriple& t) { out.push_back(t); });
  return out;
}

enum class TripleClass { GridFitted, Sneaky };

inline TripleClass classify_triple(const ForbiddenTriple& t) noexcept {
  auto axis_aligned = [&](const Point& end) { return end.x == t.vertex.x || end.y == t.vertex.y; };
  return axis_aligned(t.a) || axis_aligned(t.c) ? TripleClass::GridFitted : TripleClass::Sneaky;
}

inline const char* to_string(TripleClass c) noexcept {
  return c == TripleClass::GridFitted ? "grid-fitted" : "sneaky";
}

struct VerifyResult {
  std::vector<ForbiddenTriple> violations;
  bool truncated = false;  // stopped at the violation limit

  bool peaceful() const noexcept { return violations.empty(); }
};

/// Checks every (vertex, pair) of chosen points. With a limit, stops after
/// that many violations.
inline VerifyResult verify(const Construction& c, const AngleSpec& theta,
                           std::optional<std::size_t> limit = std::nullopt) {
  VerifyResult result;
  const auto pts = c.points();
  for (std::size_t v = 0; v < pts.size(); ++v) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i == v) continue;
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        if (j == v || !angle_equals(pts[i], pts[v], pts[j], theta)) continue;
        if (limit && result.violations.size() >= *limit) {
          result.truncated = true;
          return result;
        }
        result.violations.push_back({pts[i], pts[v], pts[j]});
      }
    }
  }
  return result;
}

/// First triple (in a fixed scan order) that the three points form, if any.
inline std::optional<ForbiddenTriple> triple_among(const Point& p, const Point& q, const Point& r,
                                                   const AngleSpec& theta) {
  if (angle_equals(q, p, r, theta)) return ForbiddenTriple::canonical(q, p, r);
  if (angle_equals(p, q, r, theta)) return ForbiddenTriple::canonical(p, q, r);
  if (angle_equals(p, r, q, theta)) return ForbiddenTriple::canonical(p, r, q);
  return std::nullopt;
}

struct BlockedCell {
  Point cell;
  ForbiddenTriple witness;

  friend bool operator==(const BlockedCell&, const BlockedCell&) = default;
};

/// Empty cells whose addition would create a forbidden triple, each with the
/// first witnessing triple found. Requires a peaceful input.
inline std::vector<BlockedCell> blocked_cells(const Construction& c, const AngleSpec& theta) {
  if (auto check = verify(c, theta, 1); !check.peaceful()) throw NotPeaceful(check.violations.front());
  std::vector<BlockedCell> out;
  const auto pts = c.points();
  const GridDim dim = c.dim();
  for (int zi = 0; zi < dim.cell_count(); ++zi) {
    const Point z = dim.point(zi);
    if (c.contains(z)) continue;
    std::optional<ForbiddenTriple> witness;
    for (std::size_t i = 0; i < pts.size() && !witness; ++i) {
      for (std::size_t j = i + 1; j < pts.size() && !witness; ++j) {
        witness = triple_among(pts[i], pts[j], z, theta);
      }
    }
    if (witness) out.push_back({z, *witness});
  }
  return out;
}

}  // namespace no3theta
