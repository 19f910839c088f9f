#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "no3theta/angle.hpp"
#include "no3theta/grid.hpp"

namespace no3theta {

/// Bottom and top rows fully chosen (2n points). With transpose, the first
/// and last columns instead.
inline Construction two_rows(GridDim dim, bool transpose = false) {
  const int n = dim.n();
  if (n < 2) throw DomainError("two_rows needs n >= 2 (the rows coincide at n=1)");
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(2 * n));
  for (int i = 1; i <= n; ++i) {
    for (int edge : {1, n}) pts.push_back(transpose ? Point{edge, i} : Point{i, edge});
  }
  return Construction(dim, std::move(pts));
}

/// Three points realising an angle, with the smallest grid the construction uses.
struct Witness {
  GridDim dim;
  std::array<Point, 3> points;  // vertex first
  ForbiddenTriple triple;
  bool from_formula;  // false for the axis-aligned Right/Collinear witnesses

  Construction construction() const {
    return Construction(dim, std::vector<Point>(points.begin(), points.end()));
  }
};

/// For tan(theta) = p/q (q taken negative when the tangent is negative) on
/// n = 2*max(p,|q|) + 2, the points (n/2+1, 1), (n/2+2, 1), (n/2+1+q, 1+p)
/// form theta at the first point.
inline Witness witness(const AngleSpec& theta) {
  switch (theta.kind()) {
    case AngleSpec::Kind::Right: {
      const Point v{1, 1}, a{2, 1}, c{1, 2};
      return {GridDim(2), {v, a, c}, ForbiddenTriple::canonical(a, v, c), false};
    }
    case AngleSpec::Kind::Collinear: {
      const Point v{2, 1}, a{1, 1}, c{3, 1};
      return {GridDim(3), {v, a, c}, ForbiddenTriple::canonical(a, v, c), false};
    }
    case AngleSpec::Kind::Tangent: break;
  }
  const long long p = theta.p();
  const long long q = theta.sign() * theta.q();
  const long long m = std::max(p, theta.q());
  if (m > 1'000'000) throw Refused("witness grid too large for tan " + theta.to_string());
  const int n = static_cast<int>(2 * m + 2);
  const int half = n / 2;
  const Point v{half + 1, 1};
  const Point a{half + 2, 1};
  const Point c{static_cast<int>(half + 1 + q), static_cast<int>(1 + p)};
  return {GridDim(n), {v, a, c}, ForbiddenTriple::canonical(a, v, c), true};
}

}  // namespace no3theta
