#pragma once

// Shared fixtures for the test binaries: the angle matrix, a floating-point
// angle oracle independent of the integer engine, and the square's symmetries.

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "no3theta/angle.hpp"
#include "no3theta/grid.hpp"

namespace testsupport {

inline const std::vector<std::string>& theta_matrix() {
  static const std::vector<std::string> m{"deg=45",   "deg=90", "deg=135", "deg=180", "tan=1/2",
                                          "tan=-1/2", "tan=2",  "tan=-2",  "tan=-3/2"};
  return m;
}

// Angle in radians from the float atan2 of both arms; the target from its tangent.
inline double target_radians(const no3theta::AngleSpec& t) {
  using K = no3theta::AngleSpec::Kind;
  if (t.kind() == K::Right) return M_PI / 2;
  if (t.kind() == K::Collinear) return M_PI;
  const double a = std::atan2(static_cast<double>(t.p()), static_cast<double>(t.q()));
  return t.sign() > 0 ? a : M_PI - a;
}

inline bool float_angle_matches(const no3theta::Point& a, const no3theta::Point& v, const no3theta::Point& c,
                                const no3theta::AngleSpec& t) {
  if (a == v || c == v || a == c) return false;
  double d = std::abs(std::atan2(a.y - v.y, a.x - v.x) - std::atan2(c.y - v.y, c.x - v.x));
  if (d > M_PI) d = 2 * M_PI - d;
  return std::abs(d - target_radians(t)) < 1e-9;
}

// Image of p under symmetry s (0..7) of G_n.
inline no3theta::Point dihedral(int s, const no3theta::Point& p, int n) {
  int x = p.x, y = p.y;
  if (s & 1) x = n + 1 - x;
  if (s & 2) y = n + 1 - y;
  if (s & 4) std::swap(x, y);
  return {x, y};
}

}  // namespace testsupport
