#pragma once

// Exhaustive instantiations of the 135-degree placement lemmas on G_n. Each
// check walks every placement satisfying a lemma's hypothesis and counts the
// ones where the claimed angle is not found.

#include <string>
#include <vector>

#include "no3theta/angle.hpp"
#include "no3theta/grid.hpp"

namespace testsupport {

struct LemmaTally {
  std::string name;
  long long instances = 0;
  long long failures = 0;
};

namespace lemma_detail {

inline const no3theta::AngleSpec& deg135() {
  static const no3theta::AngleSpec t = no3theta::AngleSpec::tangent(-1, 1, 1);
  return t;
}

inline bool same_diag(const no3theta::Point& a, const no3theta::Point& b) { return a.x + a.y == b.x + b.y; }

template <class Fn>
void for_each_point(int n, Fn&& fn) {
  for (int y = 1; y <= n; ++y)
    for (int x = 1; x <= n; ++x) fn(no3theta::Point{x, y});
}

inline void expect(LemmaTally& t, const no3theta::Point& a, const no3theta::Point& v, const no3theta::Point& c) {
  ++t.instances;
  if (!no3theta::angle_equals(a, v, c, deg135())) ++t.failures;
}

// Some violation of verify() on the set has `p` as one of its three points.
inline void expect_involved(LemmaTally& t, int n, std::vector<no3theta::Point> pts, const no3theta::Point& p) {
  ++t.instances;
  const auto r = no3theta::verify(no3theta::Construction(no3theta::GridDim(n), std::move(pts)), deg135());
  for (const auto& v : r.violations)
    if (v.involves(p)) return;
  ++t.failures;
}

}  // namespace lemma_detail

// A above B in one column.
inline LemmaTally same_column_lemma(int n) {
  using namespace lemma_detail;
  LemmaTally t{"same column", 0, 0};
  for_each_point(n, [&](no3theta::Point a) {
    for (int by = 1; by < a.y; ++by) {
      const no3theta::Point b{a.x, by};
      for_each_point(n, [&](no3theta::Point o) {
        if (o != a && same_diag(o, a) && o.x < a.x) expect(t, o, a, b);  // C left of the column
        if (o != b && same_diag(o, b) && o.x > a.x) expect(t, a, b, o);  // D right of the column
      });
    }
  });
  return t;
}

// A right of B in one row.
inline LemmaTally same_row_lemma(int n) {
  using namespace lemma_detail;
  LemmaTally t{"same row", 0, 0};
  for_each_point(n, [&](no3theta::Point a) {
    for (int bx = 1; bx < a.x; ++bx) {
      const no3theta::Point b{bx, a.y};
      for_each_point(n, [&](no3theta::Point o) {
        if (o != a && same_diag(o, a) && o.y < a.y) expect(t, o, a, b);
        if (o != b && same_diag(o, b) && o.y > a.y) expect(t, o, b, a);
      });
    }
  });
  return t;
}

// A above B on one anti-diagonal.
inline LemmaTally same_bucket_lemma(int n) {
  using namespace lemma_detail;
  LemmaTally t{"same bucket", 0, 0};
  for_each_point(n, [&](no3theta::Point a) {
    for_each_point(n, [&](no3theta::Point b) {
      if (!same_diag(a, b) || a.y <= b.y) return;
      for_each_point(n, [&](no3theta::Point o) {
        if (o.x == a.x && o.y > a.y) expect(t, o, a, b);  // above A
        if (o.x == b.x && o.y < b.y) expect(t, a, b, o);  // below B
        if (o.y == a.y && o.x < a.x) expect(t, o, a, b);  // left of A
        if (o.y == b.y && o.x > b.x) expect(t, a, b, o);  // right of B
      });
    });
  });
  return t;
}

// A above B in column 1 or column n.
inline LemmaTally outside_columns_lemma(int n) {
  using namespace lemma_detail;
  LemmaTally t{"outside columns", 0, 0};
  for (int k : {1, n}) {
    for (int ay = 1; ay <= n; ++ay)
      for (int by = 1; by < ay; ++by) {
        const no3theta::Point a{k, ay}, b{k, by};
        for_each_point(n, [&](no3theta::Point o) {
          if (k == 1 && o != b && same_diag(o, b)) expect(t, a, b, o);
          if (k == n && o != a && same_diag(o, a)) expect(t, o, a, b);
        });
      }
  }
  return t;
}

// A strictly inside its anti-diagonal, plus another point in its row or column.
inline LemmaTally bucket_interior_lemma(int n) {
  using namespace lemma_detail;
  LemmaTally t{"bucket interior with row/column mate", 0, 0};
  for_each_point(n, [&](no3theta::Point a) {
    for_each_point(n, [&](no3theta::Point b) {
      if (!same_diag(a, b) || b.x >= a.x) return;
      for_each_point(n, [&](no3theta::Point c) {
        if (!same_diag(a, c) || c.x <= a.x) return;
        for_each_point(n, [&](no3theta::Point m) {
          if (m != a && (m.x == a.x || m.y == a.y)) expect_involved(t, n, {a, b, c, m}, a);
        });
      });
    });
  });
  return t;
}

// A strictly inside its row or column, plus another point on its anti-diagonal.
inline LemmaTally line_interior_lemma(int n) {
  using namespace lemma_detail;
  LemmaTally t{"row/column interior with bucket mate", 0, 0};
  for_each_point(n, [&](no3theta::Point a) {
    for_each_point(n, [&](no3theta::Point m) {
      if (m == a || !same_diag(m, a)) return;
      for (int lo = 1; lo < a.y; ++lo)
        for (int hi = a.y + 1; hi <= n; ++hi) expect_involved(t, n, {a, {a.x, lo}, {a.x, hi}, m}, a);
      for (int lo = 1; lo < a.x; ++lo)
        for (int hi = a.x + 1; hi <= n; ++hi) expect_involved(t, n, {a, {lo, a.y}, {hi, a.y}, m}, a);
    });
  });
  return t;
}

inline std::vector<LemmaTally> all_lemmas(int max_n) {
  std::vector<LemmaTally> out;
  for (auto fn : {same_column_lemma, same_row_lemma, same_bucket_lemma, outside_columns_lemma,
                  bucket_interior_lemma, line_interior_lemma}) {
    LemmaTally total;
    for (int n = 1; n <= max_n; ++n) {
      const LemmaTally t = fn(n);
      total.name = t.name;
      total.instances += t.instances;
      total.failures += t.failures;
    }
    out.push_back(total);
  }
  return out;
}

}  // namespace testsupport
