#include <random>

#include <gtest/gtest.h>

#include "lemmas.hpp"
#include "no3theta/analysis.hpp"
#include "no3theta/constructions.hpp"
#include "no3theta/oracle.hpp"
#include "support.hpp"

namespace {

using no3theta::AngleSpec;
using no3theta::Construction;
using no3theta::GridDim;
using no3theta::Point;

const AngleSpec k135 = AngleSpec::tangent(-1, 1, 1);

TEST(InteriorReport, Examples) {
  const auto column = no3theta::interior_report(Construction(GridDim(4), {{2, 1}, {2, 2}, {2, 4}}));
  ASSERT_EQ(column.size(), 3u);
  EXPECT_FALSE(column[0].column_interior);
  EXPECT_TRUE(column[1].column_interior);
  EXPECT_FALSE(column[2].column_interior);
  for (const auto& f : column) EXPECT_FALSE(f.row_interior || f.bucket_interior);

  const auto diag = no3theta::interior_report(Construction(GridDim(4), {{1, 4}, {2, 3}, {4, 1}}));
  EXPECT_FALSE(diag[0].bucket_interior);
  EXPECT_TRUE(diag[1].bucket_interior);
  EXPECT_EQ(diag[1].point, (Point{2, 3}));
  EXPECT_FALSE(diag[2].bucket_interior);

  for (const auto& f : no3theta::interior_report(Construction(GridDim(4), {{1, 1}, {3, 1}})))
    EXPECT_FALSE(f.column_interior || f.row_interior || f.bucket_interior);
}

TEST(InteriorReport, MatchesDefinitionOnRandomSets) {
  std::mt19937 rng(3);
  const GridDim g(6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < g.cell_count(); ++i)
      if (rng() % 3 == 0) pts.push_back(g.point(i));
    const Construction c(g, pts);
    for (const auto& f : no3theta::interior_report(c)) {
      bool col = false, row = false, diag = false;
      for (const auto& b : c.points())
        for (const auto& d : c.points()) {
          const Point a = f.point;
          col |= b.x == a.x && d.x == a.x && b.y < a.y && a.y < d.y;
          row |= b.y == a.y && d.y == a.y && b.x < a.x && a.x < d.x;
          diag |= b.x + b.y == a.x + a.y && d.x + d.y == a.x + a.y && b.x < a.x && a.x < d.x;
        }
      ASSERT_EQ(f.column_interior, col);
      ASSERT_EQ(f.row_interior, row);
      ASSERT_EQ(f.bucket_interior, diag);
    }
  }
}

TEST(BucketStats, Examples) {
  EXPECT_EQ(no3theta::bucket_stats(Construction(GridDim(4))), no3theta::BucketStats{});

  const auto diag = no3theta::bucket_stats(Construction(GridDim(3), {{1, 3}, {2, 2}, {3, 1}}));
  EXPECT_EQ(diag.k, 1);
  EXPECT_EQ(diag.multi_buckets, 1);
  EXPECT_EQ(diag.multi_points, 3);
  EXPECT_EQ(diag.interior_multi, 1);

  // Row 1 covers x+y = 2..5, row 4 covers 5..8; only x+y = 5 holds two points.
  const auto rows = no3theta::bucket_stats(no3theta::two_rows(GridDim(4)));
  EXPECT_EQ(rows.k, 7);
  EXPECT_GE(rows.k, 4 + 1);
  EXPECT_EQ(rows.multi_buckets, 1);
  EXPECT_EQ(rows.multi_points, 2);
}

TEST(BucketStats, IdentitiesOnRandomSets) {
  std::mt19937 rng(8);
  for (int n = 1; n <= 7; ++n) {
    const GridDim g(n);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Point> pts;
      for (int i = 0; i < g.cell_count(); ++i)
        if (rng() % 2) pts.push_back(g.point(i));
      const Construction c(g, pts);
      const auto s = no3theta::bucket_stats(c);
      const int size = static_cast<int>(c.size());
      ASSERT_LE(s.k, 2 * n - 1);
      ASSERT_GE(s.multi_points, 2 * s.multi_buckets);
      ASSERT_EQ(s.interior_multi, s.multi_points - 2 * s.multi_buckets);
      ASSERT_EQ(s.k, size - s.multi_points + s.multi_buckets);
    }
  }
}

TEST(LowerBound, Examples) {
  EXPECT_EQ(no3theta::lower_bound(k135, GridDim(6)).value, 12);
  EXPECT_EQ(no3theta::lower_bound(AngleSpec::tangent(-1, 1, 2), GridDim(6)).value, 12);
  EXPECT_FALSE(no3theta::lower_bound(AngleSpec::tangent(1, 1, 1), GridDim(6)).value);
  EXPECT_FALSE(no3theta::lower_bound(AngleSpec::tangent(-1, 3, 2), GridDim(6)).value);
  const auto collinear = no3theta::lower_bound(AngleSpec::collinear(), GridDim(6));
  EXPECT_FALSE(collinear.value);
  EXPECT_FALSE(collinear.note.empty());
  EXPECT_EQ(no3theta::lower_bound(k135, GridDim(1)).value, 1);
}

TEST(UpperBound, Examples) {
  const auto b135 = no3theta::upper_bound(k135, GridDim(10));
  EXPECT_EQ(b135.value, 28);
  EXPECT_EQ(b135.formula, "3n-2");
  EXPECT_FALSE(b135.external);

  const auto half = no3theta::upper_bound(AngleSpec::tangent(1, 1, 2), GridDim(4));
  EXPECT_EQ(half.value, 14);
  EXPECT_EQ(half.formula, "2n+f(p,q)-2max(p,q)");

  const auto line = no3theta::upper_bound(AngleSpec::collinear(), GridDim(5));
  EXPECT_EQ(line.value, 10);
  EXPECT_EQ(line.formula, "2n");

  const auto right = no3theta::upper_bound(AngleSpec::right(), GridDim(5));
  EXPECT_EQ(right.value, 8);
  EXPECT_TRUE(right.external);
}

TEST(UpperBound, GeneralFormulaDomain) {
  EXPECT_FALSE(no3theta::general_upper_bound(no3theta::parse_theta("tan=-3/2"), GridDim(3)));
  EXPECT_EQ(no3theta::general_upper_bound(no3theta::parse_theta("tan=-3/2"), GridDim(4)), 16);
  const auto far = no3theta::upper_bound(no3theta::parse_theta("tan=5/7"), GridDim(4));
  EXPECT_EQ(far.value, 16);
  EXPECT_EQ(far.formula, "n^2");
  ASSERT_FALSE(far.terms.empty());
  EXPECT_FALSE(far.terms[0].value);
  EXPECT_FALSE(far.terms[0].reason.empty());
  // deg=135 at n=10: 3n-2 = 28 beats the general 2n + 19 - 2 = 37.
  EXPECT_EQ(no3theta::general_upper_bound(k135, GridDim(10)), 37);
}

TEST(UpperBound, InformationalTermNeverChosen) {
  for (const auto& text : testsupport::theta_matrix())
    for (int n = 1; n <= 12; ++n) {
      const auto ub = no3theta::upper_bound(no3theta::parse_theta(text), GridDim(n));
      for (const auto& t : ub.terms)
        if (!t.informational && t.value) {
          EXPECT_LE(ub.value, *t.value);
        }
      EXPECT_NE(ub.formula, "2n+f(p,q)-ceil(2n/maxpop)");
    }
}

TEST(CapacityAfter, TwoRows) {
  const Construction six = no3theta::two_rows(GridDim(6));
  const int k = no3theta::bucket_stats(six).k;
  EXPECT_EQ(k, 11);
  EXPECT_EQ(no3theta::capacity_after(six), 11 - k);
  EXPECT_THROW(no3theta::capacity_after(six.without({1, 1})), no3theta::LemmaInapplicable);
  const Construction full_g2(GridDim(2), {{1, 1}, {2, 1}, {1, 2}, {2, 2}});
  EXPECT_EQ(no3theta::capacity_after(full_g2), 0);
  const Construction violating(GridDim(3), {{2, 3}, {3, 2}, {3, 1}, {1, 1}, {1, 2}, {2, 1}});
  EXPECT_THROW(no3theta::capacity_after(violating), no3theta::LemmaInapplicable);
}

TEST(LemmaSuites, ExhaustiveUpToSix) {
  for (const auto& t : testsupport::all_lemmas(6)) {
    EXPECT_GT(t.instances, 0) << t.name;
    EXPECT_EQ(t.failures, 0) << t.name;
  }
}

// Every peaceful 135-degree set of exactly 2n points for n = 3, 4.
TEST(OccupiedBuckets, ExhaustiveAudit) {
  for (int n = 3; n <= 4; ++n) {
    const GridDim g(n);
    long long seen = 0;
    no3theta::enumerate_peaceful(g, k135, 2 * n, [&](const Construction& c) {
      ++seen;
      const auto s = no3theta::bucket_stats(c);
      EXPECT_GE(s.k, n + 1);
      EXPECT_LE(s.multi_points, 2 * n - 2);
      EXPECT_EQ(s.k, 2 * n - s.multi_points + s.multi_buckets);
      EXPECT_EQ(s.interior_multi, s.multi_points - 2 * s.multi_buckets);
      EXPECT_LE(no3theta::capacity_after(c), n - 2);
    });
    EXPECT_EQ(seen, n == 3 ? 2 : 4) << "n=" << n;  // counts frozen from an independent script
  }
}

}  // namespace
