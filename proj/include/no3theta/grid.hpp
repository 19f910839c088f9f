#pragma once

// Grid data model: points, grid dimension, constructions (chosen point sets)
// and the partition of a grid into lines of a fixed rational slope.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "no3theta/errors.hpp"

namespace no3theta {

/// Lattice point, 1-based. x is the column, y the row (row 1 at the bottom).
/// Points order by (y, x), the row-major order used for all tie-breaking.
struct Point {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr std::strong_ordering operator<=>(const Point& a, const Point& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
};

inline std::string to_string(const Point& p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

/// Side length of the square grid G_n.
class GridDim {
 public:
  explicit GridDim(int n) : n_(n) {
    if (n < 1) throw DomainError("grid dimension must be at least 1, got " + std::to_string(n));
  }

  int n() const noexcept { return n_; }
  int cell_count() const noexcept { return n_ * n_; }

  bool contains(const Point& p) const noexcept {
    return p.x >= 1 && p.x <= n_ && p.y >= 1 && p.y <= n_;
  }

  // Row-major cell index; monotone in the (y, x) point order.
  int index(const Point& p) const noexcept { return (p.y - 1) * n_ + (p.x - 1); }
  Point point(int index) const noexcept { return {index % n_ + 1, index / n_ + 1}; }

  void require(const Point& p) const {
    if (!contains(p)) {
      throw DomainError("point " + to_string(p) + " lies outside G_" + std::to_string(n_));
    }
  }

  friend bool operator==(const GridDim&, const GridDim&) = default;

 private:
  int n_;
};

/// A set of chosen points on a grid. Immutable; points kept sorted by (y, x).
class Construction {
 public:
  explicit Construction(GridDim dim) : dim_(dim) {}

  // Duplicates collapse (set semantics); any point off the grid throws DomainError.
  Construction(GridDim dim, std::vector<Point> points) : dim_(dim), points_(std::move(points)) {
    for (const auto& p : points_) dim_.require(p);
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  }

  const GridDim& dim() const noexcept { return dim_; }
  std::span<const Point> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  bool contains(const Point& p) const {
    return std::binary_search(points_.begin(), points_.end(), p);
  }

  Construction with(const Point& p) const {
    auto pts = points_;
    pts.push_back(p);
    return Construction(dim_, std::move(pts));
  }

  Construction without(const Point& p) const {
    auto pts = points_;
    pts.erase(std::remove(pts.begin(), pts.end(), p), pts.end());
    return Construction(dim_, std::move(pts));
  }

  friend bool operator==(const Construction&, const Construction&) = default;

 private:
  GridDim dim_;
  std::vector<Point> points_;
};

/// Reduced rational slope p/q with an explicit sign. Vertical lines use the
/// sentinel p=1, q=0; horizontal lines are 0/1 and never negative.
class Slope {
 public:
  Slope(int p, int q, bool negative) : p_(p), q_(q), negative_(negative) {
    if (p < 0 || q < 0) throw DomainError("slope numerator and denominator must be nonnegative");
    if (q == 0 && (p != 1 || negative)) throw DomainError("vertical slope must be the 1/0 sentinel");
    if (p == 0 && (q != 1 || negative)) throw DomainError("horizontal slope must be +0/1");
    if (std::gcd(p, q) != 1) {
      throw DomainError("slope " + std::to_string(p) + "/" + std::to_string(q) + " is not reduced");
    }
  }

  static Slope vertical() { return Slope(1, 0, false); }

  /// Slope of the line rising `rise` over `run`; reduces to lowest terms.
  static Slope from_ratio(long long rise, long long run) {
    if (rise == 0 && run == 0) throw DomainError("slope 0/0 is undefined");
    if (run == 0) return vertical();
    if (rise == 0) return Slope(0, 1, false);
    const bool negative = (rise < 0) != (run < 0);
    long long p = rise < 0 ? -rise : rise;
    long long q = run < 0 ? -run : run;
    const long long g = std::gcd(p, q);
    return Slope(static_cast<int>(p / g), static_cast<int>(q / g), negative);
  }

  int p() const noexcept { return p_; }
  int q() const noexcept { return q_; }
  bool negative() const noexcept { return negative_; }
  bool is_vertical() const noexcept { return q_ == 0; }

  // Direction vector (run, rise) along the line, run >= 0.
  int rise() const noexcept { return negative_ ? -p_ : p_; }
  int run() const noexcept { return q_; }

  std::string to_string() const {
    if (is_vertical()) return "vertical";
    return (negative_ ? "-" : "") + std::to_string(p_) + "/" + std::to_string(q_);
  }

  friend bool operator==(const Slope&, const Slope&) = default;

 private:
  int p_;
  int q_;
  bool negative_;
};

/// "vertical", "0", "-1", "1/2", "-3/2", ...
inline Slope parse_slope(const std::string& text) {
  if (text == "vertical" || text == "inf") return Slope::vertical();
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    const long long rise = std::stoll(text.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? text.size() : slash)) throw ParseError("");
    long long run = 1;
    if (slash != std::string::npos) {
      const std::string tail = text.substr(slash + 1);
      run = std::stoll(tail, &used);
      if (used != tail.size() || tail.empty() || tail[0] == '-' || tail[0] == '+') throw ParseError("");
    }
    return Slope::from_ratio(rise, run);
  } catch (const std::logic_error&) {
  } catch (const ParseError&) {
  }
  throw ParseError("slope must look like 'p/q', '-p/q', 'p' or 'vertical', got '" + text + "'");
}

/// True iff the line through distinct points a and b has the given slope.
inline bool on_common_line(const Point& a, const Point& b, const Slope& s) noexcept {
  return static_cast<long long>(b.y - a.y) * s.run() ==
         static_cast<long long>(b.x - a.x) * s.rise();
}

/// Partition of G_n into the lines ("slope buckets") of one slope. Ids are dense
/// and assigned in row-major discovery order, so for slope -1 the id of (x,y)
/// is x+y-2.
class SlopeBucketIndex {
 public:
  SlopeBucketIndex(GridDim dim, Slope slope) : dim_(dim), slope_(slope) {
    bucket_of_.resize(static_cast<std::size_t>(dim.cell_count()));
    std::map<long long, int> id_of_key;
    for (int y = 1; y <= dim.n(); ++y) {
      for (int x = 1; x <= dim.n(); ++x) {
        // run*y - rise*x is constant exactly along lines of this slope.
        const long long key = static_cast<long long>(slope.run()) * y -
                              static_cast<long long>(slope.rise()) * x;
        auto [it, inserted] = id_of_key.try_emplace(key, static_cast<int>(buckets_.size()));
        if (inserted) buckets_.emplace_back();
        buckets_[it->second].push_back({x, y});
        bucket_of_[dim.index({x, y})] = it->second;
      }
    }
  }

  const GridDim& dim() const noexcept { return dim_; }
  const Slope& slope() const noexcept { return slope_; }
  int count() const noexcept { return static_cast<int>(buckets_.size()); }

  int id_of(const Point& p) const {
    dim_.require(p);
    return bucket_of_[dim_.index(p)];
  }

  std::span<const Point> bucket(int id) const { return buckets_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::vector<Point>>& buckets() const noexcept { return buckets_; }

  std::size_t max_population() const noexcept {
    std::size_t best = 0;
    for (const auto& b : buckets_) best = std::max(best, b.size());
    return best;
  }

 private:
  GridDim dim_;
  Slope slope_;
  std::vector<int> bucket_of_;
  std::vector<std::vector<Point>> buckets_;
};

inline int bucket_id(const Point& point, const Slope& slope, GridDim dim) {
  dim.require(point);
  return SlopeBucketIndex(dim, slope).id_of(point);
}

namespace detail {
inline void require_counting_domain(const Slope& slope, GridDim dim) {
  if (slope.p() > dim.n() || slope.q() > dim.n()) {
    throw UnsupportedParameter("bucket-count formula needs p, q <= n; got slope " +
                               slope.to_string() + " on G_" + std::to_string(dim.n()));
  }
}
}  // namespace detail

/// Number of lines of the given slope meeting G_n: pn + qn - pq. Negative
/// slopes reduce to |p|/q by the reflection x -> n+1-x. Exact whenever
/// p, q <= n; larger parameters throw UnsupportedParameter.
inline long long count_buckets(const Slope& slope, GridDim dim) {
  detail::require_counting_domain(slope, dim);
  const long long n = dim.n();
  const long long p = slope.p();
  const long long q = slope.q();
  return p * n + q * n - p * q;
}

/// One point per line: the points in the first p rows or first q columns
/// (mirrored to the last q columns for negative slopes).
inline Construction representative_set(const Slope& slope, GridDim dim) {
  detail::require_counting_domain(slope, dim);
  const int n = dim.n();
  std::vector<Point> pts;
  for (int y = 1; y <= n; ++y) {
    for (int x = 1; x <= n; ++x) {
      const int column = slope.negative() ? n + 1 - x : x;
      if (y <= slope.p() || column <= slope.q()) pts.push_back({x, y});
    }
  }
  return Construction(dim, std::move(pts));
}

}  // namespace no3theta
