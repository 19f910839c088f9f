#pragma once

// Interior-point classification, anti-diagonal bucket statistics, and the
// known lower/upper bounds on the size of a peaceful construction.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "no3theta/angle.hpp"
#include "no3theta/grid.hpp"

namespace no3theta {

struct InteriorFlags {
  Point point;
  bool column_interior = false;
  bool row_interior = false;
  bool bucket_interior = false;  // strictly inside its -1-slope line

  friend bool operator==(const InteriorFlags&, const InteriorFlags&) = default;
};

/// One entry per chosen point, in (y, x) order. A point is interior to a line
/// when chosen points lie strictly on both sides of it along that line.
inline std::vector<InteriorFlags> interior_report(const Construction& c) {
  std::map<int, std::pair<int, int>> column_span, row_span, diag_span;  // min/max of the running coordinate
  auto widen = [](std::map<int, std::pair<int, int>>& m, int key, int v) {
    auto [it, inserted] = m.try_emplace(key, v, v);
    if (!inserted) it->second = {std::min(it->second.first, v), std::max(it->second.second, v)};
  };
  for (const auto& p : c.points()) {
    widen(column_span, p.x, p.y);
    widen(row_span, p.y, p.x);
    widen(diag_span, p.x + p.y, p.x);
  }
  auto strictly_inside = [](const std::pair<int, int>& span, int v) {
    return span.first < v && v < span.second;
  };
  std::vector<InteriorFlags> out;
  out.reserve(c.size());
  for (const auto& p : c.points()) {
    out.push_back({p, strictly_inside(column_span.at(p.x), p.y), strictly_inside(row_span.at(p.y), p.x),
                   strictly_inside(diag_span.at(p.x + p.y), p.x)});
  }
  return out;
}

/// Occupancy of the -1-slope buckets (anti-diagonals) by a construction.
struct BucketStats {
  int k = 0;               // occupied buckets
  int multi_buckets = 0;   // buckets holding >= 2 chosen points
  int multi_points = 0;    // chosen points in those buckets
  int interior_multi = 0;  // bucket-interior points among them

  friend bool operator==(const BucketStats&, const BucketStats&) = default;
};

inline BucketStats bucket_stats(const Construction& c) {
  const SlopeBucketIndex index(c.dim(), Slope(1, 1, true));
  std::vector<int> population(static_cast<std::size_t>(index.count()), 0);
  for (const auto& p : c.points()) ++population[static_cast<std::size_t>(index.id_of(p))];

  BucketStats s;
  for (int pop : population) {
    if (pop > 0) ++s.k;
    if (pop >= 2) {
      ++s.multi_buckets;
      s.multi_points += pop;
    }
  }
  for (const auto& f : interior_report(c)) {
    // Interior points only exist in buckets with >= 3 points, all of them multi-buckets.
    if (f.bucket_interior) ++s.interior_multi;
  }
  return s;
}

struct LowerBound {
  std::optional<int> value;
  std::string note;
};

/// 2n from the two-rows construction when 135 <= theta < 180; otherwise unknown.
inline LowerBound lower_bound(const AngleSpec& theta, GridDim dim) {
  const int n = dim.n();
  if (theta.in_obtuse_band()) {
    // The two rows coincide at n = 1, where the single point is the whole grid.
    return {n == 1 ? 1 : 2 * n, "two-rows construction (135 <= theta < 180)"};
  }
  if (theta.kind() == AngleSpec::Kind::Collinear) {
    return {std::nullopt, "2n is attained for small n but is open in general"};
  }
  return {std::nullopt, "no lower bound known for this angle"};
}

/// One candidate upper bound and where it comes from.
struct BoundTerm {
  std::string name;
  std::optional<long long> value;  // nullopt when its hypothesis fails
  bool external = false;           // cited literature result, not proved here
  bool informational = false;      // reported only; never used for the minimum
  std::string reason;
};

struct UpperBound {
  long long value = 0;
  std::string formula;
  bool external = false;
  std::vector<BoundTerm> terms;
};

/// Stated value 2n + f(p,q) - 2*max(p,q), or nullopt when p or q >= n.
inline std::optional<long long> general_upper_bound(const AngleSpec& theta, GridDim dim) {
  if (!theta.is_tangent()) return std::nullopt;
  const long long n = dim.n();
  if (theta.p() >= n || theta.q() >= n) return std::nullopt;
  const Slope slope(static_cast<int>(theta.p()), static_cast<int>(theta.q()), theta.sign() < 0);
  return 2 * n + count_buckets(slope, dim) - 2 * std::max(theta.p(), theta.q());
}

/// Minimum over every applicable bound. Ties go to the earlier term, so a
/// proved formula wins over the trivial n^2.
inline UpperBound upper_bound(const AngleSpec& theta, GridDim dim) {
  const long long n = dim.n();
  UpperBound ub;
  auto& terms = ub.terms;

  if (theta.is_135()) terms.push_back({"3n-2", 3 * n - 2, false, false, ""});
  switch (theta.kind()) {
    case AngleSpec::Kind::Collinear:
      terms.push_back({"2n", 2 * n, false, false, "two points per row"});
      break;
    case AngleSpec::Kind::Right:
      if (n >= 2) {
        terms.push_back({"2n-2", 2 * n - 2, true, false, "no-three-in-an-L result from the literature"});
      }
      break;
    case AngleSpec::Kind::Tangent: {
      BoundTerm general{"2n+f(p,q)-2max(p,q)", general_upper_bound(theta, dim), false, false, ""};
      if (!general.value) general.reason = "needs p, q < n";
      terms.push_back(general);

      // Same argument with the exact largest line population in place of
      // n/max(p,q). Not a proved bound; shown next to the stated one.
      if (general.value) {
        const Slope slope(static_cast<int>(theta.p()), static_cast<int>(theta.q()), theta.sign() < 0);
        const long long cap = static_cast<long long>(SlopeBucketIndex(dim, slope).max_population());
        const long long used = (2 * n + cap - 1) / cap;
        terms.push_back({"2n+f(p,q)-ceil(2n/maxpop)", 2 * n + count_buckets(slope, dim) - used, false,
                         true, "exact line capacity " + std::to_string(cap) + "; not a proved bound"});
      }
      break;
    }
  }
  terms.push_back({"n^2", n * n, false, false, "grid size"});

  const BoundTerm* best = nullptr;
  for (const auto& t : terms) {
    if (t.informational || !t.value) continue;
    if (!best || *t.value < *best->value) best = &t;
  }
  ub.value = *best->value;
  ub.formula = best->name;
  ub.external = best->external;
  return ub;
}

/// For a peaceful 135-degree construction with exactly 2n points, at most
/// 2n - 1 - k further points can be added, k the occupied anti-diagonals.
inline int capacity_after(const Construction& c) {
  const int n = c.dim().n();
  if (static_cast<int>(c.size()) != 2 * n) {
    throw LemmaInapplicable("capacity bound needs exactly 2n = " + std::to_string(2 * n) +
                            " points, got " + std::to_string(c.size()));
  }
  if (auto check = verify(c, AngleSpec::tangent(-1, 1, 1), 1); !check.peaceful()) {
    throw LemmaInapplicable("capacity bound needs a 135-peaceful construction; found " +
                            to_string(check.violations.front()));
  }
  return 2 * n - 1 - bucket_stats(c).k;
}

}  // namespace no3theta
