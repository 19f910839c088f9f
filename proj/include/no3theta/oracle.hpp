#pragma once

// Exhaustive reference search. Deliberately shares nothing with the
// branch-and-bound path beyond angle_equals: the triple test is a plain
// lookup table over all cell triples, and cells are visited in row-major
// order with include-first branching, so the first maximum found is the
// lexicographically least one.

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

#include "no3theta/angle.hpp"
#include "no3theta/grid.hpp"

namespace no3theta {

inline constexpr int kDefaultOracleMaxN = 4;

class TripleTable {
 public:
  TripleTable(GridDim dim, const AngleSpec& theta) : cells_(dim.cell_count()) {
    const std::size_t n = static_cast<std::size_t>(cells_);
    bad_.assign(n * n * n, 0);
    for (int i = 0; i < cells_; ++i)
      for (int j = i + 1; j < cells_; ++j)
        for (int k = j + 1; k < cells_; ++k) {
          if (!triple_among(dim.point(i), dim.point(j), dim.point(k), theta)) continue;
          for (auto [a, b, c] : {std::array{i, j, k}, std::array{i, k, j}, std::array{j, i, k},
                                 std::array{j, k, i}, std::array{k, i, j}, std::array{k, j, i}})
            bad_[(static_cast<std::size_t>(a) * n + b) * n + c] = 1;
        }
  }

  bool forms_triple(int i, int j, int k) const noexcept {
    const std::size_t n = static_cast<std::size_t>(cells_);
    return bad_[(static_cast<std::size_t>(i) * n + j) * n + k] != 0;
  }

  // True iff adding `cell` to `chosen` keeps it peaceful.
  bool compatible(int cell, const std::vector<int>& chosen) const noexcept {
    for (std::size_t a = 0; a < chosen.size(); ++a)
      for (std::size_t b = a + 1; b < chosen.size(); ++b)
        if (forms_triple(cell, chosen[a], chosen[b])) return false;
    return true;
  }

 private:
  int cells_;
  std::vector<std::uint8_t> bad_;
};

struct OracleResult {
  Construction best;
  std::uint64_t nodes = 0;
  std::chrono::milliseconds elapsed{0};
};

inline void require_oracle_size(GridDim dim, int max_n) {
  if (dim.n() > max_n) {
    throw Refused("exhaustive oracle limited to n <= " + std::to_string(max_n) + " (got " +
                  std::to_string(dim.n()) + "); raise the cap explicitly or use the exact solver");
  }
}

/// Maximum peaceful construction by exhaustive search, lexicographically least among maxima.
inline OracleResult oracle_maximum(GridDim dim, const AngleSpec& theta, int max_n = kDefaultOracleMaxN) {
  require_oracle_size(dim, max_n);
  const auto start = std::chrono::steady_clock::now();
  const TripleTable table(dim, theta);
  const int cells = dim.cell_count();

  std::vector<int> chosen, best;
  std::uint64_t nodes = 0;
  std::function<void(int)> dfs = [&](int i) {
    ++nodes;
    if (chosen.size() + static_cast<std::size_t>(cells - i) <= best.size()) return;
    if (i == cells) {
      best = chosen;
      return;
    }
    if (table.compatible(i, chosen)) {
      chosen.push_back(i);
      dfs(i + 1);
      chosen.pop_back();
    }
    dfs(i + 1);
  };
  dfs(0);

  std::vector<Point> pts;
  for (int c : best) pts.push_back(dim.point(c));
  return {Construction(dim, std::move(pts)), nodes,
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)};
}

/// Calls fn for every peaceful construction with exactly `size` points, in
/// lexicographic order.
template <class Fn>
void enumerate_peaceful(GridDim dim, const AngleSpec& theta, int size, Fn&& fn,
                        int max_n = kDefaultOracleMaxN) {
  require_oracle_size(dim, max_n);
  const TripleTable table(dim, theta);
  const int cells = dim.cell_count();
  std::vector<int> chosen;
  std::function<void(int)> dfs = [&](int i) {
    if (static_cast<int>(chosen.size()) == size) {
      std::vector<Point> pts;
      for (int c : chosen) pts.push_back(dim.point(c));
      fn(Construction(dim, std::move(pts)));
      return;
    }
    if (static_cast<int>(chosen.size()) + (cells - i) < size) return;
    if (table.compatible(i, chosen)) {
      chosen.push_back(i);
      dfs(i + 1);
      chosen.pop_back();
    }
    dfs(i + 1);
  };
  dfs(0);
}

}  // namespace no3theta
