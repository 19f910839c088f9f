#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "no3theta/angle.hpp"
#include "no3theta/grid.hpp"

namespace no3theta {

/// The forbidden-triple hypergraph of G_n for one angle, queried by pair:
/// completions(i, j) lists every cell k such that {i, j, k} contains the
/// target angle at some vertex. Cells are row-major indices.
///
/// Small grids are indexed eagerly into one flat table; larger ones compute
/// pairs on first use and memoise them. Not safe for concurrent use.
class TripleHypergraph {
 public:
  static constexpr int kEagerCellLimit = 400;

  TripleHypergraph(GridDim dim, AngleSpec theta)
      : dim_(dim), theta_(theta), cells_(dim.cell_count()), eager_(cells_ <= kEagerCellLimit) {
    if (eager_) build_table();
  }

  const GridDim& dim() const noexcept { return dim_; }
  const AngleSpec& theta() const noexcept { return theta_; }
  int cell_count() const noexcept { return cells_; }
  bool eager() const noexcept { return eager_; }

  std::span<const int> completions(int i, int j) const {
    if (eager_) {
      const std::size_t row = static_cast<std::size_t>(i) * cells_ + j;
      return {data_.data() + offsets_[row], data_.data() + offsets_[row + 1]};
    }
    const auto key = static_cast<std::uint64_t>(std::min(i, j)) * cells_ + std::max(i, j);
    auto it = memo_.find(key);
    if (it == memo_.end()) it = memo_.emplace(key, compute_pair(i, j)).first;
    return it->second;
  }

  /// Sum over partners j of |completions(i, j)|: twice the number of
  /// hyperedges through i. Only meaningful as a ranking.
  std::vector<long long> degrees() const {
    std::vector<long long> deg(static_cast<std::size_t>(cells_), 0);
    for (int i = 0; i < cells_; ++i)
      for (int j = 0; j < cells_; ++j)
        if (i != j) deg[i] += static_cast<long long>(completions(i, j).size());
    return deg;
  }

 private:
  std::vector<int> compute_pair(int i, int j) const {
    std::vector<int> out;
    if (i == j) return out;
    const Point pi = dim_.point(i), pj = dim_.point(j);
    auto take = [&](const Point& k) { out.push_back(dim_.index(k)); };
    for_each_completion(dim_, pi, pj, theta_, take);  // angle at i
    for_each_completion(dim_, pj, pi, theta_, take);  // angle at j
    for (int k = 0; k < cells_; ++k) {                 // angle at k
      if (k != i && k != j && angle_equals(pi, dim_.point(k), pj, theta_)) out.push_back(k);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void build_table() {
    const std::size_t n = static_cast<std::size_t>(cells_);
    std::vector<std::vector<int>> upper(n * (n - 1) / 2);
    auto slot = [n](std::size_t i, std::size_t j) { return i * (2 * n - i - 1) / 2 + (j - i - 1); };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        upper[slot(i, j)] = compute_pair(static_cast<int>(i), static_cast<int>(j));

    offsets_.assign(n * n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t len = i == j ? 0 : upper[slot(std::min(i, j), std::max(i, j))].size();
        offsets_[i * n + j + 1] = offsets_[i * n + j] + static_cast<std::uint32_t>(len);
      }
    }
    data_.resize(offsets_.back());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const auto& list = upper[slot(std::min(i, j), std::max(i, j))];
        std::copy(list.begin(), list.end(), data_.begin() + offsets_[i * n + j]);
      }
    }
  }

  GridDim dim_;
  AngleSpec theta_;
  int cells_;
  bool eager_;
  std::vector<std::uint32_t> offsets_;
  std::vector<int> data_;
  mutable std::unordered_map<std::uint64_t, std::vector<int>> memo_;
};

}  // namespace no3theta
