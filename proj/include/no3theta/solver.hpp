#pragma once

// Maximum peaceful construction search: the exhaustive oracle wrapper,
// branch-and-bound over the triple hypergraph, and a randomized greedy with
// local search.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stop_token>
#include <string>
#include <vector>

#include "no3theta/analysis.hpp"
#include "no3theta/angle.hpp"
#include "no3theta/constructions.hpp"
#include "no3theta/grid.hpp"
#include "no3theta/hypergraph.hpp"
#include "no3theta/oracle.hpp"

namespace no3theta {

enum class SearchMode { Oracle, BranchAndBound, Greedy };

inline const char* to_string(SearchMode m) noexcept {
  switch (m) {
    case SearchMode::Oracle: return "oracle";
    case SearchMode::BranchAndBound: return "exact";
    case SearchMode::Greedy: return "greedy";
  }
  return "?";
}

inline SearchMode parse_search_mode(std::string_view s) {
  if (s == "oracle") return SearchMode::Oracle;
  if (s == "exact" || s == "branch_and_bound" || s == "bnb") return SearchMode::BranchAndBound;
  if (s == "greedy") return SearchMode::Greedy;
  throw ParseError("unknown search mode '" + std::string(s) + "' (oracle, exact, greedy)");
}

struct SearchConfig {
  SearchMode mode = SearchMode::BranchAndBound;
  std::optional<std::uint64_t> node_budget;
  std::optional<std::chrono::milliseconds> time_budget;
  bool symmetry_breaking = true;
  std::uint64_t rng_seed = 0;
  int greedy_restarts = 16;
  int oracle_max_n = kDefaultOracleMaxN;
};

struct SolveReport {
  explicit SolveReport(Construction b) : best(std::move(b)) {}

  Construction best;
  int size = 0;
  bool optimal = false;
  bool lex_least = false;  // best is the lexicographically least maximum
  std::uint64_t nodes_explored = 0;
  std::chrono::milliseconds elapsed{0};
  std::optional<int> lower;
  long long upper = 0;
  std::string upper_formula;
  bool bound_exceeded = false;  // size beat the reported upper bound
  std::uint64_t seed = 0;
  SearchMode mode = SearchMode::BranchAndBound;
  std::string stop_reason;  // empty when the search ran to completion
};

namespace detail {

class Budget {
 public:
  Budget(const SearchConfig& cfg, std::stop_token stop)
      : start_(std::chrono::steady_clock::now()), cfg_(cfg), stop_(std::move(stop)) {}

  // Called once per search node.
  bool exhausted(std::uint64_t nodes) {
    if (!reason_.empty()) return true;
    if (stop_.stop_requested()) reason_ = "cancelled";
    else if (cfg_.node_budget && nodes > *cfg_.node_budget) reason_ = "node budget";
    else if (cfg_.time_budget && (nodes & 0xff) == 0 && elapsed() > *cfg_.time_budget) reason_ = "time budget";
    return !reason_.empty();
  }

  std::chrono::milliseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_);
  }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::chrono::steady_clock::time_point start_;
  const SearchConfig& cfg_;
  std::stop_token stop_;
  std::string reason_;
};

inline Construction to_construction(GridDim dim, const std::vector<int>& cells) {
  std::vector<Point> pts;
  pts.reserve(cells.size());
  for (int c : cells) pts.push_back(dim.point(c));
  return Construction(dim, std::move(pts));
}

inline void attach_bounds(SolveReport& r, GridDim dim, const AngleSpec& theta) {
  const auto ub = upper_bound(theta, dim);
  r.lower = lower_bound(theta, dim).value;
  r.upper = ub.value;
  r.upper_formula = ub.formula;
  r.bound_exceeded = r.size > ub.value;
}

/// The 8 images of a cell under the symmetries of the square.
inline std::array<int, 8> dihedral_images(GridDim dim, int cell) {
  const int n = dim.n();
  const Point p = dim.point(cell);
  const int x = p.x, y = p.y, rx = n + 1 - p.x, ry = n + 1 - p.y;
  const std::array<Point, 8> imgs{{{x, y}, {rx, y}, {x, ry}, {rx, ry}, {y, x}, {ry, x}, {y, rx}, {ry, rx}}};
  std::array<int, 8> out{};
  for (std::size_t i = 0; i < imgs.size(); ++i) out[i] = dim.index(imgs[i]);
  return out;
}

// Greedy state: block_count[k] is the number of chosen pairs that k would
// complete to a forbidden triple; a cell is live when it is free and unblocked.
class GreedyState {
 public:
  explicit GreedyState(const TripleHypergraph& hg)
      : hg_(hg), block_count_(static_cast<std::size_t>(hg.cell_count()), 0),
        in_set_(static_cast<std::size_t>(hg.cell_count()), 0),
        stamp_(static_cast<std::size_t>(hg.cell_count()), 0) {}

  const std::vector<int>& chosen() const noexcept { return chosen_; }
  bool live(int z) const noexcept { return !in_set_[z] && block_count_[z] == 0; }

  void add(int z) {
    for (int x : chosen_)
      for (int k : hg_.completions(z, x)) ++block_count_[k];
    chosen_.push_back(z);
    in_set_[z] = 1;
  }

  void remove(int z) {
    chosen_.erase(std::find(chosen_.begin(), chosen_.end(), z));
    in_set_[z] = 0;
    for (int x : chosen_)
      for (int k : hg_.completions(z, x)) --block_count_[k];
  }

  std::vector<int> live_cells() const {
    std::vector<int> out;
    for (int z = 0; z < hg_.cell_count(); ++z)
      if (live(z)) out.push_back(z);
    return out;
  }

  // Live cells that would become blocked if z were added.
  int newly_blocked(int z) {
    ++epoch_;
    int count = 0;
    for (int x : chosen_)
      for (int k : hg_.completions(z, x))
        if (k != z && live(k) && stamp_[k] != epoch_) {
          stamp_[k] = epoch_;
          ++count;
        }
    return count;
  }

  template <class Rng>
  void fill(Rng& rng) {
    for (;;) {
      const auto cand = live_cells();
      if (cand.empty()) return;
      int best_score = -1;
      std::vector<int> ties;
      for (int z : cand) {
        const int s = newly_blocked(z);
        if (best_score < 0 || s < best_score) {
          best_score = s;
          ties.assign(1, z);
        } else if (s == best_score) {
          ties.push_back(z);
        }
      }
      add(ties[std::uniform_int_distribution<std::size_t>(0, ties.size() - 1)(rng)]);
    }
  }

  // Remove one point and add two. Returns true on improvement.
  template <class Rng>
  bool one_out_two_in(Rng& rng) {
    auto order = chosen_;
    std::shuffle(order.begin(), order.end(), rng);
    for (int x : order) {
      remove(x);
      const auto freed = live_cells();
      for (int y : freed) {
        if (y == x) continue;
        add(y);
        for (int z : freed) {
          if (z != y && live(z)) {
            add(z);
            return true;
          }
        }
        remove(y);
      }
      add(x);
    }
    return false;
  }

  // Swap one chosen point for a different live cell, then refill.
  template <class Rng>
  void plateau_move(Rng& rng) {
    if (chosen_.empty()) return;
    const int x = chosen_[std::uniform_int_distribution<std::size_t>(0, chosen_.size() - 1)(rng)];
    remove(x);
    auto freed = live_cells();
    freed.erase(std::remove(freed.begin(), freed.end(), x), freed.end());
    if (freed.empty()) {
      add(x);
      return;
    }
    add(freed[std::uniform_int_distribution<std::size_t>(0, freed.size() - 1)(rng)]);
    fill(rng);
  }

 private:
  const TripleHypergraph& hg_;
  std::vector<int> block_count_;
  std::vector<std::uint8_t> in_set_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::vector<int> chosen_;
};

inline std::vector<int> greedy_search(const TripleHypergraph& hg, const SearchConfig& cfg, Budget& budget,
                                      std::uint64_t& steps) {
  const GridDim dim = hg.dim();
  const int cells = hg.cell_count();
  const int max_steps = std::min(2 * cells + 20, 400);

  std::vector<int> warm;
  if (dim.n() >= 2) {
    const auto rows = two_rows(dim);
    if (verify(rows, hg.theta(), 1).peaceful())
      for (const auto& p : rows.points()) warm.push_back(dim.index(p));
  }

  std::vector<int> best;
  for (int restart = 0; restart < std::max(1, cfg.greedy_restarts); ++restart) {
    if (restart > 0 && budget.exhausted(steps)) break;
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.rng_seed), static_cast<std::uint32_t>(cfg.rng_seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    GreedyState state(hg);
    if (restart == 0)
      for (int c : warm) state.add(c);
    state.fill(rng);
    auto keep = [&] {
      if (state.chosen().size() > best.size()) best = state.chosen();
    };
    keep();
    for (int step = 0; step < max_steps; ++step) {
      if (budget.exhausted(++steps)) break;
      if (state.one_out_two_in(rng)) state.fill(rng);
      else state.plateau_move(rng);
      keep();
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

// Include/exclude search over cells in a fixed order with a blocked mask and
// an undo stack. Prunes on chosen + live <= best, where live counts the
// undecided cells not yet blocked.
class BranchAndBound {
 public:
  BranchAndBound(const TripleHypergraph& hg, Budget& budget, std::uint64_t& nodes)
      : hg_(hg), cells_(hg.cell_count()), budget_(budget), nodes_(nodes),
        blocked_(static_cast<std::size_t>(cells_), 0), rank_(static_cast<std::size_t>(cells_), 0) {}

  /// Largest peaceful set strictly bigger than `incumbent`, or incumbent itself.
  /// Returns false if the budget ran out before the space was exhausted.
  bool maximise(std::vector<int> order, bool symmetry_breaking, std::vector<int>& incumbent) {
    set_order(std::move(order));
    target_mode_ = false;
    best_ = incumbent;
    root_rep_.assign(static_cast<std::size_t>(cells_), 1);
    if (symmetry_breaking) {
      for (int c = 0; c < cells_; ++c)
        for (int img : dihedral_images(hg_.dim(), c))
          if (rank_[img] < rank_[c]) root_rep_[c] = 0;
    }
    run();
    incumbent = best_;
    return !aborted_;
  }

  /// First set of exactly `target` cells in include-first order along `order`.
  std::optional<std::vector<int>> first_of_size(std::vector<int> order, int target) {
    set_order(std::move(order));
    target_mode_ = true;
    target_ = target;
    root_rep_.assign(static_cast<std::size_t>(cells_), 1);
    run();
    if (!found_) return std::nullopt;
    return best_;
  }

  bool aborted() const noexcept { return aborted_; }

 private:
  void set_order(std::vector<int> order) {
    order_ = std::move(order);
    for (int pos = 0; pos < cells_; ++pos) rank_[order_[pos]] = pos;
  }

  void run() {
    std::fill(blocked_.begin(), blocked_.end(), 0);
    undo_.clear();
    chosen_.clear();
    live_ = cells_;
    aborted_ = false;
    found_ = false;
    dfs(0);
  }

  void dfs(int pos) {
    if (aborted_ || found_) return;
    if (budget_.exhausted(++nodes_)) {
      aborted_ = true;
      return;
    }
    const int chosen = static_cast<int>(chosen_.size());
    if (target_mode_) {
      if (chosen + live_ < target_) return;
      if (chosen == target_) {
        best_ = chosen_;
        std::sort(best_.begin(), best_.end());
        found_ = true;
        return;
      }
    } else {
      if (chosen + live_ <= static_cast<int>(best_.size())) return;
      if (live_ == 0) {
        best_ = chosen_;
        std::sort(best_.begin(), best_.end());
        return;
      }
    }

    const int cell = order_[pos];
    if (blocked_[cell]) {
      dfs(pos + 1);
      return;
    }
    --live_;
    if (!chosen_.empty() || root_rep_[cell]) {
      const std::size_t mark = undo_.size();
      include(cell, pos);
      dfs(pos + 1);
      chosen_.pop_back();
      while (undo_.size() > mark) {
        const int k = undo_.back();
        undo_.pop_back();
        blocked_[k] = 0;
        if (rank_[k] > pos) ++live_;
      }
    }
    dfs(pos + 1);
    ++live_;
  }

  void include(int cell, int pos) {
    for (int other : chosen_) {
      for (int k : hg_.completions(cell, other)) {
        if (blocked_[k]) continue;
        blocked_[k] = 1;
        undo_.push_back(k);
        if (rank_[k] > pos) --live_;
      }
    }
    chosen_.push_back(cell);
  }

  const TripleHypergraph& hg_;
  int cells_;
  Budget& budget_;
  std::uint64_t& nodes_;
  std::vector<std::uint8_t> blocked_;
  std::vector<int> rank_;
  std::vector<int> order_;
  std::vector<std::uint8_t> root_rep_;
  std::vector<int> undo_;
  std::vector<int> chosen_;
  std::vector<int> best_;
  int live_ = 0;
  bool aborted_ = false;
  bool target_mode_ = false;
  bool found_ = false;
  int target_ = 0;
};

}  // namespace detail

inline SolveReport solve_oracle(GridDim dim, const AngleSpec& theta, const SearchConfig& cfg = {}) {
  auto res = oracle_maximum(dim, theta, cfg.oracle_max_n);
  SolveReport r(res.best);
  r.size = static_cast<int>(res.best.size());
  r.optimal = true;
  r.lex_least = true;
  r.nodes_explored = res.nodes;
  r.elapsed = res.elapsed;
  r.seed = cfg.rng_seed;
  r.mode = SearchMode::Oracle;
  detail::attach_bounds(r, dim, theta);
  return r;
}

inline SolveReport solve_greedy(GridDim dim, const AngleSpec& theta, const SearchConfig& cfg = {},
                                std::stop_token stop = {}) {
  detail::Budget budget(cfg, std::move(stop));
  const TripleHypergraph hg(dim, theta);
  std::uint64_t steps = 0;
  const auto cells = detail::greedy_search(hg, cfg, budget, steps);

  SolveReport r(detail::to_construction(dim, cells));
  if (!verify(r.best, theta, 1).peaceful()) throw std::logic_error("greedy produced a non-peaceful set");
  r.size = static_cast<int>(cells.size());
  r.nodes_explored = steps;
  r.elapsed = budget.elapsed();
  r.seed = cfg.rng_seed;
  r.mode = SearchMode::Greedy;
  r.stop_reason = budget.reason();
  detail::attach_bounds(r, dim, theta);
  return r;
}

/// Exact maximum by branch-and-bound. Cells are branched in descending
/// hypergraph degree (row-major on ties); the first chosen cell is restricted
/// to orbit representatives under the square's symmetries. Once the optimum
/// size is proved, a second pass in row-major order extracts the
/// lexicographically least optimum.
inline SolveReport solve_exact(GridDim dim, const AngleSpec& theta, const SearchConfig& cfg = {},
                               std::stop_token stop = {}) {
  detail::Budget budget(cfg, std::move(stop));
  const TripleHypergraph hg(dim, theta);
  const int cells = hg.cell_count();

  std::vector<int> order(static_cast<std::size_t>(cells));
  std::iota(order.begin(), order.end(), 0);
  const std::vector<int> row_major = order;
  if (hg.eager()) {
    const auto deg = hg.degrees();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] > deg[b]; });
  }

  // Warm start only tightens pruning; it never decides optimality.
  SearchConfig warm_cfg = cfg;
  warm_cfg.greedy_restarts = std::min(cfg.greedy_restarts, 4);
  std::uint64_t nodes = 0;
  std::vector<int> best = detail::greedy_search(hg, warm_cfg, budget, nodes);

  detail::BranchAndBound bnb(hg, budget, nodes);
  const bool complete = !budget.exhausted(nodes) && bnb.maximise(order, cfg.symmetry_breaking, best);

  SolveReport r(detail::to_construction(dim, best));
  r.optimal = complete;
  if (complete) {
    if (auto lex = bnb.first_of_size(row_major, static_cast<int>(best.size()))) {
      r.best = detail::to_construction(dim, *lex);
      r.lex_least = true;
    }
  }
  if (!verify(r.best, theta, 1).peaceful()) throw std::logic_error("search produced a non-peaceful set");
  r.size = static_cast<int>(r.best.size());
  r.nodes_explored = nodes;
  r.elapsed = budget.elapsed();
  r.seed = cfg.rng_seed;
  r.mode = SearchMode::BranchAndBound;
  r.stop_reason = budget.reason();
  detail::attach_bounds(r, dim, theta);
  return r;
}

inline SolveReport solve(GridDim dim, const AngleSpec& theta, const SearchConfig& cfg = {},
                         std::stop_token stop = {}) {
  switch (cfg.mode) {
    case SearchMode::Oracle: return solve_oracle(dim, theta, cfg);
    case SearchMode::Greedy: return solve_greedy(dim, theta, cfg, std::move(stop));
    case SearchMode::BranchAndBound: break;
  }
  return solve_exact(dim, theta, cfg, std::move(stop));
}

}  // namespace no3theta
