#pragma once

#include <cstdint>
#include <vector>

#include "latmcts/lattice.hpp"
#include "latmcts/rng.hpp"

namespace latmcts {

enum class PolicyKind { RandomWalk, LevyFlight, Nsarw };

// Walker specification, used both as an MCTS rollout policy and as a
// standalone baseline searcher.
struct RolloutPolicy {
  PolicyKind kind = PolicyKind::RandomWalk;
  double levy_mu = 2.0;        // tail exponent, (1, 3]
  int levy_max_length = 0;     // 0 resolves to grid side (one full wrap)
  long rollout_cap = 0;        // 0 resolves to 50*N*N
  bool levy_unit_cost = true;  // a jump of length l costs l unit steps
  bool levy_midjump_detect = true;  // detection checked at every traversed cell

  void validate() const;
  int resolved_levy_max(const GridConfig& cfg) const;
  long resolved_cap(const GridConfig& cfg) const;
  const char* label() const;  // "rw" | "lfs" | "nsarw"
};

// Per-cell visit counts; counts only grow.
class VisitGrid {
 public:
  VisitGrid() = default;
  explicit VisitGrid(int side) : counts_(side, 0) {}

  void record(Position p) {
    ++counts_.at(p);
    ++total_;
  }
  int32_t count(Position p) const { return counts_.at(p); }
  long total() const { return total_; }
  int side() const { return counts_.side(); }
  void clear() {
    counts_.fill(0);
    total_ = 0;
  }

 private:
  Grid<int32_t> counts_;
  long total_ = 0;
};

// Truncated discrete power law P(l) proportional to l^-mu on [1, l_max],
// sampled by inverse CDF over the precomputed normalized mass.
class LevyTable {
 public:
  LevyTable(double mu, int l_max);

  int sample(Rng& rng) const;
  const std::vector<double>& pmf() const { return pmf_; }

 private:
  std::vector<double> pmf_;
  std::vector<double> cdf_;
};

// one-shot convenience; builds the table per call
int levy_length(double mu, int l_max, Rng& rng);

// Uniform choice among the directions whose neighbor cell has the minimum
// visit count.
Direction nsarw_choose(Position pos, const VisitGrid& visits, const GridConfig& cfg, Rng& rng);

struct RolloutResult {
  long steps = 0;
  bool found = false;
};

// Walks `policy` from start until the target is detected or `cap` unit steps
// have been spent. Consecutive recorded positions are always one unit move
// apart. `levy` may supply a prebuilt length table; `trace` records every
// occupied cell (start included) when non-null.
RolloutResult rollout(Position start, Position target, const RolloutPolicy& policy,
                      const GridConfig& cfg, Rng& rng, const LevyTable* levy = nullptr,
                      std::vector<Position>* trace = nullptr);

inline constexpr long kBaselineCap = 1'000'000;

// Baseline searcher: rollout semantics with a very large fixed cap.
// found=false flags cap exhaustion as a distinguished failure.
RolloutResult baseline_search(const RolloutPolicy& policy, Position target, const GridConfig& cfg,
                              Rng& rng, std::vector<Position>* trace = nullptr);

}  // namespace latmcts
