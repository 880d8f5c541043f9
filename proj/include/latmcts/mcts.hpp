#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "latmcts/lattice.hpp"
#include "latmcts/policy.hpp"
#include "latmcts/rng.hpp"
#include "latmcts/target.hpp"

namespace latmcts {

// Visit counts and cumulative rewards keyed by lattice cell. Statistics live
// on the state graph, not on tree paths: a revisited cell pools everything
// ever backed up through it.
class StatTable {
 public:
  StatTable() = default;
  explicit StatTable(int side) : n_(side, 0), w_(side, 0.0) {}

  int side() const { return n_.side(); }
  int64_t visits(Position p) const { return n_.at(p); }
  double reward_sum(Position p) const { return w_.at(p); }
  double avg_reward(Position p) const {
    const int64_t n = n_.at(p);
    return n > 0 ? w_.at(p) / static_cast<double>(n) : 0.0;
  }
  void add(Position p, double reward) {
    ++n_.at(p);
    w_.at(p) += reward;
  }
  void clear() {
    n_.fill(0);
    w_.fill(0.0);
  }

 private:
  Grid<int64_t> n_;
  Grid<double> w_;
};

enum class CreditMode { RemainingSteps, TotalSteps };

// Real-move choice after the loop budget. MaxVisits is the robust-child
// rule over the pulls accumulated during this decision; with statistics
// reused across moves it is the only reading that stays meaningful, since
// lifetime counts are dominated by wherever the searcher used to be.
// AvgReward (argmax of lifetime w/n) is kept as a toggle; on flat reward
// fields it chases frozen sampling noise and can deadlock a game.
enum class FinalMoveRule { MaxVisits, AvgReward };

struct MctsConfig {
  double exploration_c = std::numbers::sqrt2;
  long loops = 0;               // exactly one of loops / time_budget_ms is set
  double time_budget_ms = 0.0;  // wall-clock budget per move
  RolloutPolicy rollout;
  bool reuse_stats = true;
  CreditMode credit_mode = CreditMode::RemainingSteps;
  FinalMoveRule final_move = FinalMoveRule::MaxVisits;
  int selection_depth_cap = 0;  // 0 resolves to 4*N
  long game_cap_steps = 0;      // 0 resolves to 100*N*N
  bool record_moves = false;    // keep the real move sequence in GameResult
  double reward_scale = 1.0;    // test hook for the argmax-invariance property

  void validate() const;
  int resolved_depth_cap(const GridConfig& cfg) const;
  long resolved_game_cap(const GridConfig& cfg) const;
};

// at least this many loops run per decision regardless of budget
inline constexpr long kMinLoopsPerMove = 4;

// UCT value of a child cell. Unvisited children get +infinity so every
// neighbor is tried before any is revisited.
inline double uct_value(int64_t child_n, double child_w, int64_t parent_n, double c) {
  if (child_n == 0) return std::numeric_limits<double>::infinity();
  const double nd = static_cast<double>(child_n);
  return child_w / nd + c * std::sqrt(std::log(static_cast<double>(parent_n)) / nd);
}

struct GameResult {
  long steps = 0;
  int optimal = 0;
  Position target{};
  bool capped = false;
  std::vector<Direction> moves;  // filled when MctsConfig::record_moves
};

// One search engine instance owns the scratch buffers for the loop walk; the
// statistics table is supplied by the caller so it can persist across moves
// or be inspected by tests.
class SearchEngine {
 public:
  SearchEngine(const GridConfig& grid, const MctsConfig& cfg);

  const GridConfig& grid() const { return grid_; }
  const MctsConfig& config() const { return cfg_; }

  // One simulation loop from `root`: sample a practice target, select via
  // UCT, expand, roll out, back up 1/max(tau,1) along the walk.
  void run_loop(Position root, StatTable& stats, const TargetDistribution& dist, Rng& rng);

  // Runs the loop budget, then returns the direction to the best neighbor.
  Direction select_move(Position root, StatTable& stats, const TargetDistribution& dist, Rng& rng);

  // Full game: sample the real target, then select_move/step until detection
  // or the game step cap.
  GameResult play(const TargetDistribution& dist, Rng& rng);

 private:
  Direction pick_uniform(const Direction* cand, int n, Rng& rng) const;

  GridConfig grid_;
  MctsConfig cfg_;
  int depth_cap_;
  long rollout_cap_;
  long game_cap_;
  std::optional<LevyTable> levy_;

  // loop-walk scratch, reused across loops
  Grid<uint32_t> stamp_;
  uint32_t epoch_ = 0;
  std::vector<std::pair<Position, long>> path_;  // cell, first step index
};

// Spec-level conveniences over a caller-owned StatTable.
void run_loop(Position root, StatTable& stats, const TargetDistribution& dist,
              const GridConfig& cfg, const MctsConfig& mcfg, Rng& rng);
Direction select_move(Position root, StatTable& stats, const TargetDistribution& dist,
                      const GridConfig& cfg, const MctsConfig& mcfg, Rng& rng);
GameResult search_game(const TargetDistribution& dist, const GridConfig& cfg,
                       const MctsConfig& mcfg, Rng& rng);

}  // namespace latmcts
