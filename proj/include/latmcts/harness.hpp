#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "latmcts/lattice.hpp"
#include "latmcts/mcts.hpp"
#include "latmcts/policy.hpp"
#include "latmcts/target.hpp"

namespace latmcts {

// A search strategy under benchmark: either MCTS with some rollout policy,
// or one of the bare walkers run as a baseline.
struct Strategy {
  enum class Kind { Mcts, Baseline };

  Kind kind = Kind::Baseline;
  MctsConfig mcts;         // used when kind == Mcts
  RolloutPolicy baseline;  // used when kind == Baseline
  std::string label;

  static Strategy mcts_with(MctsConfig cfg);
  static Strategy baseline_with(RolloutPolicy policy);
};

struct TrialRecord {
  int trial = 0;
  uint64_t seed = 0;
  Position target{};
  int optimal_steps = 0;
  long steps_taken = 0;
  bool capped = false;
  double wall_ms = 0.0;  // diagnostic only; never written to output files
  std::string strategy;
};

struct SummaryStats {
  int n = 0;
  double mean_excess = 0.0;  // mean of steps_taken - optimal_steps
  double mean_ratio = 0.0;   // mean of steps_taken / max(optimal_steps, 1)
  double std_dev = 0.0;      // sample std of the excess, n-1 denominator
  double ci95_half_width = 0.0;
  double q1 = 0.0, median = 0.0, q3 = 0.0;  // quartiles of the excess
};

// throws std::invalid_argument when records.size() < 2
SummaryStats summarize(const std::vector<TrialRecord>& records);

// Runs `trials` independent games of one strategy. Trial i draws its stream
// from derive_seed(base_seed, i), so two strategies run with the same
// base_seed see identical per-trial targets. workers <= 0 resolves to
// LATTICE_MCTS_WORKERS or hardware concurrency.
std::vector<TrialRecord> run_trials(const Strategy& strategy, const TargetDistribution& dist,
                                    const GridConfig& cfg, int trials, uint64_t base_seed,
                                    int workers = 0);

int resolve_workers(int requested);

// One experiment table row: a (strategy, distribution, budget) cell.
struct SummaryRow {
  std::string experiment;
  std::string strategy;
  int side = 0;
  double sigma = 0.0;  // +inf marks the uniform endpoint
  long loops = 0;
  double time_ms = 0.0;
  int trials = 0;
  SummaryStats stats;
  int capped_count = 0;
  uint64_t base_seed = 0;
};

// sigma sweep over Gaussian targets; +inf entries run the uniform endpoint.
// Strategies are paired per sigma cell (identical per-trial targets).
std::vector<SummaryRow> experiment_gaussian_sweep(const GridConfig& cfg,
                                                  const std::vector<double>& sigmas,
                                                  const std::vector<Strategy>& strategies,
                                                  int trials, uint64_t base_seed, int workers = 0);

// Budget sweep at a fixed target distribution. Exactly one of loop_budgets /
// time_budgets_ms should be non-empty; every MCTS strategy in `strategies`
// is re-run at each budget.
std::vector<SummaryRow> experiment_budget_sweep(const GridConfig& cfg,
                                                const TargetDistribution& dist,
                                                const std::vector<long>& loop_budgets,
                                                const std::vector<double>& time_budgets_ms,
                                                const std::vector<Strategy>& strategies, int trials,
                                                uint64_t base_seed, int workers = 0);

struct NsarwConvergenceRow {
  int side = 0;
  SummaryRow mcts;
  SummaryRow nsarw;
  double mean_steps_mcts = 0.0;
  double mean_steps_nsarw = 0.0;
  double rel_gap = 0.0;  // |mean_mcts - mean_nsarw| / mean_nsarw
};

// Uniform targets, MCTS-RW vs the NSARW baseline, paired per grid size.
std::vector<NsarwConvergenceRow> experiment_nsarw_convergence(const std::vector<int>& grid_sides,
                                                              const MctsConfig& mcts_proto,
                                                              int vision_radius, int trials,
                                                              uint64_t base_seed, int workers = 0);

double mean_steps(const std::vector<TrialRecord>& records);

}  // namespace latmcts
