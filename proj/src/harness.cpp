#include "latmcts/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace latmcts {

Strategy Strategy::mcts_with(MctsConfig cfg) {
  Strategy s;
  s.kind = Kind::Mcts;
  s.mcts = cfg;
  s.label = std::string("mcts-") + cfg.rollout.label();
  return s;
}

Strategy Strategy::baseline_with(RolloutPolicy policy) {
  Strategy s;
  s.kind = Kind::Baseline;
  s.baseline = policy;
  s.label = policy.label();
  return s;
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("LATTICE_MCTS_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

TrialRecord run_one(const Strategy& strategy, const TargetDistribution& dist,
                    const GridConfig& cfg, int trial, uint64_t base_seed) {
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = derive_seed(base_seed, static_cast<uint64_t>(trial));
  rec.strategy = strategy.label;
  Rng rng(rec.seed);

  const auto t0 = std::chrono::steady_clock::now();
  if (strategy.kind == Strategy::Kind::Mcts) {
    SearchEngine engine(cfg, strategy.mcts);
    const GameResult res = engine.play(dist, rng);
    rec.target = res.target;
    rec.optimal_steps = res.optimal;
    rec.steps_taken = res.steps;
    rec.capped = res.capped;
  } else {
    const Position target = sample_target(dist, rng);
    const RolloutResult res = baseline_search(strategy.baseline, target, cfg, rng);
    rec.target = target;
    rec.optimal_steps = torus_l1(cfg.start, target, cfg.side);
    rec.steps_taken = res.steps;
    rec.capped = !res.found;
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

}  // namespace

std::vector<TrialRecord> run_trials(const Strategy& strategy, const TargetDistribution& dist,
                                    const GridConfig& cfg, int trials, uint64_t base_seed,
                                    int workers) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  cfg.validate();
  dist.validate();

  std::vector<TrialRecord> records(static_cast<size_t>(trials));
  const int n_workers = std::min(resolve_workers(workers), trials);
  if (n_workers <= 1) {
    for (int i = 0; i < trials; ++i) records[static_cast<size_t>(i)] = run_one(strategy, dist, cfg, i, base_seed);
    return records;
  }

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < trials; i = next.fetch_add(1))
      records[static_cast<size_t>(i)] = run_one(strategy, dist, cfg, i, base_seed);
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(n_workers));
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return records;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
  const size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = p * static_cast<double>(n - 1);
  const size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

SummaryStats summarize(const std::vector<TrialRecord>& records) {
  if (records.size() < 2) throw std::invalid_argument("summarize needs at least 2 records");
  SummaryStats s;
  s.n = static_cast<int>(records.size());

  std::vector<double> excess;
  excess.reserve(records.size());
  double sum_excess = 0.0, sum_ratio = 0.0;
  for (const auto& r : records) {
    const double e = static_cast<double>(r.steps_taken - r.optimal_steps);
    excess.push_back(e);
    sum_excess += e;
    sum_ratio += static_cast<double>(r.steps_taken) / std::max(r.optimal_steps, 1);
  }
  const double n = static_cast<double>(s.n);
  s.mean_excess = sum_excess / n;
  s.mean_ratio = sum_ratio / n;

  double ss = 0.0;
  for (double e : excess) ss += (e - s.mean_excess) * (e - s.mean_excess);
  s.std_dev = std::sqrt(ss / (n - 1.0));
  s.ci95_half_width = 1.96 * s.std_dev / std::sqrt(n);

  std::sort(excess.begin(), excess.end());
  s.q1 = quantile_sorted(excess, 0.25);
  s.median = quantile_sorted(excess, 0.5);
  s.q3 = quantile_sorted(excess, 0.75);
  return s;
}

double mean_steps(const std::vector<TrialRecord>& records) {
  double sum = 0.0;
  for (const auto& r : records) sum += static_cast<double>(r.steps_taken);
  return records.empty() ? 0.0 : sum / static_cast<double>(records.size());
}

namespace {

int count_capped(const std::vector<TrialRecord>& records) {
  int c = 0;
  for (const auto& r : records) c += r.capped ? 1 : 0;
  return c;
}

SummaryRow make_row(std::string experiment, const Strategy& strategy, const GridConfig& cfg,
                    double sigma, int trials, uint64_t cell_seed,
                    const std::vector<TrialRecord>& records) {
  SummaryRow row;
  row.experiment = std::move(experiment);
  row.strategy = strategy.label;
  row.side = cfg.side;
  row.sigma = sigma;
  if (strategy.kind == Strategy::Kind::Mcts) {
    row.loops = strategy.mcts.loops;
    row.time_ms = strategy.mcts.time_budget_ms;
  }
  row.trials = trials;
  row.stats = summarize(records);
  row.capped_count = count_capped(records);
  row.base_seed = cell_seed;
  return row;
}

}  // namespace

std::vector<SummaryRow> experiment_gaussian_sweep(const GridConfig& cfg,
                                                  const std::vector<double>& sigmas,
                                                  const std::vector<Strategy>& strategies,
                                                  int trials, uint64_t base_seed, int workers) {
  std::vector<SummaryRow> rows;
  for (size_t si = 0; si < sigmas.size(); ++si) {
    const double sigma = sigmas[si];
    const TargetDistribution dist = std::isinf(sigma)
                                        ? TargetDistribution::uniform(cfg.side)
                                        : TargetDistribution::gaussian(sigma, cfg.side);
    // same cell seed for every strategy: paired targets
    const uint64_t cell_seed = derive_seed(base_seed, si, 0x6761757373ull);
    for (const auto& strategy : strategies) {
      const auto records = run_trials(strategy, dist, cfg, trials, cell_seed, workers);
      rows.push_back(make_row("gauss-sweep", strategy, cfg, sigma, trials, cell_seed, records));
    }
  }
  return rows;
}

std::vector<SummaryRow> experiment_budget_sweep(const GridConfig& cfg,
                                                const TargetDistribution& dist,
                                                const std::vector<long>& loop_budgets,
                                                const std::vector<double>& time_budgets_ms,
                                                const std::vector<Strategy>& strategies, int trials,
                                                uint64_t base_seed, int workers) {
  if (loop_budgets.empty() == time_budgets_ms.empty())
    throw std::invalid_argument("budget sweep needs exactly one of loop / time budget lists");

  std::vector<SummaryRow> rows;
  const uint64_t cell_seed = derive_seed(base_seed, 0, 0x627564676574ull);
  const size_t n_budgets = loop_budgets.empty() ? time_budgets_ms.size() : loop_budgets.size();
  for (size_t bi = 0; bi < n_budgets; ++bi) {
    for (const auto& proto : strategies) {
      if (proto.kind != Strategy::Kind::Mcts)
        throw std::invalid_argument("budget sweep strategies must be MCTS");
      Strategy strategy = proto;
      if (!loop_budgets.empty()) {
        strategy.mcts.loops = loop_budgets[bi];
        strategy.mcts.time_budget_ms = 0.0;
      } else {
        strategy.mcts.loops = 0;
        strategy.mcts.time_budget_ms = time_budgets_ms[bi];
      }
      const auto records = run_trials(strategy, dist, cfg, trials, cell_seed, workers);
      rows.push_back(make_row(loop_budgets.empty() ? "budget-time" : "budget-loops", strategy, cfg,
                              dist.sigma_label(), trials, cell_seed, records));
    }
  }
  return rows;
}

std::vector<NsarwConvergenceRow> experiment_nsarw_convergence(const std::vector<int>& grid_sides,
                                                              const MctsConfig& mcts_proto,
                                                              int vision_radius, int trials,
                                                              uint64_t base_seed, int workers) {
  std::vector<NsarwConvergenceRow> rows;
  for (size_t gi = 0; gi < grid_sides.size(); ++gi) {
    GridConfig cfg;
    cfg.side = grid_sides[gi];
    cfg.vision_radius = vision_radius;
    cfg.start = {1, 1};

    const TargetDistribution dist = TargetDistribution::uniform(cfg.side);
    const uint64_t cell_seed = derive_seed(base_seed, gi, 0x6e73617277ull);

    MctsConfig mcfg = mcts_proto;
    mcfg.rollout.kind = PolicyKind::RandomWalk;
    mcfg.reuse_stats = true;
    const Strategy mcts = Strategy::mcts_with(mcfg);
    RolloutPolicy nsarw;
    nsarw.kind = PolicyKind::Nsarw;
    const Strategy baseline = Strategy::baseline_with(nsarw);

    const auto mcts_records = run_trials(mcts, dist, cfg, trials, cell_seed, workers);
    const auto nsarw_records = run_trials(baseline, dist, cfg, trials, cell_seed, workers);

    NsarwConvergenceRow row;
    row.side = cfg.side;
    row.mcts = make_row("nsarw-convergence", mcts, cfg, dist.sigma_label(), trials, cell_seed,
                        mcts_records);
    row.nsarw = make_row("nsarw-convergence", baseline, cfg, dist.sigma_label(), trials, cell_seed,
                         nsarw_records);
    row.mean_steps_mcts = mean_steps(mcts_records);
    row.mean_steps_nsarw = mean_steps(nsarw_records);
    row.rel_gap = std::abs(row.mean_steps_mcts - row.mean_steps_nsarw) / row.mean_steps_nsarw;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace latmcts
