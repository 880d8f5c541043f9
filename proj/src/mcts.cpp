#include "latmcts/mcts.hpp"

#include <cassert>
#include <chrono>
#include <stdexcept>

namespace latmcts {

void MctsConfig::validate() const {
  const bool has_loops = loops > 0;
  const bool has_time = time_budget_ms > 0.0;
  if (has_loops == has_time)
    throw std::invalid_argument("exactly one of mcts.loops / mcts.time_budget_ms must be set");
  if (!(exploration_c > 0.0)) throw std::invalid_argument("mcts.c must be > 0");
  if (selection_depth_cap < 0) throw std::invalid_argument("selection depth cap must be >= 1 (or 0 for auto)");
  if (game_cap_steps < 0) throw std::invalid_argument("game step cap must be >= 1 (or 0 for auto)");
  if (!(reward_scale > 0.0)) throw std::invalid_argument("reward scale must be > 0");
  rollout.validate();
}

int MctsConfig::resolved_depth_cap(const GridConfig& cfg) const {
  return selection_depth_cap > 0 ? selection_depth_cap : 4 * cfg.side;
}

long MctsConfig::resolved_game_cap(const GridConfig& cfg) const {
  return game_cap_steps > 0 ? game_cap_steps : 100L * cfg.side * cfg.side;
}

SearchEngine::SearchEngine(const GridConfig& grid, const MctsConfig& cfg)
    : grid_(grid),
      cfg_(cfg),
      depth_cap_(cfg.resolved_depth_cap(grid)),
      rollout_cap_(cfg.rollout.resolved_cap(grid)),
      game_cap_(cfg.resolved_game_cap(grid)),
      stamp_(grid.side, 0u) {
  grid_.validate();
  cfg_.validate();
  if (cfg_.rollout.kind == PolicyKind::LevyFlight)
    levy_.emplace(cfg_.rollout.levy_mu, cfg_.rollout.resolved_levy_max(grid_));
}

Direction SearchEngine::pick_uniform(const Direction* cand, int n, Rng& rng) const {
  return n == 1 ? cand[0] : cand[rng.below(static_cast<uint64_t>(n))];
}

void SearchEngine::run_loop(Position root, StatTable& stats, const TargetDistribution& dist,
                            Rng& rng) {
  const Position practice = sample_target(dist, rng);

  ++epoch_;
  path_.clear();
  auto record = [&](Position p, long step_idx) {
    uint32_t& s = stamp_.at(p);
    if (s != epoch_) {
      s = epoch_;
      path_.emplace_back(p, step_idx);
    }
  };

  Position pos = root;
  long walk_steps = 0;
  record(pos, 0);
  bool found = detected(pos, practice, grid_);

  // selection, then a single expansion step
  if (!found) {
    int depth = 0;
    while (depth < depth_cap_) {
      Direction cand[4];
      int n_unvisited = 0;
      for (Direction d : kDirections) {
        if (stats.visits(step(pos, d, grid_)) == 0) cand[n_unvisited++] = d;
      }
      if (n_unvisited > 0) {
        // expansion: one unvisited neighbor, chosen uniformly
        pos = step(pos, pick_uniform(cand, n_unvisited, rng), grid_);
        ++walk_steps;
        record(pos, walk_steps);
        found = detected(pos, practice, grid_);
        break;
      }
      const int64_t parent_n = stats.visits(pos);
      assert(parent_n >= 1);
      double best = -std::numeric_limits<double>::infinity();
      int n_best = 0;
      for (Direction d : kDirections) {
        const Position nb = step(pos, d, grid_);
        const double v =
            uct_value(stats.visits(nb), stats.reward_sum(nb), parent_n, cfg_.exploration_c);
        if (v > best) {
          best = v;
          cand[0] = d;
          n_best = 1;
        } else if (v == best) {
          cand[n_best++] = d;
        }
      }
      pos = step(pos, pick_uniform(cand, n_best, rng), grid_);
      ++walk_steps;
      ++depth;
      record(pos, walk_steps);
      if (detected(pos, practice, grid_)) {
        found = true;
        break;
      }
    }
  }

  long rollout_steps = 0;
  bool rollout_capped = false;
  if (!found) {
    const RolloutResult r =
        rollout(pos, practice, cfg_.rollout, grid_, rng, levy_ ? &*levy_ : nullptr);
    rollout_steps = r.steps;
    rollout_capped = !r.found;
  }

  // backpropagation: each cell on the walk is credited once, at its first
  // occurrence
  if (rollout_capped) {
    const double reward = cfg_.reward_scale / static_cast<double>(rollout_cap_);
    for (const auto& entry : path_) stats.add(entry.first, reward);
  } else {
    const long total = walk_steps + rollout_steps;
    for (const auto& [cell, first_idx] : path_) {
      const long tau =
          cfg_.credit_mode == CreditMode::TotalSteps ? total : total - first_idx;
      stats.add(cell, cfg_.reward_scale / static_cast<double>(std::max(tau, 1L)));
    }
  }
}

Direction SearchEngine::select_move(Position root, StatTable& stats, const TargetDistribution& dist,
                                    Rng& rng) {
  int64_t pulls_before[4];
  for (size_t k = 0; k < 4; ++k)
    pulls_before[k] = stats.visits(step(root, kDirections[k], grid_));

  if (cfg_.loops > 0) {
    const long budget = std::max(cfg_.loops, kMinLoopsPerMove);
    for (long l = 0; l < budget; ++l) run_loop(root, stats, dist, rng);
  } else {
    using clock = std::chrono::steady_clock;
    const auto deadline =
        clock::now() + std::chrono::duration_cast<clock::duration>(
                           std::chrono::duration<double, std::milli>(cfg_.time_budget_ms));
    long done = 0;
    while (done < kMinLoopsPerMove || clock::now() < deadline) {
      run_loop(root, stats, dist, rng);
      ++done;
    }
  }

  Direction cand[4];
  int n_best = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < 4; ++k) {
    const Position nb = step(root, kDirections[k], grid_);
    const int64_t n = stats.visits(nb);
    if (n == 0) continue;
    double score;
    if (cfg_.final_move == FinalMoveRule::MaxVisits) {
      const int64_t pulled = n - pulls_before[k];
      if (pulled == 0) continue;  // untouched this decision
      score = static_cast<double>(pulled);
    } else {
      score = stats.reward_sum(nb) / static_cast<double>(n);
    }
    if (score > best) {
      best = score;
      cand[0] = kDirections[k];
      n_best = 1;
    } else if (score == best) {
      cand[n_best++] = kDirections[k];
    }
  }
  if (n_best == 0) return random_direction(rng);  // loops never left the root
  return pick_uniform(cand, n_best, rng);
}

GameResult SearchEngine::play(const TargetDistribution& dist, Rng& rng) {
  StatTable stats(grid_.side);
  GameResult res;
  res.target = sample_target(dist, rng);
  res.optimal = torus_l1(grid_.start, res.target, grid_.side);

  Position pos = grid_.start;
  long steps = 0;
  while (!detected(pos, res.target, grid_)) {
    if (steps >= game_cap_) {
      res.capped = true;
      break;
    }
    if (!cfg_.reuse_stats) stats.clear();
    const Direction d = select_move(pos, stats, dist, rng);
    pos = step(pos, d, grid_);
    ++steps;
    if (cfg_.record_moves) res.moves.push_back(d);
  }
  res.steps = steps;
  return res;
}

void run_loop(Position root, StatTable& stats, const TargetDistribution& dist,
              const GridConfig& cfg, const MctsConfig& mcfg, Rng& rng) {
  SearchEngine(cfg, mcfg).run_loop(root, stats, dist, rng);
}

Direction select_move(Position root, StatTable& stats, const TargetDistribution& dist,
                      const GridConfig& cfg, const MctsConfig& mcfg, Rng& rng) {
  return SearchEngine(cfg, mcfg).select_move(root, stats, dist, rng);
}

GameResult search_game(const TargetDistribution& dist, const GridConfig& cfg,
                       const MctsConfig& mcfg, Rng& rng) {
  return SearchEngine(cfg, mcfg).play(dist, rng);
}

}  // namespace latmcts
