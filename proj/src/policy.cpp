#include "latmcts/policy.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace latmcts {

void RolloutPolicy::validate() const {
  if (kind == PolicyKind::LevyFlight) {
    if (!(levy_mu > 1.0 && levy_mu <= 3.0))
      throw std::invalid_argument("policy.mu must lie in (1, 3], got " + std::to_string(levy_mu));
    if (levy_max_length < 0)
      throw std::invalid_argument("policy.lmax must be >= 1 (or 0 for auto)");
  }
  if (rollout_cap < 0) throw std::invalid_argument("policy.cap must be >= 1 (or 0 for auto)");
}

int RolloutPolicy::resolved_levy_max(const GridConfig& cfg) const {
  return levy_max_length > 0 ? levy_max_length : cfg.side;
}

long RolloutPolicy::resolved_cap(const GridConfig& cfg) const {
  return rollout_cap > 0 ? rollout_cap : 50L * cfg.side * cfg.side;
}

const char* RolloutPolicy::label() const {
  switch (kind) {
    case PolicyKind::RandomWalk: return "rw";
    case PolicyKind::LevyFlight: return "lfs";
    case PolicyKind::Nsarw: return "nsarw";
  }
  return "?";
}

LevyTable::LevyTable(double mu, int l_max) {
  if (l_max < 1) throw std::invalid_argument("levy l_max must be >= 1");
  pmf_.resize(static_cast<size_t>(l_max));
  cdf_.resize(static_cast<size_t>(l_max));
  double total = 0.0;
  for (int l = 1; l <= l_max; ++l) total += std::pow(static_cast<double>(l), -mu);
  double acc = 0.0;
  for (int l = 1; l <= l_max; ++l) {
    const double p = std::pow(static_cast<double>(l), -mu) / total;
    pmf_[static_cast<size_t>(l - 1)] = p;
    acc += p;
    cdf_[static_cast<size_t>(l - 1)] = acc;
  }
  cdf_.back() = 1.0;  // guard against rounding shortfall
}

int LevyTable::sample(Rng& rng) const {
  const double u = rng.uniform01();
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<int>(it - cdf_.begin()) + 1;
}

int levy_length(double mu, int l_max, Rng& rng) {
  return LevyTable(mu, l_max).sample(rng);
}

Direction nsarw_choose(Position pos, const VisitGrid& visits, const GridConfig& cfg, Rng& rng) {
  int32_t best = INT32_MAX;
  Direction cand[4];
  int n_cand = 0;
  for (Direction d : kDirections) {
    const int32_t c = visits.count(step(pos, d, cfg));
    if (c < best) {
      best = c;
      cand[0] = d;
      n_cand = 1;
    } else if (c == best) {
      cand[n_cand++] = d;
    }
  }
  return n_cand == 1 ? cand[0] : cand[rng.below(static_cast<uint64_t>(n_cand))];
}

namespace {

RolloutResult walk(Position start, Position target, const RolloutPolicy& policy,
                   const GridConfig& cfg, Rng& rng, long cap, const LevyTable* levy,
                   std::vector<Position>* trace) {
  Position pos = start;
  if (trace) trace->push_back(pos);
  if (detected(pos, target, cfg)) return {0, true};

  long steps = 0;
  switch (policy.kind) {
    case PolicyKind::RandomWalk: {
      while (steps < cap) {
        pos = step(pos, random_direction(rng), cfg);
        ++steps;
        if (trace) trace->push_back(pos);
        if (detected(pos, target, cfg)) return {steps, true};
      }
      break;
    }
    case PolicyKind::LevyFlight: {
      std::optional<LevyTable> local;
      if (!levy) local.emplace(policy.levy_mu, policy.resolved_levy_max(cfg));
      const LevyTable& table = levy ? *levy : *local;
      while (steps < cap) {
        const Direction dir = random_direction(rng);
        const int len = table.sample(rng);
        if (!policy.levy_unit_cost) ++steps;
        for (int k = 0; k < len; ++k) {
          pos = step(pos, dir, cfg);
          if (policy.levy_unit_cost) ++steps;
          if (trace) trace->push_back(pos);
          const bool check = policy.levy_midjump_detect || k == len - 1;
          if (check && detected(pos, target, cfg)) return {steps, true};
          if (policy.levy_unit_cost && steps >= cap) break;
        }
      }
      break;
    }
    case PolicyKind::Nsarw: {
      VisitGrid visits(cfg.side);
      visits.record(pos);
      while (steps < cap) {
        pos = step(pos, nsarw_choose(pos, visits, cfg, rng), cfg);
        visits.record(pos);
        ++steps;
        if (trace) trace->push_back(pos);
        if (detected(pos, target, cfg)) return {steps, true};
      }
      break;
    }
  }
  return {cap, false};
}

}  // namespace

RolloutResult rollout(Position start, Position target, const RolloutPolicy& policy,
                      const GridConfig& cfg, Rng& rng, const LevyTable* levy,
                      std::vector<Position>* trace) {
  return walk(start, target, policy, cfg, rng, policy.resolved_cap(cfg), levy, trace);
}

RolloutResult baseline_search(const RolloutPolicy& policy, Position target, const GridConfig& cfg,
                              Rng& rng, std::vector<Position>* trace) {
  return walk(cfg.start, target, policy, cfg, rng, kBaselineCap, nullptr, trace);
}

}  // namespace latmcts
