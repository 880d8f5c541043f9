#include "latmcts/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

namespace latmcts {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

constexpr std::array kKnownKeys = {
    "grid.n", "grid.rv", "grid.start_x", "grid.start_y",
    "target.kind", "target.x", "target.y", "target.sigma",
    "strategy",
    "policy.kind", "policy.mu", "policy.lmax", "policy.cap",
    "policy.levy_unit_cost", "policy.levy_midjump_detect",
    "mcts.c", "mcts.loops", "mcts.time_budget_ms", "mcts.reuse_stats",
    "mcts.credit_mode", "mcts.final_move",
    "trials", "seed", "workers", "out", "strict",
    // informational provenance keys written by the CLI; accepted and ignored
    "latmcts.command", "latmcts.figure", "latmcts.scale", "latmcts.draws",
    "latmcts.sigmas", "latmcts.budgets", "latmcts.grids",
};

}  // namespace

bool is_known_key(const std::string& key) {
  return std::find(kKnownKeys.begin(), kKnownKeys.end(), key) != kKnownKeys.end();
}

KeyValues KeyValues::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  KeyValues kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = path + ":" + std::to_string(line_no);
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError(where + ": expected key=value, got '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    kv.set(key, value, where);
  }
  return kv;
}

void KeyValues::set(const std::string& key, std::string value, std::string source) {
  values_[key] = std::move(value);
  sources_[key] = std::move(source);
}

const std::string* KeyValues::find(const std::string& key) const {
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

const std::string& KeyValues::source(const std::string& key) const {
  static const std::string unknown = "?";
  const auto it = sources_.find(key);
  return it == sources_.end() ? unknown : it->second;
}

void KeyValues::merge_from(const KeyValues& overrides) {
  for (const auto& [k, v] : overrides.values_) set(k, v, overrides.source(k));
}

namespace {

[[noreturn]] void fail_key(const KeyValues& kv, const std::string& key, const std::string& what) {
  std::string msg = "config key '" + key + "': " + what;
  if (kv.contains(key)) msg += " (" + kv.source(key) + ")";
  throw ConfigError(msg);
}

const std::string& require(const KeyValues& kv, const std::string& key) {
  const std::string* v = kv.find(key);
  if (!v) throw ConfigError("missing required config key '" + key + "'");
  return *v;
}

long get_long(const KeyValues& kv, const std::string& key, long fallback) {
  const std::string* s = kv.find(key);
  if (!s) return fallback;
  long v = 0;
  const auto res = std::from_chars(s->data(), s->data() + s->size(), v);
  if (res.ec != std::errc{} || res.ptr != s->data() + s->size())
    fail_key(kv, key, "expected an integer, got '" + *s + "'");
  return v;
}

uint64_t get_u64(const KeyValues& kv, const std::string& key, uint64_t fallback) {
  const std::string* s = kv.find(key);
  if (!s) return fallback;
  uint64_t v = 0;
  const auto res = std::from_chars(s->data(), s->data() + s->size(), v);
  if (res.ec != std::errc{} || res.ptr != s->data() + s->size())
    fail_key(kv, key, "expected an unsigned integer, got '" + *s + "'");
  return v;
}

double get_double(const KeyValues& kv, const std::string& key, double fallback) {
  const std::string* s = kv.find(key);
  if (!s) return fallback;
  if (*s == "inf") return std::numeric_limits<double>::infinity();
  try {
    size_t idx = 0;
    const double v = std::stod(*s, &idx);
    if (idx != s->size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    fail_key(kv, key, "expected a number, got '" + *s + "'");
  }
}

bool get_bool(const KeyValues& kv, const std::string& key, bool fallback) {
  const std::string* s = kv.find(key);
  if (!s) return fallback;
  if (*s == "true" || *s == "1") return true;
  if (*s == "false" || *s == "0") return false;
  fail_key(kv, key, "expected true/false, got '" + *s + "'");
}

RolloutPolicy policy_from(const KeyValues& kv, PolicyKind kind) {
  RolloutPolicy p;
  p.kind = kind;
  p.levy_mu = get_double(kv, "policy.mu", 2.0);
  p.levy_max_length = static_cast<int>(get_long(kv, "policy.lmax", 0));
  p.rollout_cap = get_long(kv, "policy.cap", 0);
  p.levy_unit_cost = get_bool(kv, "policy.levy_unit_cost", true);
  p.levy_midjump_detect = get_bool(kv, "policy.levy_midjump_detect", true);
  return p;
}

}  // namespace

TargetDistribution resolve_target(const KeyValues& kv, int side) {
  TargetDistribution target;
  const std::string& kind = require(kv, "target.kind");
  if (kind == "delta") {
    if (!kv.contains("target.x") || !kv.contains("target.y"))
      throw ConfigError("delta target requires target.x and target.y");
    const int x = static_cast<int>(get_long(kv, "target.x", 0));
    const int y = static_cast<int>(get_long(kv, "target.y", 0));
    target = TargetDistribution::delta({x, y}, side);
  } else if (kind == "gaussian") {
    if (!kv.contains("target.sigma")) throw ConfigError("gaussian target requires target.sigma");
    const double sigma = get_double(kv, "target.sigma", 0.0);
    const double mx = get_double(kv, "target.x", side / 2.0);
    const double my = get_double(kv, "target.y", side / 2.0);
    target = TargetDistribution::gaussian(mx, my, sigma, side);
  } else if (kind == "uniform") {
    target = TargetDistribution::uniform(side);
  } else {
    fail_key(kv, "target.kind", "expected delta|gaussian|uniform, got '" + kind + "'");
  }
  try {
    target.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return target;
}

RunSettings resolve_run_settings(const KeyValues& kv) {
  for (const auto& [key, value] : kv.items()) {
    if (!is_known_key(key)) {
      std::string msg = "unknown config key '" + key + "'";
      const std::string& src = kv.source(key);
      if (src != "command line") msg += " (" + src + ")";
      throw ConfigError(msg);
    }
  }

  RunSettings s;
  s.grid.side = static_cast<int>(get_long(kv, "grid.n", 0));
  if (!kv.contains("grid.n")) throw ConfigError("missing required config key 'grid.n'");
  if (!kv.contains("grid.rv")) throw ConfigError("missing required config key 'grid.rv'");
  s.grid.vision_radius = static_cast<int>(get_long(kv, "grid.rv", 0));
  s.grid.start = {static_cast<int>(get_long(kv, "grid.start_x", 1)),
                  static_cast<int>(get_long(kv, "grid.start_y", 1))};
  try {
    s.grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  s.target = resolve_target(kv, s.grid.side);

  const std::string& strategy = require(kv, "strategy");
  if (strategy == "mcts") {
    MctsConfig m;
    m.exploration_c = get_double(kv, "mcts.c", std::numbers::sqrt2);
    m.loops = get_long(kv, "mcts.loops", 0);
    m.time_budget_ms = get_double(kv, "mcts.time_budget_ms", 0.0);
    m.reuse_stats = get_bool(kv, "mcts.reuse_stats", true);
    const std::string* credit = kv.find("mcts.credit_mode");
    if (credit) {
      if (*credit == "remaining_steps")
        m.credit_mode = CreditMode::RemainingSteps;
      else if (*credit == "total_steps")
        m.credit_mode = CreditMode::TotalSteps;
      else
        fail_key(kv, "mcts.credit_mode", "expected remaining_steps|total_steps, got '" + *credit + "'");
    }
    const std::string* fm = kv.find("mcts.final_move");
    if (fm) {
      if (*fm == "avg_reward")
        m.final_move = FinalMoveRule::AvgReward;
      else if (*fm == "max_visits")
        m.final_move = FinalMoveRule::MaxVisits;
      else
        fail_key(kv, "mcts.final_move", "expected avg_reward|max_visits, got '" + *fm + "'");
    }
    const std::string* pk = kv.find("policy.kind");
    PolicyKind kind = PolicyKind::RandomWalk;
    if (pk) {
      if (*pk == "rw")
        kind = PolicyKind::RandomWalk;
      else if (*pk == "levy")
        kind = PolicyKind::LevyFlight;
      else if (*pk == "nsarw")
        kind = PolicyKind::Nsarw;
      else
        fail_key(kv, "policy.kind", "expected rw|levy|nsarw, got '" + *pk + "'");
    }
    m.rollout = policy_from(kv, kind);
    try {
      m.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    s.strategy = Strategy::mcts_with(m);
  } else if (strategy == "rw") {
    s.strategy = Strategy::baseline_with(policy_from(kv, PolicyKind::RandomWalk));
  } else if (strategy == "lfs") {
    s.strategy = Strategy::baseline_with(policy_from(kv, PolicyKind::LevyFlight));
  } else if (strategy == "nsarw") {
    s.strategy = Strategy::baseline_with(policy_from(kv, PolicyKind::Nsarw));
  } else {
    fail_key(kv, "strategy", "expected mcts|rw|lfs|nsarw, got '" + strategy + "'");
  }
  try {
    s.strategy.baseline.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  s.trials = static_cast<int>(get_long(kv, "trials", 0));
  if (!kv.contains("trials")) throw ConfigError("missing required config key 'trials'");
  if (s.trials < 1) fail_key(kv, "trials", "must be >= 1");
  if (!kv.contains("seed")) throw ConfigError("missing required config key 'seed'");
  s.seed = get_u64(kv, "seed", 0);
  s.workers = static_cast<int>(get_long(kv, "workers", 0));
  if (const std::string* out = kv.find("out")) s.out = *out;
  s.strict = get_bool(kv, "strict", false);
  return s;
}

KvPairs echo_settings(const RunSettings& s) {
  KvPairs kv;
  kv.emplace_back("latmcts.command", "run");
  kv.emplace_back("grid.n", std::to_string(s.grid.side));
  kv.emplace_back("grid.rv", std::to_string(s.grid.vision_radius));
  kv.emplace_back("grid.start_x", std::to_string(s.grid.start.x));
  kv.emplace_back("grid.start_y", std::to_string(s.grid.start.y));
  kv.emplace_back("target.kind", s.target.kind_name());
  switch (s.target.kind) {
    case TargetDistribution::Kind::Delta:
      kv.emplace_back("target.x", std::to_string(s.target.delta_pos.x));
      kv.emplace_back("target.y", std::to_string(s.target.delta_pos.y));
      break;
    case TargetDistribution::Kind::Gaussian:
      kv.emplace_back("target.x", format_double(s.target.mean_x));
      kv.emplace_back("target.y", format_double(s.target.mean_y));
      kv.emplace_back("target.sigma", format_double(s.target.sigma));
      break;
    case TargetDistribution::Kind::Uniform:
      break;
  }

  const bool is_mcts = s.strategy.kind == Strategy::Kind::Mcts;
  kv.emplace_back("strategy", is_mcts ? "mcts" : s.strategy.label);
  const RolloutPolicy& pol = is_mcts ? s.strategy.mcts.rollout : s.strategy.baseline;
  if (is_mcts) {
    const char* pk = pol.kind == PolicyKind::RandomWalk
                         ? "rw"
                         : (pol.kind == PolicyKind::LevyFlight ? "levy" : "nsarw");
    kv.emplace_back("policy.kind", pk);
    kv.emplace_back("policy.cap", std::to_string(pol.resolved_cap(s.grid)));
  }
  if (pol.kind == PolicyKind::LevyFlight) {
    kv.emplace_back("policy.mu", format_double(pol.levy_mu));
    kv.emplace_back("policy.lmax", std::to_string(pol.resolved_levy_max(s.grid)));
    kv.emplace_back("policy.levy_unit_cost", pol.levy_unit_cost ? "true" : "false");
    kv.emplace_back("policy.levy_midjump_detect", pol.levy_midjump_detect ? "true" : "false");
  }
  if (is_mcts) {
    const MctsConfig& m = s.strategy.mcts;
    kv.emplace_back("mcts.c", format_double(m.exploration_c));
    if (m.loops > 0)
      kv.emplace_back("mcts.loops", std::to_string(m.loops));
    else
      kv.emplace_back("mcts.time_budget_ms", format_double(m.time_budget_ms));
    kv.emplace_back("mcts.reuse_stats", m.reuse_stats ? "true" : "false");
    kv.emplace_back("mcts.credit_mode",
                    m.credit_mode == CreditMode::RemainingSteps ? "remaining_steps" : "total_steps");
    kv.emplace_back("mcts.final_move",
                    m.final_move == FinalMoveRule::AvgReward ? "avg_reward" : "max_visits");
  }
  kv.emplace_back("trials", std::to_string(s.trials));
  kv.emplace_back("seed", std::to_string(s.seed));
  kv.emplace_back("workers", std::to_string(s.workers));
  kv.emplace_back("strict", s.strict ? "true" : "false");
  return kv;
}

}  // namespace latmcts
