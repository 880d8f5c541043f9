#include "latmcts/cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "latmcts/config.hpp"
#include "latmcts/report.hpp"

namespace latmcts {

namespace {

constexpr uint64_t kDefaultFigureSeed = 42;

// "delta:10,10" | "gaussian:5" | "gaussian:20,20,5" | "uniform"
void apply_target_spec(const std::string& spec, KeyValues& kv) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  std::vector<std::string> parts;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
  }
  kv.set("target.kind", kind);
  if (kind == "delta") {
    if (parts.size() != 2) throw ConfigError("--target delta expects delta:X,Y, got '" + spec + "'");
    kv.set("target.x", parts[0]);
    kv.set("target.y", parts[1]);
  } else if (kind == "gaussian") {
    if (parts.size() == 1) {
      kv.set("target.sigma", parts[0]);
    } else if (parts.size() == 3) {
      kv.set("target.x", parts[0]);
      kv.set("target.y", parts[1]);
      kv.set("target.sigma", parts[2]);
    } else {
      throw ConfigError("--target gaussian expects gaussian:SIGMA or gaussian:MX,MY,SIGMA");
    }
  } else if (kind == "uniform") {
    if (!parts.empty()) throw ConfigError("--target uniform takes no arguments");
  } else {
    throw ConfigError("unknown target kind '" + kind + "' (expected delta|gaussian|uniform)");
  }
}

// Option plumbing: every accepted config key surfaces as a --key option whose
// value is funneled into the KeyValues store and validated by the resolver.
struct KeyOptions {
  KeyValues flags;

  void add(CLI::App* cmd, const std::string& key, const std::string& desc) {
    cmd->add_option_function<std::string>(
        "--" + key, [this, key](const std::string& v) { flags.set(key, v); }, desc);
  }
};

void add_run_key_options(CLI::App* cmd, KeyOptions& opts) {
  opts.add(cmd, "grid.n", "lattice side length N (required)");
  opts.add(cmd, "grid.rv", "vision radius r_v (required)");
  opts.add(cmd, "grid.start_x", "searcher start x [default: 1]");
  opts.add(cmd, "grid.start_y", "searcher start y [default: 1]");
  opts.add(cmd, "target.kind", "delta|gaussian|uniform (required)");
  opts.add(cmd, "target.x", "delta x / gaussian mean x [default: N/2 for gaussian]");
  opts.add(cmd, "target.y", "delta y / gaussian mean y [default: N/2 for gaussian]");
  opts.add(cmd, "target.sigma", "gaussian standard deviation");
  opts.add(cmd, "strategy", "mcts|rw|lfs|nsarw (required)");
  opts.add(cmd, "policy.kind", "MCTS rollout policy: rw|levy|nsarw [default: rw]");
  opts.add(cmd, "policy.mu", "Levy exponent in (1,3] [default: 2]");
  opts.add(cmd, "policy.lmax", "Levy max jump length, 0 = N [default: 0]");
  opts.add(cmd, "policy.cap", "rollout step cap, 0 = 50*N*N [default: 0]");
  opts.add(cmd, "policy.levy_unit_cost", "length-l jump costs l steps [default: true]");
  opts.add(cmd, "policy.levy_midjump_detect", "check detection mid-jump [default: true]");
  opts.add(cmd, "mcts.c", "UCT exploration constant [default: 1.4142135623730951]");
  opts.add(cmd, "mcts.loops", "simulation loops per move (exclusive with time budget)");
  opts.add(cmd, "mcts.time_budget_ms", "wall-clock budget per move, ms");
  opts.add(cmd, "mcts.reuse_stats", "keep statistics across real moves [default: true]");
  opts.add(cmd, "mcts.credit_mode", "remaining_steps|total_steps [default: remaining_steps]");
  opts.add(cmd, "mcts.final_move",
           "max_visits (robust child, pulls this decision) | avg_reward [default: max_visits]");
  opts.add(cmd, "trials", "number of trials (required)");
  opts.add(cmd, "seed", "base seed (required)");
  opts.add(cmd, "workers", "worker threads, 0 = auto via LATTICE_MCTS_WORKERS/cores [default: 0]");
  opts.add(cmd, "out", "output path prefix [default: run]");
}

int count_capped_rows(const std::vector<SummaryRow>& rows) {
  int c = 0;
  for (const auto& r : rows) c += r.capped_count;
  return c;
}

}  // namespace

int cmd_run(const RunSettings& settings) {
  const auto records =
      run_trials(settings.strategy, settings.target, settings.grid, settings.trials, settings.seed,
                 settings.workers);
  SummaryRow row;
  row.experiment = "run";
  row.strategy = settings.strategy.label;
  row.side = settings.grid.side;
  row.sigma = settings.target.sigma_label();
  if (settings.strategy.kind == Strategy::Kind::Mcts) {
    row.loops = settings.strategy.mcts.loops;
    row.time_ms = settings.strategy.mcts.time_budget_ms;
  }
  row.trials = settings.trials;
  row.stats = summarize(records);
  row.base_seed = settings.seed;
  int capped = 0;
  for (const auto& r : records) capped += r.capped ? 1 : 0;
  row.capped_count = capped;

  const KvPairs header = echo_settings(settings);
  write_records_csv(settings.out + "_records.csv", records, header);
  write_summary_csv(settings.out + "_summary.csv", {row}, header);
  write_summary_json(settings.out + "_summary.json", {row}, header);

  if (settings.strict && capped > 0) {
    std::cerr << "strict mode: " << capped << " capped trial(s)\n";
    return kExitStrictCapped;
  }
  return kExitOk;
}

namespace {

// paper-scale defaults shared by the figure presets
struct FigureSettings {
  std::string name;
  int side = 40;
  int vision_radius = 1;
  int trials = 1000;
  double scale = 1.0;
  long loops = 1000;
  uint64_t seed = kDefaultFigureSeed;
  int workers = 0;
  long draws = 10000;
  double sigma = 5.0;
  std::string target_spec;
  std::string out;
  bool strict = false;

  int scaled_trials() const {
    return std::max(2, static_cast<int>(std::lround(static_cast<double>(trials) * scale)));
  }
  GridConfig grid() const {
    GridConfig g;
    g.side = side;
    g.vision_radius = vision_radius;
    g.start = {1, 1};
    return g;
  }
  MctsConfig mcts_proto(PolicyKind rollout_kind) const {
    MctsConfig m;
    m.loops = loops;
    m.rollout.kind = rollout_kind;
    return m;
  }
  Position center() const {
    return {wrap_coord(static_cast<int>(round_half_up(side / 2.0)), side),
            wrap_coord(static_cast<int>(round_half_up(side / 2.0)), side)};
  }
  KvPairs header_base() const {
    KvPairs kv;
    kv.emplace_back("latmcts.command", "figure");
    kv.emplace_back("latmcts.figure", name);
    kv.emplace_back("latmcts.scale", format_double(scale));
    kv.emplace_back("grid.n", std::to_string(side));
    kv.emplace_back("grid.rv", std::to_string(vision_radius));
    kv.emplace_back("trials", std::to_string(scaled_trials()));
    kv.emplace_back("mcts.loops", std::to_string(loops));
    kv.emplace_back("seed", std::to_string(seed));
    return kv;
  }
};

int emit_summary(const FigureSettings& fig, const std::vector<SummaryRow>& rows, KvPairs header) {
  write_summary_csv(fig.out + "_summary.csv", rows, header);
  write_summary_json(fig.out + "_summary.json", rows, header);
  if (fig.strict && count_capped_rows(rows) > 0) {
    std::cerr << "strict mode: capped trials present\n";
    return kExitStrictCapped;
  }
  return kExitOk;
}

std::vector<Strategy> compare_strategies(const FigureSettings& fig, bool include_mcts_lfs) {
  std::vector<Strategy> strategies;
  strategies.push_back(Strategy::mcts_with(fig.mcts_proto(PolicyKind::RandomWalk)));
  if (include_mcts_lfs)
    strategies.push_back(Strategy::mcts_with(fig.mcts_proto(PolicyKind::LevyFlight)));
  RolloutPolicy rw;
  RolloutPolicy lfs;
  lfs.kind = PolicyKind::LevyFlight;
  RolloutPolicy nsarw;
  nsarw.kind = PolicyKind::Nsarw;
  strategies.push_back(Strategy::baseline_with(rw));
  strategies.push_back(Strategy::baseline_with(lfs));
  strategies.push_back(Strategy::baseline_with(nsarw));
  return strategies;
}

int run_figure(FigureSettings& fig) {
  const GridConfig grid = fig.grid();
  const int trials = fig.scaled_trials();

  if (fig.name == "gauss-sweep") {
    const std::vector<double> sigmas = {0.0, 2.0, 5.0, 10.0,
                                        std::numeric_limits<double>::infinity()};
    auto rows = experiment_gaussian_sweep(grid, sigmas, compare_strategies(fig, false), trials,
                                          fig.seed, fig.workers);
    KvPairs header = fig.header_base();
    header.emplace_back("latmcts.sigmas", "0,2,5,10,inf");
    return emit_summary(fig, rows, header);
  }
  if (fig.name == "delta-compare" || fig.name == "uniform-compare") {
    const TargetDistribution dist = fig.name == "delta-compare"
                                        ? TargetDistribution::delta(fig.center(), grid.side)
                                        : TargetDistribution::uniform(grid.side);
    std::vector<SummaryRow> rows;
    const uint64_t cell_seed = derive_seed(fig.seed, 0, 0x636f6d70ull);
    for (const auto& strategy : compare_strategies(fig, true)) {
      const auto records = run_trials(strategy, dist, grid, trials, cell_seed, fig.workers);
      SummaryRow row;
      row.experiment = fig.name;
      row.strategy = strategy.label;
      row.side = grid.side;
      row.sigma = dist.sigma_label();
      if (strategy.kind == Strategy::Kind::Mcts) row.loops = strategy.mcts.loops;
      row.trials = trials;
      row.stats = summarize(records);
      for (const auto& r : records) row.capped_count += r.capped ? 1 : 0;
      row.base_seed = cell_seed;
      rows.push_back(row);
    }
    KvPairs header = fig.header_base();
    if (fig.name == "delta-compare") {
      header.emplace_back("target.kind", "delta");
      header.emplace_back("target.x", std::to_string(fig.center().x));
      header.emplace_back("target.y", std::to_string(fig.center().y));
    } else {
      header.emplace_back("target.kind", "uniform");
    }
    return emit_summary(fig, rows, header);
  }
  if (fig.name == "budget-loops" || fig.name == "budget-time") {
    const TargetDistribution dist = TargetDistribution::delta(fig.center(), grid.side);
    std::vector<Strategy> strategies = {
        Strategy::mcts_with(fig.mcts_proto(PolicyKind::RandomWalk)),
        Strategy::mcts_with(fig.mcts_proto(PolicyKind::LevyFlight))};
    std::vector<long> loop_budgets;
    std::vector<double> time_budgets;
    if (fig.name == "budget-loops")
      loop_budgets = {10, 100, 1000, 10000};
    else
      time_budgets = {1.0, 3.0, 10.0, 30.0, 100.0};
    auto rows = experiment_budget_sweep(grid, dist, loop_budgets, time_budgets, strategies, trials,
                                        fig.seed, fig.workers);
    KvPairs header = fig.header_base();
    header.emplace_back("target.kind", "delta");
    header.emplace_back("latmcts.budgets",
                        fig.name == "budget-loops" ? "10,100,1000,10000" : "1,3,10,30,100");
    return emit_summary(fig, rows, header);
  }
  if (fig.name == "nsarw-convergence") {
    const std::vector<int> grids = {11, 21, 41, 61, 81};
    MctsConfig proto = fig.mcts_proto(PolicyKind::RandomWalk);
    auto rows = experiment_nsarw_convergence(grids, proto, fig.vision_radius, trials, fig.seed,
                                             fig.workers);
    KvPairs header = fig.header_base();
    header.emplace_back("latmcts.grids", "11,21,41,61,81");
    std::vector<SummaryRow> summary_rows;
    for (const auto& r : rows) {
      summary_rows.push_back(r.mcts);
      summary_rows.push_back(r.nsarw);
    }
    write_gap_csv(fig.out + "_gap.csv", rows, header);
    return emit_summary(fig, summary_rows, header);
  }
  if (fig.name == "target-histogram") {
    TargetDistribution dist = TargetDistribution::gaussian(fig.sigma, fig.side);
    if (!fig.target_spec.empty()) {
      KeyValues tkv;
      apply_target_spec(fig.target_spec, tkv);
      dist = resolve_target(tkv, fig.side);
    }
    Rng rng(derive_seed(fig.seed, 0, 0x68697374ull));
    const Grid<long> counts = histogram(dist, fig.draws, rng);
    KvPairs header = fig.header_base();
    header.emplace_back("target.kind", dist.kind_name());
    if (dist.kind == TargetDistribution::Kind::Gaussian) {
      header.emplace_back("target.x", format_double(dist.mean_x));
      header.emplace_back("target.y", format_double(dist.mean_y));
      header.emplace_back("target.sigma", format_double(dist.sigma));
    }
    header.emplace_back("latmcts.draws", std::to_string(fig.draws));
    write_matrix_csv(fig.out + "_matrix.csv", counts, header);
    return kExitOk;
  }
  throw ConfigError("unknown figure '" + fig.name +
                    "' (expected gauss-sweep|delta-compare|budget-loops|budget-time|"
                    "uniform-compare|nsarw-convergence|target-histogram)");
}

void add_figure_options(CLI::App* cmd, FigureSettings& fig) {
  cmd->add_option("--grid", fig.side, "lattice side length N [default: 40]");
  cmd->add_option("--rv", fig.vision_radius, "vision radius [default: 1]");
  cmd->add_option("--trials", fig.trials, "trials before scaling [default: 1000]");
  cmd->add_option("--scale", fig.scale, "trial-count scale factor for desk runs [default: 1]");
  cmd->add_option("--mcts.loops", fig.loops, "MCTS loops per move [default: 1000; 400 for nsarw-convergence]");
  cmd->add_option("--seed", fig.seed, "base seed [default: 42]");
  cmd->add_option("--workers", fig.workers, "worker threads, 0 = auto [default: 0]");
  cmd->add_option("--out", fig.out, "output path prefix [default: figure name]");
  cmd->add_flag("--strict", fig.strict, "exit 4 when any trial hits the game cap");
}

}  // namespace

int run_cli(std::vector<std::string> args) {
  CLI::App app{"Monte Carlo tree search and baseline walkers for single-target search on a "
               "periodic lattice"};
  app.require_subcommand(1);

  // run
  CLI::App* run = app.add_subcommand("run", "run one experiment cell (one strategy, one target "
                                            "distribution) and write records + summary");
  KeyOptions run_keys;
  add_run_key_options(run, run_keys);
  std::string config_path, grid_short, rv_short, target_spec;
  bool strict_flag = false;
  run->add_option("--config", config_path, "key=value config file; flags override it");
  run->add_option("--grid", grid_short, "shorthand for --grid.n");
  run->add_option("--rv", rv_short, "shorthand for --grid.rv");
  run->add_option("--target", target_spec,
                  "target shorthand: delta:X,Y | gaussian:SIGMA | gaussian:MX,MY,SIGMA | uniform");
  run->add_flag("--strict", strict_flag, "exit 4 when any trial is capped");

  // figure
  CLI::App* figure = app.add_subcommand(
      "figure", "run a preset experiment (gauss-sweep, delta-compare, budget-loops, budget-time, "
                "uniform-compare, nsarw-convergence, target-histogram)");
  FigureSettings fig;
  figure->add_option("name", fig.name, "preset name")->required();
  add_figure_options(figure, fig);
  figure->add_option("--sigma", fig.sigma, "histogram gaussian sigma [default: 5]");
  figure->add_option("--draws", fig.draws, "histogram draw count [default: 10000]");
  figure->add_option("--target", fig.target_spec, "histogram target override (delta:X,Y|gaussian:...|uniform)");

  // histogram (alias of `figure target-histogram`)
  CLI::App* hist = app.add_subcommand("histogram", "alias of `figure target-histogram`");
  FigureSettings hist_fig;
  hist_fig.name = "target-histogram";
  add_figure_options(hist, hist_fig);
  hist->add_option("--sigma", hist_fig.sigma, "gaussian sigma [default: 5]");
  hist->add_option("--draws", hist_fig.draws, "draw count [default: 10000]");
  hist->add_option("--target", hist_fig.target_spec, "target override (delta:X,Y|gaussian:...|uniform)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      KeyValues kv;
      if (!config_path.empty()) kv = KeyValues::parse_file(config_path);
      KeyValues flags = run_keys.flags;
      if (!grid_short.empty()) flags.set("grid.n", grid_short);
      if (!rv_short.empty()) flags.set("grid.rv", rv_short);
      if (!target_spec.empty()) apply_target_spec(target_spec, flags);
      if (strict_flag) flags.set("strict", "true");
      kv.merge_from(flags);
      return cmd_run(resolve_run_settings(kv));
    }
    if (figure->parsed()) {
      if (fig.name == "nsarw-convergence" && figure->count("--mcts.loops") == 0) fig.loops = 400;
      if (fig.out.empty()) fig.out = fig.name;
      return run_figure(fig);
    }
    if (hist->parsed()) {
      if (hist_fig.out.empty()) hist_fig.out = hist_fig.name;
      return run_figure(hist_fig);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitConfig;
}

}  // namespace latmcts
