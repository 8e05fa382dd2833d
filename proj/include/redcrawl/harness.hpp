#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "redcrawl/classifier.hpp"
#include "redcrawl/config.hpp"
#include "redcrawl/graph_io.hpp"
#include "redcrawl/observer.hpp"
#include "redcrawl/oracle.hpp"
#include "redcrawl/report_log.hpp"
#include "redcrawl/strategies.hpp"
#include "redcrawl/synthetic.hpp"

namespace redcrawl {

struct TraceStep {
  std::size_t step;
  NodeId node;
  Color true_color;
  std::size_t cum_red;
  /// Truly red nodes observed so far, monitored or not.
  std::size_t cum_red_discovered;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct RunTrace {
  std::size_t run_id = 0;
  StrategyKind strategy = StrategyKind::SmartRandom;
  std::uint64_t seed = 0;
  std::vector<TraceStep> steps;
  /// The frontier emptied before the budget was spent.
  bool exhausted = false;
  std::vector<MonitorReport> reports;

  std::size_t reds_found() const noexcept { return steps.empty() ? 0 : steps.back().cum_red; }
};

// Sub-stream tags under each run seed.
inline constexpr std::uint64_t kStartStream = 0;
inline constexpr std::uint64_t kHonestyStream = 1;
inline constexpr std::uint64_t kLieStream = 2;
inline constexpr std::uint64_t kTieBreakStream = 3;

struct RunSettings {
  std::size_t budget = 1;
  std::size_t retrain_every = 1;
  FitParams fit{};
  bool keep_reports = false;
};

/// One seeded run: monitor the red start node, then let the strategy spend
/// the rest of the budget.
inline RunTrace run_single(const WorldGraph& world, StrategyKind strategy, LyingScenario scenario, NodeId start,
                           std::uint64_t seed, const RunSettings& settings) {
  if (start >= world.node_count() || world.color[start] != Color::Red)
    throw std::invalid_argument("run_single: start node must be red");
  if (settings.budget < 1) throw std::invalid_argument("run_single: budget must be at least 1");
  if (settings.retrain_every < 1) throw std::invalid_argument("run_single: retrain_every must be at least 1");

  Rng honesty_rng(derive_seed(seed, kHonestyStream));
  auto truth = std::make_shared<const WorldGraph>(assign_honesty(world, honesty_rng));
  Oracle oracle(truth, scenario, derive_seed(seed, kLieStream));
  Rng tie_rng(derive_seed(seed, kTieBreakStream));
  ObserverState state(world.node_count());

  RunTrace trace;
  trace.strategy = strategy;
  trace.seed = seed;
  std::vector<bool> seen(world.node_count(), false);
  std::size_t reds = 0, discovered = 0;

  const auto monitor = [&](NodeId target) {
    const auto& report = oracle.place_monitor(target);
    state.ingest(report);
    const auto note = [&](NodeId v) {
      if (!seen[v]) {
        seen[v] = true;
        discovered += world.color[v] == Color::Red;
      }
    };
    note(target);
    for (NodeId v : report.neighbors) note(v);
    reds += report.true_color == Color::Red;
    trace.steps.push_back({trace.steps.size(), target, report.true_color, reds, discovered});
    if (settings.keep_reports) trace.reports.push_back(report);
  };

  monitor(start);
  TrainedModel model;
  while (trace.steps.size() < settings.budget) {
    if (strategy == StrategyKind::RedLearn && (state.monitored_count() - 1) % settings.retrain_every == 0)
      model = fit(build_training_set(state), settings.fit);
    const auto decision = pick(strategy, state, tie_rng, model);
    if (!decision) {
      trace.exhausted = true;
      break;
    }
    monitor(decision->chosen);
  }
  return trace;
}

/// Start node and seed for one run index; identical for every strategy.
struct RunPlan {
  std::size_t run_id;
  NodeId start;
  std::uint64_t seed;
};

inline std::vector<RunPlan> plan_runs(const WorldGraph& world, std::size_t runs, std::uint64_t master_seed) {
  std::vector<NodeId> reds;
  for (NodeId v = 0; v < world.node_count(); ++v)
    if (world.color[v] == Color::Red) reds.push_back(v);
  if (reds.empty()) throw std::invalid_argument("plan_runs: the graph has no red node to start from");
  std::vector<RunPlan> plans;
  for (std::size_t i = 0; i < runs; ++i) {
    const auto seed = derive_seed(master_seed, i);
    Rng pick_start(derive_seed(seed, kStartStream));
    plans.push_back({i, reds[uniform_index(pick_start, reds.size())], seed});
  }
  return plans;
}

struct SummaryRow {
  StrategyKind strategy;
  double tier;
  double mean_pct_red;
  double std_pct_red;
  std::size_t runs;
  /// Runs whose trace ended before the tier's monitor count.
  std::size_t short_runs;
};

/// Monitor count for a budget fraction of an n-node graph (at least 1).
inline std::size_t tier_monitors(double tier, std::size_t n) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(tier * static_cast<double>(n) + 1e-9)));
}

/// Mean and sample standard deviation of the percentage of reds monitored at
/// each tier, per strategy (strategies reported in first-seen order).
inline std::vector<SummaryRow> summarize(const std::vector<RunTrace>& traces, const std::vector<double>& tiers,
                                         std::size_t node_count, std::size_t total_reds) {
  std::vector<StrategyKind> order;
  for (const auto& t : traces)
    if (std::find(order.begin(), order.end(), t.strategy) == order.end()) order.push_back(t.strategy);

  std::vector<SummaryRow> rows;
  for (auto strategy : order) {
    for (double tier : tiers) {
      const auto m = tier_monitors(tier, node_count);
      std::vector<double> pct;
      std::size_t short_runs = 0;
      for (const auto& t : traces) {
        if (t.strategy != strategy || t.steps.empty()) continue;
        if (m > t.steps.size()) ++short_runs;
        const auto reds = t.steps[std::min(m, t.steps.size()) - 1].cum_red;
        pct.push_back(total_reds == 0 ? 0.0 : 100.0 * static_cast<double>(reds) / static_cast<double>(total_reds));
      }
      double mean = 0.0, var = 0.0;
      for (double p : pct) mean += p;
      if (!pct.empty()) mean /= static_cast<double>(pct.size());
      for (double p : pct) var += (p - mean) * (p - mean);
      const double sd = pct.size() > 1 ? std::sqrt(var / static_cast<double>(pct.size() - 1)) : 0.0;
      rows.push_back({strategy, tier, mean, sd, pct.size(), short_runs});
    }
  }
  return rows;
}

inline const SummaryRow* find_row(const std::vector<SummaryRow>& rows, StrategyKind s, double tier) {
  for (const auto& r : rows)
    if (r.strategy == s && std::abs(r.tier - tier) < 1e-12) return &r;
  return nullptr;
}

inline WorldGraph load_world(const ExperimentConfig& cfg) {
  WorldGraph g;
  if (cfg.synthetic) {
    const auto& s = *cfg.synthetic;
    g = generate_synthetic(s.n, s.red_fraction, s.mode, s.seed, s.options);
  } else {
    g = load_graph(cfg.edges, cfg.nodes);
  }
  if (cfg.remove_red_red) g = remove_red_red_edges(g);
  return g;
}

struct ExperimentResult {
  WorldGraph world;
  std::vector<RunPlan> plans;
  /// Strategy-major, then run index.
  std::vector<RunTrace> traces;
  std::vector<SummaryRow> summary;
  ColorCounts colors;
};

inline std::size_t budget_for(const ExperimentConfig& cfg, std::size_t n) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(cfg.budget_fraction * static_cast<double>(n) + 1e-9)));
}

/// Executes every (strategy, run) pair. Runs are independent and spread over
/// worker threads; results land in a fixed order.
inline ExperimentResult execute(const ExperimentConfig& cfg, WorldGraph world) {
  cfg.validate();
  validate(world);
  ExperimentResult res;
  res.colors = count_colors(world);
  res.plans = plan_runs(world, cfg.runs, cfg.master_seed);

  RunSettings settings;
  settings.budget = budget_for(cfg, world.node_count());
  settings.retrain_every = cfg.retrain_every;
  settings.fit = cfg.fit;
  settings.keep_reports = cfg.dump_reports;

  const auto jobs = cfg.strategies.size() * res.plans.size();
  res.traces.resize(jobs);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (auto j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) {
      const auto strategy = cfg.strategies[j / res.plans.size()];
      const auto& plan = res.plans[j % res.plans.size()];
      auto trace = run_single(world, strategy, cfg.scenario, plan.start, plan.seed, settings);
      trace.run_id = plan.run_id;
      res.traces[j] = std::move(trace);
    }
  };
  auto threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, jobs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  res.summary = summarize(res.traces, cfg.budget_tiers, world.node_count(), res.colors.red);
  res.world = std::move(world);
  return res;
}

inline void write_trace_csv(std::ostream& out, const std::vector<RunTrace>& traces, const WorldGraph& world,
                            bool emit_discovered) {
  out << "run,strategy,step,node,true_color,cum_red" << (emit_discovered ? ",cum_red_discovered" : "") << '\n';
  for (const auto& t : traces)
    for (const auto& s : t.steps) {
      out << t.run_id << ',' << to_string(t.strategy) << ',' << s.step << ',' << world.label(s.node) << ','
          << to_string(s.true_color) << ',' << s.cum_red;
      if (emit_discovered) out << ',' << s.cum_red_discovered;
      out << '\n';
    }
}

inline void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "strategy,tier,mean_pct_red,std_pct_red,runs\n";
  for (const auto& r : rows) {
    std::ostringstream line;
    line.imbue(std::locale::classic());
    line << to_string(r.strategy) << ',' << detail::format_double(r.tier) << ',' << std::fixed
         << std::setprecision(4) << r.mean_pct_red << ',' << r.std_pct_red << ',' << r.runs << '\n';
    out << line.str();
  }
}

/// Loads the world, runs everything and writes traces.csv and summary.csv
/// (plus reports.jsonl when requested) into cfg.output_dir.
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  auto res = execute(cfg, load_world(cfg));

  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());
  const auto open = [&](const char* name) {
    std::ofstream f(cfg.output_dir / name, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + (cfg.output_dir / name).string());
    return f;
  };
  {
    auto f = open("traces.csv");
    write_trace_csv(f, res.traces, res.world, cfg.emit_discovered);
  }
  {
    auto f = open("summary.csv");
    write_summary_csv(f, res.summary);
  }
  if (cfg.dump_reports) {
    auto f = open("reports.jsonl");
    for (const auto& t : res.traces)
      write_report_log(f, t.reports, {{"run", t.run_id}, {"strategy", to_string(t.strategy)}});
  }
  return res;
}

}  // namespace redcrawl
