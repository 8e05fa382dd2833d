#pragma once

// Experiment configuration and its "key = value" text form. Blank lines and
// lines starting with '#' are ignored. Recognized keys:
//
//   edges, nodes                 graph files (alternative to synthetic.*)
//   synthetic.n, synthetic.red_fraction, synthetic.mode, synthetic.seed,
//   synthetic.mean_degree, synthetic.red_links, synthetic.red_degree_offset
//   scenario                     ls1 | ls2
//   strategies                   comma list of sr, rs, mrsr, mrn, redlearn
//   runs, budget_fraction, budget_tiers (comma list), retrain_every,
//   master_seed, remove_red_red, output_dir, threads
//   lambda, max_iterations, tolerance      classifier hyperparameters
//   emit_discovered              add a cum_red_discovered trace column
//   dump_reports                 write reports.jsonl next to the traces

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "redcrawl/classifier.hpp"
#include "redcrawl/graph_io.hpp"
#include "redcrawl/strategies.hpp"
#include "redcrawl/synthetic.hpp"

namespace redcrawl {

struct SyntheticSpec {
  std::size_t n = 500;
  double red_fraction = 0.05;
  SyntheticMode mode = SyntheticMode::Homophily;
  std::uint64_t seed = 1;
  SyntheticOptions options{};
};

struct ExperimentConfig {
  std::filesystem::path edges;
  std::filesystem::path nodes;
  std::optional<SyntheticSpec> synthetic;
  LyingScenario scenario = LyingScenario::LS1;
  std::vector<StrategyKind> strategies{kAllStrategies.begin(), kAllStrategies.end()};
  std::size_t runs = 25;
  double budget_fraction = 0.5;
  std::vector<double> budget_tiers{0.10, 0.25, 0.50};
  std::size_t retrain_every = 1;
  std::uint64_t master_seed = 1;
  bool remove_red_red = false;
  std::filesystem::path output_dir = "out";
  FitParams fit{};
  /// 0 picks the hardware concurrency.
  std::size_t threads = 0;
  bool emit_discovered = false;
  bool dump_reports = false;

  void validate() const {
    if (!synthetic && (edges.empty() || nodes.empty()))
      throw std::invalid_argument("config: need edges and nodes files or a synthetic.* graph");
    if (runs < 1) throw std::invalid_argument("config: runs must be at least 1");
    if (!(budget_fraction > 0.0 && budget_fraction <= 1.0))
      throw std::invalid_argument("config: budget_fraction must lie in (0, 1]");
    for (double t : budget_tiers)
      if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("config: budget tiers must lie in (0, 1]");
    if (retrain_every < 1) throw std::invalid_argument("config: retrain_every must be at least 1");
    if (strategies.empty()) throw std::invalid_argument("config: no strategies selected");
    if (!(fit.lambda >= 0.0)) throw std::invalid_argument("config: lambda must be non-negative");
  }
};

namespace detail {

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw std::invalid_argument("config: " + key + " = '" + text + "' is not a valid number");
  return value;
}

inline bool parse_bool(const std::string& text, const std::string& key) {
  const auto v = to_lower(text);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config: " + key + " = '" + text + "' is not a boolean");
}

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ','))
    if (auto t = trim(item); !t.empty()) out.push_back(std::move(t));
  return out;
}

}  // namespace detail

/// Applies one key/value pair. Shared by the file parser and CLI overrides.
inline void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  using detail::parse_number;
  const auto synth = [&]() -> SyntheticSpec& {
    if (!cfg.synthetic) cfg.synthetic.emplace();
    return *cfg.synthetic;
  };
  if (key == "edges") cfg.edges = value;
  else if (key == "nodes") cfg.nodes = value;
  else if (key == "synthetic.n") synth().n = parse_number<std::size_t>(value, key);
  else if (key == "synthetic.red_fraction") synth().red_fraction = parse_number<double>(value, key);
  else if (key == "synthetic.mode") synth().mode = parse_synthetic_mode(value);
  else if (key == "synthetic.seed") synth().seed = parse_number<std::uint64_t>(value, key);
  else if (key == "synthetic.mean_degree") synth().options.mean_degree = parse_number<double>(value, key);
  else if (key == "synthetic.red_links") synth().options.red_links = parse_number<std::size_t>(value, key);
  else if (key == "synthetic.red_degree_offset") synth().options.red_degree_offset = parse_number<double>(value, key);
  else if (key == "scenario") cfg.scenario = parse_scenario(value);
  else if (key == "strategies" || key == "strategy") {
    cfg.strategies.clear();
    for (const auto& s : detail::split_list(value)) cfg.strategies.push_back(parse_strategy(s));
  } else if (key == "runs") cfg.runs = parse_number<std::size_t>(value, key);
  else if (key == "budget_fraction") cfg.budget_fraction = parse_number<double>(value, key);
  else if (key == "budget_tiers") {
    cfg.budget_tiers.clear();
    for (const auto& s : detail::split_list(value)) cfg.budget_tiers.push_back(parse_number<double>(s, key));
  } else if (key == "retrain_every") cfg.retrain_every = parse_number<std::size_t>(value, key);
  else if (key == "master_seed" || key == "seed") cfg.master_seed = parse_number<std::uint64_t>(value, key);
  else if (key == "remove_red_red") cfg.remove_red_red = detail::parse_bool(value, key);
  else if (key == "output_dir") cfg.output_dir = value;
  else if (key == "threads") cfg.threads = parse_number<std::size_t>(value, key);
  else if (key == "lambda") cfg.fit.lambda = parse_number<double>(value, key);
  else if (key == "max_iterations") cfg.fit.descent.max_iterations = parse_number<std::size_t>(value, key);
  else if (key == "tolerance") cfg.fit.descent.tolerance = parse_number<double>(value, key);
  else if (key == "emit_discovered") cfg.emit_discovered = detail::parse_bool(value, key);
  else if (key == "dump_reports") cfg.dump_reports = detail::parse_bool(value, key);
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

inline ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>") {
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw LoadError(source, lineno, "expected key = value");
    try {
      set_config_value(cfg, detail::trim(text.substr(0, eq)), detail::trim(text.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw LoadError(source, lineno, e.what());
    }
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path.string(), 0, "cannot open config file");
  auto cfg = parse_config(in, path.string());
  // graph paths are taken relative to the config file
  const auto base = path.parent_path();
  for (auto* p : {&cfg.edges, &cfg.nodes})
    if (!p->empty() && p->is_relative()) *p = base / *p;
  return cfg;
}

}  // namespace redcrawl
