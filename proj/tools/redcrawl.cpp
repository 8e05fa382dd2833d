#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "redcrawl.hpp"

namespace {

using namespace redcrawl;

void print_summary(const ExperimentResult& res, const ExperimentConfig& cfg) {
  std::cout << res.world.name << ": " << res.world.node_count() << " nodes, " << res.world.edge_count()
            << " edges, " << res.colors.red << " red; scenario " << to_string(cfg.scenario) << ", " << cfg.runs
            << " runs\n";
  std::cout << std::left << std::setw(10) << "strategy" << std::right << std::setw(8) << "tier" << std::setw(12)
            << "mean %red" << std::setw(10) << "sd" << '\n';
  for (const auto& r : res.summary) {
    std::cout << std::left << std::setw(10) << to_string(r.strategy) << std::right << std::setw(8) << detail::format_double(r.tier)
              << std::setw(12) << std::fixed << std::setprecision(1) << r.mean_pct_red << std::setw(10)
              << r.std_pct_red;
    if (r.short_runs) std::cout << "  (" << r.short_runs << " runs ran out of candidates before this tier)";
    std::cout << '\n';
  }
  std::cout.unsetf(std::ios::floatfield);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budgeted exploration of colored networks with deceptive members"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a seeded experiment and write trace and summary CSVs");
  std::string config_path;
  std::string strategies, scenario, out_dir;
  std::optional<std::size_t> runs, threads, retrain_every;
  std::optional<double> budget_fraction;
  std::optional<std::uint64_t> seed;
  bool remove_red_red = false;
  run->add_option("--config", config_path, "key = value config file")->required()->check(CLI::ExistingFile);
  run->add_option("--strategy", strategies, "comma list of sr, rs, mrsr, mrn, redlearn");
  run->add_option("--scenario", scenario, "lying scenario")->check(CLI::IsMember({"ls1", "ls2"}, CLI::ignore_case));
  run->add_option("--runs", runs, "number of paired runs");
  run->add_option("--budget-fraction", budget_fraction, "monitor budget as a fraction of the node count");
  run->add_option("--seed", seed, "master seed");
  run->add_option("--retrain-every", retrain_every, "monitors between classifier refits");
  run->add_option("--threads", threads, "worker threads (0 = all cores)");
  run->add_flag("--remove-red-red", remove_red_red, "delete every red-red edge before running");
  run->add_option("--out", out_dir, "output directory");

  auto* gen = app.add_subcommand("gen", "write a synthetic world as edge and node files");
  std::size_t n = 500;
  double red_fraction = 0.05;
  std::string mode = "homophily";
  std::uint64_t gen_seed = 1;
  SyntheticOptions opts;
  std::string edges_out, nodes_out;
  gen->add_option("--n", n, "node count")->capture_default_str();
  gen->add_option("--red-fraction", red_fraction, "share of red nodes")->capture_default_str();
  gen->add_option("--mode", mode, "homophily, no_homophily or structural_signal")->capture_default_str();
  gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
  gen->add_option("--mean-degree", opts.mean_degree, "mean degree of the base graph")->capture_default_str();
  gen->add_option("--red-links", opts.red_links, "red-red links per red node")->capture_default_str();
  gen->add_option("--red-degree-offset", opts.red_degree_offset, "red/blue degree gap (structural_signal)")
      ->capture_default_str();
  gen->add_option("--edges", edges_out, "edge file to write")->required();
  gen->add_option("--nodes", nodes_out, "node file to write")->required();

  auto* stats = app.add_subcommand("stats", "load a graph and print node, edge and color counts");
  std::string edges_in, nodes_in;
  bool stats_remove = false;
  stats->add_option("--edges", edges_in, "edge file")->required()->check(CLI::ExistingFile);
  stats->add_option("--nodes", nodes_in, "node file")->required()->check(CLI::ExistingFile);
  stats->add_flag("--remove-red-red", stats_remove, "apply the red-red edge removal first");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto cfg = load_config(config_path);
      if (!strategies.empty()) set_config_value(cfg, "strategies", strategies);
      if (!scenario.empty()) cfg.scenario = parse_scenario(scenario);
      if (runs) cfg.runs = *runs;
      if (budget_fraction) cfg.budget_fraction = *budget_fraction;
      if (seed) cfg.master_seed = *seed;
      if (retrain_every) cfg.retrain_every = *retrain_every;
      if (threads) cfg.threads = *threads;
      if (remove_red_red) cfg.remove_red_red = true;
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      const auto res = run_experiment(cfg);
      print_summary(res, cfg);
      std::cout << "wrote " << (cfg.output_dir / "traces.csv").string() << " and "
                << (cfg.output_dir / "summary.csv").string() << '\n';
    } else if (*gen) {
      const auto g = generate_synthetic(n, red_fraction, parse_synthetic_mode(mode), gen_seed, opts);
      save_graph(g, edges_out, nodes_out);
      const auto c = count_colors(g);
      std::cout << g.name << ": " << g.node_count() << " nodes, " << g.edge_count() << " edges, " << c.red
                << " red\n";
    } else if (*stats) {
      BuildStats dropped;
      auto g = load_graph(edges_in, nodes_in, &dropped);
      if (stats_remove) g = remove_red_red_edges(g);
      const auto c = count_colors(g);
      std::cout << "nodes " << g.node_count() << "\nedges " << g.edge_count() << "\nred " << c.red << "\nblue "
                << c.blue << "\nred_red_edges " << count_red_red_edges(g) << '\n';
      if (dropped.dropped())
        std::cerr << "warning: dropped " << dropped.self_loops << " self-loops and " << dropped.duplicates
                  << " duplicate edges\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "redcrawl: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
