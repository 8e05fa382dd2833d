#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "redcrawl/graph.hpp"
#include "redcrawl/random.hpp"
#include "redcrawl/types.hpp"

namespace redcrawl {

struct Statement {
  NodeId speaker;
  NodeId subject;
  Color said;
  friend bool operator==(const Statement&, const Statement&) = default;
};

/// Everything one monitor placement reveals. statements[i] is about neighbors[i].
struct MonitorReport {
  NodeId target;
  Color true_color;
  std::vector<NodeId> neighbors;
  std::vector<Statement> statements;
  friend bool operator==(const MonitorReport&, const MonitorReport&) = default;
};

inline constexpr double kHonestyMean = 0.5;
inline constexpr double kHonestySd = 0.125;

/// Independent N(0.5, 0.125) draws clamped into [0, 1], one per node in id order.
inline std::vector<double> draw_honesty(std::size_t n, Rng& rng) {
  std::vector<double> h(n);
  for (auto& x : h) x = std::clamp(normal(rng, kHonestyMean, kHonestySd), 0.0, 1.0);
  return h;
}

inline WorldGraph assign_honesty(const WorldGraph& world, Rng& rng) {
  WorldGraph out = world;
  out.honesty = draw_honesty(world.node_count(), rng);
  return out;
}

/// Probability that `speaker` misreports the color of its neighbor `subject`.
inline double lie_probability(NodeId speaker, NodeId subject, const WorldGraph& world, LyingScenario scenario) {
  if (speaker >= world.node_count() || subject >= world.node_count() || !world.has_edge(speaker, subject))
    throw ContractViolation("lie_probability: " + world.label(subject) + " is not a neighbor of " +
                            world.label(speaker));
  if (world.honesty.size() != world.node_count())
    throw ContractViolation("lie_probability: honesty has not been assigned");

  const bool speaker_red = world.color[speaker] == Color::Red;
  const bool subject_red = world.color[subject] == Color::Red;
  if (!speaker_red && scenario == LyingScenario::LS2) return subject_red ? 1.0 : 0.0;

  const double dishonesty = 1.0 - world.honesty[speaker];
  if (subject_red) return std::min(dishonesty * world.hierarchy[subject] / world.hierarchy[speaker], 1.0);
  return std::min(dishonesty, 1.0);
}

/// The hidden world answering monitor placements for one run.
class Oracle {
 public:
  Oracle(std::shared_ptr<const WorldGraph> world, LyingScenario scenario, std::uint64_t lie_seed)
      : world_(std::move(world)), scenario_(scenario), rng_(lie_seed) {
    if (!world_) throw std::invalid_argument("Oracle: null world");
    if (world_->honesty.size() != world_->node_count())
      throw std::invalid_argument("Oracle: world honesty has not been assigned");
  }

  const WorldGraph& world() const noexcept { return *world_; }
  LyingScenario scenario() const noexcept { return scenario_; }

  /// Reports are decided on first placement and replayed verbatim afterwards.
  /// Lie draws are taken in ascending neighbor order.
  const MonitorReport& place_monitor(NodeId target) {
    if (target >= world_->node_count())
      throw std::invalid_argument("place_monitor: unknown node id " + std::to_string(target));
    if (const auto it = issued_.find(target); it != issued_.end()) return it->second;

    MonitorReport report{target, world_->color[target], world_->neighbors(target), {}};
    report.statements.reserve(report.neighbors.size());
    for (NodeId v : report.neighbors) report.statements.push_back(decide_statement(target, v));
    return issued_.emplace(target, std::move(report)).first->second;
  }

  /// One fresh, uncached Bernoulli decision. Consumes exactly one draw.
  Statement decide_statement(NodeId speaker, NodeId subject) {
    const double p = lie_probability(speaker, subject, *world_, scenario_);
    const bool lie = bernoulli(rng_, p);
    const Color truth = world_->color[subject];
    return {speaker, subject, lie ? flip(truth) : truth};
  }

 private:
  std::shared_ptr<const WorldGraph> world_;
  LyingScenario scenario_;
  Rng rng_;
  std::unordered_map<NodeId, MonitorReport> issued_;
};

}  // namespace redcrawl
