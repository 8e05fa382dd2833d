#pragma once

// Monitor-placement policies. Every pick scores each candidate (observed,
// unmonitored node), takes the maximum, and breaks ties uniformly at random
// from the caller's stream. An empty candidate set yields std::nullopt.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "redcrawl/classifier.hpp"
#include "redcrawl/observer.hpp"
#include "redcrawl/random.hpp"

namespace redcrawl {

enum class StrategyKind { SmartRandom, RedScore, MostRedSayRed, MostRedNeighbors, RedLearn };

inline constexpr std::array<StrategyKind, 5> kAllStrategies = {
    StrategyKind::SmartRandom, StrategyKind::RedScore, StrategyKind::MostRedSayRed,
    StrategyKind::MostRedNeighbors, StrategyKind::RedLearn};

inline std::string_view to_string(StrategyKind k) noexcept {
  switch (k) {
    case StrategyKind::SmartRandom: return "sr";
    case StrategyKind::RedScore: return "rs";
    case StrategyKind::MostRedSayRed: return "mrsr";
    case StrategyKind::MostRedNeighbors: return "mrn";
    case StrategyKind::RedLearn: return "redlearn";
  }
  return "?";
}

inline StrategyKind parse_strategy(std::string_view s) {
  const auto lower = to_lower(s);
  for (auto k : kAllStrategies)
    if (lower == to_string(k)) return k;
  throw std::invalid_argument("unknown strategy '" + std::string(s) + "' (expected sr, rs, mrsr, mrn or redlearn)");
}

struct Decision {
  NodeId chosen;
  /// (candidate, score) in ascending candidate order.
  std::vector<std::pair<NodeId, double>> scores;

  double score_of(NodeId v) const {
    for (const auto& [id, s] : scores)
      if (id == v) return s;
    throw std::out_of_range("Decision::score_of: not a scored candidate");
  }
};

template <typename ScoreFn>
std::optional<Decision> pick_by_score(const ObserverState& state, Rng& rng, ScoreFn&& score) {
  const auto& cands = state.candidates();
  if (cands.empty()) return std::nullopt;
  Decision d{0, {}};
  d.scores.reserve(cands.size());
  double best = 0.0;
  std::vector<NodeId> tied;
  for (NodeId v : cands) {
    const double s = score(v);
    d.scores.emplace_back(v, s);
    if (tied.empty() || s > best) {
      best = s;
      tied.assign(1, v);
    } else if (s == best) {
      tied.push_back(v);
    }
  }
  d.chosen = tied.size() == 1 ? tied.front() : tied[uniform_index(rng, tied.size())];
  return d;
}

inline std::optional<Decision> pick_smart_random(const ObserverState& state, Rng& rng) {
  return pick_by_score(state, rng, [](NodeId) { return 0.0; });
}

/// Number of statements calling v red.
inline std::optional<Decision> pick_red_score(const ObserverState& state, Rng& rng) {
  return pick_by_score(state, rng, [&](NodeId v) {
    double s = 0;
    for (const auto& st : state.statements_about(v)) s += st.said == Color::Red;
    return s;
  });
}

/// Number of monitored red neighbors calling v red.
inline std::optional<Decision> pick_mrsr(const ObserverState& state, Rng& rng) {
  return pick_by_score(state, rng, [&](NodeId v) {
    double s = 0;
    for (const auto& st : state.statements_about(v))
      s += st.said == Color::Red && state.monitored_color(st.speaker) == Color::Red;
    return s;
  });
}

/// Number of monitored red neighbors.
inline std::optional<Decision> pick_mrn(const ObserverState& state, Rng& rng) {
  return pick_by_score(state, rng, [&](NodeId v) {
    double s = 0;
    for (NodeId u : state.known_neighbors(v)) s += state.monitored_color(u) == Color::Red;
    return s;
  });
}

/// Model probability of red; delegates to MRN while the model is in fallback.
inline std::optional<Decision> pick_redlearn(const ObserverState& state, const TrainedModel& model, Rng& rng) {
  if (model.fallback) return pick_mrn(state, rng);
  return pick_by_score(state, rng, [&](NodeId v) { return *predict(model, features(state, v)); });
}

inline std::optional<Decision> pick(StrategyKind kind, const ObserverState& state, Rng& rng,
                                    const TrainedModel& model = {}) {
  switch (kind) {
    case StrategyKind::SmartRandom: return pick_smart_random(state, rng);
    case StrategyKind::RedScore: return pick_red_score(state, rng);
    case StrategyKind::MostRedSayRed: return pick_mrsr(state, rng);
    case StrategyKind::MostRedNeighbors: return pick_mrn(state, rng);
    case StrategyKind::RedLearn: return pick_redlearn(state, model, rng);
  }
  throw std::invalid_argument("pick: unknown strategy");
}

}  // namespace redcrawl
