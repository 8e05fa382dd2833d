#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "redcrawl/oracle.hpp"
#include "redcrawl/types.hpp"

namespace redcrawl {

inline constexpr std::size_t kFeatureCount = 9;

/// Per-candidate features, in order:
///   0 monitored red neighbors        1 monitored blue neighbors
///   2 red-red linked neighbor pairs  3 red score (statements saying red)
///   4 red says red    5 red says blue    6 blue says red    7 blue says blue
///   8 inferred probability of being red
using FeatureVector = std::array<double, kFeatureCount>;

enum Feature : std::size_t {
  kRedNeighbors,
  kBlueNeighbors,
  kRedTriangles,
  kRedScore,
  kRedSaysRed,
  kRedSaysBlue,
  kBlueSaysRed,
  kBlueSaysBlue,
  kInferredRed,
};

/// Verified statement tallies indexed [speaker color][said color][subject color].
using VerifiedCounts = std::array<std::array<std::array<std::uint64_t, 2>, 2>, 2>;

/// What the sampler knows. Grows monotonically through ingest().
class ObserverState {
 public:
  explicit ObserverState(std::size_t node_count)
      : observed_(node_count, false),
        monitored_(node_count),
        known_adjacency_(node_count),
        statements_about_(node_count),
        report_index_(node_count, kNoReport) {}

  std::size_t node_count() const noexcept { return observed_.size(); }

  void ingest(const MonitorReport& report) {
    const NodeId t = report.target;
    if (t >= node_count()) throw ContractViolation("ingest: node id out of range");
    if (monitored_[t]) throw ContractViolation("ingest: node " + std::to_string(t) + " is already monitored");
    if (!log_.empty() && !observed_[t])
      throw ContractViolation("ingest: node " + std::to_string(t) + " has not been observed");
    if (report.statements.size() != report.neighbors.size())
      throw ContractViolation("ingest: report has one statement per neighbor");
    for (std::size_t i = 0; i < report.neighbors.size(); ++i) {
      const auto& s = report.statements[i];
      if (s.speaker != t || s.subject != report.neighbors[i] || s.subject >= node_count())
        throw ContractViolation("ingest: malformed statement in report for node " + std::to_string(t));
      if (i > 0 && report.neighbors[i - 1] >= report.neighbors[i])
        throw ContractViolation("ingest: neighbor list must be sorted and unique");
    }

    if (log_.empty()) start_ = t;
    mark_observed(t);
    monitored_[t] = report.true_color;
    candidates_.erase(t);
    monitored_order_.push_back(t);

    // statements already made about t become verifiable now
    for (const auto& s : statements_about_[t]) ++counts_[index_of(*monitored_[s.speaker])][index_of(s.said)][index_of(report.true_color)];

    for (const auto& s : report.statements) {
      const NodeId v = s.subject;
      mark_observed(v);
      if (!monitored_[v]) {
        // edge (t, v) is new unless v was monitored, in which case v's report revealed it
        known_adjacency_[t].push_back(v);
        known_adjacency_[v].push_back(t);
        ++edge_count_;
      } else {
        ++counts_[index_of(report.true_color)][index_of(s.said)][index_of(*monitored_[v])];
      }
      statements_about_[v].push_back(s);
    }
    statement_count_ += report.statements.size();
    report_index_[t] = log_.size();
    log_.push_back(report);
  }

  bool empty() const noexcept { return log_.empty(); }
  std::optional<NodeId> start() const noexcept { return start_; }

  bool is_observed(NodeId v) const { return observed_.at(v); }
  bool is_monitored(NodeId v) const { return monitored_.at(v).has_value(); }
  std::optional<Color> monitored_color(NodeId v) const { return monitored_.at(v); }

  /// Observed but unmonitored nodes, ascending.
  const std::set<NodeId>& candidates() const noexcept { return candidates_; }
  const std::vector<NodeId>& monitored_order() const noexcept { return monitored_order_; }
  std::size_t monitored_count() const noexcept { return monitored_order_.size(); }
  std::size_t observed_count() const noexcept { return observed_count_; }
  std::size_t observed_edge_count() const noexcept { return edge_count_; }
  std::size_t statement_count() const noexcept { return statement_count_; }

  std::vector<NodeId> observed_nodes() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < node_count(); ++v)
      if (observed_[v]) out.push_back(v);
    return out;
  }

  /// Observed edges as (smaller, larger) pairs, sorted.
  std::vector<std::pair<NodeId, NodeId>> observed_edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId u = 0; u < node_count(); ++u)
      for (NodeId v : known_adjacency_[u])
        if (u < v) out.emplace_back(u, v);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Neighbors of v through observed edges (unordered).
  const std::vector<NodeId>& known_neighbors(NodeId v) const { return known_adjacency_.at(v); }

  bool has_observed_edge(NodeId u, NodeId v) const {
    const auto in_report = [&](NodeId a, NodeId b) {
      if (report_index_[a] == kNoReport) return false;
      const auto& nbrs = log_[report_index_[a]].neighbors;
      return std::binary_search(nbrs.begin(), nbrs.end(), b);
    };
    return in_report(u, v) || in_report(v, u);
  }

  /// Statements whose subject is v, in the order they were issued.
  const std::vector<Statement>& statements_about(NodeId v) const { return statements_about_.at(v); }

  std::optional<Color> statement(NodeId speaker, NodeId subject) const {
    if (speaker >= node_count() || report_index_[speaker] == kNoReport) return std::nullopt;
    const auto& r = log_[report_index_[speaker]];
    const auto it = std::lower_bound(r.neighbors.begin(), r.neighbors.end(), subject);
    if (it == r.neighbors.end() || *it != subject) return std::nullopt;
    return r.statements[static_cast<std::size_t>(it - r.neighbors.begin())].said;
  }

  const VerifiedCounts& verified_counts() const noexcept { return counts_; }
  const std::vector<MonitorReport>& report_log() const noexcept { return log_; }

  const MonitorReport* report_for(NodeId v) const {
    return report_index_.at(v) == kNoReport ? nullptr : &log_[report_index_[v]];
  }

 private:
  static constexpr std::size_t kNoReport = static_cast<std::size_t>(-1);

  void mark_observed(NodeId v) {
    if (observed_[v]) return;
    observed_[v] = true;
    ++observed_count_;
    candidates_.insert(v);
  }

  std::vector<bool> observed_;
  std::vector<std::optional<Color>> monitored_;
  std::vector<std::vector<NodeId>> known_adjacency_;
  std::vector<std::vector<Statement>> statements_about_;
  std::vector<std::size_t> report_index_;
  std::vector<MonitorReport> log_;
  std::vector<NodeId> monitored_order_;
  std::set<NodeId> candidates_;
  VerifiedCounts counts_{};
  std::optional<NodeId> start_;
  std::size_t observed_count_ = 0;
  std::size_t edge_count_ = 0;
  std::size_t statement_count_ = 0;
};

/// Laplace-smoothed P(subject red | speaker color, said color).
inline double conditional_trust(const VerifiedCounts& counts, Color speaker_color, Color said) {
  const auto& cell = counts[index_of(speaker_color)][index_of(said)];
  const auto red = static_cast<double>(cell[index_of(Color::Red)]);
  const auto total = red + static_cast<double>(cell[index_of(Color::Blue)]);
  return (red + 1.0) / (total + 2.0);
}

inline double conditional_trust(const ObserverState& state, Color speaker_color, Color said) {
  return conditional_trust(state.verified_counts(), speaker_color, said);
}

namespace detail {

// Features of v from the monitored neighbors of v, with trust ratios taken from
// `counts`. Works for monitored v too, since v never counts as its own neighbor.
inline FeatureVector compute_features(const ObserverState& state, NodeId v, const VerifiedCounts& counts) {
  FeatureVector f{};
  std::vector<NodeId> red_nbrs;
  for (NodeId u : state.known_neighbors(v)) {
    const auto c = state.monitored_color(u);
    if (!c) continue;
    if (*c == Color::Red) {
      f[kRedNeighbors] += 1;
      red_nbrs.push_back(u);
    } else {
      f[kBlueNeighbors] += 1;
    }
  }
  for (std::size_t i = 0; i < red_nbrs.size(); ++i)
    for (std::size_t j = i + 1; j < red_nbrs.size(); ++j)
      if (state.has_observed_edge(red_nbrs[i], red_nbrs[j])) f[kRedTriangles] += 1;

  double trust_sum = 0.0;
  std::size_t speakers = 0;
  for (const auto& s : state.statements_about(v)) {
    const auto c = state.monitored_color(s.speaker);
    if (!c) continue;
    const bool says_red = s.said == Color::Red;
    if (says_red) f[kRedScore] += 1;
    if (*c == Color::Red) f[says_red ? kRedSaysRed : kRedSaysBlue] += 1;
    else f[says_red ? kBlueSaysRed : kBlueSaysBlue] += 1;
    trust_sum += conditional_trust(counts, *c, s.said);
    ++speakers;
  }
  f[kInferredRed] = speakers == 0 ? 0.5 : trust_sum / static_cast<double>(speakers);
  return f;
}

inline void require_candidate(const ObserverState& state, NodeId v, const char* who) {
  if (v >= state.node_count() || !state.is_observed(v) || state.is_monitored(v))
    throw ContractViolation(std::string(who) + ": node " + std::to_string(v) + " is not an unmonitored observed node");
}

}  // namespace detail

/// Trust-weighted mean over the monitored neighbors that made a statement
/// about v; 0.5 when nobody has.
inline double inferred_red_probability(const ObserverState& state, NodeId v) {
  detail::require_candidate(state, v, "inferred_red_probability");
  return detail::compute_features(state, v, state.verified_counts())[kInferredRed];
}

inline FeatureVector features(const ObserverState& state, NodeId v) {
  detail::require_candidate(state, v, "features");
  return detail::compute_features(state, v, state.verified_counts());
}

/// Features of a monitored node m as they would read had m never been
/// monitored: verifications that relied on m's own report or color are
/// removed from the trust tallies.
inline FeatureVector unmonitored_features(const ObserverState& state, NodeId m) {
  const auto color = state.monitored_color(m);
  if (!color) throw ContractViolation("unmonitored_features: node " + std::to_string(m) + " is not monitored");
  VerifiedCounts counts = state.verified_counts();
  for (const auto& s : state.statements_about(m))
    --counts[index_of(*state.monitored_color(s.speaker))][index_of(s.said)][index_of(*color)];
  for (const auto& s : state.report_for(m)->statements)
    if (const auto sc = state.monitored_color(s.subject))
      --counts[index_of(*color)][index_of(s.said)][index_of(*sc)];
  return detail::compute_features(state, m, counts);
}

}  // namespace redcrawl
