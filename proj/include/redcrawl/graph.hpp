#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "redcrawl/types.hpp"

namespace redcrawl {

/// Hidden ground-truth network. Adjacency lists are sorted and duplicate free.
struct WorldGraph {
  std::vector<std::vector<NodeId>> adjacency;
  std::vector<Color> color;
  std::vector<double> hierarchy;
  /// Empty until an oracle run assigns it.
  std::vector<double> honesty;
  std::vector<std::string> labels;  // dense id -> external id
  std::string name;

  std::size_t node_count() const noexcept { return adjacency.size(); }

  std::size_t edge_count() const noexcept {
    std::size_t twice = 0;
    for (const auto& nbrs : adjacency) twice += nbrs.size();
    return twice / 2;
  }

  bool has_edge(NodeId u, NodeId v) const {
    const auto& nbrs = adjacency.at(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  const std::vector<NodeId>& neighbors(NodeId v) const { return adjacency.at(v); }

  std::string label(NodeId v) const {
    return v < labels.size() ? labels[v] : std::to_string(v);
  }

  friend bool operator==(const WorldGraph&, const WorldGraph&) = default;
};

struct ColorCounts {
  std::size_t red = 0;
  std::size_t blue = 0;
  friend bool operator==(const ColorCounts&, const ColorCounts&) = default;
};

inline ColorCounts count_colors(const WorldGraph& g) {
  ColorCounts c;
  for (auto col : g.color) (col == Color::Red ? c.red : c.blue)++;
  return c;
}

/// Number of undirected edges with both endpoints red.
inline std::size_t count_red_red_edges(const WorldGraph& g) {
  std::size_t count = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    if (g.color[u] != Color::Red) continue;
    for (NodeId v : g.adjacency[u])
      if (u < v && g.color[v] == Color::Red) ++count;
  }
  return count;
}

struct BuildStats {
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  std::size_t dropped() const noexcept { return self_loops + duplicates; }
};

/// Assembles symmetric, sorted adjacency from an edge list. Self-loops and
/// repeated edges (in either orientation) are dropped and counted.
inline std::vector<std::vector<NodeId>> build_adjacency(
    std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges, BuildStats* stats = nullptr) {
  std::vector<std::vector<NodeId>> adj(n);
  BuildStats local;
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("edge endpoint outside node range");
    if (u == v) {
      ++local.self_loops;
      continue;
    }
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::size_t removed_endpoints = 0;
  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    const auto last = std::unique(nbrs.begin(), nbrs.end());
    removed_endpoints += static_cast<std::size_t>(nbrs.end() - last);
    nbrs.erase(last, nbrs.end());
  }
  local.duplicates = removed_endpoints / 2;
  if (stats) *stats = local;
  return adj;
}

/// Throws std::invalid_argument describing the first violated invariant.
inline void validate(const WorldGraph& g) {
  const auto n = g.node_count();
  if (g.color.size() != n) throw std::invalid_argument("color vector size does not match node count");
  if (g.hierarchy.size() != n) throw std::invalid_argument("hierarchy vector size does not match node count");
  if (!g.honesty.empty() && g.honesty.size() != n)
    throw std::invalid_argument("honesty vector size does not match node count");
  if (!g.labels.empty() && g.labels.size() != n)
    throw std::invalid_argument("label table size does not match node count");
  for (NodeId v = 0; v < n; ++v) {
    const auto& nbrs = g.adjacency[v];
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      const NodeId u = nbrs[i];
      if (u >= n) throw std::invalid_argument("neighbor id out of range at node " + g.label(v));
      if (u == v) throw std::invalid_argument("self-loop at node " + g.label(v));
      if (i > 0 && nbrs[i - 1] >= u)
        throw std::invalid_argument("adjacency of node " + g.label(v) + " is not sorted and unique");
      if (!g.has_edge(u, v))
        throw std::invalid_argument("asymmetric edge " + g.label(v) + " -> " + g.label(u));
    }
    if (!(g.hierarchy[v] > 0.0) || !std::isfinite(g.hierarchy[v]))
      throw std::invalid_argument("hierarchy of node " + g.label(v) + " must be positive");
    if (!g.honesty.empty() && !(g.honesty[v] >= 0.0 && g.honesty[v] <= 1.0))
      throw std::invalid_argument("honesty of node " + g.label(v) + " outside [0,1]");
  }
}

/// Copy of g without any edge joining two red nodes.
inline WorldGraph remove_red_red_edges(const WorldGraph& g) {
  WorldGraph out = g;
  for (NodeId v = 0; v < out.node_count(); ++v) {
    if (out.color[v] != Color::Red) continue;
    auto& nbrs = out.adjacency[v];
    std::erase_if(nbrs, [&](NodeId u) { return out.color[u] == Color::Red; });
  }
  return out;
}

/// Hierarchy := degree (floored at 1 so isolated nodes stay valid).
inline void set_hierarchy_to_degree(WorldGraph& g) {
  g.hierarchy.assign(g.node_count(), 1.0);
  for (NodeId v = 0; v < g.node_count(); ++v)
    g.hierarchy[v] = std::max<double>(1.0, static_cast<double>(g.adjacency[v].size()));
}

}  // namespace redcrawl
