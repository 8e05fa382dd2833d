#pragma once

// Seeded synthetic worlds for self-contained experiments.
//
//   homophily          connected random base graph plus extra red-red links
//   no_homophily       homophily graph with every red-red edge removed
//   structural_signal  blue-only base graph; each red attaches to a fixed number
//                      of distinct blues, chosen so that the mean red degree
//                      exceeds the mean blue degree by at least red_degree_offset
//
// Hierarchy is set to node degree in every mode.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "redcrawl/graph.hpp"
#include "redcrawl/random.hpp"

namespace redcrawl {

enum class SyntheticMode { Homophily, NoHomophily, StructuralSignal };

inline std::string_view to_string(SyntheticMode m) noexcept {
  switch (m) {
    case SyntheticMode::Homophily: return "homophily";
    case SyntheticMode::NoHomophily: return "no_homophily";
    case SyntheticMode::StructuralSignal: return "structural_signal";
  }
  return "?";
}

inline SyntheticMode parse_synthetic_mode(std::string_view s) {
  const auto lower = to_lower(s);
  if (lower == "homophily") return SyntheticMode::Homophily;
  if (lower == "no_homophily") return SyntheticMode::NoHomophily;
  if (lower == "structural_signal") return SyntheticMode::StructuralSignal;
  throw std::invalid_argument("unknown synthetic mode '" + std::string(s) + "'");
}

struct SyntheticOptions {
  double mean_degree = 6.0;
  /// Extra red-red links attempted per red node (homophily modes).
  std::size_t red_links = 4;
  /// Minimum gap between mean red and mean blue degree (structural_signal).
  double red_degree_offset = 12.0;
};

namespace detail {

class EdgeAccumulator {
 public:
  bool add(NodeId u, NodeId v) {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    const auto key = (static_cast<std::uint64_t>(u) << 32) | v;
    if (!seen_.insert(key).second) return false;
    edges_.emplace_back(u, v);
    return true;
  }
  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<std::pair<NodeId, NodeId>>& edges() const noexcept { return edges_; }

 private:
  std::unordered_set<std::uint64_t> seen_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
};

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

// Random spanning tree over `members`, topped up with uniform random edges
// until the member subgraph holds `target_edges` edges.
inline void connected_random_graph(const std::vector<NodeId>& members, std::size_t target_edges, Rng& rng,
                                   EdgeAccumulator& acc) {
  const std::size_t k = members.size();
  if (k < 2) return;
  auto order = members;
  shuffle(order, rng);
  const std::size_t before = acc.size();
  for (std::size_t i = 1; i < k; ++i) acc.add(order[i], order[uniform_index(rng, i)]);
  target_edges = std::min(target_edges, k * (k - 1) / 2);
  while (acc.size() - before < target_edges)
    acc.add(members[uniform_index(rng, k)], members[uniform_index(rng, k)]);
}

}  // namespace detail

inline WorldGraph generate_synthetic(std::size_t n, double red_fraction, SyntheticMode mode, std::uint64_t seed,
                                     const SyntheticOptions& opts = {}) {
  if (n < 10) throw std::invalid_argument("synthetic graph needs n >= 10");
  if (!(red_fraction > 0.0 && red_fraction < 0.5))
    throw std::invalid_argument("red_fraction must lie in (0, 0.5)");
  if (!(opts.mean_degree > 0.0)) throw std::invalid_argument("mean_degree must be positive");

  Rng rng(derive_seed(seed, 0x5e17));
  const std::size_t reds =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(red_fraction * static_cast<double>(n))), 1,
                              (n - 1) / 2);

  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  detail::shuffle(ids, rng);

  WorldGraph g;
  g.color.assign(n, Color::Blue);
  std::vector<NodeId> red_ids(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(reds));
  std::vector<NodeId> blue_ids(ids.begin() + static_cast<std::ptrdiff_t>(reds), ids.end());
  std::sort(red_ids.begin(), red_ids.end());
  std::sort(blue_ids.begin(), blue_ids.end());
  for (NodeId r : red_ids) g.color[r] = Color::Red;

  detail::EdgeAccumulator acc;
  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), NodeId{0});

  if (mode == SyntheticMode::StructuralSignal) {
    const auto nb = blue_ids.size();
    const auto base_edges = static_cast<std::size_t>(std::llround(opts.mean_degree * static_cast<double>(nb) / 2.0));
    detail::connected_random_graph(blue_ids, base_edges, rng, acc);
    const double base_mean = 2.0 * static_cast<double>(acc.size()) / static_cast<double>(nb);
    const double share = static_cast<double>(reds) / static_cast<double>(nb);
    const auto red_degree = std::min<std::size_t>(
        nb, static_cast<std::size_t>(std::ceil((opts.red_degree_offset + base_mean) / (1.0 - share))));
    auto pool = blue_ids;
    for (NodeId r : red_ids) {
      // partial Fisher-Yates: the first red_degree entries become r's neighbors
      for (std::size_t i = 0; i < red_degree; ++i) {
        std::swap(pool[i], pool[i + uniform_index(rng, nb - i)]);
        acc.add(r, pool[i]);
      }
    }
  } else {
    const auto base_edges = static_cast<std::size_t>(std::llround(opts.mean_degree * static_cast<double>(n) / 2.0));
    detail::connected_random_graph(all, base_edges, rng, acc);
    if (reds > 1) {
      for (NodeId r : red_ids)
        for (std::size_t k = 0; k < opts.red_links; ++k) acc.add(r, red_ids[uniform_index(rng, reds)]);
    }
  }

  g.adjacency = build_adjacency(n, acc.edges());
  g.labels.resize(n);
  for (NodeId v = 0; v < n; ++v) g.labels[v] = std::to_string(v);
  if (mode == SyntheticMode::NoHomophily) g = remove_red_red_edges(g);
  set_hierarchy_to_degree(g);
  g.name = "synthetic-" + std::string(to_string(mode)) + "-n" + std::to_string(n) + "-s" + std::to_string(seed);
  return g;
}

}  // namespace redcrawl
