#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace redcrawl {
namespace {

std::string serialize(const WorldGraph& g) {
  std::ostringstream e, n;
  save_graph(g, e, n);
  return e.str() + "\n--\n" + n.str();
}

double mean_degree(const WorldGraph& g, Color c) {
  double sum = 0;
  std::size_t count = 0;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.color[v] == c) {
      sum += static_cast<double>(g.adjacency[v].size());
      ++count;
    }
  return sum / static_cast<double>(count);
}

std::size_t components(const WorldGraph& g) {
  std::vector<NodeId> parent(g.node_count());
  std::iota(parent.begin(), parent.end(), NodeId{0});
  const auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v : g.adjacency[u]) parent[find(u)] = find(v);
  std::size_t roots = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) roots += find(v) == v;
  return roots;
}

TEST(Synthetic, SeededGenerationIsByteIdentical) {
  EXPECT_EQ(serialize(generate_synthetic(100, 0.1, SyntheticMode::Homophily, 7)),
            serialize(generate_synthetic(100, 0.1, SyntheticMode::Homophily, 7)));
  EXPECT_NE(serialize(generate_synthetic(100, 0.1, SyntheticMode::Homophily, 7)),
            serialize(generate_synthetic(100, 0.1, SyntheticMode::Homophily, 8)));
}

TEST(Synthetic, NoHomophilyHasNoRedRedEdges) {
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    EXPECT_EQ(count_red_red_edges(generate_synthetic(200, 0.2, SyntheticMode::NoHomophily, seed)), 0u);
}

TEST(Synthetic, HomophilyLinksRedsTogether) {
  const auto g = generate_synthetic(500, 0.05, SyntheticMode::Homophily, 3);
  EXPECT_GT(count_red_red_edges(g), 25u);
  EXPECT_EQ(components(g), 1u);
}

TEST(Synthetic, StructuralSignalDegreeGap) {
  const SyntheticOptions opts;
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto g = generate_synthetic(500, 0.05, SyntheticMode::StructuralSignal, seed, opts);
    EXPECT_EQ(count_red_red_edges(g), 0u);
    EXPECT_GE(mean_degree(g, Color::Red) - mean_degree(g, Color::Blue), opts.red_degree_offset);
    EXPECT_EQ(components(g), 1u);
  }
}

TEST(Synthetic, RedCountAndHierarchy) {
  const auto g = generate_synthetic(500, 0.05, SyntheticMode::StructuralSignal, 1);
  EXPECT_EQ(count_colors(g).red, 25u);
  for (NodeId v = 0; v < g.node_count(); ++v)
    EXPECT_DOUBLE_EQ(g.hierarchy[v], std::max<double>(1.0, static_cast<double>(g.adjacency[v].size())));
  EXPECT_NO_THROW(validate(g));
  EXPECT_TRUE(g.honesty.empty());
}

TEST(Synthetic, RejectsOutOfRangeParameters) {
  EXPECT_THROW(generate_synthetic(9, 0.1, SyntheticMode::Homophily, 1), std::invalid_argument);
  EXPECT_THROW(generate_synthetic(100, 0.0, SyntheticMode::Homophily, 1), std::invalid_argument);
  EXPECT_THROW(generate_synthetic(100, 0.5, SyntheticMode::Homophily, 1), std::invalid_argument);
  EXPECT_THROW(parse_synthetic_mode("clustered"), std::invalid_argument);
}

TEST(Synthetic, SmallGraphsStayValid) {
  for (auto mode : {SyntheticMode::Homophily, SyntheticMode::NoHomophily, SyntheticMode::StructuralSignal})
    EXPECT_NO_THROW(validate(generate_synthetic(10, 0.49, mode, 5)));
}

}  // namespace
}  // namespace redcrawl
