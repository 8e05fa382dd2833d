#include <cstdlib>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace redcrawl {
namespace {

using testing::make_world;

WorldGraph load_text(const std::string& edges, const std::string& nodes, BuildStats* stats = nullptr) {
  std::istringstream e(edges), n(nodes);
  return load_graph(e, n, "edges", "nodes", stats);
}

TEST(LoadGraph, MinimalPath) {
  const auto g = load_text("a b\nb c\n", "id,color,hierarchy\na,red,2\nb,blue,1\nc,Blue,1\n");
  ASSERT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(count_colors(g), (ColorCounts{1, 2}));
  EXPECT_EQ(g.labels, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
  EXPECT_DOUBLE_EQ(g.hierarchy[0], 2.0);
  EXPECT_NO_THROW(validate(g));
}

TEST(LoadGraph, SelfLoopDroppedWithWarning) {
  BuildStats stats;
  const auto g = load_text("a a\na b\n", "id,color\na,red\nb,blue\n", &stats);
  EXPECT_EQ(stats.self_loops, 1u);
  EXPECT_EQ(stats.dropped(), 1u);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(LoadGraph, DuplicateEdgesInEitherOrientationDropped) {
  BuildStats stats;
  const auto g = load_text("a b\nb a\na b\n", "id,color\na,red\nb,blue\n", &stats);
  EXPECT_EQ(stats.duplicates, 2u);
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(LoadGraph, CommentsBlankLinesAndMissingHierarchy) {
  const auto g = load_text("# header\n\na b # trailing\n", "id,color\n# note\na,RED\nb,blue\n");
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.hierarchy, (std::vector<double>{1.0, 1.0}));
  EXPECT_EQ(g.color[0], Color::Red);
}

TEST(LoadGraph, ColumnOrderFollowsHeader) {
  const auto g = load_text("x y\n", "color,hierarchy,id\nred,3,x\nblue,5,y\n");
  EXPECT_EQ(g.labels[0], "x");
  EXPECT_DOUBLE_EQ(g.hierarchy[1], 5.0);
}

TEST(LoadGraph, UnknownNodeIsNamed) {
  try {
    load_text("a zz\n", "id,color\na,red\n");
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(LoadGraph, RejectsBadColorHierarchyAndShape) {
  EXPECT_THROW(load_text("", "id,color\na,green\n"), LoadError);
  EXPECT_THROW(load_text("", "id,color,hierarchy\na,red,0\n"), LoadError);
  EXPECT_THROW(load_text("", "id,color,hierarchy\na,red,-2\n"), LoadError);
  EXPECT_THROW(load_text("", "id,color,hierarchy\na,red,abc\n"), LoadError);
  EXPECT_THROW(load_text("", "id,colour\na,red\n"), LoadError);
  EXPECT_THROW(load_text("", "id,color\na,red\na,blue\n"), LoadError);
  EXPECT_THROW(load_text("a\n", "id,color\na,red\n"), LoadError);
  EXPECT_THROW(load_text("a a a\n", "id,color\na,red\n"), LoadError);
  EXPECT_THROW(load_graph("/nonexistent/e.txt", "/nonexistent/n.csv"), LoadError);
}

TEST(LoadGraph, DeterministicIdAssignment) {
  const std::string edges = "q r\nr s\ns q\n", nodes = "id,color\ns,red\nq,blue\nr,blue\n";
  EXPECT_EQ(load_text(edges, nodes), load_text(edges, nodes));
  EXPECT_EQ(load_text(edges, nodes).labels, (std::vector<std::string>{"s", "q", "r"}));
}

TEST(SaveGraph, RoundTripPreservesEverything) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = generate_synthetic(30 + seed, 0.2, static_cast<SyntheticMode>(seed % 3), seed);
    for (NodeId v = 0; v < g.node_count(); ++v) g.hierarchy[v] = 0.25 + 1.0 / (1.0 + v);
    std::ostringstream e, n;
    save_graph(g, e, n);
    std::istringstream ei(e.str()), ni(n.str());
    auto back = load_graph(ei, ni, "e", "n");
    back.name = g.name;
    EXPECT_EQ(back, g) << "seed " << seed;
  }
}

TEST(Validate, CatchesBrokenInvariants) {
  auto g = make_world(3, {{0, 1}, {1, 2}}, {0});
  EXPECT_NO_THROW(validate(g));
  auto asym = g;
  asym.adjacency[0].clear();
  EXPECT_THROW(validate(asym), std::invalid_argument);
  auto bad_h = g;
  bad_h.hierarchy[2] = 0.0;
  EXPECT_THROW(validate(bad_h), std::invalid_argument);
  auto bad_honesty = g;
  bad_honesty.honesty = {0.5, 1.5, 0.2};
  EXPECT_THROW(validate(bad_honesty), std::invalid_argument);
}

TEST(RemoveRedRed, Triangle) {
  // r1 = 0, r2 = 1, b = 2
  const auto g = make_world(3, {{0, 1}, {1, 2}, {0, 2}}, {0, 1});
  const auto out = remove_red_red_edges(g);
  EXPECT_EQ(out.edge_count(), 2u);
  EXPECT_TRUE(out.has_edge(0, 2));
  EXPECT_TRUE(out.has_edge(1, 2));
  EXPECT_EQ(count_red_red_edges(out), 0u);
  EXPECT_NO_THROW(validate(out));
}

TEST(RemoveRedRed, AllBlueIsIdentity) {
  const auto g = make_world(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {});
  EXPECT_EQ(remove_red_red_edges(g), g);
}

TEST(RemoveRedRed, PropertiesOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = generate_synthetic(120, 0.3, SyntheticMode::Homophily, seed);
    const auto once = remove_red_red_edges(g);
    EXPECT_EQ(count_red_red_edges(once), 0u);
    EXPECT_EQ(remove_red_red_edges(once), once);
    EXPECT_EQ(once.node_count(), g.node_count());
    EXPECT_EQ(once.color, g.color);
    EXPECT_EQ(once.hierarchy, g.hierarchy);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (g.color[v] == Color::Blue) { EXPECT_EQ(once.adjacency[v], g.adjacency[v]); }
    }
    EXPECT_NO_THROW(validate(once));
  }
}

TEST(CountColors, EmptyGraph) {
  EXPECT_EQ(count_colors(WorldGraph{}), (ColorCounts{0, 0}));
}

// Optional real-data fixtures: REDCRAWL_NOORDIN_DIR holds edges.txt and
// coms1.csv ... coms5.csv; REDCRAWL_POKEC_DIR holds edges.txt and age.csv.
const char* fixture_dir(const char* var) { return std::getenv(var); }

TEST(Fixtures, NoordinShapeAndRedCounts) {
  const char* dir = fixture_dir("REDCRAWL_NOORDIN_DIR");
  if (!dir) GTEST_SKIP() << "REDCRAWL_NOORDIN_DIR not set";
  const std::filesystem::path root(dir);
  const std::size_t expected_reds[] = {9, 5, 9, 18, 11};
  for (int k = 1; k <= 5; ++k) {
    const auto g = load_graph(root / "edges.txt", root / ("coms" + std::to_string(k) + ".csv"));
    EXPECT_EQ(g.node_count(), 139u);
    EXPECT_EQ(g.edge_count(), 1042u);
    EXPECT_EQ(count_colors(g).red, expected_reds[k - 1]) << "NoordinComs" << k;
    if (k == 4) {
      const auto stripped = remove_red_red_edges(g);
      EXPECT_EQ(count_red_red_edges(stripped), 0u);
      EXPECT_EQ(count_colors(stripped).red, 18u);
    }
  }
}

TEST(Fixtures, PokecAgeRedCount) {
  const char* dir = fixture_dir("REDCRAWL_POKEC_DIR");
  if (!dir) GTEST_SKIP() << "REDCRAWL_POKEC_DIR not set";
  const std::filesystem::path root(dir);
  EXPECT_EQ(count_colors(load_graph(root / "edges.txt", root / "age.csv")).red, 1736u);
}

}  // namespace
}  // namespace redcrawl
