#include <cmath>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace redcrawl {
namespace {

using testing::make_world;
using testing::with_honesty;

TEST(AssignHonesty, DeterministicGivenSeed) {
  const auto g = generate_synthetic(50, 0.1, SyntheticMode::Homophily, 1);
  Rng a(99), b(99);
  EXPECT_EQ(assign_honesty(g, a).honesty, assign_honesty(g, b).honesty);
}

TEST(AssignHonesty, MomentsAndClamping) {
  Rng rng(2024);
  const auto h = draw_honesty(10'000, rng);
  double mean = 0, var = 0;
  std::size_t clamped = 0;
  for (double x : h) {
    mean += x;
    clamped += x == 0.0 || x == 1.0;
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 1.0);
  }
  mean /= static_cast<double>(h.size());
  for (double x : h) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / static_cast<double>(h.size() - 1));
  EXPECT_NEAR(mean, 0.5, 0.01);
  EXPECT_NEAR(sd, 0.125, 0.01);
  // two-sided tail beyond 4 sd is about 6.3e-5
  EXPECT_LT(clamped, 10u);
}

// 0 red speaker, 1 red subject, 2 blue speaker, 3 blue subject; fully connected.
WorldGraph square(double h, std::vector<double> hierarchy = {2, 4, 2, 1}) {
  return with_honesty(make_world(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {0, 1}, hierarchy), h);
}

TEST(LieProbability, FullyHonestNeverLiesInLs1) {
  const auto g = square(1.0);
  for (NodeId u = 0; u < 4; ++u)
    for (NodeId v : g.neighbors(u)) EXPECT_EQ(lie_probability(u, v, g, LyingScenario::LS1), 0.0);
}

TEST(LieProbability, RedSubjectScaledByHierarchyAndCapped) {
  const auto g = square(0.5);
  // (1 - 0.5) * L_subject / L_speaker = 0.5 * 4 / 2 = 1.0
  EXPECT_DOUBLE_EQ(lie_probability(0, 1, g, LyingScenario::LS1), 1.0);
  const auto g2 = square(0.8, {4, 1, 2, 1});
  EXPECT_DOUBLE_EQ(lie_probability(0, 1, g2, LyingScenario::LS1), 0.2 * 1.0 / 4.0);
  const auto g3 = square(0.1, {1, 5, 1, 1});
  EXPECT_DOUBLE_EQ(lie_probability(0, 1, g3, LyingScenario::LS1), 1.0);
}

TEST(LieProbability, BlueSubjectUsesDishonesty) {
  const auto g = square(0.7);
  EXPECT_NEAR(lie_probability(0, 3, g, LyingScenario::LS1), 0.3, 1e-15);
  EXPECT_NEAR(lie_probability(2, 3, g, LyingScenario::LS1), 0.3, 1e-15);
  EXPECT_NEAR(lie_probability(0, 3, g, LyingScenario::LS2), 0.3, 1e-15);
}

TEST(LieProbability, BlueSpeakerInLs1KnowsHierarchy) {
  const auto g = square(0.6, {1, 3, 2, 1});
  EXPECT_NEAR(lie_probability(2, 1, g, LyingScenario::LS1), 0.4 * 3.0 / 2.0, 1e-15);
}

TEST(LieProbability, Ls2BlueSpeakerCallsEveryoneBlue) {
  for (double h : {0.0, 0.5, 1.0}) {
    const auto g = square(h);
    EXPECT_EQ(lie_probability(2, 3, g, LyingScenario::LS2), 0.0);
    EXPECT_EQ(lie_probability(2, 1, g, LyingScenario::LS2), 1.0);
    EXPECT_EQ(lie_probability(2, 0, g, LyingScenario::LS2), 1.0);
  }
}

TEST(LieProbability, NonAdjacentPairIsContractViolation) {
  const auto g = with_honesty(make_world(3, {{0, 1}}, {0}), 0.5);
  EXPECT_THROW(lie_probability(0, 2, g, LyingScenario::LS1), ContractViolation);
  EXPECT_THROW(lie_probability(0, 0, g, LyingScenario::LS1), ContractViolation);
  const auto no_h = make_world(2, {{0, 1}}, {0});
  EXPECT_THROW(lie_probability(0, 1, no_h, LyingScenario::LS1), ContractViolation);
}

TEST(PlaceMonitor, HonestWorldTellsTheTruth) {
  auto world = generate_synthetic(80, 0.2, SyntheticMode::Homophily, 4);
  auto truth = std::make_shared<const WorldGraph>(with_honesty(world, 1.0));
  Oracle oracle(truth, LyingScenario::LS1, 5);
  for (NodeId t = 0; t < world.node_count(); ++t) {
    const auto& r = oracle.place_monitor(t);
    EXPECT_EQ(r.true_color, world.color[t]);
    EXPECT_EQ(r.neighbors, world.neighbors(t));
    ASSERT_EQ(r.statements.size(), r.neighbors.size());
    for (const auto& s : r.statements) EXPECT_EQ(s.said, world.color[s.subject]);
  }
}

TEST(PlaceMonitor, Ls2BlueTargetsSayBlue) {
  auto world = generate_synthetic(80, 0.2, SyntheticMode::Homophily, 4);
  Rng h(1);
  auto truth = std::make_shared<const WorldGraph>(assign_honesty(world, h));
  Oracle oracle(truth, LyingScenario::LS2, 6);
  for (NodeId t = 0; t < world.node_count(); ++t) {
    if (world.color[t] != Color::Blue) continue;
    for (const auto& s : oracle.place_monitor(t).statements) EXPECT_EQ(s.said, Color::Blue);
  }
}

TEST(PlaceMonitor, ReportsAreCachedAndTopologyIsTruthful) {
  auto world = generate_synthetic(60, 0.2, SyntheticMode::Homophily, 9);
  Rng h(3);
  auto truth = std::make_shared<const WorldGraph>(assign_honesty(world, h));
  Oracle oracle(truth, LyingScenario::LS1, 77);
  for (NodeId t = 0; t < world.node_count(); ++t) {
    const auto first = oracle.place_monitor(t);
    const auto again = oracle.place_monitor(t);
    EXPECT_EQ(first, again);
    EXPECT_EQ(first.neighbors, world.neighbors(t));
    for (const auto& s : first.statements) {
      EXPECT_EQ(s.speaker, t);
      EXPECT_TRUE(s.said == Color::Red || s.said == Color::Blue);
    }
  }
  EXPECT_THROW(oracle.place_monitor(static_cast<NodeId>(world.node_count())), std::invalid_argument);
}

TEST(PlaceMonitor, RequiresHonesty) {
  auto world = std::make_shared<const WorldGraph>(make_world(2, {{0, 1}}, {0}));
  EXPECT_THROW(Oracle(world, LyingScenario::LS1, 1), std::invalid_argument);
}

TEST(PlaceMonitor, LieFrequencyMatchesProbabilityAcrossFreshOracles) {
  // speaker 0 (blue, H = 0.5) talks about blue subject 1: p = 0.5
  auto truth = std::make_shared<const WorldGraph>(with_honesty(make_world(2, {{0, 1}}, {}), 0.5));
  ASSERT_DOUBLE_EQ(lie_probability(0, 1, *truth, LyingScenario::LS1), 0.5);
  std::size_t flips = 0;
  const std::size_t trials = 10'000;
  for (std::size_t seed = 0; seed < trials; ++seed) {
    Oracle oracle(truth, LyingScenario::LS1, derive_seed(31337, seed));
    flips += oracle.place_monitor(0).statements[0].said == Color::Red;
  }
  EXPECT_NEAR(static_cast<double>(flips) / trials, 0.5, 0.015);
}

TEST(PlaceMonitor, StatementsDependOnlyOnSeedAndOrder) {
  auto world = generate_synthetic(60, 0.2, SyntheticMode::Homophily, 2);
  Rng h(8);
  auto truth = std::make_shared<const WorldGraph>(assign_honesty(world, h));
  Oracle a(truth, LyingScenario::LS1, 5), b(truth, LyingScenario::LS1, 5);
  for (NodeId t : {3u, 17u, 42u, 8u}) EXPECT_EQ(a.place_monitor(t), b.place_monitor(t));
}

}  // namespace
}  // namespace redcrawl
