#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "cooproute/errors.hpp"
#include "cooproute/tsp.hpp"
#include "oracles.hpp"

using namespace cooproute;

namespace {

TourInstance all_nodes(const Scenario& s, const TravelMatrix& m) {
  TourInstance inst;
  for (std::size_t i = 0; i < s.node_count(); ++i) inst.nodes.push_back(static_cast<PointId>(i));
  inst.start = kDepot;
  inst.metric = &m;
  return inst;
}

void expect_permutation(const Tour& t, const TourInstance& inst) {
  ASSERT_FALSE(t.order.empty());
  EXPECT_EQ(t.order.front(), inst.start);
  std::vector<PointId> a = t.order, b = inst.nodes;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  EXPECT_EQ(a, b);
}

double recomputed(const Tour& t, const Scenario& s) {
  double len = 0.0;
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    len += oracle::dist(s, t.order[i], t.order[(i + 1) % t.order.size()]);
  }
  return len;
}

}  // namespace

TEST(TspExact, SingleNode) {
  const Scenario s = oracle::make_scenario({0, 1, 1}, {}, 10.0);
  const TravelMatrix m(s);
  const Tour t = solve_tsp_exact(all_nodes(s, m));
  EXPECT_EQ(t.order, (std::vector<PointId>{0}));
  EXPECT_EQ(t.length, 0.0);
}

TEST(TspExact, UnitSquarePerimeter) {
  const Scenario s = oracle::make_scenario({0, 0, 0}, {{1, 1}, {1, 0}, {0, 1}}, 2.0);
  const TravelMatrix m(s);
  const Tour t = solve_tsp_exact(all_nodes(s, m));
  EXPECT_NEAR(t.length, 4.0, 1e-12);
  // Canonical direction: of the two perimeter walks, the lexicographically
  // smaller one.
  EXPECT_EQ(t.order, (std::vector<PointId>{0, 2, 1, 3}));
}

TEST(TspExact, MatchesFactorialBruteForce) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Scenario s = oracle::random_scenario(rng, 2 + trial % 8, 1000.0);
    const TravelMatrix m(s);
    const TourInstance inst = all_nodes(s, m);
    const Tour t = solve_tsp_exact(inst);
    expect_permutation(t, inst);
    EXPECT_NEAR(t.length, oracle::tsp_brute(s, inst.nodes), 1e-6);
    EXPECT_NEAR(t.length, recomputed(t, s), 1e-9);
  }
}

TEST(TspExact, SizeLimit) {
  std::mt19937_64 rng(1);
  const Scenario s = oracle::random_scenario(rng, static_cast<int>(kMaxExactTspNodes), 1000.0);
  const TravelMatrix m(s);
  EXPECT_THROW(solve_tsp_exact(all_nodes(s, m)), SizeLimitExceeded);
}

TEST(TspExact, RejectsBadInstances) {
  const Scenario s = oracle::make_scenario({0, 0, 0}, {{1, 1}}, 2.0);
  const TravelMatrix m(s);
  TourInstance inst = all_nodes(s, m);
  inst.metric = nullptr;
  EXPECT_THROW(solve_tsp_exact(inst), InvalidArgument);
  inst = all_nodes(s, m);
  inst.start = 5;
  EXPECT_THROW(solve_tsp_exact(inst), InvalidArgument);
}

TEST(TspExact, ReversalHasEqualLength) {
  std::mt19937_64 rng(5);
  const Scenario s = oracle::random_scenario(rng, 7, 1000.0);
  const TravelMatrix m(s);
  const Tour t = solve_tsp_exact(all_nodes(s, m));
  std::vector<PointId> rev = t.order;
  std::reverse(rev.begin() + 1, rev.end());
  EXPECT_NEAR(tour_length(rev, m), t.length, 1e-9);
  EXPECT_LE(t.order, rev);
}

TEST(TspHeuristic, WithinTenPercentOfExact) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const Scenario s = oracle::random_scenario(rng, 4 + trial % 12, 10000.0);
    const TravelMatrix m(s);
    const TourInstance inst = all_nodes(s, m);
    const Tour h = solve_tsp_heuristic(inst, static_cast<std::uint64_t>(trial));
    expect_permutation(h, inst);
    EXPECT_LE(h.length, 1.10 * solve_tsp_exact(inst).length + 1e-9);
  }
}

TEST(TspHeuristic, CollinearOutAndBack) {
  const Scenario s = oracle::make_scenario({0, 0, 0}, {{300, 0}, {100, 0}, {400, 0}, {200, 0}}, 500.0);
  const TravelMatrix m(s);
  const Tour t = solve_tsp_heuristic(all_nodes(s, m), 0);
  EXPECT_NEAR(t.length, 800.0, 1e-9);
}

TEST(TspHeuristic, TwoOptLocalOptimum) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scenario s = generate_scenario(Scale::Large, seed);
    const TravelMatrix m(s);
    const Tour t = solve_tsp_heuristic(all_nodes(s, m), seed);
    EXPECT_FALSE(has_improving_two_opt(t.order, m));
    EXPECT_NEAR(t.length, recomputed(t, s), 1e-6);
    expect_permutation(t, all_nodes(s, m));
  }
}

TEST(TspHeuristic, DeterministicPerSeed) {
  const Scenario s = generate_scenario(Scale::Medium, 3);
  const TravelMatrix m(s);
  const Tour a = solve_tsp_heuristic(all_nodes(s, m), 42);
  const Tour b = solve_tsp_heuristic(all_nodes(s, m), 42);
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.length, b.length);
}

TEST(TwoOpt, OpenPathKeepsEndpoints) {
  const Scenario s = oracle::make_scenario({0, 0, 0}, {{300, 0}, {100, 0}, {200, 0}, {400, 0}}, 500.0);
  const TravelMatrix m(s);
  std::vector<PointId> path{0, 1, 2, 3, 4};
  two_opt(path, m, true);
  EXPECT_EQ(path.front(), 0);
  EXPECT_EQ(path.back(), 4);
  EXPECT_EQ(path, (std::vector<PointId>{0, 2, 3, 1, 4}));
}
