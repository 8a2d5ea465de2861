#include <gtest/gtest.h>

#include <random>

#include "cooproute/errors.hpp"
#include "cooproute/setcover.hpp"
#include "oracles.hpp"

using namespace cooproute;

namespace {

// Exact-valued power draw so the coverage radius is exactly representable.
Scenario flat_power(Scenario s, double radius) {
  s.uav.power = PowerModel(PowerModelKind::UavCubic, {0.0, 0.0, 0.0, 200.0}, 20.0);
  s.uav.fuel_capacity = 2.0 * radius / s.uav.speed * 200.0;
  s.uav.recharge_rate = s.uav.fuel_capacity / 900.0;
  return s;
}

// Targets 1..6 cover nothing; candidates 7 = {1,2,3}, 8 = {4,5,6},
// 9 = {1,2,4,5}.
CoverInstance greedy_trap() {
  CoverInstance inst;
  inst.depot = 0;
  inst.radius = 1.0;
  inst.targets = {1, 2, 3, 4, 5, 6};
  inst.candidates = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  inst.cover_sets = {{}, {}, {}, {}, {}, {}, {}, {1, 2, 3}, {4, 5, 6}, {1, 2, 4, 5}};
  return inst;
}

}  // namespace

TEST(BuildCoverInstance, DepotCoversNearbyTargets) {
  const Scenario s = oracle::make_scenario({0, 5000, 5000}, {{5100, 5000}, {4000, 4000}, {6000, 6500}},
                                           10000.0, 3000.0);
  const CoverInstance inst = build_cover_instance(s, TravelMatrix(s));
  ASSERT_EQ(inst.candidates.front(), kDepot);
  EXPECT_EQ(inst.cover_sets.front(), (std::vector<PointId>{1, 2, 3}));
}

TEST(BuildCoverInstance, BoundaryIsExcluded) {
  const Scenario s = flat_power(
      oracle::make_scenario({0, 0, 0}, {{3000, 4000}, {2999, 4000}}, 10000.0), 5000.0);
  ASSERT_EQ(coverage_radius(s.uav), 5000.0);
  const CoverInstance inst = build_cover_instance(s, TravelMatrix(s));
  EXPECT_EQ(inst.cover_sets.front(), (std::vector<PointId>{2}));
}

TEST(CheckFeasible, ReportsUncoverableTargets) {
  CoverInstance inst;
  inst.radius = 7370.0;
  inst.candidates = {0, 1, 2};
  inst.targets = {1, 2};
  inst.cover_sets = {{1}, {1}, {}};
  try {
    check_feasible(inst);
    FAIL() << "expected Uncoverable";
  } catch (const Uncoverable& e) {
    EXPECT_EQ(e.targets(), (std::vector<int>{2}));
  }
  EXPECT_THROW(greedy_cover(inst), Uncoverable);
}

TEST(GreedyCover, DepotCoversEverything) {
  const Scenario s = oracle::make_scenario({0, 5000, 5000}, {{5100, 5000}, {4000, 4000}}, 10000.0, 3000.0);
  const RefuelPlan plan = greedy_cover(build_cover_instance(s, TravelMatrix(s)));
  EXPECT_EQ(plan.stops, (std::vector<PointId>{0}));
  EXPECT_EQ(plan.cardinality(), 0u);
  EXPECT_EQ(plan.assignment.at(1), 0);
}

TEST(GreedyCover, TwoDisjointClusters) {
  // Cluster A around (20000, 1000), cluster B around (1000, 20000); the
  // middle point of each covers its cluster.
  const Scenario s = oracle::make_scenario(
      {0, 1000, 1000},
      {{19000, 1000}, {20000, 1000}, {21000, 1000}, {1000, 19000}, {1000, 20000}, {1000, 21000}},
      25000.0, 1500.0);
  const CoverInstance inst = build_cover_instance(s, TravelMatrix(s));
  const RefuelPlan plan = greedy_cover(inst);
  EXPECT_EQ(plan.stops, (std::vector<PointId>{0, 2, 5}));
  EXPECT_EQ(oracle::min_cover(s, inst.radius).minimum, 2u);
  EXPECT_TRUE(plan_is_valid(plan, inst));
}

TEST(GreedyCover, FallsIntoTrap) {
  const RefuelPlan plan = greedy_cover(greedy_trap());
  EXPECT_EQ(plan.cardinality(), 3u);
  EXPECT_EQ(plan.stops, (std::vector<PointId>{0, 9, 7, 8}));
  EXPECT_EQ(plan.assignment.at(3), 7);
  EXPECT_EQ(plan.assignment.at(1), 9);
}

TEST(GreedyCover, TiesGoToLowestId) {
  CoverInstance inst;
  inst.radius = 1.0;
  inst.targets = {1, 2};
  inst.candidates = {0, 1, 2, 3};
  inst.cover_sets = {{}, {1, 2}, {2}, {1, 2}};
  EXPECT_EQ(greedy_cover(inst).stops, (std::vector<PointId>{0, 1}));
}

TEST(ExactCover, DepotCoversEverything) {
  const Scenario s = oracle::make_scenario({0, 5000, 5000}, {{5100, 5000}}, 10000.0, 3000.0);
  const ExactCoverResult r = exact_min_covers(build_cover_instance(s, TravelMatrix(s)));
  ASSERT_EQ(r.plans.size(), 1u);
  EXPECT_EQ(r.plans[0].stops, (std::vector<PointId>{0}));
  EXPECT_FALSE(r.incomplete);
}

TEST(ExactCover, EscapesTrap) {
  const ExactCoverResult r = exact_min_covers(greedy_trap());
  ASSERT_EQ(r.plans.size(), 1u);
  EXPECT_EQ(r.plans[0].stops, (std::vector<PointId>{0, 7, 8}));
  EXPECT_EQ(r.plans[0].cardinality(), 2u);
}

TEST(ExactCover, EnumeratesEveryOptimum) {
  CoverInstance inst;
  inst.radius = 1.0;
  inst.targets = {1, 2, 3, 4};
  inst.candidates = {0, 1, 2, 3, 4, 5, 6};
  // 5 and 6 each cover half; 1..4 cover only themselves, except 1 = {1,2}
  // and 3 = {3,4}.
  inst.cover_sets = {{}, {1, 2}, {2}, {3, 4}, {4}, {1, 2}, {3, 4}};
  const ExactCoverResult r = exact_min_covers(inst);
  std::vector<std::vector<PointId>> got;
  for (const RefuelPlan& p : r.plans) got.push_back(p.stops);
  EXPECT_EQ(got, (std::vector<std::vector<PointId>>{{0, 1, 3}, {0, 1, 6}, {0, 3, 5}, {0, 5, 6}}));
}

TEST(ExactCover, MaxSolutionsCaps) {
  CoverInstance inst;
  inst.radius = 1.0;
  inst.targets = {1, 2, 3, 4};
  inst.candidates = {0, 1, 2, 3, 4, 5, 6};
  inst.cover_sets = {{}, {1, 2}, {2}, {3, 4}, {4}, {1, 2}, {3, 4}};
  ExactCoverOptions opt;
  opt.max_solutions = 2;
  EXPECT_EQ(exact_min_covers(inst, opt).plans.size(), 2u);
  opt.max_solutions = 0;
  EXPECT_THROW(exact_min_covers(inst, opt), InvalidArgument);
}

TEST(ExactCover, MatchesBruteForceOnRandomInstances) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 6 + trial % 9;
    const Scenario s = oracle::random_scenario(rng, n, 12000.0, 2500.0 + 250.0 * (trial % 7));
    const CoverInstance inst = build_cover_instance(s, TravelMatrix(s));
    const oracle::CoverOracle truth = oracle::min_cover(s, inst.radius);
    const ExactCoverResult r = exact_min_covers(inst);
    ASSERT_FALSE(r.incomplete);
    ASSERT_FALSE(r.plans.empty());
    for (const RefuelPlan& p : r.plans) {
      EXPECT_EQ(p.cardinality(), truth.minimum) << "trial " << trial;
      EXPECT_TRUE(plan_is_valid(p, inst));
    }
    if (truth.optima.size() <= 50) {
      std::vector<std::vector<PointId>> got;
      for (const RefuelPlan& p : r.plans) got.emplace_back(p.stops.begin() + 1, p.stops.end());
      EXPECT_EQ(got, truth.optima) << "trial " << trial;
    } else {
      EXPECT_EQ(r.plans.size(), 50u);
    }
    const RefuelPlan g = greedy_cover(inst);
    EXPECT_TRUE(plan_is_valid(g, inst));
    EXPECT_GE(g.cardinality(), truth.minimum);
  }
}

TEST(ExactCover, AssignmentsAreWithinRadius) {
  const Scenario s = generate_scenario(Scale::Medium, 2);
  const TravelMatrix m(s);
  const CoverInstance inst = build_cover_instance(s, m);
  for (const RefuelPlan& p : exact_min_covers(inst).plans) {
    EXPECT_EQ(p.stops.front(), kDepot);
    for (PointId t : inst.targets) EXPECT_LT(m.distance(p.assignment.at(t), t), inst.radius);
  }
}

TEST(ExactCover, Deterministic) {
  const Scenario s = generate_scenario(Scale::Large, 3);
  const CoverInstance inst = build_cover_instance(s, TravelMatrix(s));
  const auto a = exact_min_covers(inst);
  const auto b = exact_min_covers(inst);
  ASSERT_EQ(a.plans.size(), b.plans.size());
  for (std::size_t i = 0; i < a.plans.size(); ++i) EXPECT_EQ(a.plans[i], b.plans[i]);
}

TEST(ExactCover, NodeLimitFlagsIncomplete) {
  const Scenario s = generate_scenario(Scale::Large, 4);
  const CoverInstance inst = build_cover_instance(s, TravelMatrix(s));
  ExactCoverOptions opt;
  opt.node_limit = 3;
  const ExactCoverResult r = exact_min_covers(inst, opt);
  EXPECT_TRUE(r.incomplete);
  ASSERT_FALSE(r.plans.empty());
  EXPECT_TRUE(plan_is_valid(r.plans.front(), inst));
  EXPECT_LE(r.plans.front().cardinality(), greedy_cover(inst).cardinality());
}

TEST(ExactCover, RejectsOversizedInstances) {
  CoverInstance inst;
  inst.radius = 1.0;
  for (int i = 0; i <= static_cast<int>(kMaxExactCandidates); ++i) {
    inst.candidates.push_back(i);
    inst.cover_sets.push_back({});
  }
  EXPECT_THROW(exact_min_covers(inst), SizeLimitExceeded);
}
