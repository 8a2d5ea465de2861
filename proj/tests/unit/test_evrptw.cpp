#include <gtest/gtest.h>

#include <random>

#include "cooproute/errors.hpp"
#include "cooproute/evrptw.hpp"
#include "oracles.hpp"

using namespace cooproute;

namespace {

struct Case {
  Scenario scenario;
  PointId start = 0;
  PointId dest = 0;
  std::vector<PointId> visits;
  Seconds open = 0;
  Seconds close = 0;
  Seconds release = 0;

  EvrptwInstance instance() const {
    return make_evrptw_instance(start, dest, visits, TravelMatrix(scenario), scenario.uav, open,
                                close, release);
  }
};

// Points 1..m are visits, m + 1 is the destination, the depot is S.
Case random_case(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> radius(2500.0, 6000.0);
  Case c;
  c.scenario = oracle::random_scenario(rng, m + 1, 8000.0, radius(rng));
  c.dest = static_cast<PointId>(m + 1);
  for (int i = 1; i <= m; ++i) c.visits.push_back(i);
  std::uniform_int_distribution<Seconds> t(0, 1500);
  c.release = t(rng);
  c.open = t(rng) + c.release / 2;
  c.close = c.open + 400 + 2 * t(rng);
  return c;
}

// S at the origin, visits at 1 km and 2 km, D at 3 km, all on a line; the
// budget allows 3.5 km of flight.
Case tight_line() {
  Case c;
  c.scenario = oracle::make_scenario({0, 0, 0}, {{1000, 0}, {2000, 0}, {3000, 0}}, 4000.0, 1750.0);
  c.dest = 3;
  c.visits = {1, 2};
  c.close = 100000;
  return c;
}

}  // namespace

TEST(SolveExact, DirectLeg) {
  Case c;
  c.scenario = oracle::make_scenario({0, 0, 0}, {{6000, 0}}, 8000.0);
  c.dest = 1;
  c.close = 10000;
  const EvrptwInstance inst = c.instance();
  const Sortie s = solve_exact(inst);
  EXPECT_EQ(s.order, (std::vector<PointId>{0, 1}));
  EXPECT_EQ(s.duration, 600);
  EXPECT_NEAR(s.energy, 198.599 * 600.0, 1e-6);
  EXPECT_NEAR(recharge_need(s, inst), s.energy, 1e-6);
  EXPECT_TRUE(validate_sortie(s, inst).ok());
  const Sortie h = solve_heuristic(inst, 0);
  EXPECT_EQ(h.order, s.order);
  EXPECT_EQ(h.duration, s.duration);
}

TEST(SolveExact, TwoVisitsPickBetterOrder) {
  const Case c = tight_line();
  const EvrptwInstance inst = c.instance();
  const Sortie s = solve_exact(inst);
  EXPECT_EQ(s.order, (std::vector<PointId>{0, 1, 2, 3}));
  EXPECT_EQ(s.duration, 300);
  const auto truth = oracle::sortie_brute(c.scenario, c.start, c.dest, c.visits, c.close, c.release);
  ASSERT_TRUE(truth.feasible);
  EXPECT_EQ(s.duration, truth.flight);
}

TEST(SolveExact, InfeasibleWhenEveryOrderExceedsFuel) {
  Case c = tight_line();
  c.scenario.uav = oracle::uav_with_radius(1400.0);  // 2.8 km of flight
  const EvrptwInstance inst = c.instance();
  EXPECT_FALSE(oracle::sortie_brute(c.scenario, 0, 3, c.visits, c.close, 0).feasible);
  EXPECT_THROW(solve_exact(inst), Infeasible);
  EXPECT_THROW(solve_heuristic(inst, 1), Infeasible);
  EXPECT_FALSE(solve_sortie(inst, 1).has_value());
}

TEST(SolveExact, InfeasibleWhenWindowClosesEarly) {
  Case c = tight_line();
  c.release = 1000;
  c.open = 1000;
  c.close = 1299;
  EXPECT_THROW(solve_exact(c.instance()), Infeasible);
  c.close = 1300;
  EXPECT_EQ(solve_exact(c.instance()).arrival, 1300);
}

TEST(SolveExact, EarlyArrivalDelaysDeparture) {
  Case c = tight_line();
  c.release = 100;
  c.open = 5000;
  const EvrptwInstance inst = c.instance();
  const Sortie s = solve_exact(inst);
  EXPECT_EQ(s.arrival, 5000);
  EXPECT_EQ(s.departure, 4700);
  EXPECT_EQ(s.departure_delay, 4600);
  EXPECT_EQ(s.duration, 300);
  EXPECT_TRUE(validate_sortie(s, inst).ok());
}

TEST(SolveExact, MatchesPermutationOracle) {
  std::mt19937_64 rng(17);
  int feasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Case c = random_case(rng, trial % 9);
    const EvrptwInstance inst = c.instance();
    const auto truth = oracle::sortie_brute(c.scenario, c.start, c.dest, c.visits, c.close, c.release);
    if (!truth.feasible) {
      EXPECT_THROW(solve_exact(inst), Infeasible) << "trial " << trial;
      continue;
    }
    ++feasible;
    const Sortie s = solve_exact(inst);
    EXPECT_EQ(s.duration, truth.flight) << "trial " << trial;
    const auto v = validate_sortie(s, inst);
    EXPECT_TRUE(v.ok()) << "trial " << trial << ": " << (v.ok() ? "" : v.violation->detail);
    EXPECT_GE(s.fuel_at_destination(), -1e-6);
    EXPECT_GE(recharge_need(s, inst), 0.0);
    EXPECT_LE(recharge_need(s, inst), inst.fuel_capacity + 1e-6);
  }
  EXPECT_GE(feasible, 10);
  EXPECT_LT(feasible, 60);
}

TEST(SolveHeuristic, WithinFivePercentOfExact) {
  std::mt19937_64 rng(23);
  int compared = 0, close_enough = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Case c = random_case(rng, 1 + trial % 8);
    const EvrptwInstance inst = c.instance();
    std::optional<Sortie> exact;
    try {
      exact = solve_exact(inst);
    } catch (const Infeasible&) {
      continue;
    }
    ++compared;
    try {
      const Sortie h = solve_heuristic(inst, static_cast<std::uint64_t>(trial));
      EXPECT_TRUE(validate_sortie(h, inst).ok());
      if (h.duration <= 1.05 * static_cast<double>(exact->duration)) ++close_enough;
    } catch (const Infeasible&) {
    }
  }
  ASSERT_GT(compared, 0);
  EXPECT_GE(close_enough, (95 * compared + 99) / 100);
}

TEST(SolveHeuristic, DeterministicPerSeed) {
  std::mt19937_64 rng(5);
  Case c = random_case(rng, 14);
  c.scenario.uav = oracle::uav_with_radius(20000.0);
  c.close = 1000000;
  const EvrptwInstance inst = c.instance();
  const Sortie a = solve_heuristic(inst, 9);
  const Sortie b = solve_heuristic(inst, 9);
  EXPECT_EQ(a.order, b.order);
  EXPECT_EQ(a.arrival, b.arrival);
  EXPECT_TRUE(validate_sortie(a, inst).ok());
  // Beyond the exact budget solve_sortie uses the heuristic.
  EXPECT_THROW(solve_exact(inst), SizeLimitExceeded);
  ASSERT_TRUE(solve_sortie(inst, 9).has_value());
  EXPECT_EQ(solve_sortie(inst, 9)->order, a.order);
}

TEST(SolveExact, WideningWindowNeverHurts) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    Case c = random_case(rng, 1 + trial % 7);
    std::optional<Seconds> prev;
    for (Seconds extra : {0, 300, 1000, 100000}) {
      Case w = c;
      w.close += extra;
      try {
        const Seconds d = solve_exact(w.instance()).duration;
        if (prev) {
          EXPECT_LE(d, *prev);
        }
        prev = d;
      } catch (const Infeasible&) {
        EXPECT_FALSE(prev.has_value());
      }
    }
    Case open = c;
    open.open = 0;
    open.close = 1000000;
    try {
      const Seconds bound = solve_exact(open.instance()).duration;
      const Sortie s = solve_exact(c.instance());
      EXPECT_LE(bound, s.arrival - c.release);
    } catch (const Infeasible&) {
    }
  }
}

TEST(ValidateSortie, FlagsEarlyArrival) {
  Case c = tight_line();
  c.open = 5000;
  const EvrptwInstance inst = c.instance();
  const Sortie early = trace_sortie(inst, {0, 1, 2, 3}, 0);
  const auto v = validate_sortie(early, inst);
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.violation->constraint, SortieConstraint::Window);
}

TEST(ValidateSortie, FlagsFuelWithNode) {
  const Case c = tight_line();
  const EvrptwInstance inst = c.instance();
  EXPECT_TRUE(validate_sortie(trace_sortie(inst, {0, 1, 2, 3}, 0), inst).ok());
  // S -> 2 km -> 1 km -> 3 km covers 5 km against a 3.5 km budget.
  const auto v = validate_sortie(trace_sortie(inst, {0, 2, 1, 3}, 0), inst);
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.violation->constraint, SortieConstraint::Fuel);
  EXPECT_EQ(v.violation->node, 3);
}

TEST(ValidateSortie, FlagsStructureAndTiming) {
  const Case c = tight_line();
  const EvrptwInstance inst = c.instance();
  Sortie s = trace_sortie(inst, {0, 1, 2, 3}, 0);
  Sortie dup = s;
  dup.order[2] = 1;
  EXPECT_EQ(validate_sortie(dup, inst).violation->constraint, SortieConstraint::Structure);
  Sortie fast = s;
  fast.node_times[1] -= 1;
  EXPECT_EQ(validate_sortie(fast, inst).violation->constraint, SortieConstraint::Timing);
}

TEST(MakeInstance, RejectsBadWindows) {
  const Case c = tight_line();
  const TravelMatrix m(c.scenario);
  EXPECT_THROW(make_evrptw_instance(0, 3, {1, 2}, m, c.scenario.uav, 10, 5, 0), InvalidArgument);
  EXPECT_THROW(make_evrptw_instance(0, 3, {1, 2}, m, c.scenario.uav, 0, 5, -1), InvalidArgument);
}
