#include "ocs/flow.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"

namespace ocs {
namespace {

using testing::direct_rewire_cost;
using testing::enumerate_min_cost;
using testing::verify_flow;

TEST(PiecewiseRewireCost, TwoBreakpoints) {
  const auto f = piecewise_rewire_cost(2, 1, 4);
  EXPECT_EQ(f.breakpoints, (std::vector<Count>{2, 3}));
  EXPECT_EQ(f.slopes, (std::vector<Count>{-1, 0, 1}));
  EXPECT_EQ(f.value_at_zero, 2);
  EXPECT_EQ(f.evaluate(0), 2);
  EXPECT_EQ(f.evaluate(2), 0);
  EXPECT_EQ(f.evaluate(3), 0);
  EXPECT_EQ(f.evaluate(4), 1);
}

TEST(PiecewiseRewireCost, NoOldLinksIsFlatZero) {
  const auto f = piecewise_rewire_cost(0, 0, 5);
  EXPECT_TRUE(f.breakpoints.empty());
  EXPECT_EQ(f.slopes, (std::vector<Count>{0}));
  for (Count x = 0; x <= 5; ++x) EXPECT_EQ(f.evaluate(x), 0);
}

TEST(PiecewiseRewireCost, CrossingHinges) {
  const auto f = piecewise_rewire_cost(3, 2, 4);
  EXPECT_EQ(f.breakpoints, (std::vector<Count>{2, 3}));
  EXPECT_EQ(f.slopes, (std::vector<Count>{-1, 0, 1}));
  EXPECT_EQ(f.evaluate(2), 1);
  EXPECT_EQ(f.evaluate(3), 1);
}

TEST(PiecewiseRewireCost, EmptyDomain) {
  const auto f = piecewise_rewire_cost(1, 1, 0);
  EXPECT_EQ(f.domain_max, 0);
  EXPECT_EQ(f.evaluate(0), 2);
  EXPECT_TRUE(expand_to_arcs(f).empty());
}

TEST(PiecewiseRewireCost, ShapeInvariants) {
  for (Count u1 = 0; u1 <= 7; ++u1) {
    for (Count u2 = 0; u2 <= 7; ++u2) {
      for (Count c = 0; c <= 7; ++c) {
        const auto f = piecewise_rewire_cost(u1, u2, c);
        EXPECT_LE(f.breakpoints.size(), 2u);
        EXPECT_TRUE(std::is_sorted(f.breakpoints.begin(), f.breakpoints.end()));
        for (std::size_t p = 1; p < f.slopes.size(); ++p) EXPECT_LT(f.slopes[p - 1], f.slopes[p]);
        for (const Count s : f.slopes) EXPECT_TRUE(s >= -1 && s <= 1);
        for (Count v = 0; v <= c; ++v) EXPECT_EQ(f.evaluate(v), direct_rewire_cost(u1, u2, c, v));
      }
    }
  }
}

TEST(ExpandToArcs, Examples) {
  EXPECT_EQ(expand_to_arcs(piecewise_rewire_cost(2, 1, 4)),
            (std::vector<CostArc>{{2, -1}, {1, 0}, {1, 1}}));
  EXPECT_EQ(expand_to_arcs(piecewise_rewire_cost(0, 0, 5)), (std::vector<CostArc>{{5, 0}}));
  PiecewiseLinearCost empty;
  EXPECT_TRUE(expand_to_arcs(empty).empty());
}

TEST(ExpandToArcs, FillCostMatchesFunction) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Count> dist(0, 20);
  for (int t = 0; t < 300; ++t) {
    const Count u1 = dist(rng), u2 = dist(rng), c = dist(rng);
    const auto arcs = expand_to_arcs(piecewise_rewire_cost(u1, u2, c));
    Count cap = 0;
    for (const auto& a : arcs) cap += a.capacity;
    EXPECT_EQ(cap, c);
    for (Count v = 0; v <= c; ++v) {
      EXPECT_EQ(testing::arc_fill_cost(arcs, v),
                direct_rewire_cost(u1, u2, c, v) - direct_rewire_cost(u1, u2, c, 0));
    }
  }
}

class McfBackends : public ::testing::TestWithParam<McfBackend> {};

TEST_P(McfBackends, SinglePathSaturation) {
  FlowNetwork net({2}, {2});
  net.add_arc(0, 0, 2, -1);
  const auto res = solve_min_cost_flow(net, GetParam());
  EXPECT_EQ(res.arc_flow, (std::vector<Count>{2}));
  EXPECT_EQ(res.total_cost, -2);
}

TEST_P(McfBackends, TwoByTwoAssignment) {
  FlowNetwork net({1, 1}, {1, 1});
  net.add_arc(0, 0, 1, 0);
  net.add_arc(0, 1, 1, 1);
  net.add_arc(1, 0, 1, 1);
  net.add_arc(1, 1, 1, 0);
  ASSERT_EQ(enumerate_min_cost(net), Count{0});
  const auto res = solve_min_cost_flow(net, GetParam());
  EXPECT_EQ(res.total_cost, 0);
  EXPECT_EQ(res.arc_flow, (std::vector<Count>{1, 0, 0, 1}));
  EXPECT_EQ(verify_flow(net, res), "");
}

TEST_P(McfBackends, UniqueFeasibleFlow) {
  FlowNetwork net({2, 0}, {1, 1});
  net.add_arc(0, 0, 1, 0);
  net.add_arc(0, 1, 1, 3);
  ASSERT_EQ(enumerate_min_cost(net), Count{3});
  const auto res = solve_min_cost_flow(net, GetParam());
  EXPECT_EQ(res.total_cost, 3);
  EXPECT_EQ(res.arc_flow, (std::vector<Count>{1, 1}));
}

TEST_P(McfBackends, NoRouteIsInfeasible) {
  FlowNetwork net({1}, {1});
  EXPECT_THROW(solve_min_cost_flow(net, GetParam()), InfeasibleFlow);
}

TEST_P(McfBackends, UnequalTotalsAreInfeasible) {
  FlowNetwork net({2}, {1});
  net.add_arc(0, 0, 5, 0);
  EXPECT_THROW(solve_min_cost_flow(net, GetParam()), InfeasibleFlow);
}

TEST_P(McfBackends, CapacityBlocksRouting) {
  FlowNetwork net({2, 1}, {1, 2});
  net.add_arc(0, 0, 1, 0);
  net.add_arc(0, 1, 0, 0);
  net.add_arc(1, 1, 1, 0);
  EXPECT_THROW(solve_min_cost_flow(net, GetParam()), InfeasibleFlow);
}

TEST_P(McfBackends, ZeroSupplyNetwork) {
  FlowNetwork net({0, 0}, {0, 0});
  net.add_arc(0, 1, 3, -2);
  const auto res = solve_min_cost_flow(net, GetParam());
  EXPECT_EQ(res.total_cost, 0);
  EXPECT_EQ(res.arc_flow, (std::vector<Count>{0}));
}

TEST_P(McfBackends, CostOverflowRejected) {
  FlowNetwork net({1}, {1});
  net.add_arc(0, 0, 1, std::numeric_limits<Count>::max() / 2);
  EXPECT_THROW(solve_min_cost_flow(net, GetParam()), std::overflow_error);
}

FlowNetwork random_network(std::mt19937_64& rng, int max_nodes, Count max_supply) {
  std::uniform_int_distribution<int> side(1, max_nodes - 1);
  const int ns = side(rng);
  const int nd = std::max(1, std::min(max_nodes - ns, side(rng)));
  std::uniform_int_distribution<Count> total_dist(0, max_supply);
  const Count total = total_dist(rng);
  std::vector<Count> supplies(ns, 0), demands(nd, 0);
  for (Count u = 0; u < total; ++u) {
    ++supplies[std::uniform_int_distribution<int>(0, ns - 1)(rng)];
    ++demands[std::uniform_int_distribution<int>(0, nd - 1)(rng)];
  }
  FlowNetwork net(supplies, demands);
  std::uniform_int_distribution<Count> cap(0, 3), cost(-2, 3);
  std::uniform_int_distribution<int> parallel(0, 2);
  for (int s = 0; s < ns; ++s) {
    for (int d = 0; d < nd; ++d) {
      for (int p = parallel(rng); p > 0; --p) net.add_arc(s, d, cap(rng), cost(rng));
    }
  }
  return net;
}

TEST_P(McfBackends, MatchesEnumerationOnRandomNetworks) {
  std::mt19937_64 rng(2024);
  int feasible = 0;
  for (int t = 0; t < 250; ++t) {
    const auto net = random_network(rng, 6, 6);
    const auto expected = enumerate_min_cost(net);
    if (!expected) {
      EXPECT_THROW(solve_min_cost_flow(net, GetParam()), InfeasibleFlow);
      continue;
    }
    ++feasible;
    const auto res = solve_min_cost_flow(net, GetParam());
    EXPECT_EQ(res.total_cost, *expected) << "network " << t;
    EXPECT_EQ(verify_flow(net, res), "") << "network " << t;
  }
  EXPECT_GT(feasible, 50);
}

TEST_P(McfBackends, Deterministic) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto net = random_network(rng, 6, 8);
    try {
      const auto a = solve_min_cost_flow(net, GetParam());
      const auto b = solve_min_cost_flow(net, GetParam());
      EXPECT_EQ(a.arc_flow, b.arc_flow);
    } catch (const InfeasibleFlow&) {
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Backends, McfBackends,
                         ::testing::Values(McfBackend::kSuccessiveShortestPath,
                                           McfBackend::kCostScaling),
                         [](const auto& info) {
                           return info.param == McfBackend::kCostScaling ? "CostScaling" : "Ssp";
                         });

TEST(MinCostFlow, BackendsAgreeOnLargerNetworks) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 40; ++t) {
    const int m = 12;
    std::vector<Count> supplies(m, 0), demands(m, 0);
    for (int u = 0; u < 60; ++u) {
      ++supplies[rng() % m];
      ++demands[rng() % m];
    }
    FlowNetwork net(supplies, demands);
    for (int s = 0; s < m; ++s) {
      for (int d = 0; d < m; ++d) {
        net.add_cell(s, d, piecewise_rewire_cost(rng() % 4, rng() % 4, 2 + rng() % 6));
      }
    }
    const auto a = solve_min_cost_flow(net, McfBackend::kSuccessiveShortestPath);
    const auto b = solve_min_cost_flow(net, McfBackend::kCostScaling);
    EXPECT_EQ(a.total_cost, b.total_cost);
    EXPECT_EQ(verify_flow(net, a), "");
    EXPECT_EQ(verify_flow(net, b), "");
  }
}

TEST(MinCostFlow, CostShiftPreservesOptimalCellFlows) {
  // Adding a constant to every arc cost moves every feasible flow's cost by
  // shift * total demand, so the optimal cell-flow set is unchanged.
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    const auto net = random_network(rng, 5, 5);
    const auto base = enumerate_min_cost(net);
    if (!base) continue;
    Count total = 0;
    for (const Count s : net.supplies()) total += s;
    FlowNetwork shifted(net.supplies(), net.demands());
    for (const auto& arc : net.arcs()) shifted.add_arc(arc.supply, arc.demand, arc.capacity, arc.unit_cost + 2);
    EXPECT_EQ(enumerate_min_cost(shifted), *base + 2 * total);
    const auto a = solve_min_cost_flow(net);
    const auto b = solve_min_cost_flow(shifted);
    EXPECT_EQ(b.total_cost, a.total_cost + 2 * total);
    EXPECT_EQ(a.cell_flow, b.cell_flow);
  }
}

TEST(MinCostFlow, CellFlowSumsParallelArcs) {
  FlowNetwork net({4}, {4});
  net.add_cell(0, 0, piecewise_rewire_cost(2, 1, 4));
  const auto res = solve_min_cost_flow(net);
  EXPECT_EQ(res.cell_flow(0, 0), 4);
  EXPECT_EQ(res.total_cost, piecewise_rewire_cost(2, 1, 4).evaluate(4) - 2);
}

TEST(FlowNetwork, DumpFormat) {
  FlowNetwork net({2}, {2});
  net.add_cell(0, 0, piecewise_rewire_cost(2, 1, 4));
  std::ostringstream os;
  net.dump(os);
  EXPECT_EQ(os.str(), "0 0 2 -1\n0 0 1 0\n0 0 1 1\n");
}

TEST(FlowNetwork, RejectsBadArcs) {
  FlowNetwork net({1}, {1});
  EXPECT_THROW(net.add_arc(1, 0, 1, 0), std::out_of_range);
  EXPECT_THROW(net.add_arc(0, 0, -1, 0), std::invalid_argument);
  EXPECT_THROW(FlowNetwork({-1}, {1}), std::invalid_argument);
  EXPECT_THROW(parse_backend("simplex"), std::invalid_argument);
}

}  // namespace
}  // namespace ocs
