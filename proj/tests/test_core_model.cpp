#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace tflow {
namespace {

using testing::e1;

TEST(Capacity, ArithmeticAndInfinity) {
  EXPECT_EQ(Capacity(2) + Capacity(3), Capacity(5));
  EXPECT_TRUE((Capacity(2) + Capacity::infinity()).is_infinite());
  EXPECT_LT(Capacity(7), Capacity::infinity());
  EXPECT_EQ(Capacity(3) * 4, Capacity(12));
  EXPECT_EQ(Capacity::infinity().to_string(), "inf");
  EXPECT_THROW(Capacity(INT64_MAX) + Capacity(1), OverflowError);
  EXPECT_THROW((void)Capacity::infinity().value(), Error);
}

TEST(Piecewise, Evaluate) {
  const auto f = CapacityFn::constant(Capacity(5), 3);
  EXPECT_EQ(f(2), Capacity(5));
  EXPECT_THROW((void)f(4), DomainError);
  EXPECT_THROW((void)f(-1), DomainError);
  const CapacityFn g({{0, 0, Capacity(0)}, {1, 2, Capacity(1)}, {3, 3, Capacity(0)}}, 3);
  EXPECT_EQ(g(2), Capacity(1));
  EXPECT_EQ(g(0), Capacity(0));
}

TEST(Piecewise, RejectsBadTilings) {
  EXPECT_THROW(CapacityFn({{0, 1, Capacity(1)}, {1, 3, Capacity(2)}}, 3), InputError);
  EXPECT_THROW(CapacityFn({{0, 1, Capacity(1)}, {3, 3, Capacity(2)}}, 3), InputError);
  EXPECT_THROW(CapacityFn({{0, 2, Capacity(1)}}, 3), InputError);
  EXPECT_THROW(CapacityFn({}, 3), InputError);
}

TEST(Piecewise, MergesEqualNeighbours) {
  const CapacityFn f({{0, 1, Capacity(2)}, {2, 3, Capacity(2)}}, 3);
  EXPECT_TRUE(f.is_constant());
  EXPECT_EQ(f, CapacityFn::constant(Capacity(2), 3));
}

TEST(Piecewise, WithHorizon) {
  const CapacityFn f({{0, 1, Capacity(2)}, {2, 3, Capacity(5)}}, 3);
  EXPECT_EQ(f.with_horizon(1), CapacityFn::constant(Capacity(2), 1));
  EXPECT_EQ(f.with_horizon(6)(6), Capacity(5));
}

TEST(Mu, Examples) {
  TemporalNetwork one(3);
  one.add_node("a");
  one.add_node("b");
  one.add_static_edge(0, 1, Capacity(2), 1);
  EXPECT_EQ(compute_mu(one), 1u);
  EXPECT_EQ(compute_mu(e1()), 3u);

  TemporalNetwork two(5);
  for (const char* name : {"a", "b", "c"}) two.add_node(name);
  const CapacityFn u({{0, 1, Capacity(2)}, {2, 5, Capacity(3)}}, 5);
  two.add_edge(0, 1, u, TravelTimeFn::constant(1, 5));
  two.add_edge(1, 2, u, TravelTimeFn::constant(2, 5));
  EXPECT_EQ(compute_mu(two), 4u);
}

TEST(Mu, TravelTimePiecesCount) {
  TemporalNetwork n(5);
  n.add_node("a");
  n.add_node("b");
  n.add_edge(0, 1, CapacityFn({{0, 2, Capacity(1)}, {3, 5, Capacity(2)}}, 5),
             TravelTimeFn({{0, 1, 1}, {2, 5, 2}}, 5));
  EXPECT_EQ(compute_mu(n), 3u);
}

TEST(Network, StructuralChecks) {
  TemporalNetwork n(3);
  const NodeId s = n.add_node("s", TerminalKind::kSource);
  const NodeId a = n.add_node("a");
  const NodeId d = n.add_node("d", TerminalKind::kSink);
  EXPECT_THROW(n.add_node("a"), InputError);
  EXPECT_THROW(n.add_static_edge(a, a, Capacity(1), 1), InputError);
  EXPECT_THROW(n.add_static_edge(a, s, Capacity(1), 1), InputError);
  EXPECT_THROW(n.add_static_edge(d, a, Capacity(1), 1), InputError);
  EXPECT_THROW(n.add_static_edge(s, a, Capacity(1), -1), InputError);
  EXPECT_THROW(n.add_edge(s, a, CapacityFn::constant(Capacity(1), 4), TravelTimeFn::constant(1, 4)),
               InputError);
  n.add_static_edge(s, a, Capacity(1), 1);
  EXPECT_THROW(n.add_static_edge(s, a, Capacity(2), 1), InputError);
  EXPECT_EQ(n.sources(), std::vector<NodeId>{s});
  EXPECT_EQ(n.sinks(), std::vector<NodeId>{d});
}

TEST(NetFlow, E1Simulation) {
  const auto n = e1();
  FlowOverTime zero;
  for (NodeId i = 0; i < 2; ++i) {
    for (TimeStep t = 0; t <= 3; ++t) EXPECT_EQ(net_flow(n, zero, i, t), 0);
  }
  FlowOverTime f;
  f.set(0, 1, 1);
  f.set(0, 2, 1);
  EXPECT_EQ(net_flow(n, f, 1, 2), 1);
  EXPECT_EQ(net_flow(n, f, 1, 3), 2);
  EXPECT_EQ(net_flow(n, f, 0, 2), -2);
}

TEST(Validate, E1Cases) {
  const auto n = e1();
  FlowOverTime good;
  good.set(0, 1, 1);
  good.set(0, 2, 1);
  EXPECT_TRUE(validate_flow(n, good, testing::st_demand(2)).ok());

  FlowOverTime early;
  early.set(0, 0, 1);
  const auto r1 = validate_flow(n, early, testing::st_demand(1));
  ASSERT_TRUE(r1.has(FlowCondition::kCapacity));
  EXPECT_EQ(r1.violations.front().time, 0);

  FlowOverTime late;
  late.set(0, 3, 1);
  EXPECT_TRUE(validate_flow(n, late, testing::st_demand(1)).has(FlowCondition::kHorizon));

  EXPECT_TRUE(validate_flow(n, good, testing::st_demand(1)).has(FlowCondition::kDemand));
}

TEST(Validate, StorageCannotGoNegative) {
  TemporalNetwork n(4);
  n.add_node("s", TerminalKind::kSource);
  n.add_node("a");
  n.add_node("d", TerminalKind::kSink);
  n.add_static_edge(0, 1, Capacity(1), 2);
  n.add_static_edge(1, 2, Capacity(1), 1);
  FlowOverTime f;
  f.set(0, 0, 1);  // reaches a at 2
  f.set(1, 1, 1);  // leaves a at 1
  const auto r = validate_flow(n, f, testing::st_demand(1, 0, 2));
  EXPECT_TRUE(r.has(FlowCondition::kNegativeNetFlow));
  FlowOverTime ok;
  ok.set(0, 0, 1);
  ok.set(1, 3, 1);
  EXPECT_TRUE(validate_flow(n, ok, testing::st_demand(1, 0, 2)).ok());
}

TEST(Demands, Checks) {
  const auto n = e1();
  EXPECT_NO_THROW(check_demands(n, testing::st_demand(2)));
  DemandVector bad;
  bad.set(0, 1);
  bad.set(1, -1);
  EXPECT_THROW(check_demands(n, bad), InputError);
  DemandVector missing;
  missing.set(0, 0);
  EXPECT_THROW(check_demands(n, missing), InputError);
}

TEST(OneShot, StaticNetworkIsOneShot) {
  TemporalNetwork n(6);
  n.add_node("a", TerminalKind::kSource);
  n.add_node("b");
  n.add_node("c", TerminalKind::kSink);
  n.add_static_edge(0, 1, Capacity(3), 2);
  n.add_static_edge(1, 2, Capacity(1), 1);
  const auto c = to_one_shot(n);
  ASSERT_EQ(c.network.edge_count(), 2u);
  for (const auto& e : c.network.edges()) {
    EXPECT_EQ(e.alpha, 0);
    EXPECT_EQ(e.beta, 6);
  }
  EXPECT_EQ(c.network.node_count(), 3u);
}

TEST(OneShot, E1SingleEdge) {
  const auto c = to_one_shot(e1());
  ASSERT_EQ(c.network.edge_count(), 1u);
  const auto& e = c.network.edges().front();
  EXPECT_EQ(e.alpha, 1);
  EXPECT_EQ(e.beta, 2);
  EXPECT_EQ(e.capacity, 1);
  EXPECT_EQ(e.travel_time, 1);
}

TEST(OneShot, ExtraPieceUsesRelay) {
  TemporalNetwork n(5);
  n.add_node("x");
  n.add_node("y");
  n.add_edge(0, 1, CapacityFn({{0, 1, Capacity(2)}, {2, 5, Capacity(3)}}, 5),
             TravelTimeFn::constant(2, 5));
  const auto c = to_one_shot(n);
  EXPECT_EQ(c.network.node_count(), 3u);
  ASSERT_EQ(c.network.edge_count(), 3u);
  const auto& direct = c.network.edges()[0];
  EXPECT_EQ(direct.alpha, 0);
  EXPECT_EQ(direct.beta, 1);
  EXPECT_EQ(direct.capacity, 2);
  const auto& in = c.network.edges()[1];
  const auto& out = c.network.edges()[2];
  EXPECT_EQ(in.to, 2u);
  EXPECT_EQ(in.travel_time, 0);
  EXPECT_EQ(out.travel_time, 2);
  EXPECT_EQ(out.alpha, 2);
  EXPECT_EQ(out.capacity, 3);
}

TEST(OneShot, InfinityNeedsBound) {
  TemporalNetwork n(2);
  n.add_node("x");
  n.add_node("y");
  n.add_static_edge(0, 1, Capacity::infinity(), 1);
  EXPECT_THROW(to_one_shot(n), InputError);
  EXPECT_EQ(to_one_shot(n, 9).network.edges().front().capacity, 9);
}

// Splitting into one-shot pieces never changes what is feasible.
TEST(OneShot, PreservesFeasibility) {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const auto g = generate_instance(testing::small_spec(seed));
    const auto c = to_one_shot(g.network, supply_bound(g.demands));
    EXPECT_EQ(ten_feasible(g.network, g.demands), ten_feasible(c.network.to_temporal(), g.demands))
        << "seed " << seed;
    ++checked;
  }
  EXPECT_EQ(checked, 120);
}

}  // namespace
}  // namespace tflow
