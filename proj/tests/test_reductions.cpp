#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"

namespace tflow {
namespace {

using testing::e1;
using testing::st_demand;

OneShotNetwork e1_one_shot() { return to_one_shot(e1()).network; }

bool contains(const std::vector<NodeId>& v, NodeId i) {
  return std::find(v.begin(), v.end(), i) != v.end();
}

TEST(HoppeTardosStar, GadgetDemands) {
  const auto r = hoppe_tardos_star(e1_one_shot(), st_demand(2));
  ASSERT_EQ(r.trace.gadgets.size(), 1u);
  const auto& g = r.trace.gadgets.front();
  EXPECT_EQ(r.demands.at(g.s_plus), -2);
  EXPECT_EQ(r.demands.at(g.s_minus), 2);
  EXPECT_EQ(r.demands.at(g.s2_minus), 4);
  EXPECT_EQ(r.demands.at(g.s2_plus), -4);
  EXPECT_EQ(r.demands.at(0), -2);
  EXPECT_EQ(r.demands.at(1), 2);
  EXPECT_EQ(r.demands.total(), 0);
  EXPECT_TRUE(r.network.is_static());
}

TEST(HoppeTardosStar, GadgetShape) {
  const auto r = hoppe_tardos_star(e1_one_shot(), st_demand(0));
  const auto& n = r.network;
  const auto& g = r.trace.gadgets.front();
  auto tau = [&](NodeId a, NodeId b) {
    auto e = n.find_edge(a, b);
    EXPECT_TRUE(e.has_value()) << n.node(a).name << " -> " << n.node(b).name;
    return e ? n.edge(*e).travel_time(0) : -1;
  };
  EXPECT_EQ(tau(g.s_plus, g.t_plus), 1);  // alpha
  EXPECT_EQ(tau(g.t_plus, g.y), 1);       // travel time
  EXPECT_EQ(tau(g.t_plus, g.t_minus), 0);
  EXPECT_EQ(tau(g.x, g.t_minus), 0);
  EXPECT_EQ(tau(*g.t2_plus, g.s_minus), 1);  // T - beta
  EXPECT_EQ(n.node_count(), 2u + 8u);
  EXPECT_EQ(n.edge_count(), 9u);
  for (const auto& e : n.edges()) EXPECT_EQ(e.capacity(0), Capacity(1));
}

TEST(HoppeTardosStar, NoEdges) {
  OneShotNetwork o(4);
  o.add_node("s", TerminalKind::kSource);
  o.add_node("d", TerminalKind::kSink);
  const auto v = st_demand(3);
  const auto r = hoppe_tardos_star(o, v);
  EXPECT_EQ(r.network.node_count(), 2u);
  EXPECT_EQ(r.network.edge_count(), 0u);
  EXPECT_EQ(r.demands, v);
}

TEST(HoppeTardosStar, E1Equivalence) {
  for (std::int64_t amount = 0; amount <= 3; ++amount) {
    for (auto form : {GadgetForm::kSound, GadgetForm::kCompact}) {
      const auto r = hoppe_tardos_star(e1_one_shot(), st_demand(amount), form);
      EXPECT_EQ(ten_feasible(e1(), st_demand(amount)), ten_feasible(r.network, r.demands))
          << "v(d)=" << amount;
    }
  }
}

// Chain s -> x -> y, both edges alive only at t = 0, T = 2. Flow reaches x
// at 1, too late for x -> y, so one unit is infeasible. The compact gadget
// claims otherwise.
TEST(HoppeTardosStar, CompactGadgetCounterexample) {
  OneShotNetwork o(2);
  const NodeId s = o.add_node("s", TerminalKind::kSource);
  const NodeId x = o.add_node("x");
  const NodeId y = o.add_node("y", TerminalKind::kSink);
  o.add_edge({s, x, 0, 0, 1, 1});
  o.add_edge({x, y, 0, 0, 1, 1});
  const auto v = st_demand(1, s, y);
  EXPECT_FALSE(ten_feasible(o.to_temporal(), v));
  const auto compact = hoppe_tardos_star(o, v, GadgetForm::kCompact);
  EXPECT_TRUE(ten_feasible(compact.network, compact.demands));
  const auto sound = hoppe_tardos_star(o, v, GadgetForm::kSound);
  EXPECT_FALSE(ten_feasible(sound.network, sound.demands));
}

// The sound gadget agrees with the oracle on random one-shot inputs.
TEST(HoppeTardosStar, SoundFormMatchesOracle) {
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto g = generate_instance(testing::small_spec(seed));
    const auto o = to_one_shot(g.network, supply_bound(g.demands));
    const auto r = hoppe_tardos_star(o.network, g.demands);
    EXPECT_EQ(ten_feasible(g.network, g.demands), ten_feasible(r.network, r.demands))
        << "seed " << seed;
  }
}

TEST(Canonical, SuperEdges) {
  TemporalNetwork n(5);
  n.add_node("s", TerminalKind::kSource);
  n.add_node("d", TerminalKind::kSink);
  n.add_static_edge(0, 1, Capacity(1), 1);
  const auto c = canonical_reduction(n, st_demand(2));
  const auto& src = c.network.edge(c.source_edges.at(0));
  const auto& snk = c.network.edge(c.sink_edges.at(1));
  EXPECT_EQ(src.capacity(0), Capacity(2));
  for (TimeStep t = 1; t <= 5; ++t) EXPECT_EQ(src.capacity(t), Capacity(0));
  EXPECT_EQ(snk.capacity(5), Capacity(2));
  for (TimeStep t = 0; t < 5; ++t) EXPECT_EQ(snk.capacity(t), Capacity(0));
  EXPECT_EQ(c.required_value(), 2);
  EXPECT_EQ(c.network.node(0).kind, TerminalKind::kInternal);
}

TEST(Canonical, RolesOnE1Reduction) {
  for (auto form : {GadgetForm::kSound, GadgetForm::kCompact}) {
    const auto r = hoppe_tardos_star(e1_one_shot(), st_demand(2), form);
    const auto c = canonical_reduction(r.network, r.demands,
                                       std::make_shared<const ReductionTrace>(r.trace));
    const auto& g = r.trace.gadgets.front();
    EXPECT_TRUE(contains(c.roles.pseudo_sources, g.s_plus));
    EXPECT_TRUE(contains(c.roles.pseudo_sources, g.s2_plus));
    EXPECT_TRUE(contains(c.roles.pseudo_sinks, g.s_minus));
    EXPECT_TRUE(contains(c.roles.pseudo_sinks, g.s2_minus));
    const NodeId pp = form == GadgetForm::kSound ? *g.t2_minus : g.t_minus;
    EXPECT_EQ(c.roles.pp_sinks, std::vector<NodeId>{pp});
    EXPECT_EQ(c.node_roles[g.t_plus].tag, RoleTag::kTPlus);
    EXPECT_EQ(c.node_roles[c.super_source].tag, RoleTag::kSuperSource);
  }
}

TEST(Classify, UnequalInCapacitiesIsNotPpSink) {
  TemporalNetwork n(3);
  const NodeId a = n.add_node("a");
  const NodeId b = n.add_node("b");
  const NodeId t = n.add_node("t");
  const NodeId p = n.add_node("p");
  const NodeId s = n.add_node("s*", TerminalKind::kSource);
  const NodeId d = n.add_node("d*", TerminalKind::kSink);
  n.add_static_edge(s, a, Capacity(1), 0);
  n.add_static_edge(a, b, Capacity(1), 0);
  n.add_static_edge(a, t, Capacity(1), 0);
  n.add_static_edge(b, t, Capacity(2), 0);
  n.add_static_edge(t, p, Capacity(1), 0);
  n.add_static_edge(p, d, Capacity(1), 0);
  EXPECT_TRUE(classify_roles(n, s, d).pp_sinks.empty());
  n.set_capacity(*n.find_edge(b, t), CapacityFn::constant(Capacity(1), 3));
  EXPECT_EQ(classify_roles(n, s, d).pp_sinks, std::vector<NodeId>{t});
}

TEST(Classify, OverlapIsStructuralError) {
  TemporalNetwork n(2);
  const NodeId s = n.add_node("s*", TerminalKind::kSource);
  const NodeId a = n.add_node("a");
  const NodeId d = n.add_node("d*", TerminalKind::kSink);
  n.add_static_edge(s, a, Capacity(1), 0);
  n.add_static_edge(a, d, Capacity(1), 0);
  EXPECT_THROW(classify_roles(n, s, d), StructuralError);
}

TEST(Classify, NoSuperEdges) {
  TemporalNetwork n(2);
  const NodeId s = n.add_node("s*", TerminalKind::kSource);
  n.add_node("a");
  const NodeId d = n.add_node("d*", TerminalKind::kSink);
  EXPECT_EQ(classify_roles(n, s, d), RoleSets{});
}

TEST(Classify, GadgetColours) {
  OneShotNetwork o(6);
  o.add_node("x");
  o.add_node("y");
  o.add_edge({0, 1, 1, 4, 2, 2});
  const auto r = hoppe_tardos_star(o, DemandVector{});
  const auto c = canonical_reduction(r.network, r.demands);
  const auto& g = r.trace.gadgets.front();
  EXPECT_EQ(c.roles.pseudo_sources, (std::vector<NodeId>{g.s_plus, g.s2_plus}));
  EXPECT_EQ(c.roles.pseudo_sinks, (std::vector<NodeId>{g.s_minus, g.s2_minus}));
  EXPECT_EQ(c.roles.pp_sinks, std::vector<NodeId>{*g.t2_minus});
}

TEST(Project, ZeroAndE1) {
  const auto zero = canonical_reduction(e1(), st_demand(0));
  EXPECT_TRUE(project_flow_from_canonical(zero, FlowOverTime{}).empty());

  const auto c = canonical_reduction(e1(), st_demand(2));
  const auto f = extract_flow(e1(), st_demand(2));
  FlowOverTime g = f;
  g.set(c.source_edges.at(0), 0, 2);
  g.set(c.sink_edges.at(1), 3, 2);
  const auto p = project_flow_from_canonical(c, g);
  EXPECT_EQ(p.at(0, 1), 1);
  EXPECT_EQ(p.at(0, 2), 1);
  EXPECT_EQ(p.entries().size(), 2u);

  FlowOverTime partial;
  partial.set(c.source_edges.at(0), 0, 1);
  EXPECT_THROW(project_flow_from_canonical(c, partial), PreconditionError);
}

}  // namespace
}  // namespace tflow
