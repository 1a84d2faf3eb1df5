#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

namespace tflow {
namespace {

TEST(CutCost, E1) {
  const auto g = build_ten(testing::e1());
  EXPECT_EQ(cut_cost(g, {0, 4}), Capacity(2));
  EXPECT_EQ(cut_cost(g, {0, 0}), Capacity(0));
}

TEST(CutCost, CrossedWindowsZeroCut) {
  const auto g = build_ten(testing::crossed_windows());
  EXPECT_EQ(cut_cost(g, {0, 2, 5}), Capacity(0));
  EXPECT_EQ(cut_cost(g, {0, 3, 5}), Capacity(0));
  // every other placement of b pays for one of the two arcs
  for (TimeStep b : {0, 1, 4, 5}) EXPECT_GT(cut_cost(g, {0, b, 5}), Capacity(0)) << b;
}

TEST(CutCost, NoArcsIntoSinkRow) {
  TemporalNetwork n(3);
  n.add_node("s", TerminalKind::kSource);
  n.add_node("d", TerminalKind::kSink);
  n.add_static_edge(0, 1, Capacity(0), 1);
  EXPECT_EQ(cut_cost(build_ten(n), {0, 4}), Capacity(0));
}

TEST(Shift, Basics) {
  const CutFunction phi{0, 2, 5};
  EXPECT_EQ(shift_cut(phi, {}, +1, 4), phi);
  EXPECT_EQ(shift_cut(phi, {1}, +1, 4), (CutFunction{0, 3, 5}));
  EXPECT_EQ(shift_cut(phi, {1}, -1, 4), (CutFunction{0, 1, 5}));
  EXPECT_THROW(shift_cut(phi, {0}, +1, 4), PreconditionError);
  EXPECT_THROW(shift_cut(phi, {2}, -1, 4), PreconditionError);
}

TEST(Forbidden, Examples) {
  TemporalNetwork n(9);
  const NodeId i = n.add_node("i");
  const NodeId j = n.add_node("j");
  const NodeId lone = n.add_node("lone");
  n.add_static_edge(j, i, Capacity(1), 2);
  const CutFunction phi{4, 3, 6};
  EXPECT_EQ(forbidden_set(n, phi, {lone}, lone), (std::set<TimeStep>{0, 10}));
  EXPECT_TRUE(forbidden_set(n, phi, {i}, i).count(5));
  EXPECT_EQ(forbidden_set(n, phi, {i, j}, i), (std::set<TimeStep>{0, 10}));
  EXPECT_TRUE(shift_allowed(n, phi, {i}));
  EXPECT_FALSE(shift_allowed(n, CutFunction{5, 3, 6}, {i}));
}

TEST(Canonicalize, CrossedWindowsMinCuts) {
  // Crossed windows as a canonical network: s is the lone pseudosource, d the
  // lone pseudosink, and b sits at 2 or 3 in any min cut.
  const auto n = testing::crossed_windows();
  const auto c = canonical_reduction(n, testing::st_demand(0, 0, 2));
  const auto ten = build_ten(c.network, c.super_source, c.super_sink);
  const auto f = max_flow(ten);
  EXPECT_EQ(f.value, 0);
  for (const auto& side : {residual_reachable(ten, f), residual_source_side_max(ten, f)}) {
    const auto phi = cut_from_side(ten, side);
    EXPECT_EQ(cut_cost(ten, phi), Capacity(0));
  }
  // b only sees s and d, so its critical set is the lossy {0, 1, 4} of the
  // example, and the cTEN overshoots; the gadget reduction is what fixes it.
  const auto table = compute_breakpoints(c);
  EXPECT_EQ(table.cten[1], (BreakpointSet{0, 1, 4}));
  const std::vector<BreakpointSet> a(table.cten.begin(), table.cten.begin() + 3);
  EXPECT_EQ(max_flow(build_cten(n, a, 0, 2)).value, 1);
}

TEST(Canonicalize, AlreadyCanonicalUnchanged) {
  const auto c = canonical_reduction(testing::e1(), testing::st_demand(2));
  const auto ten = build_ten(c.network, c.super_source, c.super_sink);
  const auto table = compute_breakpoints(c);
  const auto phi = cut_from_side(ten, residual_reachable(ten, max_flow(ten)));
  ASSERT_TRUE(in_critical_sets(phi, table));
  const auto rep = canonicalize_min_cut(c, ten, phi, table);
  EXPECT_EQ(rep.phi, phi);
  EXPECT_EQ(rep.component_shifts + rep.pseudoterminal_moves + rep.pp_sink_moves, 0u);
}

TEST(Canonicalize, RandomReductionCuts) {
  int moved = 0;
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const auto g = generate_instance(testing::small_spec(seed));
    const auto o = to_one_shot(g.network, supply_bound(g.demands));
    const auto r = hoppe_tardos_star(o.network, g.demands);
    const auto c = canonical_reduction(r.network, r.demands);
    const auto ten = build_ten(c.network, c.super_source, c.super_sink);
    const auto f = max_flow(ten);
    const auto table = compute_breakpoints(c);
    for (const auto& side : {residual_reachable(ten, f), residual_source_side_max(ten, f)}) {
      const auto phi = cut_from_side(ten, side);
      ASSERT_EQ(cut_cost(ten, phi), Capacity(f.value));
      const auto rep = canonicalize_min_cut(c, ten, phi, table);
      EXPECT_EQ(cut_cost(ten, rep.phi), Capacity(f.value)) << "seed " << seed;
      EXPECT_TRUE(in_critical_sets(rep.phi, table)) << "seed " << seed;
      if (rep.phi != phi) ++moved;
    }
  }
  EXPECT_GT(moved, 0);
}

// Shifting a set that avoids its forbidden times leaves the cost alone.
TEST(ShiftIdentity, SampledSets) {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto g = generate_instance(testing::small_spec(seed));
    const auto o = to_one_shot(g.network, supply_bound(g.demands));
    const auto r = hoppe_tardos_star(o.network, g.demands);
    const auto c = canonical_reduction(r.network, r.demands);
    const auto ten = build_ten(c.network, c.super_source, c.super_sink);
    const auto f = max_flow(ten);
    const TimeStep top = c.horizon() + 1;
    for (int pick = 0; pick < 4; ++pick) {
      const auto phi = cut_from_side(ten, testing::random_min_side(ten, f, rng));
      ASSERT_EQ(cut_cost(ten, phi), Capacity(f.value));
      std::vector<char> movable(c.network.node_count(), 0);
      std::vector<NodeId> seeds;
      for (NodeId i = 0; i < c.network.node_count(); ++i) {
        if (i == c.super_source || i == c.super_sink || c.is_pseudoterminal(i)) continue;
        if (phi[i] == 0 || phi[i] == top) continue;
        movable[i] = 1;
        seeds.push_back(i);
      }
      for (int k = 0; k < 10 && !seeds.empty(); ++k) {
        const auto set = testing::shift_closure(c.network, phi, movable, {seeds[rng() % seeds.size()]});
        if (!set) continue;
        ASSERT_TRUE(shift_allowed(c.network, phi, *set));
        const auto cost = cut_cost(ten, phi);
        EXPECT_EQ(cut_cost(ten, shift_cut(phi, *set, +1, c.horizon())), cost) << "seed " << seed;
        EXPECT_EQ(cut_cost(ten, shift_cut(phi, *set, -1, c.horizon())), cost) << "seed " << seed;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(ShiftIdentity, ClosureRefusesPinnedNeighbours) {
  TemporalNetwork n(9);
  n.add_node("i");
  n.add_node("j");
  n.add_static_edge(1, 0, Capacity(1), 2);
  // phi(i) = phi(j) + 2, so j has to come along
  EXPECT_EQ(testing::shift_closure(n, {5, 3}, {1, 1}, {0}), (std::set<NodeId>{0, 1}));
  EXPECT_EQ(testing::shift_closure(n, {5, 3}, {1, 0}, {0}), std::nullopt);
  EXPECT_EQ(testing::shift_closure(n, {6, 3}, {1, 0}, {0}), (std::set<NodeId>{0}));
}

}  // namespace
}  // namespace tflow
