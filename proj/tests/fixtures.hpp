#pragma once

#include <optional>
#include <random>
#include <set>
#include <vector>

#include "tflow.hpp"

namespace tflow::testing {

// Edge s->d open with capacity 1 on [1,2] only, tau 1, T = 3.
inline TemporalNetwork e1(TimeStep horizon = 3) {
  TemporalNetwork n(3);
  const NodeId s = n.add_node("s", TerminalKind::kSource);
  const NodeId d = n.add_node("d", TerminalKind::kSink);
  n.add_edge(s, d, CapacityFn({{0, 0, Capacity(0)}, {1, 2, Capacity(1)}, {3, 3, Capacity(0)}}, 3),
             TravelTimeFn::constant(1, 3));
  return horizon == 3 ? n : n.with_horizon(horizon);
}

inline DemandVector st_demand(std::int64_t amount, NodeId s = 0, NodeId d = 1) {
  DemandVector v;
  v.set(s, -amount);
  v.set(d, amount);
  return v;
}

// s -> b open only at t = 2, b -> d open only at t = 1, tau 1, T = 4.
// Nothing can get through, but the breakpoints {0, 1, 4} hide that.
inline TemporalNetwork crossed_windows() {
  TemporalNetwork n(4);
  const NodeId s = n.add_node("s", TerminalKind::kSource);
  const NodeId b = n.add_node("b");
  const NodeId d = n.add_node("d", TerminalKind::kSink);
  n.add_edge(s, b, CapacityFn::window(Capacity(1), Capacity(0), 2, 2, 4), TravelTimeFn::constant(1, 4));
  n.add_edge(b, d, CapacityFn::window(Capacity(1), Capacity(0), 1, 1, 4), TravelTimeFn::constant(1, 4));
  return n;
}

inline InstanceSpec small_spec(std::uint64_t seed) {
  InstanceSpec spec;
  spec.seed = seed;
  spec.nodes = 2 + seed % 5;
  spec.edges = 1 + seed % 8;
  spec.pieces = 1 + seed % 3;
  spec.max_capacity = 4;
  spec.max_travel_time = 3;
  spec.horizon = 1 + seed % 12;
  spec.terminals = std::min<std::size_t>(spec.nodes, 2 + seed % 3);
  spec.demand_magnitude = 4;
  switch (seed % 3) {
    case 0: spec.bias = DemandBias::kFeasible; break;
    case 1: spec.bias = DemandBias::kInfeasible; break;
    default: spec.bias = DemandBias::kRandom; break;
  }
  return spec;
}

// Smallest C containing `seeds` that meets the forbidden-set condition:
// keeps adding the neighbours whose tight edge pins a member. Empty when
// that drags in a node outside `movable`.
inline std::optional<std::set<NodeId>> shift_closure(const TemporalNetwork& n,
                                                     const CutFunction& phi,
                                                     const std::vector<char>& movable,
                                                     const std::vector<NodeId>& seeds) {
  std::set<NodeId> c;
  std::vector<NodeId> todo(seeds.begin(), seeds.end());
  while (!todo.empty()) {
    const NodeId i = todo.back();
    todo.pop_back();
    if (!movable[i]) return std::nullopt;
    if (!c.insert(i).second) continue;
    for (EdgeId e : n.in_edges(i)) {
      const NodeId j = n.edge(e).from;
      if (phi[i] == phi[j] + detail::static_tau(n, e)) todo.push_back(j);
    }
    for (EdgeId e : n.out_edges(i)) {
      const NodeId j = n.edge(e).to;
      if (phi[i] == phi[j] - detail::static_tau(n, e)) todo.push_back(j);
    }
  }
  return c;
}

// A min cut between the minimal and maximal source sides: the minimal side
// plus the residual closure of a few vertices that cannot reach the sink.
inline std::vector<char> random_min_side(const ExpandedGraph& g, const SteadyFlow& f,
                                         std::mt19937_64& rng) {
  auto side = residual_reachable(g, f);
  const auto max_side = residual_source_side_max(g, f);
  std::vector<std::size_t> between;
  for (std::size_t v = 0; v < side.size(); ++v) {
    if (max_side[v] && !side[v]) between.push_back(v);
  }
  if (between.empty()) return side;
  const detail::Residual res(g, f.arc_flow);
  for (std::size_t k = 0, picks = 1 + rng() % 3; k < picks; ++k) {
    const auto add = res.reach(between[rng() % between.size()], false);
    for (std::size_t v = 0; v < side.size(); ++v) side[v] = side[v] || add[v];
  }
  return side;
}

}  // namespace tflow::testing
