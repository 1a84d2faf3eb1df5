#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tflow/breakpoints.hpp"
#include "tflow/capacity.hpp"
#include "tflow/errors.hpp"
#include "tflow/expansion.hpp"
#include "tflow/maxflow.hpp"
#include "tflow/reductions.hpp"

namespace tflow {

/// phi(i): earliest time at which node i is on the source side; T+1 when
/// never.
using CutFunction = std::vector<TimeStep>;

/// Capacity of the cut {(i, I) : lo(I) >= phi(i)} in either flavor.
inline Capacity cut_cost(const ExpandedGraph& g, const CutFunction& phi) {
  Capacity sum(0);
  for (const auto& a : g.arcs()) {
    const auto& from = g.label(a.from);
    const auto& to = g.label(a.to);
    if (from.interval.lo >= phi.at(from.node) && to.interval.lo < phi.at(to.node)) {
      sum += a.capacity;
    }
  }
  return sum;
}

/// Reads a cut function off a source-side vertex set that is closed under
/// holdover arcs.
inline CutFunction cut_from_side(const ExpandedGraph& g, const std::vector<char>& side) {
  CutFunction phi(g.node_count(), g.horizon() + 1);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!side[v]) continue;
    const auto& l = g.label(v);
    phi[l.node] = std::min(phi[l.node], l.interval.lo);
  }
  return phi;
}

/// Shifts phi by `direction` (+1 or -1) on C. Every node of C must sit
/// strictly inside (0, T+1).
inline CutFunction shift_cut(const CutFunction& phi, const std::set<NodeId>& c, int direction,
                             TimeStep horizon) {
  if (direction != 1 && direction != -1) throw PreconditionError("direction must be +1 or -1");
  CutFunction out = phi;
  for (NodeId i : c) {
    if (phi.at(i) == 0 || phi.at(i) == horizon + 1) {
      throw PreconditionError("cannot shift node " + std::to_string(i) + " pinned at " +
                              std::to_string(phi.at(i)));
    }
    out[i] += direction;
  }
  return out;
}

/// Times at which node i in C is pinned by neighbors outside C.
inline std::set<TimeStep> forbidden_set(const TemporalNetwork& n, const CutFunction& phi,
                                        const std::set<NodeId>& c, NodeId i) {
  std::set<TimeStep> out{0, n.horizon() + 1};
  for (EdgeId e : n.in_edges(i)) {
    const NodeId j = n.edge(e).from;
    if (!c.count(j)) out.insert(phi.at(j) + detail::static_tau(n, e));
  }
  for (EdgeId e : n.out_edges(i)) {
    const NodeId j = n.edge(e).to;
    if (!c.count(j)) out.insert(phi.at(j) - detail::static_tau(n, e));
  }
  return out;
}

inline bool shift_allowed(const TemporalNetwork& n, const CutFunction& phi,
                          const std::set<NodeId>& c) {
  return std::all_of(c.begin(), c.end(), [&](NodeId i) {
    return !forbidden_set(n, phi, c, i).count(phi.at(i));
  });
}

struct CanonicalizeReport {
  CutFunction phi;
  std::size_t pseudoterminal_moves = 0;
  std::size_t component_shifts = 0;
  std::size_t pp_sink_moves = 0;
};

namespace detail {

// Union-find over nodes plus the two anchors 0 (index n) and T+1 (n + 1).
class PinnedGraph {
 public:
  explicit PinnedGraph(std::size_t n) : parent_(n + 2) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Moves a minimum cut of TEN(N) into one with phi(i) in Gamma*(i) for
/// every node, in three stages: pseudoterminals to {0, T+1}, component
/// shifts of the pinned-assignments graph, and pp-sink settling. Throws
/// InternalError if any step changes the cost.
inline CanonicalizeReport canonicalize_min_cut(const CanonicalNetwork& c, const ExpandedGraph& ten,
                                               CutFunction phi, const BreakpointTable& bp) {
  const TemporalNetwork& n = c.network;
  const TimeStep top = n.horizon() + 1;
  const Capacity cost = cut_cost(ten, phi);
  CanonicalizeReport rep;
  auto check = [&](const CutFunction& next, const char* stage) {
    const Capacity now = cut_cost(ten, next);
    if (!(now == cost)) {
      throw InternalError(std::string(stage) + " changed the cut cost from " + cost.to_string() +
                          " to " + now.to_string());
    }
  };

  // Pseudosources and nodes without in-edges go up, pseudosinks and nodes
  // without out-edges go down. Neither move can make the cut more expensive.
  auto settle = [&](NodeId i, int direction, const char* stage) {
    while (phi[i] != 0 && phi[i] != top) {
      phi = shift_cut(phi, {i}, direction, n.horizon());
      check(phi, stage);
      ++rep.pseudoterminal_moves;
    }
  };
  for (NodeId i : c.roles.pseudo_sources) settle(i, +1, "pseudosource move");
  for (NodeId i : c.roles.pseudo_sinks) settle(i, -1, "pseudosink move");
  for (NodeId i = 0; i < n.node_count(); ++i) {
    if (i == c.super_source || i == c.super_sink) continue;
    if (n.in_edges(i).empty()) settle(i, +1, "source-free node move");
    if (n.out_edges(i).empty()) settle(i, -1, "sink-free node move");
  }

  const std::size_t count = n.node_count();
  const std::size_t zero = count;
  const std::size_t last = count + 1;
  detail::PinnedGraph h(count);
  auto add_compatible = [&]() {
    for (NodeId i = 0; i < count; ++i) {
      if (phi[i] == 0) h.join(i, zero);
      if (phi[i] == top) h.join(i, last);
    }
    for (EdgeId e = 0; e < n.edge_count(); ++e) {
      const auto& edge = n.edge(e);
      const TimeStep gap = phi[edge.from] > phi[edge.to] ? phi[edge.from] - phi[edge.to]
                                                         : phi[edge.to] - phi[edge.from];
      if (edge.travel_time.is_constant() && gap == edge.travel_time.pieces().front().value) {
        h.join(edge.from, edge.to);
      }
    }
  };
  add_compatible();
  const std::int64_t bound = static_cast<std::int64_t>(count) * top;
  std::int64_t previous = std::accumulate(phi.begin(), phi.end(), std::int64_t{0});
  while (true) {
    std::optional<NodeId> loose;
    for (NodeId i = 0; i < count && !loose; ++i) {
      const auto root = h.find(i);
      if (root != h.find(zero) && root != h.find(last)) loose = i;
    }
    if (!loose) break;
    std::set<NodeId> comp;
    const auto root = h.find(*loose);
    for (NodeId i = 0; i < count; ++i) {
      if (h.find(i) == root) comp.insert(i);
    }
    phi = shift_cut(phi, comp, +1, n.horizon());
    check(phi, "component shift");
    ++rep.component_shifts;
    const std::int64_t sum = std::accumulate(phi.begin(), phi.end(), std::int64_t{0});
    if (sum <= previous || sum > bound) throw InternalError("component shifts do not progress");
    previous = sum;
    add_compatible();
  }

  for (NodeId i : c.roles.pp_sinks) {
    const auto& star = bp.gamma_star[i];
    if (std::binary_search(star.begin(), star.end(), phi[i])) continue;
    const NodeId out = n.edge(n.out_edges(i).front()).to;
    const NodeId a = *bp.star_source[i];
    const TimeStep goal = phi[out] == 0 ? 0 : phi[a];
    while (phi[i] != goal) {
      phi[i] += phi[i] < goal ? 1 : -1;
      check(phi, "pp-sink move");
      ++rep.pp_sink_moves;
    }
  }
  rep.phi = std::move(phi);
  return rep;
}

/// True when phi(i) lies in Gamma*(i) for every node.
inline bool in_critical_sets(const CutFunction& phi, const BreakpointTable& bp) {
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const auto& s = bp.gamma_star[i];
    if (!std::binary_search(s.begin(), s.end(), phi[i])) return false;
  }
  return true;
}

}  // namespace tflow
