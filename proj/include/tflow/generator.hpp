#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tflow/capacity.hpp"
#include "tflow/errors.hpp"
#include "tflow/expansion.hpp"
#include "tflow/maxflow.hpp"
#include "tflow/network.hpp"
#include "tflow/oneshot.hpp"
#include "tflow/reductions.hpp"

namespace tflow {

enum class DemandBias { kFeasible, kInfeasible, kRandom };

struct InstanceSpec {
  std::size_t nodes = 5;
  std::size_t edges = 6;
  std::size_t pieces = 2;
  std::int64_t max_capacity = 4;
  TimeStep max_travel_time = 3;
  TimeStep horizon = 8;
  std::uint64_t seed = 1;
  std::size_t terminals = 2;
  std::int64_t demand_magnitude = 4;
  DemandBias bias = DemandBias::kFeasible;
};

struct GeneratedInstance {
  TemporalNetwork network;
  DemandVector demands;
};

namespace detail {

inline std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Splits `total` into `parts` non-negative integers.
inline std::vector<std::int64_t> split_total(std::mt19937_64& rng, std::int64_t total,
                                             std::size_t parts) {
  std::vector<std::int64_t> cuts{0, total};
  for (std::size_t k = 1; k < parts; ++k) cuts.push_back(uniform(rng, 0, total));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) out.push_back(cuts[k + 1] - cuts[k]);
  return out;
}

// Terminal supplies/demands carried by a maximum flow of the full expansion
// when s* and d* edges are capped by random bounds.
inline DemandVector sampled_flow_demands(std::mt19937_64& rng, const TemporalNetwork& n,
                                         std::int64_t magnitude) {
  DemandVector zero;
  for (NodeId s : n.sources()) zero.set(s, 0);
  for (NodeId d : n.sinks()) zero.set(d, 0);
  auto c = canonical_reduction(n, zero);
  const TimeStep horizon = n.horizon();
  for (const auto& [s, e] : c.source_edges) {
    c.network.set_capacity(
        e, CapacityFn::window(Capacity(uniform(rng, 0, magnitude)), Capacity(0), 0, 0, horizon));
  }
  for (const auto& [d, e] : c.sink_edges) {
    c.network.set_capacity(e, CapacityFn::window(Capacity(uniform(rng, 0, magnitude)),
                                                 Capacity(0), horizon, horizon, horizon));
  }
  const auto g = build_ten(c.network, c.super_source, c.super_sink);
  const auto f = max_flow(g);
  DemandVector v = zero;
  for (std::size_t k = 0; k < g.arc_count(); ++k) {
    const auto& a = g.arcs()[k];
    if (!a.edge || f.arc_flow[k] == 0) continue;
    const auto& edge = c.network.edge(*a.edge);
    if (edge.from == c.super_source) v.set(edge.to, v.at(edge.to) - f.arc_flow[k]);
    if (edge.to == c.super_sink) v.set(edge.from, v.at(edge.from) + f.arc_flow[k]);
  }
  return v;
}

}  // namespace detail

/// Seeded random temporal instance with balanced demands.
inline GeneratedInstance generate_instance(const InstanceSpec& spec) {
  if (spec.terminals < 2) throw InputError("an instance needs at least two terminals");
  if (spec.nodes < spec.terminals) throw InputError("more terminals than nodes");
  if (spec.pieces == 0 || spec.max_capacity < 0 || spec.max_travel_time < 1 || spec.horizon < 0) {
    throw InputError("pieces, capacity, travel time and horizon must be positive");
  }
  std::mt19937_64 rng(spec.seed);
  const TimeStep horizon = spec.horizon;
  GeneratedInstance out{TemporalNetwork(horizon), {}};
  auto& n = out.network;

  std::vector<NodeId> order(spec.nodes);
  for (std::size_t k = 0; k < spec.nodes; ++k) order[k] = k;
  std::shuffle(order.begin(), order.end(), rng);
  const auto sources = static_cast<std::size_t>(
      detail::uniform(rng, 1, static_cast<std::int64_t>(spec.terminals) - 1));
  std::vector<TerminalKind> kind(spec.nodes, TerminalKind::kInternal);
  for (std::size_t k = 0; k < spec.terminals; ++k) {
    kind[order[k]] = k < sources ? TerminalKind::kSource : TerminalKind::kSink;
  }
  for (std::size_t i = 0; i < spec.nodes; ++i) n.add_node("v" + std::to_string(i), kind[i]);

  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < spec.nodes; ++i) {
    for (NodeId j = 0; j < spec.nodes; ++j) {
      if (i != j && kind[j] != TerminalKind::kSource && kind[i] != TerminalKind::kSink) {
        pairs.emplace_back(i, j);
      }
    }
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  pairs.resize(std::min(pairs.size(), spec.edges));

  for (const auto& [i, j] : pairs) {
    const auto wanted = static_cast<std::size_t>(
        detail::uniform(rng, 1, static_cast<std::int64_t>(spec.pieces)));
    std::set<TimeStep> starts{0};
    const std::size_t count = std::min<std::size_t>(wanted, static_cast<std::size_t>(horizon + 1));
    while (starts.size() < count) starts.insert(detail::uniform(rng, 1, horizon));
    std::vector<TimeStep> bounds(starts.begin(), starts.end());
    bounds.push_back(horizon + 1);
    const bool vary_tau = detail::uniform(rng, 0, 1) == 1;
    const TimeStep fixed_tau = detail::uniform(rng, 1, spec.max_travel_time);
    std::vector<Piece<Capacity>> caps;
    std::vector<Piece<TimeStep>> taus;
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
      const TimeStep lo = bounds[k];
      const TimeStep hi = bounds[k + 1] - 1;
      caps.push_back({lo, hi, Capacity(detail::uniform(rng, 0, spec.max_capacity))});
      taus.push_back({lo, hi, vary_tau ? detail::uniform(rng, 1, spec.max_travel_time) : fixed_tau});
    }
    n.add_edge(i, j, CapacityFn(caps, horizon), TravelTimeFn(taus, horizon));
  }

  switch (spec.bias) {
    case DemandBias::kFeasible:
      out.demands = detail::sampled_flow_demands(rng, n, spec.demand_magnitude);
      break;
    case DemandBias::kInfeasible: {
      out.demands = detail::sampled_flow_demands(rng, n, spec.demand_magnitude);
      const auto s = n.sources();
      const auto d = n.sinks();
      const std::int64_t extra = detail::uniform(rng, 1, std::max<std::int64_t>(1, spec.demand_magnitude));
      const NodeId a = s[static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<std::int64_t>(s.size()) - 1))];
      const NodeId b = d[static_cast<std::size_t>(detail::uniform(rng, 0, static_cast<std::int64_t>(d.size()) - 1))];
      out.demands.set(a, out.demands.at(a) - extra);
      out.demands.set(b, out.demands.at(b) + extra);
      break;
    }
    case DemandBias::kRandom: {
      std::int64_t total = 0;
      for (NodeId s : n.sources()) {
        const std::int64_t supply = detail::uniform(rng, 0, spec.demand_magnitude);
        out.demands.set(s, -supply);
        total += supply;
      }
      const auto d = n.sinks();
      const auto parts = detail::split_total(rng, total, d.size());
      for (std::size_t k = 0; k < d.size(); ++k) out.demands.set(d[k], parts[k]);
      break;
    }
  }
  return out;
}

struct OneShotFamilySpec {
  std::size_t nodes = 16;
  std::size_t edges = 40;
  TimeStep horizon = 1'000'000;
  std::int64_t max_capacity = 8;
  TimeStep max_travel_time = 1000;
  std::uint64_t seed = 1;
};

/// Random one-shot network over `nodes` internal nodes plus one source and
/// one sink, with zero demands. Used for size measurements.
inline std::pair<OneShotNetwork, DemandVector> generate_one_shot(const OneShotFamilySpec& spec) {
  std::mt19937_64 rng(spec.seed);
  OneShotNetwork n(spec.horizon);
  const NodeId s = n.add_node("src", TerminalKind::kSource);
  const NodeId d = n.add_node("dst", TerminalKind::kSink);
  std::vector<NodeId> inner;
  for (std::size_t k = 0; k < spec.nodes; ++k) inner.push_back(n.add_node("u" + std::to_string(k)));
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId a : inner) {
    pairs.emplace_back(s, a);
    pairs.emplace_back(a, d);
    for (NodeId b : inner) {
      if (a != b) pairs.emplace_back(a, b);
    }
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  if (pairs.size() < spec.edges) throw InputError("too many edges for the node count");
  for (std::size_t k = 0; k < spec.edges; ++k) {
    TimeStep a = detail::uniform(rng, 0, spec.horizon);
    TimeStep b = detail::uniform(rng, 0, spec.horizon);
    if (a > b) std::swap(a, b);
    n.add_edge({pairs[k].first, pairs[k].second, a, b, detail::uniform(rng, 1, spec.max_capacity),
                detail::uniform(rng, 1, spec.max_travel_time)});
  }
  DemandVector v;
  v.set(s, 0);
  v.set(d, 0);
  return {std::move(n), std::move(v)};
}

}  // namespace tflow
