#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tflow/capacity.hpp"
#include "tflow/errors.hpp"
#include "tflow/network.hpp"
#include "tflow/oneshot.hpp"

namespace tflow {

enum class RoleTag {
  kOriginal,
  kGadgetSource,   // s+  : supply u(beta - alpha + 1)
  kGadgetSink,     // s-  : demand u(beta - alpha + 1)
  kGadgetSource2,  // second-stage source, supply u(T + 1)
  kGadgetSink2,    // second-stage sink, demand u(T + 1)
  kTPlus,
  kTMinus,
  kTPlus2,   // second-stage intermediates (sound form only)
  kTMinus2,
  kSuperSource,
  kSuperSink,
};

inline const char* to_string(RoleTag tag) {
  switch (tag) {
    case RoleTag::kOriginal: return "original";
    case RoleTag::kGadgetSource: return "s+";
    case RoleTag::kGadgetSink: return "s-";
    case RoleTag::kGadgetSource2: return "s2+";
    case RoleTag::kGadgetSink2: return "s2-";
    case RoleTag::kTPlus: return "t+";
    case RoleTag::kTMinus: return "t-";
    case RoleTag::kTPlus2: return "t2+";
    case RoleTag::kTMinus2: return "t2-";
    case RoleTag::kSuperSource: return "s*";
    case RoleTag::kSuperSink: return "d*";
  }
  return "?";
}

struct NodeRole {
  RoleTag tag = RoleTag::kOriginal;
  /// Index into ReductionTrace::gadgets for gadget nodes.
  std::optional<std::size_t> gadget;

  friend bool operator==(const NodeRole&, const NodeRole&) = default;
};

/// How the second stage replaces the t- -> s- edge.
enum class GadgetForm {
  /// Full gadget for the static edge: keeps the capacity-u intermediate
  /// nodes t2+ and t2-, which is what pins the deadline on t-.
  kSound,
  /// Only the new source and sink are added. Smaller, but lets flow reach y
  /// before x sent it; kept for comparison only.
  kCompact,
};

struct GadgetInfo {
  std::size_t one_shot_edge = 0;
  NodeId x = 0;
  NodeId y = 0;
  TimeStep alpha = 0;
  TimeStep beta = 0;
  std::int64_t capacity = 0;
  TimeStep travel_time = 0;
  NodeId s_plus = 0;
  NodeId t_plus = 0;
  NodeId t_minus = 0;
  NodeId s_minus = 0;
  NodeId s2_plus = 0;
  NodeId s2_minus = 0;
  std::optional<NodeId> t2_plus;
  std::optional<NodeId> t2_minus;
};

struct ReductionTrace {
  GadgetForm form = GadgetForm::kSound;
  std::size_t original_node_count = 0;
  std::vector<NodeRole> roles;
  /// Per reduced edge: owning gadget.
  std::vector<std::size_t> edge_gadget;
  std::vector<GadgetInfo> gadgets;
};

struct StaticReduction {
  TemporalNetwork network;
  DemandVector demands;
  ReductionTrace trace;
};

/// Replaces every one-shot edge by a static gadget and returns the static
/// network with its demand vector. Original node ids are kept.
inline StaticReduction hoppe_tardos_star(const OneShotNetwork& n, const DemandVector& v,
                                         GadgetForm form = GadgetForm::kSound) {
  if (v.total() != 0) throw PreconditionError("demands do not sum to zero");
  const TimeStep horizon = n.horizon();
  StaticReduction out{TemporalNetwork(horizon), v, {}};
  auto& net = out.network;
  auto& trace = out.trace;
  trace.form = form;
  trace.original_node_count = n.node_count();

  for (const auto& node : n.nodes()) {
    net.add_node(node.name, node.kind);
    trace.roles.push_back({RoleTag::kOriginal, std::nullopt});
  }

  for (std::size_t k = 0; k < n.edge_count(); ++k) {
    const OneShotEdge& e = n.edges()[k];
    const std::int64_t u = e.capacity;
    const std::int64_t window_supply = checked::mul(u, checked::add(checked::sub(e.beta, e.alpha), 1));
    const std::int64_t full_supply = checked::mul(u, checked::add(horizon, 1));
    const std::string tag = "[" + n.nodes()[e.from].name + ">" + n.nodes()[e.to].name + "]";

    GadgetInfo g;
    g.one_shot_edge = k;
    g.x = e.from;
    g.y = e.to;
    g.alpha = e.alpha;
    g.beta = e.beta;
    g.capacity = u;
    g.travel_time = e.travel_time;

    auto add = [&](const std::string& prefix, TerminalKind kind, RoleTag role) {
      NodeId id = net.add_node(prefix + tag, kind);
      trace.roles.push_back({role, trace.gadgets.size()});
      return id;
    };
    g.s_plus = add("s+", TerminalKind::kSource, RoleTag::kGadgetSource);
    g.t_plus = add("t+", TerminalKind::kInternal, RoleTag::kTPlus);
    g.t_minus = add("t-", TerminalKind::kInternal, RoleTag::kTMinus);
    g.s_minus = add("s-", TerminalKind::kSink, RoleTag::kGadgetSink);
    g.s2_plus = add("s2+", TerminalKind::kSource, RoleTag::kGadgetSource2);
    g.s2_minus = add("s2-", TerminalKind::kSink, RoleTag::kGadgetSink2);
    if (form == GadgetForm::kSound) {
      g.t2_plus = add("t2+", TerminalKind::kInternal, RoleTag::kTPlus2);
      g.t2_minus = add("t2-", TerminalKind::kInternal, RoleTag::kTMinus2);
    }

    const Capacity cap(u);
    auto edge = [&](NodeId a, NodeId b, TimeStep tau) {
      net.add_static_edge(a, b, cap, tau);
      trace.edge_gadget.push_back(trace.gadgets.size());
    };
    edge(g.s_plus, g.t_plus, e.alpha);
    edge(g.t_plus, e.to, e.travel_time);
    edge(g.t_plus, g.t_minus, 0);
    edge(e.from, g.t_minus, 0);
    if (form == GadgetForm::kSound) {
      edge(g.t_minus, *g.t2_minus, 0);
      edge(g.s2_plus, *g.t2_plus, 0);
      edge(*g.t2_plus, *g.t2_minus, 0);
      edge(*g.t2_plus, g.s_minus, horizon - e.beta);
      edge(*g.t2_minus, g.s2_minus, 0);
    } else {
      edge(g.t_minus, g.s2_minus, 0);
      edge(g.s2_plus, g.s2_minus, 0);
      edge(g.s2_plus, g.s_minus, horizon - e.beta);
    }

    out.demands.set(g.s_plus, -window_supply);
    out.demands.set(g.s_minus, window_supply);
    out.demands.set(g.s2_minus, full_supply);
    out.demands.set(g.s2_plus, -full_supply);
    trace.gadgets.push_back(g);
  }
  return out;
}

struct RoleSets {
  std::vector<NodeId> pseudo_sources;
  std::vector<NodeId> pseudo_sinks;
  std::vector<NodeId> pp_sinks;

  friend bool operator==(const RoleSets&, const RoleSets&) = default;
};

/// Pseudosources, pseudosinks and pseudo-pseudosinks of a canonical network
/// with super terminals s_star and d_star. Each list is sorted by id.
inline RoleSets classify_roles(const TemporalNetwork& n, NodeId s_star, NodeId d_star) {
  RoleSets out;
  std::vector<char> is_pseudo_sink(n.node_count(), 0);
  for (EdgeId e : n.out_edges(s_star)) {
    const NodeId i = n.edge(e).to;
    if (n.in_edges(i).size() != 1) {
      throw StructuralError("pseudosource '" + n.node(i).name + "' has extra in-edges");
    }
    out.pseudo_sources.push_back(i);
  }
  for (EdgeId e : n.in_edges(d_star)) {
    const NodeId i = n.edge(e).from;
    if (n.out_edges(i).size() != 1) {
      throw StructuralError("pseudosink '" + n.node(i).name + "' has extra out-edges");
    }
    out.pseudo_sinks.push_back(i);
    is_pseudo_sink[i] = 1;
  }
  std::sort(out.pseudo_sources.begin(), out.pseudo_sources.end());
  std::sort(out.pseudo_sinks.begin(), out.pseudo_sinks.end());
  for (NodeId i : out.pseudo_sources) {
    if (is_pseudo_sink[i]) {
      throw StructuralError("node '" + n.node(i).name + "' is both pseudosource and pseudosink");
    }
  }

  auto static_with = [&](EdgeId e, const Capacity& cap) {
    const Edge& edge = n.edge(e);
    return edge.capacity.is_constant() && edge.travel_time.is_constant() &&
           edge.travel_time.pieces().front().value == 0 &&
           edge.capacity.pieces().front().value == cap;
  };
  for (NodeId i = 0; i < n.node_count(); ++i) {
    if (i == s_star || i == d_star || is_pseudo_sink[i]) continue;
    const auto& outs = n.out_edges(i);
    const auto& ins = n.in_edges(i);
    if (outs.size() != 1 || ins.size() != 2) continue;
    const Edge& out_edge = n.edge(outs.front());
    if (!is_pseudo_sink[out_edge.to] || !out_edge.capacity.is_constant()) continue;
    const Capacity cap = out_edge.capacity.pieces().front().value;
    if (static_with(outs.front(), cap) && static_with(ins[0], cap) && static_with(ins[1], cap)) {
      out.pp_sinks.push_back(i);
    }
  }
  return out;
}

/// A temporal network with one super source and one super sink whose edges
/// are alive only at t = 0 and t = T respectively.
struct CanonicalNetwork {
  TemporalNetwork network;
  NodeId super_source = 0;
  NodeId super_sink = 0;
  /// Nodes below this id are the nodes of the pre-canonical network, and
  /// edges below base_edge_count its edges.
  std::size_t base_node_count = 0;
  std::size_t base_edge_count = 0;
  /// Demands of the pre-canonical network.
  DemandVector base_demands;
  /// Super edge for each former source / sink.
  std::map<NodeId, EdgeId> source_edges;
  std::map<NodeId, EdgeId> sink_edges;
  RoleSets roles;
  std::vector<NodeRole> node_roles;
  std::shared_ptr<const ReductionTrace> trace;

  [[nodiscard]] TimeStep horizon() const { return network.horizon(); }
  /// Value a flow must reach for the demands to be met, v(S-).
  [[nodiscard]] std::int64_t required_value() const { return base_demands.positive_total(); }
  [[nodiscard]] bool is_pseudoterminal(NodeId i) const {
    return std::binary_search(roles.pseudo_sources.begin(), roles.pseudo_sources.end(), i) ||
           std::binary_search(roles.pseudo_sinks.begin(), roles.pseudo_sinks.end(), i);
  }
  [[nodiscard]] bool is_pp_sink(NodeId i) const {
    return std::binary_search(roles.pp_sinks.begin(), roles.pp_sinks.end(), i);
  }
};

/// Adds s* and d*. Former terminals become internal pseudoterminals; their
/// super edges keep zero capacity when the demand is zero so the topology
/// does not depend on v.
inline CanonicalNetwork canonical_reduction(const TemporalNetwork& n, const DemandVector& v,
                                            std::shared_ptr<const ReductionTrace> trace = nullptr) {
  if (v.total() != 0) throw PreconditionError("demands do not sum to zero");
  check_demands(n, v);
  const TimeStep horizon = n.horizon();
  CanonicalNetwork out;
  out.network = TemporalNetwork(horizon);
  out.base_node_count = n.node_count();
  out.base_edge_count = n.edge_count();
  out.base_demands = v;
  out.trace = std::move(trace);
  auto& net = out.network;
  for (const auto& node : n.nodes()) net.add_node(node.name, TerminalKind::kInternal);
  for (const auto& e : n.edges()) net.add_edge(e.from, e.to, e.capacity, e.travel_time);
  out.super_source = net.add_node("s*", TerminalKind::kSource);
  out.super_sink = net.add_node("d*", TerminalKind::kSink);

  const auto zero_tau = TravelTimeFn::constant(0, horizon);
  for (NodeId s : n.sources()) {
    const Capacity c(-v.at(s));
    out.source_edges[s] = net.add_edge(
        out.super_source, s, CapacityFn::window(c, Capacity(0), 0, 0, horizon), zero_tau);
  }
  for (NodeId d : n.sinks()) {
    const Capacity c(v.at(d));
    out.sink_edges[d] = net.add_edge(
        d, out.super_sink, CapacityFn::window(c, Capacity(0), horizon, horizon, horizon), zero_tau);
  }

  if (out.trace) {
    out.node_roles = out.trace->roles;
    out.node_roles.resize(n.node_count());
  } else {
    out.node_roles.assign(n.node_count(), NodeRole{});
  }
  out.node_roles.push_back({RoleTag::kSuperSource, std::nullopt});
  out.node_roles.push_back({RoleTag::kSuperSink, std::nullopt});
  out.roles = classify_roles(net, out.super_source, out.super_sink);
  return out;
}

/// Restriction of a flow on the canonical network to the pre-canonical
/// edges. The flow must saturate every super-source edge.
inline FlowOverTime project_flow_from_canonical(const CanonicalNetwork& c, const FlowOverTime& g) {
  for (const auto& [s, e] : c.source_edges) {
    const std::int64_t need = -c.base_demands.at(s);
    if (g.at(e, 0) != need) {
      throw PreconditionError("flow does not saturate the super-source edge to '" +
                              c.network.node(s).name + "'");
    }
  }
  FlowOverTime out;
  for (const auto& [key, amount] : g.entries()) {
    if (key.first < c.base_edge_count) out.set(key.first, key.second, amount);
  }
  return out;
}

}  // namespace tflow
