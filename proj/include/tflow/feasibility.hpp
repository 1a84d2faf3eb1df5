#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tflow/breakpoints.hpp"
#include "tflow/capacity.hpp"
#include "tflow/errors.hpp"
#include "tflow/expansion.hpp"
#include "tflow/maxflow.hpp"
#include "tflow/network.hpp"
#include "tflow/reductions.hpp"

namespace tflow {

/// Copy of `c` in which s* feeds exactly the sources in A (without bound)
/// and d* drains exactly the sinks outside A (without bound). Its maximum
/// flow is o^T(A).
inline CanonicalNetwork restrict_for_set(const CanonicalNetwork& c, const std::set<NodeId>& a) {
  for (NodeId i : a) {
    if (!c.source_edges.count(i) && !c.sink_edges.count(i)) {
      throw PreconditionError("restricted set contains non-terminal id " + std::to_string(i));
    }
  }
  CanonicalNetwork out = c;
  const TimeStep horizon = c.horizon();
  const Capacity inf = Capacity::infinity();
  const Capacity zero(0);
  for (const auto& [s, e] : c.source_edges) {
    const Capacity cap = a.count(s) ? inf : zero;
    out.network.set_capacity(e, CapacityFn::window(cap, zero, 0, 0, horizon));
  }
  for (const auto& [d, e] : c.sink_edges) {
    const Capacity cap = a.count(d) ? zero : inf;
    out.network.set_capacity(e, CapacityFn::window(cap, zero, horizon, horizon, horizon));
  }
  return out;
}

enum class OracleMode { kCten, kTen };

struct FeasOutcome {
  bool feasible = false;
  std::int64_t flow_value = 0;
  /// v(S-) of the reduced instance.
  std::int64_t required = 0;
  /// Violated terminal set, in ids of the pre-canonical network.
  std::vector<NodeId> violated;
  std::int64_t o_t = 0;
  std::int64_t neg_v = 0;
  std::size_t cten_vertices = 0;
  std::size_t cten_arcs = 0;

  [[nodiscard]] std::string to_line() const {
    if (feasible) return "FEASIBLE";
    std::ostringstream os;
    os << "INFEASIBLE violated=";
    for (std::size_t k = 0; k < violated.size(); ++k) os << (k ? "," : "") << violated[k];
    os << " oT=" << o_t << " negv=" << neg_v;
    return os.str();
  }
};

inline std::int64_t finite_or_throw(const Capacity& c, const char* what) {
  if (c.is_infinite()) throw UnboundedError(std::string(what) + " is unbounded");
  return c.value();
}

/// Maximum flow of the condensed expansion with the given breakpoints;
/// infinite when no finite cut exists.
inline Capacity cten_max_flow(const CanonicalNetwork& c, const std::vector<BreakpointSet>& a) {
  const auto g = build_cten(c.network, a, c.super_source, c.super_sink);
  if (has_unbounded_path(g)) return Capacity::infinity();
  return Capacity(max_flow(g).value);
}

inline Capacity ten_max_flow(const CanonicalNetwork& c, std::int64_t budget = kDefaultTenBudget) {
  const auto g = build_ten(c.network, c.super_source, c.super_sink, budget);
  if (has_unbounded_path(g)) return Capacity::infinity();
  return Capacity(max_flow(g).value);
}

/// o^T(A) of a canonical network: the most flow the sources in A can send
/// to the sinks outside A by the horizon.
inline Capacity capacity_oT(const CanonicalNetwork& c, const std::set<NodeId>& a,
                            OracleMode mode = OracleMode::kCten,
                            std::int64_t budget = kDefaultTenBudget) {
  const auto r = restrict_for_set(c, a);
  if (mode == OracleMode::kTen) return ten_max_flow(r, budget);
  return cten_max_flow(r, compute_breakpoints(r).cten);
}

inline Capacity capacity_oT(const TemporalNetwork& n, const DemandVector& v,
                            const std::set<NodeId>& a, OracleMode mode = OracleMode::kCten,
                            std::int64_t budget = kDefaultTenBudget) {
  return capacity_oT(canonical_reduction(n, v), a, mode, budget);
}

/// True iff A certifies infeasibility: o^T(A) < -v(A).
inline bool verify_violated(const TemporalNetwork& n, const DemandVector& v,
                            const std::set<NodeId>& a, OracleMode mode = OracleMode::kTen,
                            std::int64_t budget = kDefaultTenBudget) {
  const Capacity o = capacity_oT(n, v, a, mode, budget);
  return o < -v.of(a);
}

struct FeasDetail {
  CanonicalNetwork canonical;
  BreakpointTable breakpoints;
  SteadyFlow flow;
  FeasOutcome outcome;
};

/// Decides feasibility of a canonical instance with its cTEN; on failure,
/// reads the violated set off the residual graph.
inline FeasDetail feas_canonical(CanonicalNetwork c) {
  FeasDetail out{std::move(c), {}, {}, {}};
  const auto& cn = out.canonical;
  out.breakpoints = compute_breakpoints(cn);
  const auto g = build_cten(cn.network, out.breakpoints.cten, cn.super_source, cn.super_sink);
  out.flow = max_flow(g);
  auto& o = out.outcome;
  o.flow_value = out.flow.value;
  o.required = cn.required_value();
  o.cten_vertices = g.vertex_count();
  o.cten_arcs = g.arc_count();
  if (o.flow_value >= o.required) {
    o.feasible = true;
    return out;
  }
  const auto reach = residual_reachable(g, out.flow);
  std::set<NodeId> a;
  for (const auto& [s, _] : cn.source_edges) {
    if (reach[g.first_vertex(s)]) a.insert(s);
  }
  for (const auto& [d, _] : cn.sink_edges) {
    if (reach[g.last_vertex(d)]) a.insert(d);
  }
  o.violated.assign(a.begin(), a.end());
  const auto restricted = restrict_for_set(cn, a);
  o.o_t = finite_or_throw(cten_max_flow(restricted, out.breakpoints.cten), "o^T(A)");
  o.neg_v = -cn.base_demands.of(a);
  if (!(o.o_t < o.neg_v)) {
    throw InternalError("violated set fails its certificate: oT=" + std::to_string(o.o_t) +
                        " negv=" + std::to_string(o.neg_v));
  }
  return out;
}

/// Feasibility of a static instance produced by hoppe_tardos_star.
inline FeasOutcome feas(const StaticReduction& r) {
  if (r.demands.total() != 0) throw PreconditionError("demands do not sum to zero");
  if (r.trace.roles.size() != r.network.node_count()) {
    throw PreconditionError("static instance carries no reduction trace");
  }
  auto trace = std::make_shared<const ReductionTrace>(r.trace);
  return feas_canonical(canonical_reduction(r.network, r.demands, trace)).outcome;
}

}  // namespace tflow
