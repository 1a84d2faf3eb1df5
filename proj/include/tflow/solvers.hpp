#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tflow/capacity.hpp"
#include "tflow/errors.hpp"
#include "tflow/expansion.hpp"
#include "tflow/feasibility.hpp"
#include "tflow/maxflow.hpp"
#include "tflow/network.hpp"
#include "tflow/oneshot.hpp"
#include "tflow/reductions.hpp"

namespace tflow {

struct DttnResult {
  FeasOutcome outcome;
  OneShotConversion one_shot;
  StaticReduction reduction;
};

/// Total supply, used as a finite stand-in for infinite capacities: no edge
/// ever carries more than that in one step.
inline std::int64_t supply_bound(const DemandVector& v) {
  std::int64_t s = 0;
  for (const auto& [_, d] : v.values()) {
    if (d < 0) s = checked::sub(s, d);
  }
  return s;
}

/// Feasibility of (N, T, v) through the one-shot conversion, the static
/// gadget reduction and the condensed expansion.
inline DttnResult dttn_feasible(const TemporalNetwork& n, const DemandVector& v,
                                GadgetForm form = GadgetForm::kSound) {
  if (v.total() != 0) throw PreconditionError("demands do not sum to zero");
  check_demands(n, v);
  DttnResult out{{}, to_one_shot(n, supply_bound(v)), {}};
  out.reduction = hoppe_tardos_star(out.one_shot.network, v, form);
  out.outcome = feas(out.reduction);
  return out;
}

/// Verdict from the full expansion of the canonical reduction of N itself.
inline bool ten_feasible(const TemporalNetwork& n, const DemandVector& v,
                         std::int64_t budget = kDefaultTenBudget) {
  const auto c = canonical_reduction(n, v);
  const Capacity f = ten_max_flow(c, budget);
  return f >= c.required_value();
}

/// A flow over time meeting v exactly, read off a maximum flow of the full
/// expansion. Throws PreconditionError when v cannot be met.
inline FlowOverTime extract_flow(const TemporalNetwork& n, const DemandVector& v,
                                 std::int64_t budget = kDefaultTenBudget) {
  const auto c = canonical_reduction(n, v);
  std::optional<ExpandedGraph> g;
  try {
    g.emplace(build_ten(c.network, c.super_source, c.super_sink, budget));
  } catch (const BudgetError& e) {
    throw BudgetError(std::string(e.what()) +
                      "; only the verdict is available at this scale, not the flow");
  }
  const auto flow = max_flow(*g);
  if (flow.value < c.required_value()) {
    throw PreconditionError("demands cannot be met; no flow to extract");
  }
  FlowOverTime f;
  for (std::size_t k = 0; k < g->arc_count(); ++k) {
    const Arc& a = g->arcs()[k];
    if (!a.edge || *a.edge >= c.base_edge_count || flow.arc_flow[k] == 0) continue;
    f.add(*a.edge, g->label(a.from).interval.lo, flow.arc_flow[k]);
  }
  auto report = validate_flow(n, f, v);
  if (!report.ok()) {
    throw InternalError("extracted flow fails validation: " + report.violations.front().detail);
  }
  return f;
}

struct QuickestResult {
  TimeStep horizon = 0;
  std::size_t probes = 0;
  std::vector<TimeStep> probed;
  /// Present when the full expansion at T* fits the budget.
  std::optional<FlowOverTime> flow;
};

/// Least horizon at which v can be met, by exponential then binary search.
/// N's functions are truncated or have their last piece extended to each
/// probed horizon.
inline QuickestResult quickest_transshipment(const TemporalNetwork& n, const DemandVector& v,
                                             TimeStep t_cap,
                                             std::int64_t flow_budget = kDefaultTenBudget) {
  if (v.total() != 0) throw PreconditionError("demands do not sum to zero");
  if (t_cap < 0) throw PreconditionError("negative horizon cap");
  QuickestResult out;
  auto witness = [&](TimeStep t) {
    const auto at = n.with_horizon(t);
    try {
      out.flow = extract_flow(at, v, flow_budget);
    } catch (const BudgetError&) {
      out.flow.reset();
    }
  };
  if (v.is_zero()) {
    out.horizon = 0;
    out.flow = FlowOverTime{};
    return out;
  }
  auto probe = [&](TimeStep t) {
    ++out.probes;
    out.probed.push_back(t);
    return dttn_feasible(n.with_horizon(t), v).outcome.feasible;
  };

  TimeStep lo = -1;  // largest known infeasible
  TimeStep hi = -1;  // smallest known feasible
  for (TimeStep t = 0;; t = (t == 0 ? 1 : t * 2)) {
    const TimeStep at = std::min(t, t_cap);
    if (probe(at)) {
      hi = at;
      break;
    }
    lo = at;
    if (at == t_cap) {
      throw BudgetError("demands cannot be met by horizon cap " + std::to_string(t_cap));
    }
  }
  while (hi - lo > 1) {
    const TimeStep mid = lo + (hi - lo) / 2;
    if (probe(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.horizon = hi;
  witness(hi);
  return out;
}

struct MaxFlowOverTimeResult {
  std::int64_t value = 0;
  /// Maximum flow of the expansion with unbounded terminal edges (F).
  std::int64_t expanded_value = 0;
  /// Total demand of the gadget sinks (V*).
  std::int64_t gadget_demand = 0;
  std::optional<FlowOverTime> flow;
};

/// Maximum flow over time from the single source to the single sink of N.
/// The source and sink keep zero demand in the gadget reduction and get
/// unbounded edges to s* and d*; the value is F - V*.
inline MaxFlowOverTimeResult max_flow_over_time(const TemporalNetwork& n,
                                                std::int64_t flow_budget = kDefaultTenBudget) {
  const auto sources = n.sources();
  const auto sinks = n.sinks();
  if (sources.size() != 1 || sinks.size() != 1) {
    throw PreconditionError("maximum flow over time needs exactly one source and one sink");
  }
  const NodeId s = sources.front();
  const NodeId d = sinks.front();
  DemandVector zero;
  zero.set(s, 0);
  zero.set(d, 0);
  const auto one_shot = to_one_shot(n);
  auto reduction = hoppe_tardos_star(one_shot.network, zero);

  MaxFlowOverTimeResult out;
  for (const auto& g : reduction.trace.gadgets) {
    out.gadget_demand = checked::add(out.gadget_demand, reduction.demands.at(g.s_minus));
    out.gadget_demand = checked::add(out.gadget_demand, reduction.demands.at(g.s2_minus));
  }
  auto trace = std::make_shared<const ReductionTrace>(reduction.trace);
  auto c = canonical_reduction(reduction.network, reduction.demands, trace);
  const TimeStep horizon = c.horizon();
  const Capacity inf = Capacity::infinity();
  c.network.set_capacity(c.source_edges.at(s),
                         CapacityFn::window(inf, Capacity(0), 0, 0, horizon));
  c.network.set_capacity(c.sink_edges.at(d),
                         CapacityFn::window(inf, Capacity(0), horizon, horizon, horizon));
  const auto bp = compute_breakpoints(c);
  const Capacity f = cten_max_flow(c, bp.cten);
  if (f.is_infinite()) throw InternalError("expanded network has no finite cut");
  out.expanded_value = f.value();
  out.value = checked::sub(out.expanded_value, out.gadget_demand);
  if (out.value < 0) throw InternalError("gadget demands exceed the expanded flow");

  DemandVector target;
  target.set(s, -out.value);
  target.set(d, out.value);
  try {
    out.flow = extract_flow(n, target, flow_budget);
  } catch (const BudgetError&) {
    out.flow.reset();
  }
  return out;
}

/// Maximum flow over time straight from the full expansion of N.
inline std::int64_t ten_max_flow_over_time(const TemporalNetwork& n,
                                           std::int64_t budget = kDefaultTenBudget) {
  const auto g = build_ten(n, budget);
  return max_flow(g).value;
}

}  // namespace tflow
