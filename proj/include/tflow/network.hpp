#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tflow/capacity.hpp"
#include "tflow/errors.hpp"
#include "tflow/piecewise.hpp"

namespace tflow {

using NodeId = std::size_t;
using EdgeId = std::size_t;

enum class TerminalKind { kInternal, kSource, kSink };

struct Node {
  std::string name;
  TerminalKind kind = TerminalKind::kInternal;
};

struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  CapacityFn capacity;
  TravelTimeFn travel_time;
};

/// Directed network whose edges carry piecewise-constant capacity and travel
/// time over the integer horizon [0, T]. Sources have no in-edges, sinks no
/// out-edges, and there are no self-loops or parallel edges.
class TemporalNetwork {
 public:
  TemporalNetwork() = default;
  explicit TemporalNetwork(TimeStep horizon) : horizon_(horizon) {
    if (horizon < 0) throw InputError("negative horizon");
  }

  [[nodiscard]] TimeStep horizon() const { return horizon_; }
  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const Node& node(NodeId i) const { return nodes_.at(i); }
  [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(e); }
  [[nodiscard]] const std::vector<Node>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<EdgeId>& out_edges(NodeId i) const { return out_.at(i); }
  [[nodiscard]] const std::vector<EdgeId>& in_edges(NodeId i) const { return in_.at(i); }

  NodeId add_node(std::string name, TerminalKind kind = TerminalKind::kInternal) {
    if (by_name_.count(name)) throw InputError("duplicate node '" + name + "'");
    NodeId id = nodes_.size();
    by_name_.emplace(name, id);
    nodes_.push_back({std::move(name), kind});
    out_.emplace_back();
    in_.emplace_back();
    return id;
  }

  EdgeId add_edge(NodeId from, NodeId to, CapacityFn capacity, TravelTimeFn travel_time) {
    check_node(from);
    check_node(to);
    const std::string label = nodes_[from].name + "->" + nodes_[to].name;
    if (from == to) throw InputError("self-loop on '" + nodes_[from].name + "'");
    if (edge_index_.count({from, to})) throw InputError("parallel edge " + label);
    if (nodes_[to].kind == TerminalKind::kSource) {
      throw InputError("edge " + label + " enters a source");
    }
    if (nodes_[from].kind == TerminalKind::kSink) {
      throw InputError("edge " + label + " leaves a sink");
    }
    if (capacity.horizon() != horizon_ || travel_time.horizon() != horizon_) {
      throw InputError("edge " + label + " functions do not cover [0," +
                       std::to_string(horizon_) + "]");
    }
    for (const auto& p : travel_time.pieces()) {
      if (p.value < 0) throw InputError("edge " + label + " has negative travel time");
    }
    EdgeId id = edges_.size();
    edges_.push_back({from, to, std::move(capacity), std::move(travel_time)});
    out_[from].push_back(id);
    in_[to].push_back(id);
    edge_index_.emplace(std::make_pair(from, to), id);
    return id;
  }

  /// Static edge: constant capacity and travel time over the horizon.
  EdgeId add_static_edge(NodeId from, NodeId to, Capacity capacity, TimeStep travel_time) {
    return add_edge(from, to, CapacityFn::constant(capacity, horizon_),
                    TravelTimeFn::constant(travel_time, horizon_));
  }

  void set_capacity(EdgeId e, CapacityFn capacity) {
    if (capacity.horizon() != horizon_) throw InputError("capacity horizon mismatch");
    edges_.at(e).capacity = std::move(capacity);
  }

  [[nodiscard]] std::optional<NodeId> find_node(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] std::optional<EdgeId> find_edge(NodeId from, NodeId to) const {
    auto it = edge_index_.find({from, to});
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }

  [[nodiscard]] std::vector<NodeId> nodes_of_kind(TerminalKind kind) const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].kind == kind) out.push_back(i);
    }
    return out;
  }
  [[nodiscard]] std::vector<NodeId> sources() const { return nodes_of_kind(TerminalKind::kSource); }
  [[nodiscard]] std::vector<NodeId> sinks() const { return nodes_of_kind(TerminalKind::kSink); }
  [[nodiscard]] bool is_terminal(NodeId i) const {
    return nodes_.at(i).kind != TerminalKind::kInternal;
  }

  /// True when every edge has constant capacity and travel time.
  [[nodiscard]] bool is_static() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) {
      return e.capacity.is_constant() && e.travel_time.is_constant();
    });
  }

  /// Copy on another horizon; see PiecewiseConstFn::with_horizon.
  [[nodiscard]] TemporalNetwork with_horizon(TimeStep horizon) const {
    TemporalNetwork out(horizon);
    for (const auto& n : nodes_) out.add_node(n.name, n.kind);
    for (const auto& e : edges_) {
      out.add_edge(e.from, e.to, e.capacity.with_horizon(horizon),
                   e.travel_time.with_horizon(horizon));
    }
    return out;
  }

  /// Largest finite capacity value on any edge (0 if none).
  [[nodiscard]] std::int64_t max_finite_capacity() const {
    std::int64_t best = 0;
    for (const auto& e : edges_) {
      for (const auto& p : e.capacity.pieces()) {
        if (!p.value.is_infinite()) best = std::max(best, p.value.value());
      }
    }
    return best;
  }

  friend bool operator==(const TemporalNetwork& a, const TemporalNetwork& b) {
    if (a.horizon_ != b.horizon_ || a.nodes_.size() != b.nodes_.size() ||
        a.edges_.size() != b.edges_.size()) {
      return false;
    }
    for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
      if (a.nodes_[i].name != b.nodes_[i].name || a.nodes_[i].kind != b.nodes_[i].kind) {
        return false;
      }
    }
    for (std::size_t e = 0; e < a.edges_.size(); ++e) {
      const auto& x = a.edges_[e];
      const auto& y = b.edges_[e];
      if (x.from != y.from || x.to != y.to || !(x.capacity == y.capacity) ||
          !(x.travel_time == y.travel_time)) {
        return false;
      }
    }
    return true;
  }

 private:
  void check_node(NodeId i) const {
    if (i >= nodes_.size()) throw InputError("unknown node id " + std::to_string(i));
  }

  TimeStep horizon_ = 0;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  std::unordered_map<std::string, NodeId> by_name_;
  std::map<std::pair<NodeId, NodeId>, EdgeId> edge_index_;
};

/// Required net flow into each terminal by the horizon; sources carry
/// negative values.
class DemandVector {
 public:
  DemandVector() = default;

  void set(NodeId i, std::int64_t demand) { values_[i] = demand; }
  [[nodiscard]] std::int64_t at(NodeId i) const {
    auto it = values_.find(i);
    return it == values_.end() ? 0 : it->second;
  }
  [[nodiscard]] bool contains(NodeId i) const { return values_.count(i) != 0; }
  [[nodiscard]] const std::map<NodeId, std::int64_t>& values() const { return values_; }

  /// v(A) for any subset of nodes.
  template <typename Range>
  [[nodiscard]] std::int64_t of(const Range& nodes) const {
    std::int64_t sum = 0;
    for (NodeId i : nodes) sum = checked::add(sum, at(i));
    return sum;
  }

  [[nodiscard]] std::int64_t total() const {
    std::int64_t sum = 0;
    for (const auto& [_, v] : values_) sum = checked::add(sum, v);
    return sum;
  }

  /// Sum of sink demands, v(S-).
  [[nodiscard]] std::int64_t positive_total() const {
    std::int64_t sum = 0;
    for (const auto& [_, v] : values_) {
      if (v > 0) sum = checked::add(sum, v);
    }
    return sum;
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](const auto& kv) { return kv.second == 0; });
  }

  friend bool operator==(const DemandVector&, const DemandVector&) = default;

 private:
  std::map<NodeId, std::int64_t> values_;
};

/// Throws InputError unless `v` is keyed exactly on the terminals with
/// sources <= 0 and sinks >= 0.
inline void check_demands(const TemporalNetwork& n, const DemandVector& v) {
  for (const auto& [i, d] : v.values()) {
    if (i >= n.node_count()) throw InputError("demand on unknown node id");
    const auto& node = n.node(i);
    if (node.kind == TerminalKind::kInternal) {
      throw InputError("demand given for non-terminal '" + node.name + "'");
    }
    if (node.kind == TerminalKind::kSource && d > 0) {
      throw InputError("source '" + node.name + "' has positive demand");
    }
    if (node.kind == TerminalKind::kSink && d < 0) {
      throw InputError("sink '" + node.name + "' has negative demand");
    }
  }
  for (NodeId i = 0; i < n.node_count(); ++i) {
    if (n.is_terminal(i) && !v.contains(i)) {
      throw InputError("terminal '" + n.node(i).name + "' has no demand");
    }
  }
}

/// Sparse flow over time: (edge, departure time) -> amount. Absent means 0.
class FlowOverTime {
 public:
  void set(EdgeId e, TimeStep t, std::int64_t amount) {
    if (amount == 0) {
      values_.erase({e, t});
    } else {
      values_[{e, t}] = amount;
    }
  }
  void add(EdgeId e, TimeStep t, std::int64_t amount) {
    set(e, t, checked::add(at(e, t), amount));
  }
  [[nodiscard]] std::int64_t at(EdgeId e, TimeStep t) const {
    auto it = values_.find({e, t});
    return it == values_.end() ? 0 : it->second;
  }
  [[nodiscard]] const std::map<std::pair<EdgeId, TimeStep>, std::int64_t>& entries() const {
    return values_;
  }
  [[nodiscard]] bool empty() const { return values_.empty(); }

  friend bool operator==(const FlowOverTime&, const FlowOverTime&) = default;

 private:
  std::map<std::pair<EdgeId, TimeStep>, std::int64_t> values_;
};

/// Total number of maximal pieces on which an edge's capacity and travel
/// time are both constant, summed over edges.
inline std::size_t compute_mu(const TemporalNetwork& n) {
  std::size_t mu = 0;
  for (const auto& e : n.edges()) mu += merge_pieces(e.capacity, e.travel_time).size();
  return mu;
}

/// Net flow into node i by time t: arrivals with t' + tau(t') <= t minus
/// departures with t' <= t.
inline std::int64_t net_flow(const TemporalNetwork& n, const FlowOverTime& f, NodeId i,
                             TimeStep t) {
  std::int64_t sum = 0;
  for (const auto& [key, amount] : f.entries()) {
    const auto& [e, dep] = key;
    const Edge& edge = n.edge(e);
    if (edge.from == i && dep <= t) sum = checked::sub(sum, amount);
    if (edge.to == i && dep >= 0 && dep <= n.horizon() && dep + edge.travel_time(dep) <= t) {
      sum = checked::add(sum, amount);
    }
  }
  return sum;
}

enum class FlowCondition {
  kCapacity,        // f_ij(t) <= u_ij(t)
  kHorizon,         // nothing departs before 0 or arrives after T
  kNegativeNetFlow, // non-sources never go negative
  kUnbalanced,      // non-terminals end at zero
  kDemand,          // terminals end at their demand
  kMalformed,       // negative amount or unknown edge
};

struct Violation {
  FlowCondition condition;
  std::optional<EdgeId> edge;
  std::optional<NodeId> node;
  TimeStep time = 0;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] bool has(FlowCondition c) const {
    return std::any_of(violations.begin(), violations.end(),
                       [c](const Violation& v) { return v.condition == c; });
  }
};

/// Checks every flow-over-time condition plus exact demand satisfaction.
inline ValidationReport validate_flow(const TemporalNetwork& n, const FlowOverTime& f,
                                      const DemandVector& v) {
  ValidationReport report;
  const TimeStep horizon = n.horizon();
  // node -> time -> delta of net inflow
  std::vector<std::map<TimeStep, std::int64_t>> events(n.node_count());

  for (const auto& [key, amount] : f.entries()) {
    const auto& [e, t] = key;
    if (e >= n.edge_count() || amount < 0) {
      report.violations.push_back({FlowCondition::kMalformed, e, std::nullopt, t,
                                   "bad edge id or negative amount"});
      continue;
    }
    const Edge& edge = n.edge(e);
    if (t < 0 || t > horizon) {
      report.violations.push_back(
          {FlowCondition::kHorizon, e, std::nullopt, t, "departure outside [0,T]"});
      continue;
    }
    if (edge.capacity(t) < amount) {
      report.violations.push_back({FlowCondition::kCapacity, e, std::nullopt, t,
                                   std::to_string(amount) + " > " + edge.capacity(t).to_string()});
    }
    auto& out = events[edge.from][t];
    out = checked::sub(out, amount);
    const TimeStep arrival = t + edge.travel_time(t);
    if (arrival > horizon) {
      report.violations.push_back({FlowCondition::kHorizon, e, std::nullopt, t,
                                   "arrives at " + std::to_string(arrival)});
      continue;
    }
    auto& in = events[edge.to][arrival];
    in = checked::add(in, amount);
  }

  for (NodeId i = 0; i < n.node_count(); ++i) {
    const auto kind = n.node(i).kind;
    std::int64_t running = 0;
    for (const auto& [t, delta] : events[i]) {
      running = checked::add(running, delta);
      if (kind != TerminalKind::kSource && running < 0) {
        report.violations.push_back({FlowCondition::kNegativeNetFlow, std::nullopt, i, t,
                                     "net inflow " + std::to_string(running)});
        break;
      }
    }
    if (kind == TerminalKind::kInternal) {
      if (running != 0) {
        report.violations.push_back({FlowCondition::kUnbalanced, std::nullopt, i, horizon,
                                     "final net inflow " + std::to_string(running)});
      }
    } else if (running != v.at(i)) {
      report.violations.push_back({FlowCondition::kDemand, std::nullopt, i, horizon,
                                   "net inflow " + std::to_string(running) + ", demand " +
                                       std::to_string(v.at(i))});
    }
  }
  return report;
}

}  // namespace tflow
