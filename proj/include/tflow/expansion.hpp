#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "tflow/capacity.hpp"
#include "tflow/errors.hpp"
#include "tflow/network.hpp"
#include "tflow/piecewise.hpp"

namespace tflow {

struct Interval {
  TimeStep lo = 0;
  TimeStep hi = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Intervals of a breakpoint set {0 = a_1 < ... < a_p = T}: [a_j, a_{j+1} - 1]
/// for j < p, then [T, T].
class IntervalPartition {
 public:
  IntervalPartition() = default;

  IntervalPartition(std::vector<TimeStep> breakpoints, TimeStep horizon) : horizon_(horizon) {
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
    if (breakpoints.empty() || breakpoints.front() != 0 || breakpoints.back() != horizon) {
      throw PreconditionError("breakpoint set must contain 0 and T");
    }
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
      intervals_.push_back({breakpoints[k], breakpoints[k + 1] - 1});
    }
    intervals_.push_back({horizon, horizon});
    if (horizon == 0) intervals_.resize(1);
  }

  static IntervalPartition full(TimeStep horizon) {
    std::vector<TimeStep> all(static_cast<std::size_t>(horizon + 1));
    for (TimeStep t = 0; t <= horizon; ++t) all[static_cast<std::size_t>(t)] = t;
    return IntervalPartition(std::move(all), horizon);
  }

  [[nodiscard]] const std::vector<Interval>& intervals() const { return intervals_; }
  [[nodiscard]] std::size_t size() const { return intervals_.size(); }
  [[nodiscard]] TimeStep horizon() const { return horizon_; }

  /// Index of the interval containing t.
  [[nodiscard]] std::size_t index_of(TimeStep t) const {
    if (t < 0 || t > horizon_) throw DomainError("time " + std::to_string(t) + " outside [0,T]");
    auto it = std::upper_bound(intervals_.begin(), intervals_.end(), t,
                               [](TimeStep x, const Interval& iv) { return x < iv.lo; });
    return static_cast<std::size_t>(it - intervals_.begin()) - 1;
  }

  [[nodiscard]] std::vector<TimeStep> breakpoints() const {
    std::vector<TimeStep> out;
    for (const auto& iv : intervals_) out.push_back(iv.lo);
    if (out.back() != horizon_) out.push_back(horizon_);
    return out;
  }

 private:
  TimeStep horizon_ = 0;
  std::vector<Interval> intervals_;
};

inline IntervalPartition intervals_of(const std::vector<TimeStep>& a, TimeStep horizon) {
  return IntervalPartition(a, horizon);
}

/// Number of t in [a, b] with t + tau in [a2, b2], times u.
inline Capacity piece_transfer(const Capacity& u, TimeStep tau, Interval from, Interval to) {
  const TimeStep lo = std::max(to.lo, from.lo + tau);
  const TimeStep hi = std::min(to.hi, from.hi + tau);
  const TimeStep count = std::max<TimeStep>(0, hi - lo + 1);
  return u * count;
}

/// Sum of u(t) over t in I with t + tau(t) in I'.
inline Capacity cten_edge_capacity(const CapacityFn& u, const TravelTimeFn& tau, Interval from,
                                   Interval to) {
  Capacity sum(0);
  for (const auto& p : merge_pieces(u, tau)) {
    const Interval part{std::max(p.start, from.lo), std::min(p.end, from.hi)};
    if (part.lo > part.hi) continue;
    sum += piece_transfer(p.capacity, p.travel_time, part, to);
  }
  return sum;
}

enum class Flavor { kTen, kCten };

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  Capacity capacity;
  /// Network edge for transit arcs; empty for holdover arcs.
  std::optional<EdgeId> edge;
};

struct VertexLabel {
  NodeId node = 0;
  Interval interval;
};

/// Steady-state network on (node, interval) pairs.
class ExpandedGraph {
 public:
  [[nodiscard]] Flavor flavor() const { return flavor_; }
  [[nodiscard]] std::size_t vertex_count() const { return labels_.size(); }
  [[nodiscard]] std::size_t arc_count() const { return arcs_.size(); }
  [[nodiscard]] const std::vector<Arc>& arcs() const { return arcs_; }
  [[nodiscard]] const VertexLabel& label(std::size_t v) const { return labels_.at(v); }
  [[nodiscard]] std::size_t source() const { return source_; }
  [[nodiscard]] std::size_t sink() const { return sink_; }
  [[nodiscard]] TimeStep horizon() const { return horizon_; }
  [[nodiscard]] std::size_t node_count() const { return partitions_.size(); }
  [[nodiscard]] const IntervalPartition& partition(NodeId i) const { return partitions_.at(i); }

  [[nodiscard]] std::size_t vertex(NodeId i, std::size_t interval_index) const {
    return first_.at(i) + interval_index;
  }
  /// Vertex whose interval contains t.
  [[nodiscard]] std::size_t vertex_at(NodeId i, TimeStep t) const {
    return vertex(i, partitions_.at(i).index_of(t));
  }
  [[nodiscard]] std::size_t first_vertex(NodeId i) const { return first_.at(i); }
  [[nodiscard]] std::size_t last_vertex(NodeId i) const {
    return first_.at(i) + partitions_.at(i).size() - 1;
  }
  [[nodiscard]] std::size_t holdover_count() const {
    return static_cast<std::size_t>(
        std::count_if(arcs_.begin(), arcs_.end(), [](const Arc& a) { return !a.edge; }));
  }

 private:
  friend ExpandedGraph build_expanded(const TemporalNetwork&, std::vector<IntervalPartition>,
                                      NodeId, NodeId, Flavor);
  Flavor flavor_ = Flavor::kTen;
  TimeStep horizon_ = 0;
  std::vector<IntervalPartition> partitions_;
  std::vector<std::size_t> first_;
  std::vector<VertexLabel> labels_;
  std::vector<Arc> arcs_;
  std::size_t source_ = 0;
  std::size_t sink_ = 0;
};

/// Generic expansion for arbitrary per-node partitions.
inline ExpandedGraph build_expanded(const TemporalNetwork& n, std::vector<IntervalPartition> parts,
                                    NodeId source, NodeId sink, Flavor flavor) {
  if (parts.size() != n.node_count()) throw PreconditionError("one partition per node required");
  const TimeStep horizon = n.horizon();
  ExpandedGraph g;
  g.flavor_ = flavor;
  g.horizon_ = horizon;
  for (const auto& p : parts) {
    if (p.horizon() != horizon) throw PreconditionError("partition horizon mismatch");
  }
  g.partitions_ = std::move(parts);
  for (NodeId i = 0; i < n.node_count(); ++i) {
    g.first_.push_back(g.labels_.size());
    for (const auto& iv : g.partitions_[i].intervals()) g.labels_.push_back({i, iv});
  }

  for (EdgeId e = 0; e < n.edge_count(); ++e) {
    const Edge& edge = n.edge(e);
    const auto& from_part = g.partitions_[edge.from];
    const auto& to_part = g.partitions_[edge.to];
    std::map<std::pair<std::size_t, std::size_t>, Capacity> caps;
    const auto pieces = merge_pieces(edge.capacity, edge.travel_time);
    for (std::size_t k = 0; k < from_part.size(); ++k) {
      const Interval iv = from_part.intervals()[k];
      for (const auto& p : pieces) {
        if (p.capacity.is_zero()) continue;
        const TimeStep lo = std::max(p.start, iv.lo);
        const TimeStep hi = std::min(p.end, iv.hi);
        if (lo > hi) continue;
        const TimeStep arr_lo = lo + p.travel_time;
        const TimeStep arr_hi = std::min(hi + p.travel_time, horizon);
        if (arr_lo > arr_hi) continue;
        for (std::size_t k2 = to_part.index_of(arr_lo); k2 < to_part.size(); ++k2) {
          const Interval target = to_part.intervals()[k2];
          if (target.lo > arr_hi) break;
          const Capacity c = piece_transfer(p.capacity, p.travel_time, {lo, hi}, target);
          if (c.is_zero()) continue;
          auto [it, fresh] = caps.emplace(std::make_pair(k, k2), c);
          if (!fresh) it->second += c;
        }
      }
    }
    for (const auto& [key, c] : caps) {
      g.arcs_.push_back({g.vertex(edge.from, key.first), g.vertex(edge.to, key.second), c, e});
    }
  }
  for (NodeId i = 0; i < n.node_count(); ++i) {
    for (std::size_t k = 0; k + 1 < g.partitions_[i].size(); ++k) {
      g.arcs_.push_back({g.vertex(i, k), g.vertex(i, k + 1), Capacity::infinity(), std::nullopt});
    }
  }
  g.source_ = g.vertex_at(source, 0);
  g.sink_ = g.vertex_at(sink, horizon);
  return g;
}

/// Largest |V| * (T + 1) the full expansion will build.
inline constexpr std::int64_t kDefaultTenBudget = 4'000'000;

/// Full time expansion with designated source node s and sink node d.
inline ExpandedGraph build_ten(const TemporalNetwork& n, NodeId s, NodeId d,
                               std::int64_t budget = kDefaultTenBudget) {
  const std::int64_t size = static_cast<std::int64_t>(n.node_count()) * (n.horizon() + 1);
  if (n.horizon() + 1 > budget || size > budget) {
    throw BudgetError("time-expanded network needs " + std::to_string(size) +
                      " vertices, budget is " + std::to_string(budget));
  }
  return build_expanded(n, std::vector<IntervalPartition>(n.node_count(),
                                                          IntervalPartition::full(n.horizon())),
                        s, d, Flavor::kTen);
}

/// Full time expansion of a network with exactly one source and one sink.
inline ExpandedGraph build_ten(const TemporalNetwork& n, std::int64_t budget = kDefaultTenBudget) {
  const auto s = n.sources();
  const auto d = n.sinks();
  if (s.size() != 1 || d.size() != 1) {
    throw PreconditionError("time expansion needs exactly one source and one sink");
  }
  return build_ten(n, s.front(), d.front(), budget);
}

/// Condensed expansion from per-node breakpoint sets, each containing 0 and T.
inline ExpandedGraph build_cten(const TemporalNetwork& n,
                                const std::vector<std::vector<TimeStep>>& breakpoints, NodeId s,
                                NodeId d) {
  if (breakpoints.size() != n.node_count()) {
    throw PreconditionError("one breakpoint set per node required");
  }
  std::vector<IntervalPartition> parts;
  parts.reserve(breakpoints.size());
  for (const auto& a : breakpoints) parts.emplace_back(a, n.horizon());
  return build_expanded(n, std::move(parts), s, d, Flavor::kCten);
}

inline std::string vertex_name(const TemporalNetwork& n, const ExpandedGraph& g, std::size_t v) {
  const auto& l = g.label(v);
  return n.node(l.node).name + "@[" + std::to_string(l.interval.lo) + "," +
         std::to_string(l.interval.hi) + "]";
}

inline void write_dot(std::ostream& os, const TemporalNetwork& n, const ExpandedGraph& g) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  os << "digraph " << (g.flavor() == Flavor::kTen ? "ten" : "cten") << " {\n";
  os << "  rankdir=LR;\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    os << "  v" << v << " [label=" << quote(vertex_name(n, g, v)) << "";
    if (v == g.source() || v == g.sink()) os << ", shape=doublecircle";
    os << "];\n";
  }
  for (const auto& a : g.arcs()) {
    os << "  v" << a.from << " -> v" << a.to << " [label=" << quote(a.capacity.to_string());
    if (!a.edge) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
}

}  // namespace tflow
