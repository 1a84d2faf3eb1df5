#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tflow/capacity.hpp"
#include "tflow/errors.hpp"
#include "tflow/network.hpp"
#include "tflow/piecewise.hpp"

namespace tflow {

/// Edge alive only on [alpha, beta], with capacity u and travel time tau there.
struct OneShotEdge {
  NodeId from = 0;
  NodeId to = 0;
  TimeStep alpha = 0;
  TimeStep beta = 0;
  std::int64_t capacity = 0;
  TimeStep travel_time = 0;

  friend bool operator==(const OneShotEdge&, const OneShotEdge&) = default;
};

class OneShotNetwork {
 public:
  OneShotNetwork() = default;
  explicit OneShotNetwork(TimeStep horizon) : horizon_(horizon) {
    if (horizon < 0) throw InputError("negative horizon");
  }

  [[nodiscard]] TimeStep horizon() const { return horizon_; }
  [[nodiscard]] const std::vector<Node>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<OneShotEdge>& edges() const { return edges_; }
  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }

  NodeId add_node(std::string name, TerminalKind kind = TerminalKind::kInternal) {
    nodes_.push_back({std::move(name), kind});
    return nodes_.size() - 1;
  }

  std::size_t add_edge(const OneShotEdge& e) {
    if (e.from >= nodes_.size() || e.to >= nodes_.size()) throw InputError("unknown node id");
    if (e.from == e.to) throw InputError("self-loop in one-shot network");
    if (e.alpha < 0 || e.alpha > e.beta || e.beta > horizon_) {
      throw InputError("one-shot window must satisfy 0 <= alpha <= beta <= T");
    }
    if (e.capacity < 0 || e.travel_time < 0) throw InputError("negative one-shot parameter");
    if (nodes_[e.to].kind == TerminalKind::kSource || nodes_[e.from].kind == TerminalKind::kSink) {
      throw InputError("one-shot edge violates terminal orientation");
    }
    if (!pairs_.emplace(e.from, e.to).second) throw InputError("parallel one-shot edge");
    edges_.push_back(e);
    return edges_.size() - 1;
  }

  /// The same network as a TemporalNetwork (capacity u on [alpha, beta],
  /// 0 elsewhere; travel time constant).
  [[nodiscard]] TemporalNetwork to_temporal() const {
    TemporalNetwork out(horizon_);
    for (const auto& n : nodes_) out.add_node(n.name, n.kind);
    for (const auto& e : edges_) {
      out.add_edge(e.from, e.to,
                   CapacityFn::window(Capacity(e.capacity), Capacity(0), e.alpha, e.beta, horizon_),
                   TravelTimeFn::constant(e.travel_time, horizon_));
    }
    return out;
  }

 private:
  TimeStep horizon_ = 0;
  std::vector<Node> nodes_;
  std::vector<OneShotEdge> edges_;
  std::set<std::pair<NodeId, NodeId>> pairs_;
};

struct OneShotTrace {
  std::size_t original_node_count = 0;
  /// Per one-shot edge: the temporal edge it was cut from.
  std::vector<EdgeId> origin_edge;
  /// Per one-shot node at or past original_node_count: the temporal edge
  /// whose extra piece it relays.
  std::vector<EdgeId> relay_origin;
};

struct OneShotConversion {
  OneShotNetwork network;
  OneShotTrace trace;
};

/// Splits each temporal edge into one one-shot edge per nonzero constant
/// piece. The first such piece keeps the edge x->y; every further piece goes
/// through a fresh relay r as x->r (tau 0) and r->y (tau), both alive on the
/// piece. Node ids of N are preserved.
///
/// Infinite capacities are replaced by `infinity_as` when given, otherwise
/// rejected.
inline OneShotConversion to_one_shot(const TemporalNetwork& n,
                                     std::optional<std::int64_t> infinity_as = std::nullopt) {
  OneShotConversion out{OneShotNetwork(n.horizon()), {}};
  auto& net = out.network;
  auto& trace = out.trace;
  for (const auto& node : n.nodes()) net.add_node(node.name, node.kind);
  trace.original_node_count = n.node_count();

  for (EdgeId e = 0; e < n.edge_count(); ++e) {
    const Edge& edge = n.edge(e);
    bool first = true;
    std::size_t relay_index = 0;
    for (const auto& piece : merge_pieces(edge.capacity, edge.travel_time)) {
      if (piece.capacity.is_zero()) continue;
      std::int64_t u = 0;
      if (piece.capacity.is_infinite()) {
        if (!infinity_as) {
          throw InputError("edge " + n.node(edge.from).name + "->" + n.node(edge.to).name +
                           " has infinite capacity; one-shot edges need a finite bound");
        }
        u = *infinity_as;
      } else {
        u = piece.capacity.value();
      }
      if (u == 0) continue;
      if (first) {
        net.add_edge({edge.from, edge.to, piece.start, piece.end, u, piece.travel_time});
        trace.origin_edge.push_back(e);
        first = false;
        continue;
      }
      const NodeId relay = net.add_node(n.node(edge.from).name + "~" + n.node(edge.to).name + "." +
                                        std::to_string(++relay_index));
      trace.relay_origin.push_back(e);
      net.add_edge({edge.from, relay, piece.start, piece.end, u, 0});
      trace.origin_edge.push_back(e);
      net.add_edge({relay, edge.to, piece.start, piece.end, u, piece.travel_time});
      trace.origin_edge.push_back(e);
    }
  }
  return out;
}

}  // namespace tflow
