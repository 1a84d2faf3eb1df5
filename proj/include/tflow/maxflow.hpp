#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

#include "tflow/capacity.hpp"
#include "tflow/errors.hpp"
#include "tflow/expansion.hpp"

namespace tflow {

struct SteadyFlow {
  std::int64_t value = 0;
  /// Flow on each arc of the graph, in arc order.
  std::vector<std::int64_t> arc_flow;
};

namespace detail {

inline constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

// Residual arc 2k is arc k forward, 2k+1 its reverse.
class Residual {
 public:
  Residual(const ExpandedGraph& g, const std::vector<std::int64_t>& flow)
      : g_(g), flow_(flow), adj_(g.vertex_count()) {
    for (std::size_t k = 0; k < g.arc_count(); ++k) {
      adj_[g.arcs()[k].from].push_back(2 * k);
      adj_[g.arcs()[k].to].push_back(2 * k + 1);
    }
  }

  [[nodiscard]] std::int64_t residual(std::size_t r) const {
    const std::size_t k = r / 2;
    if (r % 2 == 1) return flow_[k];
    const Capacity& c = g_.arcs()[k].capacity;
    return c.is_infinite() ? kUnbounded : c.value() - flow_[k];
  }
  [[nodiscard]] std::size_t head(std::size_t r) const {
    const auto& a = g_.arcs()[r / 2];
    return r % 2 == 0 ? a.to : a.from;
  }
  [[nodiscard]] const std::vector<std::size_t>& out(std::size_t v) const { return adj_[v]; }

  /// Vertices reachable from `start` over positive residual arcs; with
  /// `reverse`, vertices that can reach `start`.
  [[nodiscard]] std::vector<char> reach(std::size_t start, bool reverse) const {
    std::vector<char> seen(g_.vertex_count(), 0);
    std::deque<std::size_t> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t r : adj_[v]) {
        // Walking backwards uses the partner arc's residual.
        const std::size_t step = reverse ? (r ^ 1U) : r;
        if (residual(step) <= 0) continue;
        const std::size_t w = head(r);
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    return seen;
  }

 private:
  const ExpandedGraph& g_;
  const std::vector<std::int64_t>& flow_;
  std::vector<std::vector<std::size_t>> adj_;
};

class Dinic {
 public:
  explicit Dinic(const ExpandedGraph& g)
      : g_(g), flow_(g.arc_count(), 0), residual_(g, flow_), level_(g.vertex_count()),
        next_(g.vertex_count()) {}

  SteadyFlow run() {
    std::int64_t total = 0;
    while (bfs()) {
      std::fill(next_.begin(), next_.end(), 0);
      while (true) {
        const std::int64_t pushed = dfs(g_.source(), kUnbounded);
        if (pushed == 0) break;
        total = checked::add(total, pushed);
      }
    }
    return {total, flow_};
  }

 private:
  bool bfs() {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<std::size_t> queue{g_.source()};
    level_[g_.source()] = 0;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t r : residual_.out(v)) {
        const std::size_t w = residual_.head(r);
        if (level_[w] < 0 && residual_.residual(r) > 0) {
          level_[w] = level_[v] + 1;
          queue.push_back(w);
        }
      }
    }
    return level_[g_.sink()] >= 0;
  }

  std::int64_t dfs(std::size_t v, std::int64_t limit) {
    if (v == g_.sink()) return limit;
    const auto& out = residual_.out(v);
    for (std::size_t& i = next_[v]; i < out.size(); ++i) {
      const std::size_t r = out[i];
      const std::size_t w = residual_.head(r);
      const std::int64_t res = residual_.residual(r);
      if (res <= 0 || level_[w] != level_[v] + 1) continue;
      const std::int64_t pushed = dfs(w, std::min(limit, res));
      if (pushed > 0) {
        if (r % 2 == 0) {
          flow_[r / 2] = checked::add(flow_[r / 2], pushed);
        } else {
          flow_[r / 2] -= pushed;
        }
        return pushed;
      }
    }
    return 0;
  }

  const ExpandedGraph& g_;
  std::vector<std::int64_t> flow_;
  Residual residual_;
  std::vector<int> level_;
  std::vector<std::size_t> next_;
};

}  // namespace detail

/// True when the sink is reachable from the source over infinite arcs only.
inline bool has_unbounded_path(const ExpandedGraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.vertex_count());
  for (const auto& a : g.arcs()) {
    if (a.capacity.is_infinite()) adj[a.from].push_back(a.to);
  }
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<std::size_t> stack{g.source()};
  seen[g.source()] = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (v == g.sink()) return true;
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return false;
}

/// Exact integral maximum flow (Dinic). Throws UnboundedError when no
/// finite cut exists.
inline SteadyFlow max_flow(const ExpandedGraph& g) {
  if (g.source() == g.sink()) throw UnboundedError("source and sink coincide");
  if (has_unbounded_path(g)) throw UnboundedError("source reaches sink over infinite arcs");
  return detail::Dinic(g).run();
}

/// Source side of the minimal min cut: vertices reachable from the source
/// in the residual graph of a maximum flow.
inline std::vector<char> residual_reachable(const ExpandedGraph& g, const SteadyFlow& f) {
  detail::Residual res(g, f.arc_flow);
  auto seen = res.reach(g.source(), false);
  if (seen[g.sink()]) throw InternalError("sink reachable in residual graph; flow is not maximum");
  return seen;
}

/// Source side of the maximal min cut: vertices that cannot reach the sink
/// in the residual graph.
inline std::vector<char> residual_source_side_max(const ExpandedGraph& g, const SteadyFlow& f) {
  detail::Residual res(g, f.arc_flow);
  auto reaches_sink = res.reach(g.sink(), true);
  if (reaches_sink[g.source()]) {
    throw InternalError("source reaches sink in residual graph; flow is not maximum");
  }
  for (auto& c : reaches_sink) c = !c;
  return reaches_sink;
}

/// Sum of arc capacities from `side` to its complement.
inline Capacity cut_capacity(const ExpandedGraph& g, const std::vector<char>& side) {
  Capacity sum(0);
  for (const auto& a : g.arcs()) {
    if (side[a.from] && !side[a.to]) sum += a.capacity;
  }
  return sum;
}

}  // namespace tflow
