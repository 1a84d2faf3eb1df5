#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tflow/errors.hpp"
#include "tflow/network.hpp"
#include "tflow/reductions.hpp"

namespace tflow {

using BreakpointSet = std::vector<TimeStep>;

/// kDirected follows edge orientation from s* and to d*, as written in the
/// definition. kPinned walks undirected paths whose interior avoids nodes
/// that a canonical min cut pins at {0, T+1}; this is what the component
/// shifting argument actually produces, and it is the only one of the two
/// that keeps the condensed expansion exact on gadget networks.
enum class GammaRule { kDirected, kPinned };

struct GammaOptions {
  GammaRule rule = GammaRule::kPinned;
  /// Longest path (in edges) followed; paths that would exceed it are
  /// skipped silently.
  std::size_t depth_limit = 64;
  /// Maximum number of partial paths explored per node before giving up.
  std::size_t path_cap = 200'000;
};

namespace detail {

inline TimeStep static_tau(const TemporalNetwork& n, EdgeId e) {
  return n.edge(e).travel_time.pieces().front().value;
}

// Signed sums reachable along directed simple paths. Walks forward from
// `from` towards `target` (or backwards when `backward`), accumulating the
// set of sums of +-w for each traversed edge.
class SignedPathSums {
 public:
  SignedPathSums(const TemporalNetwork& n, const GammaOptions& opt) : n_(n), opt_(opt) {}

  std::set<TimeStep> run(NodeId start, NodeId target, bool backward) {
    result_.clear();
    explored_ = 0;
    on_path_.assign(n_.node_count(), 0);
    relevant_ = reaching(target, !backward);
    on_path_[start] = 1;
    walk(start, target, backward, {0}, 0);
    return result_;
  }

 private:
  // Weights an edge jk may contribute: +-tau_jk, and +-tau_kj when kj exists.
  std::vector<TimeStep> weights(EdgeId e) const {
    const Edge& edge = n_.edge(e);
    std::vector<TimeStep> w{static_tau(n_, e)};
    if (auto rev = n_.find_edge(edge.to, edge.from)) w.push_back(static_tau(n_, *rev));
    return w;
  }

  void walk(NodeId v, NodeId target, bool backward, const std::set<TimeStep>& sums,
            std::size_t depth) {
    if (++explored_ > opt_.path_cap) {
      throw BudgetError("critical-time enumeration exceeded " + std::to_string(opt_.path_cap) +
                        " paths; use the structured variant for reduction outputs");
    }
    if (v == target) {
      result_.insert(sums.begin(), sums.end());
      return;
    }
    if (depth >= opt_.depth_limit) return;
    const auto& edges = backward ? n_.in_edges(v) : n_.out_edges(v);
    for (EdgeId e : edges) {
      const NodeId w = backward ? n_.edge(e).from : n_.edge(e).to;
      if (on_path_[w] || !relevant_[w]) continue;
      std::set<TimeStep> next;
      for (TimeStep tau : weights(e)) {
        for (TimeStep s : sums) {
          next.insert(s + tau);
          next.insert(s - tau);
        }
      }
      on_path_[w] = 1;
      walk(w, target, backward, next, depth + 1);
      on_path_[w] = 0;
    }
  }

  // Nodes from which `target` is reachable when walking in the given
  // direction.
  std::vector<char> reaching(NodeId target, bool forward) const {
    std::vector<char> seen(n_.node_count(), 0);
    std::vector<NodeId> stack{target};
    seen[target] = 1;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      const auto& edges = forward ? n_.in_edges(v) : n_.out_edges(v);
      for (EdgeId e : edges) {
        const NodeId w = forward ? n_.edge(e).from : n_.edge(e).to;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return seen;
  }

  const TemporalNetwork& n_;
  const GammaOptions& opt_;
  std::vector<char> relevant_;
  std::set<TimeStep> result_;
  std::size_t explored_ = 0;
  std::vector<char> on_path_;
};

}  // namespace detail

/// Nodes whose cut value can always be moved to 0 or T+1 for free.
inline bool pinned_class(const CanonicalNetwork& c, NodeId i) {
  const TemporalNetwork& n = c.network;
  return i == c.super_source || i == c.super_sink || n.in_edges(i).empty() ||
         n.out_edges(i).empty() || c.is_pseudoterminal(i);
}

namespace detail {

inline void require_static_inner(const CanonicalNetwork& c) {
  const TemporalNetwork& n = c.network;
  for (EdgeId e = 0; e < n.edge_count(); ++e) {
    const NodeId a = n.edge(e).from;
    const NodeId b = n.edge(e).to;
    if (a != c.super_source && b != c.super_sink && !n.edge(e).travel_time.is_constant()) {
      throw PreconditionError("critical times need static inner edges");
    }
  }
}

// Signed sums along undirected simple paths from `start`; a path stops at
// the first pinned-class node. Every visited node may itself sit at 0 or
// T+1, so each partial sum s yields s and T+1+s.
class PinnedPathSums {
 public:
  PinnedPathSums(const CanonicalNetwork& c, const GammaOptions& opt) : c_(c), opt_(opt) {}

  std::set<TimeStep> run(NodeId start) {
    top_ = c_.network.horizon() + 1;
    out_ = {0, top_};
    explored_ = 0;
    on_path_.assign(c_.network.node_count(), 0);
    on_path_[start] = 1;
    walk(start, start, {0});
    return out_;
  }

 private:
  void walk(NodeId v, NodeId start, const std::set<TimeStep>& sums) {
    if (++explored_ > opt_.path_cap) {
      throw BudgetError("critical-time enumeration exceeded " + std::to_string(opt_.path_cap) +
                        " paths");
    }
    for (TimeStep s : sums) {
      if (s >= 0) out_.insert(s);
      if (s <= 0) out_.insert(top_ + s);
    }
    if (v != start && pinned_class(c_, v)) return;
    const TemporalNetwork& n = c_.network;
    auto step = [&](NodeId w, EdgeId e) {
      if (on_path_[w]) return;
      const TimeStep tau = static_tau(n, e);
      std::set<TimeStep> next;
      for (TimeStep s : sums) {
        if (s + tau <= top_) next.insert(s + tau);
        if (s - tau >= -top_) next.insert(s - tau);
      }
      on_path_[w] = 1;
      walk(w, start, next);
      on_path_[w] = 0;
    };
    for (EdgeId e : n.out_edges(v)) step(n.edge(e).to, e);
    for (EdgeId e : n.in_edges(v)) step(n.edge(e).from, e);
  }

  const CanonicalNetwork& c_;
  const GammaOptions& opt_;
  TimeStep top_ = 0;
  std::set<TimeStep> out_;
  std::size_t explored_ = 0;
  std::vector<char> on_path_;
};

}  // namespace detail

/// Critical times of node i: {0, T+1} plus signed path sums from s* and
/// T+1 plus signed path sums to d*, clamped to [0, T+1].
inline BreakpointSet gamma_enumerate(const CanonicalNetwork& c, NodeId i,
                                     const GammaOptions& opt = {}) {
  const TemporalNetwork& n = c.network;
  const TimeStep top = n.horizon() + 1;
  std::set<TimeStep> out{0, top};
  if (i == c.super_source || i == c.super_sink || n.in_edges(i).empty() ||
      n.out_edges(i).empty() || c.is_pseudoterminal(i)) {
    return {out.begin(), out.end()};
  }
  detail::require_static_inner(c);
  detail::SignedPathSums sums(n, opt);
  for (TimeStep s : sums.run(c.super_source, i, false)) {
    if (s >= 0 && s <= top) out.insert(s);
  }
  // Backward from d* to i gives the paths i -> d*.
  for (TimeStep s : sums.run(c.super_sink, i, true)) {
    const TimeStep t = top + s;
    if (t >= 0 && t <= top) out.insert(t);
  }
  return {out.begin(), out.end()};
}

/// Critical times under the pinned-path rule: {0, T+1} for pinned-class
/// nodes, otherwise s and T+1+s for signed sums s along undirected simple
/// paths from i, clamped to [0, T+1].
inline BreakpointSet gamma_pinned(const CanonicalNetwork& c, NodeId i, const GammaOptions& opt = {}) {
  if (pinned_class(c, i)) return {0, c.network.horizon() + 1};
  detail::require_static_inner(c);
  const auto s = detail::PinnedPathSums(c, opt).run(i);
  return {s.begin(), s.end()};
}

inline BreakpointSet gamma_of(const CanonicalNetwork& c, NodeId i, const GammaOptions& opt = {}) {
  return opt.rule == GammaRule::kPinned ? gamma_pinned(c, i, opt) : gamma_enumerate(c, i, opt);
}

struct BreakpointTable {
  std::vector<BreakpointSet> gamma;
  std::vector<BreakpointSet> gamma_star;
  /// Per-node A_i: (gamma_star ∩ [0, T]) ∪ {0, T}.
  std::vector<BreakpointSet> cten;
  /// For pp-sinks, the in-neighbor whose set was taken.
  std::vector<std::optional<NodeId>> star_source;
};

inline BreakpointSet to_cten_breakpoints(const BreakpointSet& gamma, TimeStep horizon) {
  std::set<TimeStep> a{0, horizon};
  for (TimeStep t : gamma) {
    if (t >= 0 && t <= horizon) a.insert(t);
  }
  return {a.begin(), a.end()};
}

/// Chooses, for a pp-sink, the in-neighbor with the smaller critical set
/// (ties to the smaller id).
inline NodeId pp_sink_anchor(const CanonicalNetwork& c, const std::vector<BreakpointSet>& gamma,
                             NodeId i) {
  const auto& ins = c.network.in_edges(i);
  if (ins.size() != 2) {
    throw StructuralError("pseudo-pseudosink '" + c.network.node(i).name +
                          "' does not have two in-neighbors");
  }
  NodeId a = c.network.edge(ins[0]).from;
  NodeId b = c.network.edge(ins[1]).from;
  if (b < a) std::swap(a, b);
  return gamma[b].size() < gamma[a].size() ? b : a;
}

inline BreakpointTable compute_breakpoints(const CanonicalNetwork& c, const GammaOptions& opt = {}) {
  const std::size_t count = c.network.node_count();
  BreakpointTable out;
  out.gamma.resize(count);
  out.star_source.resize(count);
  for (NodeId i = 0; i < count; ++i) out.gamma[i] = gamma_of(c, i, opt);
  out.gamma_star = out.gamma;
  for (NodeId i : c.roles.pp_sinks) {
    const NodeId a = pp_sink_anchor(c, out.gamma, i);
    out.gamma_star[i] = out.gamma[a];
    out.star_source[i] = a;
  }
  out.cten.reserve(count);
  for (const auto& g : out.gamma_star) out.cten.push_back(to_cten_breakpoints(g, c.horizon()));
  return out;
}

inline BreakpointSet gamma_star(const CanonicalNetwork& c, NodeId i, const GammaOptions& opt = {}) {
  if (!c.is_pp_sink(i)) return gamma_of(c, i, opt);
  const auto& ins = c.network.in_edges(i);
  if (ins.size() != 2) {
    throw StructuralError("pseudo-pseudosink '" + c.network.node(i).name +
                          "' does not have two in-neighbors");
  }
  NodeId a = c.network.edge(ins[0]).from;
  NodeId b = c.network.edge(ins[1]).from;
  if (b < a) std::swap(a, b);
  auto ga = gamma_of(c, a, opt);
  auto gb = gamma_of(c, b, opt);
  return gb.size() < ga.size() ? gb : ga;
}

inline std::vector<BreakpointSet> cten_breakpoints(const CanonicalNetwork& c,
                                                   const GammaOptions& opt = {}) {
  return compute_breakpoints(c, opt).cten;
}

}  // namespace tflow
