#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "tflow/capacity.hpp"
#include "tflow/errors.hpp"

namespace tflow {

/// One constant stretch [start, end] (inclusive integer range) of a function.
template <typename V>
struct Piece {
  TimeStep start = 0;
  TimeStep end = 0;
  V value{};

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Step function over the integer domain [0, T], stored as sorted pieces that
/// tile the domain exactly. Adjacent pieces with equal values are merged on
/// construction so two functions are equal iff their piece lists are.
template <typename V>
class PiecewiseConstFn {
 public:
  using value_type = V;

  PiecewiseConstFn() = default;

  /// Throws InputError unless `pieces` tile [0, horizon] in order.
  PiecewiseConstFn(std::vector<Piece<V>> pieces, TimeStep horizon)
      : pieces_(std::move(pieces)) {
    if (horizon < 0) throw InputError("negative horizon");
    if (pieces_.empty()) throw InputError("piecewise function has no pieces");
    TimeStep expect = 0;
    for (const auto& p : pieces_) {
      if (p.start > p.end) {
        throw InputError("piece [" + std::to_string(p.start) + "," +
                         std::to_string(p.end) + "] has start > end");
      }
      if (p.start != expect) {
        throw InputError(p.start < expect ? "pieces overlap at t=" + std::to_string(p.start)
                                          : "gap in pieces before t=" + std::to_string(p.start));
      }
      expect = p.end + 1;
    }
    if (expect != horizon + 1) {
      throw InputError("pieces end at " + std::to_string(expect - 1) + ", expected horizon " +
                       std::to_string(horizon));
    }
    merge_equal_neighbours();
  }

  static PiecewiseConstFn constant(V value, TimeStep horizon) {
    return PiecewiseConstFn({Piece<V>{0, horizon, value}}, horizon);
  }

  /// `value` on [lo, hi] and `outside` elsewhere in [0, horizon].
  static PiecewiseConstFn window(V value, V outside, TimeStep lo, TimeStep hi,
                                 TimeStep horizon) {
    std::vector<Piece<V>> out;
    if (lo > 0) out.push_back({0, lo - 1, outside});
    out.push_back({lo, hi, value});
    if (hi < horizon) out.push_back({hi + 1, horizon, outside});
    return PiecewiseConstFn(std::move(out), horizon);
  }

  [[nodiscard]] TimeStep horizon() const { return pieces_.empty() ? -1 : pieces_.back().end; }
  [[nodiscard]] const std::vector<Piece<V>>& pieces() const { return pieces_; }
  [[nodiscard]] std::size_t piece_count() const { return pieces_.size(); }
  [[nodiscard]] bool is_constant() const { return pieces_.size() == 1; }

  [[nodiscard]] const V& operator()(TimeStep t) const {
    if (t < 0 || t > horizon()) {
      throw DomainError("t=" + std::to_string(t) + " outside [0," + std::to_string(horizon()) +
                        "]");
    }
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), t,
                               [](TimeStep x, const Piece<V>& p) { return x < p.start; });
    return std::prev(it)->value;
  }

  /// Same function on a different horizon: truncated, or with the final piece
  /// extended to cover the new range.
  [[nodiscard]] PiecewiseConstFn with_horizon(TimeStep horizon) const {
    std::vector<Piece<V>> out;
    for (const auto& p : pieces_) {
      if (p.start > horizon) break;
      out.push_back({p.start, std::min(p.end, horizon), p.value});
    }
    out.back().end = horizon;
    return PiecewiseConstFn(std::move(out), horizon);
  }

  /// Replace each value through `f`.
  template <typename F>
  [[nodiscard]] PiecewiseConstFn transform(F&& f) const {
    std::vector<Piece<V>> out;
    out.reserve(pieces_.size());
    for (const auto& p : pieces_) out.push_back({p.start, p.end, f(p.value)});
    return PiecewiseConstFn(std::move(out), horizon());
  }

  friend bool operator==(const PiecewiseConstFn&, const PiecewiseConstFn&) = default;

 private:
  void merge_equal_neighbours() {
    std::vector<Piece<V>> merged;
    for (const auto& p : pieces_) {
      if (!merged.empty() && merged.back().value == p.value) {
        merged.back().end = p.end;
      } else {
        merged.push_back(p);
      }
    }
    pieces_ = std::move(merged);
  }

  std::vector<Piece<V>> pieces_;
};

using CapacityFn = PiecewiseConstFn<Capacity>;
using TravelTimeFn = PiecewiseConstFn<TimeStep>;

/// A maximal stretch on which both capacity and travel time are constant.
struct EdgePiece {
  TimeStep start = 0;
  TimeStep end = 0;
  Capacity capacity;
  TimeStep travel_time = 0;
};

/// Common refinement of a capacity and travel-time function.
inline std::vector<EdgePiece> merge_pieces(const CapacityFn& u, const TravelTimeFn& tau) {
  std::vector<EdgePiece> out;
  const auto& up = u.pieces();
  const auto& tp = tau.pieces();
  std::size_t a = 0;
  std::size_t b = 0;
  TimeStep t = 0;
  while (a < up.size() && b < tp.size()) {
    TimeStep end = std::min(up[a].end, tp[b].end);
    out.push_back({t, end, up[a].value, tp[b].value});
    t = end + 1;
    if (up[a].end == end) ++a;
    if (tp[b].end == end) ++b;
  }
  return out;
}

}  // namespace tflow
