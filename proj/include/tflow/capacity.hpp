#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

#include "tflow/errors.hpp"

namespace tflow {

using TimeStep = std::int64_t;

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " + " +
                        std::to_string(b));
  }
  return out;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(a, b, &out)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " - " +
                        std::to_string(b));
  }
  return out;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("integer overflow in " + std::to_string(a) + " * " +
                        std::to_string(b));
  }
  return out;
}

}  // namespace checked

/// Non-negative integer capacity, or Infinity. Infinity absorbs addition and
/// multiplication by a positive count; every finite operation is
/// overflow-checked.
class Capacity {
 public:
  constexpr Capacity() = default;
  constexpr explicit Capacity(std::int64_t value) : value_(value) {}

  static constexpr Capacity infinity() {
    Capacity c;
    c.infinite_ = true;
    return c;
  }

  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }
  [[nodiscard]] constexpr bool is_zero() const { return !infinite_ && value_ == 0; }

  /// Finite value; throws on Infinity.
  [[nodiscard]] std::int64_t value() const {
    if (infinite_) throw DomainError("value() called on infinite capacity");
    return value_;
  }

  friend Capacity operator+(Capacity a, Capacity b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Capacity(checked::add(a.value_, b.value_));
  }
  Capacity& operator+=(Capacity other) { return *this = *this + other; }

  /// Scale by a count of time steps. Infinity times zero is zero.
  friend Capacity operator*(Capacity a, std::int64_t count) {
    if (count == 0) return Capacity(0);
    if (a.infinite_) return infinity();
    return Capacity(checked::mul(a.value_, count));
  }

  friend constexpr bool operator==(Capacity a, Capacity b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Capacity a, Capacity b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(Capacity a, std::int64_t b) {
    return !a.infinite_ && a.value_ == b;
  }
  friend constexpr std::strong_ordering operator<=>(Capacity a, std::int64_t b) {
    if (a.infinite_) return std::strong_ordering::greater;
    return a.value_ <=> b;
  }

  [[nodiscard]] std::string to_string() const {
    return infinite_ ? std::string("inf") : std::to_string(value_);
  }
  friend std::ostream& operator<<(std::ostream& os, Capacity c) {
    return os << c.to_string();
  }

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

/// Residual arithmetic: a - b where b is finite and b <= a.
inline Capacity minus(Capacity a, std::int64_t b) {
  if (a.is_infinite()) return a;
  return Capacity(checked::sub(a.value(), b));
}

inline Capacity min(Capacity a, Capacity b) { return a <= b ? a : b; }

}  // namespace tflow
