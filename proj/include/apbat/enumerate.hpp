#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "apbat/errors.hpp"

namespace apbat {

// Single-word state vectors cap the arc count.
inline constexpr int kMaxArcs = 62;
// Above this the enumeration needs an explicit force flag.
inline constexpr int kGuardArcs = 30;

enum class Order {
  Forward,   // coordinate 1 is the least significant digit
  Backward,  // coordinate m is the least significant digit
};

// Arc-state vector over m arcs. Coordinate k (0-based) is bit k of bits(), whatever the order
// used to enumerate it.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int m, std::uint64_t bits = 0)
      : bits_(bits), m_(m), popcount_(std::popcount(bits)) {}

  static StateVector from_coordinates(std::initializer_list<int> coords) {
    std::uint64_t bits = 0;
    int k = 0;
    for (int c : coords) {
      if (c) bits |= std::uint64_t{1} << k;
      ++k;
    }
    return StateVector(k, bits);
  }

  int size() const { return m_; }
  std::uint64_t bits() const { return bits_; }
  int popcount() const { return popcount_; }
  bool operator[](int k) const { return (bits_ >> k) & 1U; }

  std::string to_string() const {
    std::string s = "(";
    for (int k = 0; k < m_; ++k) {
      if (k) s += ", ";
      s += (*this)[k] ? '1' : '0';
    }
    return s + ")";
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  friend class BatCursor;
  std::uint64_t bits_ = 0;
  int m_ = 0;
  int popcount_ = 0;
};

namespace detail {

inline std::uint64_t low_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

inline std::uint64_t reverse_bits(std::uint64_t x, int width) {
  std::uint64_t r = 0;
  for (int i = 0; i < width; ++i) r |= ((x >> i) & 1U) << (width - 1 - i);
  return r;
}

inline void check_arc_count(int m) {
  if (m < 1) throw UsageError("arc count must be at least 1");
  if (m > kMaxArcs) {
    throw LimitError("arc count " + std::to_string(m) + " exceeds the limit of " +
                     std::to_string(kMaxArcs));
  }
}

}  // namespace detail

// Position `index` of the counting sequence for the given order.
inline StateVector vector_at(int m, Order order, std::uint64_t index) {
  return StateVector(m, order == Order::Forward ? index : detail::reverse_bits(index, m));
}

// Binary-addition cursor. Starts at the zero vector (or a seeded range start) and produces the
// successor in place; the referenced vector is overwritten on every step.
class BatCursor {
 public:
  BatCursor(int m, Order order)
      : BatCursor(m, order, 0, std::uint64_t{1} << checked(m)) {}

  // Enumerates `count` consecutive vectors starting at position `first` of the sequence.
  BatCursor(int m, Order order, std::uint64_t first, std::uint64_t count)
      : x_(vector_at(checked(m), order, first)), order_(order), remaining_(count) {
    exhausted_ = remaining_ == 0;
  }

  const StateVector& current() const { return x_; }
  Order order() const { return order_; }
  bool exhausted() const { return exhausted_; }

  // Coordinate value changes made by next() so far.
  std::uint64_t flips() const { return flips_; }

  // Steps to the successor. Returns false, and marks the cursor exhausted, once the all-ones
  // vector (or the last vector of a seeded range) has been produced.
  bool next() {
    if (exhausted_) return false;
    if (--remaining_ == 0 || x_.popcount_ == x_.m_) {
      exhausted_ = true;
      return false;
    }
    const int m = x_.m_;
    int ones;
    std::uint64_t mask;
    if (order_ == Order::Forward) {
      ones = std::countr_one(x_.bits_);
      mask = detail::low_mask(ones + 1);
    } else {
      ones = std::countl_one(x_.bits_ << (64 - m));
      mask = detail::low_mask(ones + 1) << (m - 1 - ones);
    }
    x_.bits_ ^= mask;
    x_.popcount_ += 1 - ones;
    flips_ += static_cast<std::uint64_t>(ones) + 1;
    return true;
  }

 private:
  static int checked(int m) {
    detail::check_arc_count(m);
    return m;
  }

  StateVector x_;
  Order order_;
  std::uint64_t remaining_;
  std::uint64_t flips_ = 0;
  bool exhausted_ = false;
};

struct EnumerationStats {
  std::uint64_t visits = 0;
  std::uint64_t flips = 0;

  // Coordinate assignments including the m writes that initialise the zero vector; this is the
  // branch-node count of the binary addition tree, 2(2^m - 1) over a full enumeration.
  std::uint64_t assignments(int m) const { return flips + static_cast<std::uint64_t>(m); }
};

template <typename Visit>
EnumerationStats enumerate_with_stats(int m, Order order, Visit&& visit) {
  BatCursor cursor(m, order);
  EnumerationStats stats;
  do {
    visit(cursor.current());
    ++stats.visits;
  } while (cursor.next());
  stats.flips = cursor.flips();
  return stats;
}

// Visits all 2^m vectors in the order's counting sequence; returns the visit count.
template <typename Visit>
std::uint64_t enumerate_all(int m, Order order, Visit&& visit) {
  return enumerate_with_stats(m, order, std::forward<Visit>(visit)).visits;
}

struct EnumRange {
  StateVector start;
  std::uint64_t first = 0;  // position of start in the counting sequence
  std::uint64_t count = 0;
};

// Contiguous split of the 2^m sequence. Sizes differ by at most one; never more ranges than
// vectors.
inline std::vector<EnumRange> partition_range(int m, unsigned workers, Order order = Order::Forward) {
  detail::check_arc_count(m);
  if (workers == 0) throw UsageError("worker count must be at least 1");
  const std::uint64_t total = std::uint64_t{1} << m;
  const std::uint64_t parts = std::min<std::uint64_t>(workers, total);
  const std::uint64_t base = total / parts;
  const std::uint64_t extra = total % parts;

  std::vector<EnumRange> ranges;
  ranges.reserve(parts);
  std::uint64_t first = 0;
  for (std::uint64_t i = 0; i < parts; ++i) {
    std::uint64_t count = base + (i < extra ? 1 : 0);
    ranges.push_back({vector_at(m, order, first), first, count});
    first += count;
  }
  return ranges;
}

template <typename Visit>
std::uint64_t enumerate_range(int m, Order order, const EnumRange& range, Visit&& visit) {
  if (range.count == 0) return 0;
  BatCursor cursor(m, order, range.first, range.count);
  std::uint64_t visits = 0;
  do {
    visit(cursor.current());
    ++visits;
  } while (cursor.next());
  return visits;
}

}  // namespace apbat
