#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "apbat/connect.hpp"
#include "apbat/enumerate.hpp"
#include "apbat/graph.hpp"

namespace apbat {

// Compensated (Neumaier) running sum.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
    return *this;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// P(i) = p^i (1 - p)^(m - i): probability of any one vector with i working arcs.
struct ProbTable {
  double p = 0.0;
  int m = 0;
  std::vector<double> values;

  double operator()(int working) const { return values[working]; }
};

inline ProbTable precompute_p_table(double p, int m) {
  if (!detail::probability_ok(p)) throw UsageError("p must lie in [0, 1]");
  if (m < 1) throw UsageError("arc count must be at least 1");
  ProbTable table{p, m, std::vector<double>(m + 1)};
  for (int i = 0; i <= m; ++i) table.values[i] = std::pow(p, i) * std::pow(1.0 - p, m - i);
  return table;
}

// Pr(X) for a fixed graph: the table lookup when arcs are homogeneous, otherwise a fresh product
// over all arcs.
class VectorProbability {
 public:
  explicit VectorProbability(const Graph& g) : m_(g.arc_count()) {
    if (auto p = g.homogeneous_p()) {
      table_ = precompute_p_table(*p, m_);
    } else {
      p_.resize(m_);
      for (int k = 0; k < m_; ++k) p_[k] = g.arc_probability(k);
    }
  }

  bool homogeneous() const { return p_.empty(); }
  const ProbTable& table() const { return table_; }

  double operator()(const StateVector& x) const {
    if (homogeneous()) return table_(x.popcount());
    double prob = 1.0;
    for (int k = 0; k < m_; ++k) prob *= x[k] ? p_[k] : 1.0 - p_[k];
    return prob;
  }

 private:
  int m_;
  ProbTable table_;
  std::vector<double> p_;
};

inline double vector_probability(const StateVector& x, const Graph& g) {
  detail::check_dimension(x, g.arc_count());
  return VectorProbability(g)(x);
}

// Dense row-major n x n matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n, T init = T{}) : n_(n), data_(static_cast<std::size_t>(n) * n, init) {}

  int size() const { return n_; }
  T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * n_ + c]; }
  const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * n_ + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int n_ = 0;
  std::vector<T> data_;
};

// Index of the unordered pair {a, b} in 0 .. n(n-1)/2 - 1, row-major over a < b.
class PairIndex {
 public:
  PairIndex() = default;
  explicit PairIndex(int n) : n_(n), table_(static_cast<std::size_t>(n) * n, 0) {
    std::uint32_t idx = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        table_[a * n + b] = table_[b * n + a] = idx++;
      }
    }
    count_ = idx;
  }

  std::uint32_t operator()(Node a, Node b) const { return table_[a * n_ + b]; }
  std::size_t count() const { return count_; }

 private:
  int n_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint32_t> table_;
};

// counts(s, t, i): number of (s,t)-connected vectors with i working arcs.
class CountTensor {
 public:
  CountTensor() = default;
  CountTensor(int n, int m)
      : n_(n), m_(m), pairs_(n), data_((m + 1) * pairs_.count(), 0) {}

  int node_count() const { return n_; }
  int arc_count() const { return m_; }
  std::size_t pair_count() const { return pairs_.count(); }
  const PairIndex& pairs() const { return pairs_; }

  std::uint64_t operator()(Node s, Node t, int working) const {
    return data_[working * pairs_.count() + pairs_(s, t)];
  }

  std::uint64_t total(Node s, Node t) const {
    std::uint64_t sum = 0;
    for (int i = 0; i <= m_; ++i) sum += (*this)(s, t, i);
    return sum;
  }

  // Contiguous slice of all pairs for one popcount.
  std::uint64_t* row(int working) { return data_.data() + working * pairs_.count(); }

  CountTensor& operator+=(const CountTensor& other) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
  }

  friend bool operator==(const CountTensor& a, const CountTensor& b) {
    return a.n_ == b.n_ && a.m_ == b.m_ && a.data_ == b.data_;
  }

 private:
  int n_ = 0;
  int m_ = 0;
  PairIndex pairs_;
  std::vector<std::uint64_t> data_;
};

struct ReliabilityResult {
  Matrix<double> R;                 // symmetric, zero diagonal
  Matrix<std::uint64_t> C;          // connected-vector counts, symmetric, zero diagonal
  CountTensor counts;
  std::uint64_t vectors_visited = 0;
  double total_probability = 0.0;   // sum of Pr(X) over every enumerated vector
  bool homogeneous = false;
  double seconds = 0.0;

  int node_count() const { return R.size(); }
};

struct AllPairsOptions {
  unsigned workers = 1;
  bool force = false;  // allow more than kGuardArcs arcs
};

namespace detail {

inline void check_guard(int m, bool force, const char* what) {
  if (m > kMaxArcs) {
    throw LimitError(std::string(what) + " " + std::to_string(m) + " exceeds the hard limit of " +
                     std::to_string(kMaxArcs));
  }
  if (m > kGuardArcs && !force) {
    throw LimitError(std::string(what) + " " + std::to_string(m) + " exceeds " +
                     std::to_string(kGuardArcs) + "; pass force to enumerate 2^" +
                     std::to_string(m) + " vectors");
  }
}

struct PairAccumulator {
  CountTensor counts;
  std::vector<CompensatedSum> reliability;  // heterogeneous only
  std::vector<std::uint64_t> histogram;     // vectors per popcount
  CompensatedSum total;                     // heterogeneous only
  std::uint64_t visits = 0;
};

inline void run_range(const Graph& g, const VectorProbability& prob, const EnumRange& range,
                      PairAccumulator& acc) {
  const int n = g.node_count();
  const int m = g.arc_count();
  ConnectedGroups groups(g);
  const PairIndex& pairs = acc.counts.pairs();
  const bool homogeneous = prob.homogeneous();

  acc.visits = enumerate_range(m, Order::Forward, range, [&](const StateVector& x) {
    const Partition& part = groups(x);
    const int working = x.popcount();
    ++acc.histogram[working];
    std::uint64_t* row = acc.counts.row(working);
    double px = 0.0;
    if (!homogeneous) {
      px = prob(x);
      acc.total.add(px);
    }
    if (part.group_count() == n) return;
    for (int grp = 0; grp < part.group_count(); ++grp) {
      auto nodes = part.group(grp);
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
          std::uint32_t idx = pairs(nodes[i], nodes[j]);
          ++row[idx];
          if (!homogeneous) acc.reliability[idx].add(px);
        }
      }
    }
  });
}

}  // namespace detail

// All-pairs reliability by one forward enumeration of the 2^m arc-state vectors. Each vector is
// split into connected groups and every pair inside a group is credited. Homogeneous arcs are
// tallied as exact integer counts per popcount and weighted by the P(i) table at the end;
// heterogeneous arcs accumulate Pr(X) per pair. Ranges are merged in ascending order, so the
// result does not depend on scheduling.
inline ReliabilityResult all_pairs(const Graph& g, const AllPairsOptions& opts = {}) {
  const auto started = std::chrono::steady_clock::now();
  const int n = g.node_count();
  const int m = g.arc_count();
  detail::check_guard(m, opts.force, "arc count");

  const VectorProbability prob(g);
  const auto ranges = partition_range(m, std::max(1U, opts.workers));

  std::vector<detail::PairAccumulator> parts(ranges.size());
  for (auto& acc : parts) {
    acc.counts = CountTensor(n, m);
    acc.histogram.assign(m + 1, 0);
    if (!prob.homogeneous()) acc.reliability.resize(acc.counts.pair_count());
  }

  if (ranges.size() == 1) {
    detail::run_range(g, prob, ranges[0], parts[0]);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(ranges.size());
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      workers.emplace_back([&, i] { detail::run_range(g, prob, ranges[i], parts[i]); });
    }
  }

  detail::PairAccumulator merged = std::move(parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    merged.counts += parts[i].counts;
    for (int k = 0; k <= m; ++k) merged.histogram[k] += parts[i].histogram[k];
    for (std::size_t idx = 0; idx < merged.reliability.size(); ++idx) {
      merged.reliability[idx] += parts[i].reliability[idx];
    }
    merged.total += parts[i].total;
    merged.visits += parts[i].visits;
  }

  ReliabilityResult result;
  result.R = Matrix<double>(n, 0.0);
  result.C = Matrix<std::uint64_t>(n, 0);
  result.vectors_visited = merged.visits;
  result.homogeneous = prob.homogeneous();

  const PairIndex& pairs = merged.counts.pairs();
  for (Node s = 0; s < n; ++s) {
    for (Node t = s + 1; t < n; ++t) {
      double r;
      if (prob.homogeneous()) {
        CompensatedSum sum;
        for (int i = 0; i <= m; ++i) {
          sum.add(static_cast<double>(merged.counts(s, t, i)) * prob.table()(i));
        }
        r = sum.value();
      } else {
        r = merged.reliability[pairs(s, t)].value();
      }
      result.R(s, t) = result.R(t, s) = r;
      result.C(s, t) = result.C(t, s) = merged.counts.total(s, t);
    }
  }

  if (prob.homogeneous()) {
    CompensatedSum total;
    for (int i = 0; i <= m; ++i) {
      total.add(static_cast<double>(merged.histogram[i]) * prob.table()(i));
    }
    result.total_probability = total.value();
  } else {
    result.total_probability = merged.total.value();
  }
  result.counts = std::move(merged.counts);
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

// Single-pair baseline: directed expansion, backward enumeration over its m* arcs, and a
// path-based layered search per vector. Each directed arc works with the probability of the
// undirected arc it came from, independently of its twin.
inline double single_pair_traditional(const Graph& g, Node s, Node t, bool force = false) {
  const DirectedExpansion d = directed_expand(g, s, t);
  const int m = d.arc_count();
  if (m == 0) return 0.0;
  detail::check_guard(m, force, "directed arc count");

  std::vector<double> p(m);
  for (int k = 0; k < m; ++k) p[k] = g.arc_probability(d.darcs[k].source_arc);

  PathSearch search(d);
  CompensatedSum sum;
  enumerate_all(m, Order::Backward, [&](const StateVector& x) {
    if (!search(x)) return;
    double prob = 1.0;
    for (int k = 0; k < m; ++k) prob *= x[k] ? p[k] : 1.0 - p[k];
    sum.add(prob);
  });
  return sum.value();
}

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

// Mean of C over the n(n-1)/2 unordered pairs, reduced to lowest terms.
inline Rational average_connected_count(const ReliabilityResult& r) {
  const int n = r.node_count();
  if (n < 2) throw UsageError("average needs at least two nodes");
  unsigned __int128 sum = 0;
  for (Node s = 0; s < n; ++s) {
    for (Node t = s + 1; t < n; ++t) sum += r.C(s, t);
  }
  unsigned __int128 den = static_cast<unsigned __int128>(n) * (n - 1) / 2;
  unsigned __int128 a = sum, b = den;
  while (b != 0) {
    auto rem = a % b;
    a = b;
    b = rem;
  }
  if (a > 1) {
    sum /= a;
    den /= a;
  }
  if (sum > UINT64_MAX) throw std::overflow_error("average connected count does not fit 64 bits");
  return {static_cast<std::uint64_t>(sum), static_cast<std::uint64_t>(den)};
}

}  // namespace apbat
