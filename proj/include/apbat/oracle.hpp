#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "apbat/graph.hpp"
#include "apbat/relia.hpp"

// Reference computations that share nothing with the main path except the Graph type: vectors
// come from a plain integer loop, connectivity from union-find, probabilities from direct
// products.
namespace apbat::oracle {

inline constexpr int kMaxOracleArcs = 20;

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

inline ReliabilityResult oracle_all_pairs(const Graph& g) {
  const int n = g.node_count();
  const int m = g.arc_count();
  if (m > kMaxOracleArcs) {
    throw LimitError("oracle handles at most " + std::to_string(kMaxOracleArcs) + " arcs, got " +
                     std::to_string(m));
  }

  ReliabilityResult r;
  r.R = Matrix<double>(n, 0.0);
  r.C = Matrix<std::uint64_t>(n, 0);
  r.homogeneous = false;

  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t state = 0; state < total; ++state) {
    UnionFind uf(n);
    double prob = 1.0;
    for (int k = 0; k < m; ++k) {
      double p = g.arc_probability(k);
      if (state & (std::uint64_t{1} << k)) {
        uf.unite(g.arc(k).u, g.arc(k).v);
        prob *= p;
      } else {
        prob *= 1.0 - p;
      }
    }
    r.total_probability += prob;
    for (int s = 0; s < n; ++s) {
      for (int t = s + 1; t < n; ++t) {
        if (uf.find(s) == uf.find(t)) {
          r.R(s, t) += prob;
          r.C(s, t) += 1;
        }
      }
    }
    ++r.vectors_visited;
  }
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      r.R(t, s) = r.R(s, t);
      r.C(t, s) = r.C(s, t);
    }
  }
  return r;
}

struct McEstimate {
  Matrix<double> mean;
  Matrix<double> std_error;  // sqrt(mean (1 - mean) / samples)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// Crude Monte-Carlo over independent arc states; mt19937_64 seeded with `seed`.
inline McEstimate monte_carlo(const Graph& g, std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw UsageError("sample count must be at least 1");
  const int n = g.node_count();
  const int m = g.arc_count();

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<std::uint64_t> hits(static_cast<std::size_t>(n) * n, 0);

  for (std::uint64_t i = 0; i < samples; ++i) {
    UnionFind uf(n);
    for (int k = 0; k < m; ++k) {
      if (u01(rng) < g.arc_probability(k)) uf.unite(g.arc(k).u, g.arc(k).v);
    }
    for (int s = 0; s < n; ++s) {
      int root = uf.find(s);
      for (int t = s + 1; t < n; ++t) {
        if (uf.find(t) == root) ++hits[s * n + t];
      }
    }
  }

  McEstimate est{Matrix<double>(n, 0.0), Matrix<double>(n, 0.0), samples, seed};
  const double count = static_cast<double>(samples);
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) {
      double mean = static_cast<double>(hits[s * n + t]) / count;
      double se = std::sqrt(mean * (1.0 - mean) / count);
      est.mean(s, t) = est.mean(t, s) = mean;
      est.std_error(s, t) = est.std_error(t, s) = se;
    }
  }
  return est;
}

}  // namespace apbat::oracle
