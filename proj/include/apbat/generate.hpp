#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "apbat/graph.hpp"

namespace apbat {

// Random connected simple graph with exactly m arcs.
//
// A random spanning tree is grown by attaching the nodes of a shuffled order, each to a uniformly
// chosen earlier node; the remaining m - (n - 1) arcs are drawn uniformly without replacement
// from the unused node pairs. Arc order is tree arcs in attachment order, then extra arcs in draw
// order. The sequence depends only on (n, m, seed) for a given standard library build.
inline std::vector<Arc> random_connected_arcs(int n, int m, std::uint64_t seed) {
  const long long max_arcs = static_cast<long long>(n) * (n - 1) / 2;
  if (n < 2) throw UsageError("generator needs at least 2 nodes");
  if (m < n - 1 || m > max_arcs) {
    throw UsageError("arc count must lie in [" + std::to_string(n - 1) + ", " +
                     std::to_string(max_arcs) + "] for " + std::to_string(n) + " nodes");
  }

  std::mt19937_64 rng(seed);
  std::vector<Node> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<char> used(static_cast<std::size_t>(n) * n, 0);
  auto mark = [&](Node a, Node b) { used[a * n + b] = used[b * n + a] = 1; };

  std::vector<Arc> arcs;
  arcs.reserve(m);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    Node parent = order[pick(rng)];
    Node child = order[i];
    arcs.push_back({std::min(parent, child), std::max(parent, child)});
    mark(parent, child);
  }

  std::vector<std::pair<Node, Node>> spare;
  for (Node a = 0; a < n; ++a) {
    for (Node b = a + 1; b < n; ++b) {
      if (!used[a * n + b]) spare.emplace_back(a, b);
    }
  }
  for (int i = n - 1; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i - (n - 1), spare.size() - 1);
    std::size_t j = pick(rng);
    std::swap(spare[i - (n - 1)], spare[j]);
    arcs.push_back({spare[i - (n - 1)].first, spare[i - (n - 1)].second});
  }
  return arcs;
}

inline Graph random_connected_graph(int n, int m, std::uint64_t seed, Distribution dist) {
  return Graph(n, random_connected_arcs(n, m, seed), std::move(dist));
}

// Per-arc probabilities drawn uniformly from [lo, hi].
inline PerArc random_probabilities(int m, std::uint64_t seed, double lo = 0.05, double hi = 0.95) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> u(lo, hi);
  PerArc out;
  out.p.resize(m);
  for (double& p : out.p) p = u(rng);
  return out;
}

}  // namespace apbat
