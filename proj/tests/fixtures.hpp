#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "apbat/enumerate.hpp"
#include "apbat/graph.hpp"
#include "apbat/oracle.hpp"

namespace apbat::fixtures {

inline constexpr std::string_view kBridgeText =
    "# bridge network\n"
    "4 5\n"
    "1 2\n"
    "1 3\n"
    "2 3\n"
    "2 4\n"
    "3 4\n";

inline Graph bridge(double p = 0.9) { return parse_graph(std::string(kBridgeText), {p, false}); }

inline Graph bridge_heterogeneous() {
  return Graph(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}}, PerArc{{0.9, 0.8, 0.7, 0.6, 0.5}});
}

inline Graph single_arc(double p = 0.9) { return Graph(2, {{0, 1}}, Homogeneous{p}); }

// Working arcs of the 16-node connected-group walkthrough (1-based).
inline const std::vector<std::pair<int, int>> kGroupWalkthroughArcs = {
    {1, 2}, {1, 16}, {2, 3},  {2, 5},   {3, 4},   {4, 7},
    {6, 7}, {8, 12}, {12, 13}, {9, 13}, {10, 14}, {14, 15}};

// The walkthrough graph with extra failed arcs bridging the groups; the state vector has the
// walkthrough arcs working and the extra arcs failed.
inline std::pair<Graph, StateVector> group_walkthrough(bool with_failed_arcs) {
  std::vector<Arc> arcs;
  for (auto [u, v] : kGroupWalkthroughArcs) arcs.push_back({u - 1, v - 1});
  const int working = static_cast<int>(arcs.size());
  if (with_failed_arcs) {
    for (auto [u, v] : std::vector<std::pair<int, int>>{{7, 8}, {9, 10}, {11, 15}, {5, 12}}) {
      arcs.push_back({u - 1, v - 1});
    }
  }
  const int m = static_cast<int>(arcs.size());
  Graph g(16, std::move(arcs), Homogeneous{0.9},
          with_failed_arcs ? Connectivity::Required : Connectivity::Optional);
  return {std::move(g), StateVector(m, (std::uint64_t{1} << working) - 1)};
}

inline bool connected_subset(int n, const std::vector<Arc>& arcs) {
  oracle::UnionFind uf(n);
  for (const Arc& a : arcs) uf.unite(a.u, a.v);
  for (int v = 1; v < n; ++v) {
    if (uf.find(v) != uf.find(0)) return false;
  }
  return true;
}

// Every connected simple labelled graph on n nodes, arcs in lexicographic pair order.
inline std::vector<std::vector<Arc>> all_connected_topologies(int n) {
  std::vector<Arc> all;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) all.push_back({a, b});
  }
  std::vector<std::vector<Arc>> out;
  const std::uint64_t subsets = std::uint64_t{1} << all.size();
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    std::vector<Arc> arcs;
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (mask >> k & 1U) arcs.push_back(all[k]);
    }
    if (connected_subset(n, arcs)) out.push_back(std::move(arcs));
  }
  return out;
}

// Node groups of G(X) by union-find, each group as a sorted set, groups sorted.
inline std::set<std::set<Node>> union_find_groups(const Graph& g, const StateVector& x) {
  oracle::UnionFind uf(g.node_count());
  for (int k = 0; k < g.arc_count(); ++k) {
    if (x[k]) uf.unite(g.arc(k).u, g.arc(k).v);
  }
  std::map<int, std::set<Node>> by_root;
  for (Node v = 0; v < g.node_count(); ++v) by_root[uf.find(v)].insert(v);
  std::set<std::set<Node>> out;
  for (auto& [root, nodes] : by_root) out.insert(nodes);
  return out;
}

inline StateVector parse_coords(std::string_view s) {
  std::uint64_t bits = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '1') bits |= std::uint64_t{1} << k;
  }
  return StateVector(static_cast<int>(s.size()), bits);
}

}  // namespace apbat::fixtures
