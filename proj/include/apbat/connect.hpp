#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "apbat/enumerate.hpp"
#include "apbat/graph.hpp"

namespace apbat {

// Connected groups of G(X). Group ids follow the smallest node of each group; within a group,
// nodes are listed in the order the layered search reached them.
struct Partition {
  std::vector<int> group_of;
  std::vector<Node> members;
  std::vector<int> offsets;  // group g is members[offsets[g] .. offsets[g + 1])

  int node_count() const { return static_cast<int>(group_of.size()); }
  int group_count() const { return offsets.empty() ? 0 : static_cast<int>(offsets.size()) - 1; }

  std::span<const Node> group(int g) const {
    return std::span<const Node>(members).subspan(offsets[g], offsets[g + 1] - offsets[g]);
  }

  bool connected(Node a, Node b) const { return group_of[a] == group_of[b]; }
};

namespace detail {

inline void check_dimension(const StateVector& x, int expected) {
  if (x.size() != expected) {
    throw UsageError("state vector has " + std::to_string(x.size()) + " coordinates, expected " +
                     std::to_string(expected));
  }
}

}  // namespace detail

// Connected-group layered search. Builds adjacency once per graph and reuses its frontier and
// visit stamps across calls, so one instance per worker.
class ConnectedGroups {
 public:
  explicit ConnectedGroups(const Graph& g) : n_(g.node_count()), m_(g.arc_count()) {
    std::vector<std::vector<std::pair<Node, int>>> adj(n_);
    for (int k = 0; k < m_; ++k) {
      adj[g.arc(k).u].emplace_back(g.arc(k).v, k);
      adj[g.arc(k).v].emplace_back(g.arc(k).u, k);
    }
    start_.reserve(n_ + 1);
    start_.push_back(0);
    for (auto& list : adj) {
      // ascending neighbour labels so each new layer is discovered in label order
      std::sort(list.begin(), list.end());
      for (auto [v, k] : list) neighbours_.push_back({v, k});
      start_.push_back(static_cast<int>(neighbours_.size()));
    }
    stamp_.assign(n_, 0);
    partition_.group_of.assign(n_, -1);
    partition_.members.resize(n_);
    partition_.offsets.reserve(n_ + 1);
  }

  // The returned partition is overwritten by the next call.
  const Partition& operator()(const StateVector& x) {
    detail::check_dimension(x, m_);
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    const std::uint64_t bits = x.bits();
    auto& group_of = partition_.group_of;
    auto& members = partition_.members;
    auto& offsets = partition_.offsets;
    offsets.clear();

    int tail = 0;
    int head = 0;
    int group = 0;
    for (Node seed = 0; seed < n_; ++seed) {
      if (stamp_[seed] == epoch_) continue;
      stamp_[seed] = epoch_;
      group_of[seed] = group;
      offsets.push_back(tail);
      members[tail++] = seed;
      while (head < tail) {
        Node k = members[head++];
        for (int i = start_[k]; i < start_[k + 1]; ++i) {
          const auto [v, arc] = neighbours_[i];
          if (((bits >> arc) & 1U) && stamp_[v] != epoch_) {
            stamp_[v] = epoch_;
            group_of[v] = group;
            members[tail++] = v;
          }
        }
      }
      ++group;
    }
    offsets.push_back(tail);
    return partition_;
  }

 private:
  struct Neighbour {
    Node node;
    int arc;
  };

  int n_;
  int m_;
  std::vector<int> start_;
  std::vector<Neighbour> neighbours_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  Partition partition_;
};

inline Partition cg_lsa(const Graph& g, const StateVector& x) {
  ConnectedGroups groups(g);
  return groups(x);
}

// Calls f(s, t) with s < t for every pair sharing a group.
template <typename F>
void for_each_connected_pair(const Partition& p, F&& f) {
  for (int g = 0; g < p.group_count(); ++g) {
    auto nodes = p.group(g);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        f(std::min(nodes[i], nodes[j]), std::max(nodes[i], nodes[j]));
      }
    }
  }
}

inline std::vector<std::pair<Node, Node>> connected_pairs(const Partition& p) {
  std::vector<std::pair<Node, Node>> out;
  for_each_connected_pair(p, [&](Node s, Node t) { out.emplace_back(s, t); });
  return out;
}

// Path-based layered search for one (source, sink) query over a directed expansion.
class PathSearch {
 public:
  explicit PathSearch(const DirectedExpansion& d)
      : n_(d.n), m_(d.arc_count()), source_(d.source), sink_(d.sink) {
    start_.assign(n_ + 1, 0);
    for (const auto& a : d.darcs) ++start_[a.tail + 1];
    for (int v = 0; v < n_; ++v) start_[v + 1] += start_[v];
    out_.resize(d.darcs.size());
    std::vector<int> fill(start_.begin(), start_.end() - 1);
    for (int k = 0; k < m_; ++k) out_[fill[d.darcs[k].tail]++] = {d.darcs[k].head, k};
    seen_.assign(n_, 0);
    layer_.reserve(n_);
    next_.reserve(n_);
  }

  bool operator()(const StateVector& x) {
    detail::check_dimension(x, m_);
    if (++epoch_ == 0) {
      std::fill(seen_.begin(), seen_.end(), 0);
      epoch_ = 1;
    }
    const std::uint64_t bits = x.bits();
    layer_.assign(1, source_);
    seen_[source_] = epoch_;
    for (;;) {
      next_.clear();
      for (Node a : layer_) {
        for (int i = start_[a]; i < start_[a + 1]; ++i) {
          const auto [v, arc] = out_[i];
          if (((bits >> arc) & 1U) && seen_[v] != epoch_) {
            seen_[v] = epoch_;
            next_.push_back(v);
          }
        }
      }
      if (seen_[sink_] == epoch_) return true;
      if (next_.empty()) return false;
      std::swap(layer_, next_);
    }
  }

 private:
  struct Out {
    Node head;
    int arc;
  };

  int n_;
  int m_;
  Node source_;
  Node sink_;
  std::vector<int> start_;
  std::vector<Out> out_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t epoch_ = 0;
  std::vector<Node> layer_;
  std::vector<Node> next_;
};

inline bool plsa(const DirectedExpansion& d, const StateVector& x) {
  PathSearch search(d);
  return search(x);
}

}  // namespace apbat
