#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "apbat/errors.hpp"

namespace apbat {

// Nodes are 0-based internally; every external surface prints and reads 1-based labels.
using Node = int;

struct Arc {
  Node u;
  Node v;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct Homogeneous {
  double p;
  friend bool operator==(const Homogeneous&, const Homogeneous&) = default;
};

struct PerArc {
  std::vector<double> p;
  friend bool operator==(const PerArc&, const PerArc&) = default;
};

using Distribution = std::variant<Homogeneous, PerArc>;

enum class Connectivity { Required, Optional };

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool valid() const { return violations.empty(); }
};

namespace detail {

inline bool probability_ok(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

inline bool all_arcs_connect(int n, std::span<const Arc> arcs) {
  if (n <= 1) return true;
  std::vector<std::vector<Node>> adj(n);
  for (const Arc& a : arcs) {
    adj[a.u].push_back(a.v);
    adj[a.v].push_back(a.u);
  }
  std::vector<char> seen(n, 0);
  std::vector<Node> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Node u = stack.back();
    stack.pop_back();
    for (Node v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == n;
}

inline std::string label(Node v) { return std::to_string(v + 1); }

inline void check_structure(int n, std::span<const Arc> arcs, const Distribution& dist,
                            Connectivity connectivity, ValidationReport& report) {
  if (n < 2) report.violations.push_back("node count must be at least 2");
  if (arcs.empty()) report.violations.push_back("arc count must be at least 1");

  std::set<std::pair<Node, Node>> pairs;
  bool endpoints_ok = true;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const Arc& a = arcs[k];
    std::string where = "arc " + std::to_string(k + 1);
    if (a.u < 0 || a.u >= n || a.v < 0 || a.v >= n) {
      report.violations.push_back(where + ": node index out of range 1.." + std::to_string(n));
      endpoints_ok = false;
      continue;
    }
    if (a.u == a.v) {
      report.violations.push_back(where + ": loop at node " + label(a.u));
      continue;
    }
    if (!pairs.emplace(std::min(a.u, a.v), std::max(a.u, a.v)).second) {
      report.violations.push_back(where + ": parallel arc between " + label(a.u) + " and " +
                                  label(a.v));
    }
  }

  if (const auto* per_arc = std::get_if<PerArc>(&dist)) {
    if (per_arc->p.size() != arcs.size()) {
      report.violations.push_back("per-arc probability count " + std::to_string(per_arc->p.size()) +
                                  " does not match arc count " + std::to_string(arcs.size()));
    }
    for (std::size_t k = 0; k < per_arc->p.size(); ++k) {
      if (!probability_ok(per_arc->p[k])) {
        report.violations.push_back("arc " + std::to_string(k + 1) + ": probability outside [0, 1]");
      }
    }
  } else if (!probability_ok(std::get<Homogeneous>(dist).p)) {
    report.violations.push_back("arc probability outside [0, 1]");
  }

  if (endpoints_ok && n >= 2 && !all_arcs_connect(n, arcs)) {
    if (connectivity == Connectivity::Required) {
      report.violations.push_back("graph is disconnected with all arcs working");
    } else {
      report.warnings.push_back("graph is disconnected with all arcs working");
    }
  }
}

}  // namespace detail

// Undirected binary-state network. Arc k of the state vector is arcs()[k]; order is fixed at
// construction. Immutable once built.
class Graph {
 public:
  Graph(int n, std::vector<Arc> arcs, Distribution dist,
        Connectivity connectivity = Connectivity::Required)
      : n_(n), arcs_(std::move(arcs)), dist_(std::move(dist)), connectivity_(connectivity) {
    ValidationReport report;
    detail::check_structure(n_, arcs_, dist_, connectivity_, report);
    if (!report.valid()) throw InputError(report.violations.front());

    if (const auto* h = std::get_if<Homogeneous>(&dist_)) {
      uniform_p_ = h->p;
    } else {
      const auto& p = std::get<PerArc>(dist_).p;
      if (std::all_of(p.begin(), p.end(), [&](double q) { return q == p.front(); })) {
        uniform_p_ = p.front();
      }
    }
  }

  int node_count() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const Arc& arc(int k) const { return arcs_[k]; }
  std::span<const Arc> arcs() const { return arcs_; }
  const Distribution& distribution() const { return dist_; }

  // Whether connectivity under all-working arcs was enforced when this graph was built.
  bool connectivity_enforced() const { return connectivity_ == Connectivity::Required; }

  double arc_probability(int k) const {
    if (const auto* h = std::get_if<Homogeneous>(&dist_)) return h->p;
    return std::get<PerArc>(dist_).p[k];
  }

  // Set when every arc shares one probability (exact equality), selecting the table fast path.
  std::optional<double> homogeneous_p() const { return uniform_p_; }

  int degree(Node v) const {
    return static_cast<int>(std::count_if(arcs_.begin(), arcs_.end(),
                                          [v](const Arc& a) { return a.u == v || a.v == v; }));
  }

  bool adjacent(Node a, Node b) const {
    return std::any_of(arcs_.begin(), arcs_.end(), [a, b](const Arc& e) {
      return (e.u == a && e.v == b) || (e.u == b && e.v == a);
    });
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_ && a.dist_ == b.dist_;
  }

 private:
  int n_;
  std::vector<Arc> arcs_;
  Distribution dist_;
  Connectivity connectivity_;
  std::optional<double> uniform_p_;
};

inline ValidationReport validate(const Graph& g, bool require_connected) {
  ValidationReport report;
  detail::check_structure(g.node_count(), g.arcs(), g.distribution(),
                          require_connected ? Connectivity::Required : Connectivity::Optional,
                          report);
  return report;
}

// ---------------------------------------------------------------------------------------------
// Edge-list text format
//
//   # comment
//   n m
//   u v [p]      (exactly m lines, 1-based labels; p present on all lines or none)

struct ParseOptions {
  std::optional<double> p;  // homogeneous probability when the file has no p column
  bool allow_disconnected = false;
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

template <typename T>
T parse_number(const std::string& tok, int line_no) {
  T value{};
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw InputError("line " + std::to_string(line_no) + ": malformed number '" + tok + "'");
  }
  return value;
}

}  // namespace detail

inline Graph parse_graph(std::istream& in, const ParseOptions& opts = {}) {
  int line_no = 0;
  std::optional<std::pair<int, int>> header;
  std::vector<Arc> arcs;
  std::vector<double> probs;
  std::optional<bool> has_p;

  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto tok = detail::split_ws(line);
    auto where = "line " + std::to_string(line_no);

    if (!header) {
      if (tok.size() != 2) throw InputError(where + ": expected header 'n m'");
      int n = detail::parse_number<int>(tok[0], line_no);
      int m = detail::parse_number<int>(tok[1], line_no);
      if (n < 2) throw InputError(where + ": node count must be at least 2");
      if (m < 1) throw InputError(where + ": arc count must be at least 1");
      header.emplace(n, m);
      arcs.reserve(m);
      continue;
    }
    if (static_cast<int>(arcs.size()) == header->second) {
      throw InputError(where + ": more arc lines than the declared " +
                       std::to_string(header->second));
    }
    if (tok.size() != 2 && tok.size() != 3) throw InputError(where + ": expected 'u v' or 'u v p'");
    bool row_has_p = tok.size() == 3;
    if (has_p && *has_p != row_has_p) {
      throw InputError(where + ": probability column present on some arc lines but not others");
    }
    has_p = row_has_p;

    int u = detail::parse_number<int>(tok[0], line_no);
    int v = detail::parse_number<int>(tok[1], line_no);
    int n = header->first;
    if (u < 1 || u > n || v < 1 || v > n) {
      throw InputError(where + ": node index out of range 1.." + std::to_string(n));
    }
    if (u == v) throw InputError(where + ": loop at node " + tok[0]);
    if (row_has_p) {
      double p = detail::parse_number<double>(tok[2], line_no);
      if (!detail::probability_ok(p)) throw InputError(where + ": probability outside [0, 1]");
      probs.push_back(p);
    }
    arcs.push_back({u - 1, v - 1});
  }

  if (!header) throw InputError("missing header line 'n m'");
  if (static_cast<int>(arcs.size()) != header->second) {
    throw InputError("expected " + std::to_string(header->second) + " arc lines, found " +
                     std::to_string(arcs.size()));
  }

  Distribution dist = Homogeneous{0.0};
  if (has_p.value_or(false)) {
    if (opts.p) throw UsageError("probability given both in the file and by the caller");
    dist = PerArc{std::move(probs)};
  } else {
    if (!opts.p) throw UsageError("file has no probability column and no p was supplied");
    if (!detail::probability_ok(*opts.p)) throw UsageError("p must lie in [0, 1]");
    dist = Homogeneous{*opts.p};
  }
  return Graph(header->first, std::move(arcs), std::move(dist),
               opts.allow_disconnected ? Connectivity::Optional : Connectivity::Required);
}

inline Graph parse_graph(const std::string& text, const ParseOptions& opts = {}) {
  std::istringstream in(text);
  return parse_graph(in, opts);
}

namespace detail {

inline std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace detail

// Homogeneous graphs are written without a p column; the caller re-supplies p on reading.
inline void serialize(const Graph& g, std::ostream& out) {
  out << g.node_count() << ' ' << g.arc_count() << '\n';
  const auto* per_arc = std::get_if<PerArc>(&g.distribution());
  for (int k = 0; k < g.arc_count(); ++k) {
    out << g.arc(k).u + 1 << ' ' << g.arc(k).v + 1;
    if (per_arc) out << ' ' << detail::shortest(per_arc->p[k]);
    out << '\n';
  }
}

inline std::string serialize(const Graph& g) {
  std::ostringstream out;
  serialize(g, out);
  return out.str();
}

// ---------------------------------------------------------------------------------------------
// Directed expansion for the single-pair baseline.

struct DirectedArc {
  Node tail;
  Node head;
  int source_arc;  // index of the undirected arc this came from
  friend bool operator==(const DirectedArc&, const DirectedArc&) = default;
};

struct DirectedExpansion {
  int n = 0;
  std::vector<DirectedArc> darcs;
  Node source = 0;
  Node sink = 0;

  int arc_count() const { return static_cast<int>(darcs.size()); }
};

// Each undirected arc {u, v} becomes u->v then v->u; arcs entering the source or leaving the
// sink are dropped. Surviving arcs keep (undirected index, direction) order.
inline DirectedExpansion directed_expand(const Graph& g, Node s, Node t) {
  int n = g.node_count();
  if (s < 0 || s >= n || t < 0 || t >= n) throw UsageError("terminal node out of range");
  if (s == t) throw UsageError("source and sink must differ");

  DirectedExpansion d{n, {}, s, t};
  d.darcs.reserve(2 * g.arc_count());
  auto keep = [&](Node tail, Node head) { return head != s && tail != t; };
  for (int k = 0; k < g.arc_count(); ++k) {
    const Arc& a = g.arc(k);
    if (keep(a.u, a.v)) d.darcs.push_back({a.u, a.v, k});
    if (keep(a.v, a.u)) d.darcs.push_back({a.v, a.u, k});
  }
  return d;
}

}  // namespace apbat
