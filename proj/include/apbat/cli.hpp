#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include "apbat/errors.hpp"
#include "apbat/generate.hpp"
#include "apbat/graph.hpp"
#include "apbat/oracle.hpp"
#include "apbat/relia.hpp"
#include "apbat/report.hpp"

namespace apbat::cli {

enum class Command { Compute, Oracle, Mc, Gen };

enum ExitCode : int {
  kOk = 0,
  kBadArguments = 2,
  kInvalidInput = 3,
  kLimitExceeded = 4,
  kOracleMismatch = 5,
};

inline constexpr double kOracleTolerance = 1e-12;

struct RunConfig {
  Command command = Command::Compute;
  std::string input;
  std::optional<double> p;
  unsigned workers = 1;
  Format format = Format::Table;
  bool force = false;
  bool counts = false;
  bool allow_disconnected = false;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<int> nodes;
  std::optional<int> arcs;
};

namespace detail {

inline Graph load(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  std::ifstream in(cfg.input);
  if (!in) throw UsageError("cannot open input file '" + cfg.input + "'");
  return parse_graph(in, ParseOptions{cfg.p, cfg.allow_disconnected});
}

inline void summary(const ReliabilityResult& r, std::ostream& out) {
  out << "avg connected vectors: " << format_shortest(average_connected_count(r).value()) << '\n';
  out << "vectors visited: " << r.vectors_visited << '\n';
}

inline int compute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Graph g = load(cfg);
  if (cfg.workers == 0) throw UsageError("--workers must be at least 1");
  auto r = all_pairs(g, {cfg.workers, cfg.force});
  emit_matrix(r, cfg.format, out, cfg.counts);
  if (cfg.format == Format::Table) {
    out << '\n';
    summary(r, out);
  }
  err << "wall time: " << format_fixed(r.seconds, 6) << " s\n";
  return kOk;
}

inline int oracle_check(const RunConfig& cfg, std::ostream& out) {
  Graph g = load(cfg);
  auto ref = oracle::oracle_all_pairs(g);
  auto main = all_pairs(g, {1, cfg.force});

  out << "all-pairs:\n";
  emit_matrix(main, Format::Table, out, true);
  out << "\noracle:\n";
  emit_matrix(ref, Format::Table, out, true);

  double max_diff = 0.0;
  bool counts_equal = true;
  for (int s = 0; s < g.node_count(); ++s) {
    for (int t = 0; t < g.node_count(); ++t) {
      max_diff = std::max(max_diff, std::fabs(main.R(s, t) - ref.R(s, t)));
      counts_equal = counts_equal && main.C(s, t) == ref.C(s, t);
    }
  }
  out << "\nmax |Δ| = " << format_shortest(max_diff) << '\n';
  out << "counts " << (counts_equal ? "identical" : "differ") << '\n';
  return max_diff <= kOracleTolerance && counts_equal ? kOk : kOracleMismatch;
}

inline int monte_carlo(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.samples || !cfg.seed) throw UsageError("mc needs --samples and --seed");
  Graph g = load(cfg);
  auto est = oracle::monte_carlo(g, *cfg.samples, *cfg.seed);
  out << "s,t,mean,stderr\n";
  for (int s = 0; s < g.node_count(); ++s) {
    for (int t = s + 1; t < g.node_count(); ++t) {
      out << s + 1 << ',' << t + 1 << ',' << format_fixed(est.mean(s, t)) << ','
          << format_fixed(est.std_error(s, t)) << '\n';
    }
  }
  return kOk;
}

inline int generate(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.nodes || !cfg.arcs || !cfg.seed) throw UsageError("gen needs --nodes, --arcs and --seed");
  auto arcs = random_connected_arcs(*cfg.nodes, *cfg.arcs, *cfg.seed);
  out << "# generated: nodes=" << *cfg.nodes << " arcs=" << *cfg.arcs << " seed=" << *cfg.seed
      << '\n';
  out << *cfg.nodes << ' ' << arcs.size() << '\n';
  for (const Arc& a : arcs) out << a.u + 1 << ' ' << a.v + 1 << '\n';
  return kOk;
}

}  // namespace detail

// Executes one command; diagnostics go to err, results to out.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::Compute:
        return detail::compute(cfg, out, err);
      case Command::Oracle:
        return detail::oracle_check(cfg, out);
      case Command::Mc:
        return detail::monte_carlo(cfg, out);
      case Command::Gen:
        return detail::generate(cfg, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const LimitError& e) {
    err << "limit exceeded: " << e.what() << '\n';
    return kLimitExceeded;
  }
  return kBadArguments;
}

}  // namespace apbat::cli
