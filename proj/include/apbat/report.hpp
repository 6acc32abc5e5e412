#pragma once

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>

#include "apbat/relia.hpp"

namespace apbat {

enum class Format { Table, Csv };

inline constexpr int kReliabilityDecimals = 12;

inline std::string format_fixed(double x, int decimals = kReliabilityDecimals) {
  char buf[128];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, decimals);
  return std::string(buf, ptr);
}

inline std::string format_shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

namespace detail {

template <typename Cell>
void emit_lower_triangle(const std::string& title, int n, std::ostream& out, Cell&& cell) {
  out << title << '\n';
  for (int i = 0; i < n; ++i) {
    out << i + 1;
    for (int j = 0; j <= i; ++j) out << (j == 0 ? "  " : " ") << cell(i, j);
    out << '\n';
  }
}

}  // namespace detail

// Table: lower triangle including the zero diagonal, rows labelled 1..n.
// Csv: "s,t,reliability" then one row per pair s < t; with counts a blank line and an
// "s,t,count" section follow.
inline void emit_matrix(const ReliabilityResult& r, Format fmt, std::ostream& out,
                        bool with_counts = false) {
  const int n = r.node_count();
  if (fmt == Format::Table) {
    detail::emit_lower_triangle("reliability matrix (lower triangle)", n, out,
                                [&](int i, int j) { return format_fixed(r.R(i, j)); });
    if (with_counts) {
      out << '\n';
      detail::emit_lower_triangle("connected-vector counts (lower triangle)", n, out,
                                  [&](int i, int j) { return std::to_string(r.C(i, j)); });
    }
    return;
  }

  out << "s,t,reliability\n";
  for (int s = 0; s < n; ++s) {
    for (int t = s + 1; t < n; ++t) out << s + 1 << ',' << t + 1 << ',' << format_fixed(r.R(s, t)) << '\n';
  }
  if (with_counts) {
    out << "\ns,t,count\n";
    for (int s = 0; s < n; ++s) {
      for (int t = s + 1; t < n; ++t) out << s + 1 << ',' << t + 1 << ',' << r.C(s, t) << '\n';
    }
  }
}

}  // namespace apbat
