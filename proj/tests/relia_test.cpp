#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "apbat/generate.hpp"
#include "apbat/oracle.hpp"
#include "apbat/relia.hpp"
#include "apbat/report.hpp"
#include "fixtures.hpp"
#include "reference_listings.hpp"

namespace apbat {
namespace {

double binomial(int m, int i) {
  double c = 1.0;
  for (int k = 1; k <= i; ++k) c = c * (m - i + k) / k;
  return c;
}

TEST(ProbTable, BridgeValues) {
  auto t = precompute_p_table(0.9, 5);
  const std::vector<std::string> printed{"0.00001", "0.00009", "0.00081",
                                         "0.00729", "0.06561", "0.59049"};
  ASSERT_EQ(t.values.size(), 6u);
  for (int i = 0; i <= 5; ++i) {
    EXPECT_EQ(format_fixed(t(i), 5), printed[i]) << "i=" << i;
    EXPECT_NEAR(t(i), std::stod(printed[i]), 1e-15);
  }
}

TEST(ProbTable, Degenerate) {
  auto one = precompute_p_table(1.0, 7);
  for (int i = 0; i < 7; ++i) EXPECT_EQ(one(i), 0.0);
  EXPECT_EQ(one(7), 1.0);
  auto half = precompute_p_table(0.5, 4);
  for (int i = 0; i <= 4; ++i) EXPECT_EQ(half(i), 0.0625);
  EXPECT_THROW(precompute_p_table(1.01, 3), UsageError);
  EXPECT_THROW(precompute_p_table(-0.01, 3), UsageError);
}

TEST(ProbTable, NormalisedAndMonotone) {
  for (double p : {0.01, 0.3, 0.5, 0.77, 0.9, 0.999}) {
    for (int m = 1; m <= 40; ++m) {
      auto t = precompute_p_table(p, m);
      CompensatedSum sum;
      for (int i = 0; i <= m; ++i) sum.add(binomial(m, i) * t(i));
      EXPECT_NEAR(sum.value(), 1.0, 1e-12) << "p=" << p << " m=" << m;
      if (p > 0.5) {
        for (int i = 1; i <= m; ++i) EXPECT_GE(t(i), t(i - 1));
      }
    }
  }
}

TEST(VectorProbability, Examples) {
  Graph g = fixtures::bridge();
  EXPECT_NEAR(vector_probability(StateVector::from_coordinates({1, 1, 0, 1, 0}), g), 0.00729, 1e-15);
  EXPECT_NEAR(vector_probability(StateVector(5), g), std::pow(0.1, 5), 1e-18);
  EXPECT_NEAR(vector_probability(StateVector(5, 31), fixtures::bridge_heterogeneous()),
              0.9 * 0.8 * 0.7 * 0.6 * 0.5, 1e-15);
  EXPECT_THROW(vector_probability(StateVector(4), g), UsageError);
}

TEST(VectorProbability, BridgeListingProbabilities) {
  Graph g = fixtures::bridge();
  // first row is printed as 0.00000 although P(0) = 0.00001; rows 2..32 match at five decimals
  for (std::size_t row = 1; row < fixtures::kBridgeForward.size(); ++row) {
    auto x = fixtures::parse_coords(fixtures::kBridgeForward[row].coords);
    EXPECT_EQ(format_fixed(vector_probability(x, g), 5), fixtures::kBridgeForward[row].probability)
        << "row " << row + 1;
  }
}

TEST(AllPairs, Bridge) {
  auto r = all_pairs(fixtures::bridge());
  const double expected[4][4] = {{0, 0.98829, 0.98829, 0.97848},
                                 {0.98829, 0, 0.99639, 0.98829},
                                 {0.98829, 0.99639, 0, 0.98829},
                                 {0.97848, 0.98829, 0.98829, 0}};
  const std::uint64_t counts[4][4] = {{0, 21, 21, 16}, {21, 0, 23, 21}, {21, 23, 0, 21}, {16, 21, 21, 0}};
  for (int s = 0; s < 4; ++s) {
    for (int t = 0; t < 4; ++t) {
      EXPECT_NEAR(r.R(s, t), expected[s][t], 1e-9);
      EXPECT_EQ(r.C(s, t), counts[s][t]);
    }
  }
  EXPECT_TRUE(r.homogeneous);
  EXPECT_EQ(r.vectors_visited, 32u);
  EXPECT_NEAR(r.total_probability, 1.0, 1e-12);
  EXPECT_EQ(average_connected_count(r), (Rational{41, 2}));
  EXPECT_DOUBLE_EQ(average_connected_count(r).value(), 20.5);
}

TEST(AllPairs, SingleArc) {
  auto r = all_pairs(fixtures::single_arc());
  EXPECT_DOUBLE_EQ(r.R(0, 1), 0.9);
  EXPECT_EQ(r.C(0, 1), 1u);
  EXPECT_EQ(average_connected_count(r), (Rational{1, 1}));
  EXPECT_EQ(r.R(0, 0), 0.0);
}

TEST(AllPairs, CountTensorMarginals) {
  auto r = all_pairs(random_connected_graph(7, 11, 2, Homogeneous{0.8}));
  const std::uint64_t full = std::uint64_t{1} << 11;
  for (Node s = 0; s < 7; ++s) {
    for (Node t = s + 1; t < 7; ++t) {
      EXPECT_EQ(r.C(s, t), r.counts.total(s, t));
      EXPECT_LT(r.C(s, t), full);
      EXPECT_EQ(r.counts(s, t, 0), 0u);
      EXPECT_EQ(r.counts(s, t, 11), 1u);
      for (int i = 0; i <= 11; ++i) {
        EXPECT_EQ(r.counts(s, t, i), r.counts(t, s, i));
        EXPECT_LE(r.counts(s, t, i), static_cast<std::uint64_t>(binomial(11, i) + 0.5));
      }
    }
  }
}

TEST(AllPairs, MatchesOracleOnRandomHeterogeneous) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    int n = std::uniform_int_distribution<int>(2, 7)(rng);
    int m = std::uniform_int_distribution<int>(n - 1, std::min(12, n * (n - 1) / 2))(rng);
    Graph g = random_connected_graph(n, m, rng(), random_probabilities(m, rng()));
    auto main = all_pairs(g);
    auto ref = oracle::oracle_all_pairs(g);
    if (m > 1) EXPECT_FALSE(main.homogeneous);
    for (Node s = 0; s < n; ++s) {
      for (Node t = 0; t < n; ++t) {
        ASSERT_NEAR(main.R(s, t), ref.R(s, t), 1e-12);
        ASSERT_EQ(main.C(s, t), ref.C(s, t));
      }
    }
    EXPECT_NEAR(main.total_probability, 1.0, 1e-12);
  }
}

TEST(AllPairs, DeterministicAcrossWorkerCounts) {
  Graph g = random_connected_graph(9, 16, 8, Homogeneous{0.85});
  auto base = all_pairs(g, {1, false});
  for (unsigned w : {2U, 3U, 4U, 8U, 100U}) {
    auto r = all_pairs(g, {w, false});
    EXPECT_EQ(r.counts, base.counts) << "workers=" << w;
    EXPECT_EQ(r.R, base.R);
    EXPECT_EQ(r.C, base.C);
    EXPECT_EQ(r.vectors_visited, base.vectors_visited);
  }
}

TEST(AllPairs, HeterogeneousRunToRunDeterministic) {
  Graph g = random_connected_graph(8, 14, 12, random_probabilities(14, 12));
  auto a = all_pairs(g, {4, false});
  auto b = all_pairs(g, {4, false});
  EXPECT_EQ(a.R, b.R);
  auto serial = all_pairs(g, {1, false});
  for (Node s = 0; s < 8; ++s) {
    for (Node t = 0; t < 8; ++t) EXPECT_NEAR(a.R(s, t), serial.R(s, t), 1e-14);
  }
}

TEST(AllPairs, MonotoneInArcProbability) {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto arcs = random_connected_arcs(6, 9, seed);
    auto lo = all_pairs(Graph(6, arcs, Homogeneous{0.1}));
    auto mid = all_pairs(Graph(6, arcs, Homogeneous{0.5}));
    auto hi = all_pairs(Graph(6, arcs, Homogeneous{0.9}));
    for (Node s = 0; s < 6; ++s) {
      for (Node t = 0; t < 6; ++t) {
        EXPECT_LE(lo.R(s, t), mid.R(s, t));
        EXPECT_LE(mid.R(s, t), hi.R(s, t));
      }
    }
  }
}

TEST(AllPairs, AdjacentPairsConnectedInHalfTheVectors) {
  Graph g = random_connected_graph(8, 13, 5, Homogeneous{0.5});
  auto r = all_pairs(g);
  for (const Arc& a : g.arcs()) EXPECT_GE(r.C(a.u, a.v), std::uint64_t{1} << 12);
}

TEST(AllPairs, DisconnectedComponentsGetZero) {
  Graph g = parse_graph("5 3\n1 2\n2 3\n4 5\n", {0.9, true});
  auto r = all_pairs(g);
  EXPECT_NEAR(r.R(0, 2), 0.81, 1e-15);
  EXPECT_EQ(r.R(0, 3), 0.0);
  EXPECT_EQ(r.C(2, 4), 0u);
  EXPECT_NEAR(r.R(3, 4), 0.9, 1e-15);
}

TEST(AllPairs, GuardRequiresForce) {
  Graph g = random_connected_graph(10, 31, 1, Homogeneous{0.9});
  EXPECT_THROW(all_pairs(g), LimitError);
}

TEST(SinglePairTraditional, Examples) {
  EXPECT_NEAR(single_pair_traditional(fixtures::bridge(), 0, 3), 0.97848, 1e-12);
  EXPECT_NEAR(single_pair_traditional(fixtures::single_arc(), 0, 1), 0.9, 1e-15);
  EXPECT_THROW(single_pair_traditional(fixtures::bridge(), 1, 1), UsageError);
}

TEST(SinglePairTraditional, AgreesWithAllPairs) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    int n = std::uniform_int_distribution<int>(2, 6)(rng);
    int m = std::uniform_int_distribution<int>(n - 1, std::min(9, n * (n - 1) / 2))(rng);
    Distribution dist = trial % 2 ? Distribution{Homogeneous{0.7}}
                                  : Distribution{random_probabilities(m, rng())};
    Graph g = random_connected_graph(n, m, rng(), dist);
    auto r = all_pairs(g);
    for (Node s = 0; s < n; ++s) {
      for (Node t = 0; t < n; ++t) {
        if (s != t) ASSERT_NEAR(single_pair_traditional(g, s, t), r.R(s, t), 1e-9);
      }
    }
  }
}

TEST(AverageConnectedCount, RecomputedFromMatrix) {
  Graph g = random_connected_graph(6, 10, 31, Homogeneous{0.9});
  auto r = all_pairs(g);
  std::uint64_t sum = 0;
  for (Node s = 0; s < 6; ++s) {
    for (Node t = s + 1; t < 6; ++t) sum += r.C(s, t);
  }
  auto avg = average_connected_count(r);
  EXPECT_EQ(avg.num * 15, sum * avg.den);
  EXPECT_DOUBLE_EQ(avg.value(), static_cast<double>(sum) / 15.0);
}

TEST(CompensatedSum, RecoversCancellation) {
  CompensatedSum s;
  s.add(1.0);
  s.add(1e-17);
  s.add(-1.0);
  EXPECT_DOUBLE_EQ(s.value(), 1e-17);
}

}  // namespace
}  // namespace apbat
