#include <gtest/gtest.h>

#include <cmath>

#include "anfkit/error.hpp"
#include "anfkit/generators.hpp"
#include "anfkit/restriction.hpp"
#include "oracles.hpp"

using namespace anfkit;

TEST(Majority, SmallCases) {
  EXPECT_EQ(format_anf(majority(1)), "x1");
  EXPECT_EQ(format_anf(majority(2)), "x1 + x2 + x1*x2");
  EXPECT_EQ(format_anf(majority(3)), "x1*x2 + x1*x3 + x2*x3");
  EXPECT_THROW(majority(25), Error);
}

TEST(Majority, ThresholdAndSparsity) {
  const std::size_t expected[] = {1, 3, 3, 7, 15, 35, 35, 71, 255, 627, 627, 1419};
  for (std::size_t n = 1; n <= 12; ++n) {
    const Anf f = majority(n);
    std::vector<int> t(std::size_t{1} << n);
    for (oracle::Mask x = 0; x < t.size(); ++x) t[x] = 2 * std::popcount(x) >= static_cast<int>(n);
    EXPECT_EQ(oracle::table(oracle::masks(f), static_cast<int>(n)), t) << n;
    EXPECT_EQ(sparsity(f), oracle::anf_from_table(t).size());
    EXPECT_EQ(sparsity(f), expected[n - 1]);
  }
}

TEST(AllOnes, AllMonomials) {
  EXPECT_EQ(format_anf(all_ones_indicator(1)), "1 + x1");
  EXPECT_EQ(format_anf(all_ones_indicator(2)), "1 + x1 + x2 + x1*x2");
  for (std::size_t n = 0; n <= 10; ++n) {
    const Anf f = all_ones_indicator(n);
    EXPECT_EQ(sparsity(f), std::size_t{1} << n);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      EXPECT_EQ(evaluate(f, BitVec::from_word(x, n)), x == 0);
    }
  }
  EXPECT_THROW(all_ones_indicator(21), Error);
}

TEST(SixVariableCubic, Shape) {
  const Anf f = prop6_base();
  EXPECT_EQ(format_anf(f), "x1*x2*x3 + x1*x4*x5 + x2*x4*x6 + x3*x5*x6");
  EXPECT_EQ(crucial_count(f), 4u);
  EXPECT_EQ(degree(f), 3u);
}

TEST(SixVariableCubic, BlockSums) {
  for (std::size_t m = 1; m <= 3; ++m) {
    const Anf g = prop6_family(m);
    EXPECT_EQ(g.num_vars(), 30 * m);
    EXPECT_EQ(sparsity(g), 20 * m);
    // Each block is a shifted copy of the base.
    for (const auto& t : g.terms()) {
      const auto bits = t.set_bits();
      EXPECT_EQ(bits.front() / 6, bits.back() / 6);
    }
    const auto s = greedy_restrict(g, StopRule::until_no_crucial());
    EXPECT_EQ(s.trace.size(), 2 * 5 * m);
  }
  EXPECT_THROW(prop6_family(0), Error);
}

TEST(CompleteCubic, Counts) {
  EXPECT_EQ(format_anf(complete_degree3(3)), "x1*x2*x3");
  EXPECT_EQ(sparsity(complete_degree3(4)), 4u);
  EXPECT_EQ(sparsity(complete_degree3(10)), 120u);
  EXPECT_THROW(complete_degree3(2), Error);
  // Any 0-restriction keeps every cubic on the surviving variables.
  Anf f = complete_degree3(9);
  f = substitute_zero(substitute_zero(f, 2), 7);
  EXPECT_EQ(crucial_count(f), 35u);
}

TEST(Samplers, DeterministicAndCubic) {
  const Anf a = random_degree3_half(15, 99);
  EXPECT_EQ(random_degree3_half(15, 99), a);
  EXPECT_NE(random_degree3_half(15, 100), a);
  EXPECT_LE(degree(a), 3u);
  for (const auto& t : a.terms()) EXPECT_EQ(t.popcount(), 3u);
  const Degree3SamplerConfig cfg{20, 2.5, 0.5, 7};
  EXPECT_EQ(random_degree3_sparse(cfg), random_degree3_sparse(cfg));
}

TEST(Samplers, ProbabilityAndValidation) {
  EXPECT_NEAR((Degree3SamplerConfig{20, 2.5, 0.5, 0}.probability()), 0.11180339887498948, 1e-15);
  EXPECT_NEAR((Degree3SamplerConfig{20, 2.5, 1.0, 0}.probability()), 0.22360679774997896, 1e-15);
  EXPECT_THROW((Degree3SamplerConfig{20, 3.5, 0.5, 0}.validate()), Error);
  EXPECT_THROW((Degree3SamplerConfig{20, 1.5, 0.5, 0}.validate()), Error);
  EXPECT_THROW((Degree3SamplerConfig{20, 2.5, 0.7, 0}.validate()), Error);
  EXPECT_NO_THROW((Degree3SamplerConfig{20, 3.0, 1.0, 0}.validate()));
  // The expected number of terms stays below n^s / 12.
  for (std::size_t n : {10u, 20u, 64u}) {
    for (double s : {2.0, 2.5, 3.0}) {
      const Degree3SamplerConfig c{n, s, 0.5, 0};
      const double choose3 = static_cast<double>(n * (n - 1) * (n - 2)) / 6.0;
      EXPECT_LE(c.probability() * choose3, std::pow(static_cast<double>(n), s) / 12.0);
    }
  }
}

TEST(Samplers, ExplicitDrawOrder) {
  // Triples in lexicographic order, one uniform draw each, kept when below p.
  const std::size_t n = 7;
  const double p = 0.3;
  Rng rng(12345);
  std::vector<std::vector<std::size_t>> expected;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (rng.uniform01() < p) expected.push_back({a, b, c});
      }
    }
  }
  EXPECT_EQ(random_degree3(n, p, 12345), Anf::from_index_sets(n, expected));
}

TEST(Rng, UniformAndBelow) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(rng.below(7), 7u);
  }
  EXPECT_EQ(stable_hash(5, 3), stable_hash(5, 3));
  EXPECT_NE(stable_hash(5, 3), stable_hash(5, 4));
}
