#include <gtest/gtest.h>

#include "anfkit/error.hpp"
#include "anfkit/quadratic.hpp"
#include "oracles.hpp"

using namespace anfkit;

namespace {

Anf random_quadratic(std::size_t n, Rng& rng) {
  const double density = 0.1 + 0.8 * rng.uniform01();
  std::vector<std::vector<std::size_t>> ms;
  if (rng.bernoulli(0.5)) ms.push_back({});
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.bernoulli(density)) ms.push_back({i});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.bernoulli(density)) ms.push_back({i, j});
    }
  }
  return Anf::from_index_sets(n, ms);
}

void expect_constant_on(const Anf& f, const QuadraticFlat& q) {
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << q.flat.dimension()); ++c) {
    ASSERT_EQ(evaluate(f, q.flat.point(c)), q.constant);
  }
}

}  // namespace

TEST(Dickson, AlreadyCanonical) {
  const auto d = dickson_decompose(parse_anf("x1*x2", 2));
  EXPECT_EQ(d.t, 2u);
  EXPECT_EQ(d.type, FormType::I);
  EXPECT_FALSE(d.c);
  EXPECT_EQ(d.map, AffineMap::identity(2));

  const auto e = dickson_decompose(parse_anf("x1*x2 + x3", 3));
  EXPECT_EQ(e.t, 2u);
  EXPECT_EQ(e.type, FormType::II);
  EXPECT_EQ(e.map, AffineMap::identity(3));
}

TEST(Dickson, CompletesTheProduct) {
  const Anf f = parse_anf("x1*x2 + x1", 2);
  const auto d = dickson_decompose(f);
  EXPECT_EQ(d.t, 2u);
  EXPECT_EQ(d.type, FormType::I);
  EXPECT_FALSE(d.c);
  EXPECT_EQ(d.map, AffineMap(BitMatrix::identity(2), BitVec::from_string("01")));
  EXPECT_EQ(compose_affine(canonical_anf(d, 2), d.map), f);
  for (std::uint64_t x = 0; x < 4; ++x) {
    const BitVec p = BitVec::from_word(x, 2);
    const bool y1 = p.get(0);
    const bool y2 = !p.get(1);
    EXPECT_EQ(evaluate(f, p), y1 && y2);
  }
}

TEST(Dickson, RejectsCubic) {
  try {
    dickson_decompose(parse_anf("x1*x2*x3", 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeTooHigh);
  }
}

TEST(CanonicalAnf, Examples) {
  EXPECT_EQ(format_anf(canonical_anf({2, FormType::I, true, AffineMap::identity(2)}, 2)), "1 + x1*x2");
  EXPECT_EQ(format_anf(canonical_anf({0, FormType::I, false, AffineMap::identity(2)}, 2)), "0");
  EXPECT_EQ(format_anf(canonical_anf({2, FormType::II, false, AffineMap::identity(3)}, 3)), "x3 + x1*x2");
  EXPECT_THROW(canonical_anf({3, FormType::I, false, AffineMap::identity(3)}, 3), Error);
  EXPECT_THROW(canonical_anf({2, FormType::II, false, AffineMap::identity(2)}, 2), Error);
}

TEST(Dickson, RecomposesRandomQuadratics) {
  Rng rng(211);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.below(16);
    const Anf f = random_quadratic(n, rng);
    const auto d = dickson_decompose(f);
    EXPECT_EQ(d.t % 2, 0u);
    EXPECT_EQ(compose_affine(canonical_anf(d, n), d.map), f);
    EXPECT_EQ(d.t, rank(bilinear_form(f)));
  }
}

TEST(Dickson, RankMatchesPointwiseBilinearForm) {
  Rng rng(223);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    const Anf f = random_quadratic(n, rng);
    const auto ms = oracle::masks(f);
    // B(e_i, e_j) = f(e_i + e_j) + f(e_i) + f(e_j) + f(0).
    BitMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const oracle::Mask ei = 1u << i;
        const oracle::Mask ej = 1u << j;
        b.set(i, j, (oracle::eval(ms, ei ^ ej) ^ oracle::eval(ms, ei) ^ oracle::eval(ms, ej) ^ oracle::eval(ms, 0)) != 0);
      }
    }
    EXPECT_EQ(bilinear_form(f), b);
    EXPECT_EQ(dickson_decompose(f).t, rank(b));
  }
}

TEST(Dickson, TInvariantUnderAffinePrecomposition) {
  Rng rng(227);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.below(12);
    const Anf f = random_quadratic(n, rng);
    const auto d = dickson_decompose(f);
    EXPECT_EQ(dickson_decompose(f).t, d.t);
    for (int k = 0; k < 5; ++k) {
      const Anf g = compose_affine(f, AffineMap::random(n, rng));
      EXPECT_EQ(dickson_decompose(g).t, d.t);
    }
  }
}

TEST(Dickson, DegenerateTypes) {
  Rng rng(229);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (bool c : {false, true}) {
      const auto d = dickson_decompose(Anf::constant(n, c));
      EXPECT_EQ(d.t, 0u);
      EXPECT_EQ(d.type, FormType::I);
      EXPECT_EQ(d.c, c);
    }
    const Anf affine = compose_affine(parse_anf("x1", n), AffineMap::random(n, rng));
    const auto d = dickson_decompose(affine);
    EXPECT_EQ(d.t, 0u);
    EXPECT_EQ(d.type, FormType::II);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(8);
    const Anf f = random_quadratic(n, rng);
    const auto d = dickson_decompose(f);
    const bool constant = f.is_zero() || f == Anf::constant(n, true);
    EXPECT_EQ(d.t == 0 && d.type == FormType::I, constant);
    EXPECT_EQ(d.t == 0 && d.type == FormType::II, !constant && degree(f) == 1);
  }
}

TEST(QuadraticFlat, Examples) {
  const auto a = quadratic_flat(parse_anf("x1*x2", 2));
  EXPECT_EQ(a.flat.dimension(), 1u);
  EXPECT_FALSE(a.constant);
  EXPECT_EQ(a.flat.offset().to_string(), "00");
  EXPECT_EQ(a.flat.basis()[0].to_string(), "01");

  const auto b = quadratic_flat(parse_anf("x1*x2 + x3*x4", 4));
  EXPECT_EQ(b.flat.dimension(), 2u);
  EXPECT_FALSE(b.constant);
  for (std::uint64_t c = 0; c < 4; ++c) {
    EXPECT_FALSE(b.flat.point(c).get(0));
    EXPECT_FALSE(b.flat.point(c).get(2));
  }

  const auto e = quadratic_flat(parse_anf("x1*x2 + 1", 2));
  EXPECT_EQ(e.flat.dimension(), 1u);
  EXPECT_TRUE(e.constant);
  EXPECT_EQ(e.flat.basis()[0].to_string(), "01");
}

TEST(QuadraticFlat, DimensionAndConstancy) {
  Rng rng(233);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(14);
    const Anf f = random_quadratic(n, rng);
    const auto d = dickson_decompose(f);
    const auto q = quadratic_flat(f);
    EXPECT_GE(q.flat.dimension(), n / 2);
    EXPECT_EQ(q.flat.dimension(), n - d.t / 2 - (d.type == FormType::II ? 1 : 0));
    expect_constant_on(f, q);
  }
}
