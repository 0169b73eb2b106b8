#pragma once

// Concrete function families: majority, the all-zeros indicator, the
// six-variable four-term cubic and its block sums, complete cubics, and random
// cubic samplers.

#include <cstddef>
#include <cstdint>

#include "anfkit/anf.hpp"

namespace anfkit {

// Threshold ceil(n/2): 1 iff at least half of the inputs are 1 (n/2 suffices
// for even n). Throws TooLarge above the truth-table cap.
Anf majority(std::size_t n, std::size_t cap = kDefaultTruthTableCap);

// (1 + x1)(1 + x2)...(1 + xn) expanded; all 2^n monomials. n <= 20.
Anf all_ones_indicator(std::size_t n);

// x1*x2*x3 + x1*x4*x5 + x2*x4*x6 + x3*x5*x6 on 6 variables.
Anf prop6_base();

// 5m disjoint copies of prop6_base; block i uses variables 6i+1..6i+6.
// n = 30m, 20m terms. Throws InvalidConfig for m = 0.
Anf prop6_family(std::size_t m);

// All C(n, 3) cubic monomials. Throws InvalidConfig for n < 3.
Anf complete_degree3(std::size_t n);

// Each cubic monomial independently with probability 1/2.
Anf random_degree3_half(std::size_t n, std::uint64_t seed);

struct Degree3SamplerConfig {
  std::size_t n = 0;
  double s = 2.5;
  // Inclusion probability is multiplier / n^(3 - s): 1/2 for the disperser
  // construction, 1 for the zero-restriction construction.
  double multiplier = 0.5;
  std::uint64_t seed = 0;

  double probability() const;
  // Throws InvalidConfig unless 2 <= s <= 3, multiplier in {1/2, 1} and 0 < p <= 1.
  void validate() const;
};

Anf random_degree3_sparse(const Degree3SamplerConfig& cfg);

// Shared by the samplers: each cubic monomial, in lexicographic (a < b < c)
// order, is kept when a fresh uniform draw falls below p.
Anf random_degree3(std::size_t n, double p, std::uint64_t seed);

}  // namespace anfkit
