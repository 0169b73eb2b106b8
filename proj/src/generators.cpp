#include "anfkit/generators.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "anfkit/error.hpp"
#include "anfkit/rng.hpp"

namespace anfkit {

Anf majority(std::size_t n, std::size_t cap) {
  TruthTable table(n, cap);
  const std::size_t threshold = (n + 1) / 2;
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    table.set(x, static_cast<std::size_t>(std::popcount(x)) >= threshold);
  }
  return truth_table_to_anf(table, cap);
}

Anf all_ones_indicator(std::size_t n) {
  if (n > 20) throw Error(ErrorCode::TooLarge, "all-ones indicator is limited to n <= 20");
  std::vector<BitVec> monomials;
  monomials.reserve(std::size_t{1} << n);
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    monomials.push_back(BitVec::from_word(s, n));
  }
  return Anf::from_monomials(n, std::move(monomials));
}

Anf prop6_base() { return Anf::from_index_sets(6, {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}}); }

Anf prop6_family(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::InvalidConfig, "block family needs m >= 1");
  const std::size_t blocks = 5 * m;
  std::vector<std::vector<std::size_t>> monomials;
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t o = 6 * b;
    monomials.push_back({o + 0, o + 1, o + 2});
    monomials.push_back({o + 0, o + 3, o + 4});
    monomials.push_back({o + 1, o + 3, o + 5});
    monomials.push_back({o + 2, o + 4, o + 5});
  }
  return Anf::from_index_sets(6 * blocks, monomials);
}

Anf complete_degree3(std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidConfig, "complete cubic needs n >= 3");
  return random_degree3(n, 1.0, 0);
}

Anf random_degree3(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<BitVec> monomials;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (rng.bernoulli(p)) {
          BitVec m(n);
          m.set(a);
          m.set(b);
          m.set(c);
          monomials.push_back(std::move(m));
        }
      }
    }
  }
  return Anf::from_monomials(n, std::move(monomials));
}

Anf random_degree3_half(std::size_t n, std::uint64_t seed) { return random_degree3(n, 0.5, seed); }

double Degree3SamplerConfig::probability() const {
  return multiplier / std::pow(static_cast<double>(n), 3.0 - s);
}

void Degree3SamplerConfig::validate() const {
  if (!(s >= 2.0 && s <= 3.0)) {
    throw Error(ErrorCode::InvalidConfig, "s must lie in [2, 3], got " + std::to_string(s));
  }
  if (multiplier != 0.5 && multiplier != 1.0) {
    throw Error(ErrorCode::InvalidConfig, "inclusion multiplier must be 1/2 or 1");
  }
  if (n == 0) throw Error(ErrorCode::InvalidConfig, "n must be positive");
  const double p = probability();
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "inclusion probability outside (0, 1]");
  }
}

Anf random_degree3_sparse(const Degree3SamplerConfig& cfg) {
  cfg.validate();
  return random_degree3(cfg.n, cfg.probability(), cfg.seed);
}

}  // namespace anfkit
