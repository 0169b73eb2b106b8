#pragma once

// Algebraic normal form of Boolean functions over GF(2).
//
// A monomial is a BitVec of width n whose set bits are the variables of the
// product; the empty monomial is the constant 1. Variables are 0-based in the
// API and written x1..xn in text.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anfkit/f2.hpp"

namespace anfkit {

inline constexpr std::size_t kDefaultTruthTableCap = 24;
inline constexpr std::size_t kDefaultTermCeiling = std::size_t{1} << 22;

// Canonical monomial order: by degree, then by the sorted index sequence.
bool monomial_less(const BitVec& a, const BitVec& b);

class Anf {
 public:
  explicit Anf(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  // Builds the sum of `monomials`; repeated monomials cancel in pairs.
  static Anf from_monomials(std::size_t num_vars, std::vector<BitVec> monomials);
  // Same, with each monomial given as 0-based variable indices.
  static Anf from_index_sets(std::size_t num_vars,
                             const std::vector<std::vector<std::size_t>>& monomials);
  static Anf constant(std::size_t num_vars, bool value);

  std::size_t num_vars() const { return num_vars_; }
  // Sorted by monomial_less, duplicate-free.
  const std::vector<BitVec>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  friend bool operator==(const Anf& a, const Anf& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }
  friend Anf operator+(const Anf& a, const Anf& b);

 private:
  std::size_t num_vars_;
  std::vector<BitVec> terms_;
};

// Truth table with entry i holding f(x) where bit j of i is x_{j+1}.
class TruthTable {
 public:
  explicit TruthTable(std::size_t num_vars = 0, std::size_t cap = kDefaultTruthTableCap);

  // '0'/'1' string of length 2^n, entry 0 first.
  static TruthTable from_string(std::string_view text, std::size_t cap = kDefaultTruthTableCap);
  std::string to_string() const;

  std::size_t num_vars() const { return num_vars_; }
  std::uint64_t size() const { return std::uint64_t{1} << num_vars_; }
  bool get(std::uint64_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::uint64_t i, bool v = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (v) {
      words_[i / 64] |= mask;
    } else {
      words_[i / 64] &= ~mask;
    }
  }
  std::span<std::uint64_t> words() { return words_; }
  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const TruthTable& a, const TruthTable& b) = default;

 private:
  std::size_t num_vars_;
  std::vector<std::uint64_t> words_;
};

// In-place binary Moebius transform over GF(2); it is its own inverse.
void moebius_transform(TruthTable& table);

// Throws SyntaxError (with position) or IndexOutOfRange.
Anf parse_anf(std::string_view text, std::size_t num_vars);
std::string format_anf(const Anf& f);

// Throws DimensionMismatch when x.size() != f.num_vars().
bool evaluate(const Anf& f, const BitVec& x);
std::size_t sparsity(const Anf& f);
// The zero polynomial has degree 0.
std::size_t degree(const Anf& f);
// Number of monomials of degree >= 3.
std::size_t crucial_count(const Anf& f);

TruthTable anf_to_truth_table(const Anf& f, std::size_t cap = kDefaultTruthTableCap);
Anf truth_table_to_anf(const TruthTable& table, std::size_t cap = kDefaultTruthTableCap);

// Deletes every monomial containing variable `var` (0-based).
Anf substitute_zero(const Anf& f, std::size_t var);
// ANF of x -> f(a(x)); throws BlowupExceeded past `term_ceiling` live terms.
Anf compose_affine(const Anf& f, const AffineMap& a, std::size_t term_ceiling = kDefaultTermCeiling);

// Contiguous copy of an ANF's monomials for repeated evaluation.
class AnfEvaluator {
 public:
  explicit AnfEvaluator(const Anf& f);
  bool operator()(const BitVec& x) const;
  // Fast path for num_vars <= 64: bit j of x is variable j.
  bool operator()(std::uint64_t x) const;

 private:
  std::size_t num_vars_;
  std::size_t stride_;
  std::vector<std::uint64_t> words_;
};

// A function f given as g together with an affine bijection A, where g = f o A.
// Without a bijection f = g.
class FunctionInput {
 public:
  explicit FunctionInput(Anf g, std::optional<AffineMap> bijection = std::nullopt,
                         std::string comment = {});

  std::size_t num_vars() const { return g_.num_vars(); }
  const Anf& g() const { return g_; }
  const std::optional<AffineMap>& bijection() const { return bijection_; }
  // A^{-1}, present exactly when the bijection is.
  const std::optional<AffineMap>& inverse() const { return inverse_; }
  const std::string& comment() const { return comment_; }

  // f(p) = g(A^{-1} p).
  bool evaluate_f(const BitVec& p) const;

 private:
  Anf g_;
  std::optional<AffineMap> bijection_;
  std::optional<AffineMap> inverse_;
  std::string comment_;
};

}  // namespace anfkit
