#pragma once

// Bit-packed vectors and matrices over GF(2), plus invertible affine maps.
//
// Coordinates are 0-based in the API and 1-based in every text format: the
// string form of a vector lists coordinate 1 first.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "anfkit/rng.hpp"

namespace anfkit {

class BitVec {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVec() = default;
  explicit BitVec(std::size_t length) : length_(length), words_(word_count(length), 0) {}

  static std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

  // Bit i of `value` becomes coordinate i; length must be <= 64.
  static BitVec from_word(Word value, std::size_t length);
  // Parses a '0'/'1' string; throws SyntaxError on any other character.
  static BitVec from_string(std::string_view text);
  static BitVec unit(std::size_t length, std::size_t index);
  static BitVec random(std::size_t length, Rng& rng);

  std::string to_string() const;
  // Low word; only meaningful for length <= 64.
  Word to_word() const { return words_.empty() ? 0 : words_[0]; }

  std::size_t size() const { return length_; }
  std::size_t num_words() const { return words_.size(); }
  std::span<const Word> words() const { return {words_.data(), words_.size()}; }
  std::span<Word> words() { return {words_.data(), words_.size()}; }

  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }
  void set(std::size_t i, bool v = true) {
    const Word mask = Word{1} << (i % kWordBits);
    if (v) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  std::size_t popcount() const;
  bool none() const;
  bool any() const { return !none(); }
  // Index of the lowest set bit, or size() when there is none.
  std::size_t first_set() const;
  // Index of the lowest set bit at or after `from`, or size().
  std::size_t next_set(std::size_t from) const;
  std::vector<std::size_t> set_bits() const;

  // Inner product over GF(2).
  bool dot(const BitVec& other) const;
  // True when every set bit of `sub` is also set here.
  bool contains(const BitVec& sub) const;
  bool intersects(const BitVec& other) const;

  BitVec& operator^=(const BitVec& other);
  BitVec& operator&=(const BitVec& other);
  BitVec& operator|=(const BitVec& other);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
  friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

  // Drops coordinate i, shifting the higher coordinates down by one.
  BitVec erase(std::size_t i) const;

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.length_ == b.length_ && std::equal(a.words_.begin(), a.words_.end(), b.words_.begin());
  }

  std::size_t hash() const;

 private:
  void check_same_length(const BitVec& other) const;

  std::size_t length_ = 0;
  boost::container::small_vector<Word, 2> words_;
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

  static BitMatrix identity(std::size_t n);
  // Every row must have the same length.
  static BitMatrix from_rows(std::vector<BitVec> rows, std::size_t cols);
  static BitMatrix from_strings(const std::vector<std::string>& rows);
  static BitMatrix random(std::size_t rows, std::size_t cols, Rng& rng);
  // Rejection sampling over uniform square matrices.
  static BitMatrix random_invertible(std::size_t n, Rng& rng);

  std::vector<std::string> to_strings() const;

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows() == cols_; }

  const BitVec& row(std::size_t i) const { return rows_[i]; }
  BitVec& row(std::size_t i) { return rows_[i]; }
  BitVec column(std::size_t j) const;
  bool get(std::size_t i, std::size_t j) const { return rows_[i].get(j); }
  void set(std::size_t i, std::size_t j, bool v = true) { rows_[i].set(j, v); }

  BitMatrix transpose() const;
  bool is_identity() const;

  BitVec operator*(const BitVec& x) const;
  BitMatrix operator*(const BitMatrix& other) const;

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

std::size_t rank(const BitMatrix& m);
// Throws SingularMatrix when m is not invertible, DimensionMismatch when not square.
BitMatrix invert(const BitMatrix& m);
// Basis of {x : m x = 0}; its size is cols - rank.
std::vector<BitVec> kernel_basis(const BitMatrix& m);
// Rank of a list of equal-length vectors.
std::size_t rank(std::span<const BitVec> vectors);

// x -> matrix * x + offset, with an invertible matrix.
class AffineMap {
 public:
  // Validates squareness, offset length, and invertibility.
  AffineMap(BitMatrix matrix, BitVec offset);

  static AffineMap identity(std::size_t n);
  static AffineMap random(std::size_t n, Rng& rng);

  std::size_t dimension() const { return matrix_.rows(); }
  const BitMatrix& matrix() const { return matrix_; }
  const BitVec& offset() const { return offset_; }

  BitVec apply(const BitVec& x) const;
  AffineMap inverse() const;

  friend bool operator==(const AffineMap& a, const AffineMap& b) {
    return a.matrix_ == b.matrix_ && a.offset_ == b.offset_;
  }

 private:
  BitMatrix matrix_;
  BitVec offset_;
};

BitVec apply_affine(const AffineMap& a, const BitVec& x);
// (outer o inner)(x) = outer(inner(x)).
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

}  // namespace anfkit

template <>
struct std::hash<anfkit::BitVec> {
  std::size_t operator()(const anfkit::BitVec& v) const noexcept { return v.hash(); }
};
