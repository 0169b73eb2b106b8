#include "anfkit/f2.hpp"

#include <algorithm>
#include <utility>

#include "anfkit/error.hpp"

namespace anfkit {

namespace {

BitVec::Word tail_mask(std::size_t length) {
  const std::size_t r = length % BitVec::kWordBits;
  return r == 0 ? ~BitVec::Word{0} : (BitVec::Word{1} << r) - 1;
}

}  // namespace

BitVec BitVec::from_word(Word value, std::size_t length) {
  if (length > kWordBits) {
    throw Error(ErrorCode::DimensionMismatch, "from_word supports at most 64 bits");
  }
  BitVec v(length);
  if (length > 0) {
    v.words_[0] = value & tail_mask(length);
  }
  return v;
}

BitVec BitVec::from_string(std::string_view text) {
  BitVec v(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      v.set(i);
    } else if (text[i] != '0') {
      throw Error(ErrorCode::SyntaxError, "bit string may only contain '0' and '1'", i);
    }
  }
  return v;
}

BitVec BitVec::unit(std::size_t length, std::size_t index) {
  BitVec v(length);
  v.set(index);
  return v;
}

BitVec BitVec::random(std::size_t length, Rng& rng) {
  BitVec v(length);
  for (auto& w : v.words_) {
    w = rng.next_u64();
  }
  if (!v.words_.empty()) {
    v.words_.back() &= tail_mask(length);
  }
  return v;
}

std::string BitVec::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::size_t BitVec::popcount() const {
  std::size_t c = 0;
  for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitVec::none() const {
  return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::size_t BitVec::first_set() const { return next_set(0); }

std::size_t BitVec::next_set(std::size_t from) const {
  if (from >= length_) return length_;
  std::size_t wi = from / kWordBits;
  Word w = words_[wi] & (~Word{0} << (from % kWordBits));
  while (true) {
    if (w != 0) return wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
    if (++wi == words_.size()) return length_;
    w = words_[wi];
  }
}

std::vector<std::size_t> BitVec::set_bits() const {
  std::vector<std::size_t> out;
  for (std::size_t i = first_set(); i < length_; i = next_set(i + 1)) out.push_back(i);
  return out;
}

void BitVec::check_same_length(const BitVec& other) const {
  if (length_ != other.length_) {
    throw Error(ErrorCode::DimensionMismatch,
                "bit vector lengths " + std::to_string(length_) + " and " +
                    std::to_string(other.length_) + " differ");
  }
}

bool BitVec::dot(const BitVec& other) const {
  check_same_length(other);
  Word acc = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
  return std::popcount(acc) & 1;
}

bool BitVec::contains(const BitVec& sub) const {
  check_same_length(sub);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & sub.words_[i]) != sub.words_[i]) return false;
  }
  return true;
}

bool BitVec::intersects(const BitVec& other) const {
  check_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  check_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

BitVec& BitVec::operator&=(const BitVec& other) {
  check_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

BitVec& BitVec::operator|=(const BitVec& other) {
  check_same_length(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

BitVec BitVec::erase(std::size_t i) const {
  BitVec out(length_ - 1);
  for (std::size_t j = first_set(); j < length_; j = next_set(j + 1)) {
    if (j != i) out.set(j < i ? j : j - 1);
  }
  return out;
}

std::size_t BitVec::hash() const {
  std::uint64_t h = length_;
  for (Word w : words_) h = splitmix64(h ^ w);
  return static_cast<std::size_t>(h);
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVec> rows, std::size_t cols) {
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
  }
  BitMatrix m;
  m.cols_ = cols;
  m.rows_ = std::move(rows);
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  std::vector<BitVec> parsed;
  parsed.reserve(rows.size());
  for (const auto& r : rows) parsed.push_back(BitVec::from_string(r));
  const std::size_t cols = parsed.empty() ? 0 : parsed.front().size();
  return from_rows(std::move(parsed), cols);
}

BitMatrix BitMatrix::random(std::size_t rows, std::size_t cols, Rng& rng) {
  BitMatrix m(rows, cols);
  for (auto& r : m.rows_) r = BitVec::random(cols, rng);
  return m;
}

BitMatrix BitMatrix::random_invertible(std::size_t n, Rng& rng) {
  while (true) {
    BitMatrix m = random(n, n, rng);
    if (anfkit::rank(m) == n) return m;
  }
}

std::vector<std::string> BitMatrix::to_strings() const {
  std::vector<std::string> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.to_string());
  return out;
}

BitVec BitMatrix::column(std::size_t j) const {
  BitVec c(rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    if (rows_[i].get(j)) c.set(i);
  }
  return c;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = rows_[i].first_set(); j < cols_; j = rows_[i].next_set(j + 1)) {
      t.set(j, i);
    }
  }
  return t;
}

bool BitMatrix::is_identity() const { return *this == identity(rows()) && square(); }

BitVec BitMatrix::operator*(const BitVec& x) const {
  if (x.size() != cols_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector product with wrong vector length");
  }
  BitVec y(rows());
  for (std::size_t i = 0; i < rows(); ++i) {
    if (rows_[i].dot(x)) y.set(i);
  }
  return y;
}

BitMatrix BitMatrix::operator*(const BitMatrix& other) const {
  if (other.rows() != cols_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix product with incompatible shapes");
  }
  BitMatrix out(rows(), other.cols());
  for (std::size_t i = 0; i < rows(); ++i) {
    const BitVec& r = rows_[i];
    for (std::size_t k = r.first_set(); k < cols_; k = r.next_set(k + 1)) {
      out.rows_[i] ^= other.rows_[k];
    }
  }
  return out;
}

namespace {

// Reduced row echelon form in place; returns the pivot column of each nonzero row.
std::vector<std::size_t> reduce(std::vector<BitVec>& rows, std::size_t cols,
                                std::vector<BitVec>* companion = nullptr) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    if (companion) std::swap((*companion)[r], (*companion)[p]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i].get(c)) {
        rows[i] ^= rows[r];
        if (companion) (*companion)[i] ^= (*companion)[r];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(std::span<const BitVec> vectors) {
  if (vectors.empty()) return 0;
  std::vector<BitVec> rows(vectors.begin(), vectors.end());
  return reduce(rows, rows.front().size()).size();
}

std::size_t rank(const BitMatrix& m) {
  std::vector<BitVec> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return reduce(rows, m.cols()).size();
}

BitMatrix invert(const BitMatrix& m) {
  if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "only square matrices are invertible");
  const std::size_t n = m.rows();
  std::vector<BitVec> rows;
  std::vector<BitVec> inv;
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back(m.row(i));
    inv.push_back(BitVec::unit(n, i));
  }
  if (reduce(rows, n, &inv).size() != n) {
    throw Error(ErrorCode::SingularMatrix, "matrix has rank below its dimension");
  }
  return BitMatrix::from_rows(std::move(inv), n);
}

std::vector<BitVec> kernel_basis(const BitMatrix& m) {
  const std::size_t cols = m.cols();
  std::vector<BitVec> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  const auto pivots = reduce(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<BitVec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    BitVec v = BitVec::unit(cols, free);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (rows[r].get(free)) v.set(pivots[r]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

AffineMap::AffineMap(BitMatrix matrix, BitVec offset)
    : matrix_(std::move(matrix)), offset_(std::move(offset)) {
  if (!matrix_.square()) throw Error(ErrorCode::DimensionMismatch, "affine map matrix must be square");
  if (offset_.size() != matrix_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "affine map offset length differs from dimension");
  }
  if (anfkit::rank(matrix_) != matrix_.rows()) {
    throw Error(ErrorCode::SingularMatrix, "affine map matrix is not invertible");
  }
}

AffineMap AffineMap::identity(std::size_t n) { return AffineMap(BitMatrix::identity(n), BitVec(n)); }

AffineMap AffineMap::random(std::size_t n, Rng& rng) {
  BitMatrix m = BitMatrix::random_invertible(n, rng);
  return AffineMap(std::move(m), BitVec::random(n, rng));
}

BitVec AffineMap::apply(const BitVec& x) const { return (matrix_ * x) ^ offset_; }

AffineMap AffineMap::inverse() const {
  BitMatrix inv = invert(matrix_);
  BitVec off = inv * offset_;
  return AffineMap(std::move(inv), std::move(off));
}

BitVec apply_affine(const AffineMap& a, const BitVec& x) { return a.apply(x); }

AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
  if (outer.dimension() != inner.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "composed affine maps differ in dimension");
  }
  return AffineMap(outer.matrix() * inner.matrix(), outer.matrix() * inner.offset() ^ outer.offset());
}

}  // namespace anfkit
