#include "anfkit/anf.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>
#include <utility>

#include "anfkit/error.hpp"

namespace anfkit {

bool monomial_less(const BitVec& a, const BitVec& b) {
  const std::size_t da = a.popcount();
  const std::size_t db = b.popcount();
  if (da != db) return da < db;
  // Equal degree: the set owning the lowest differing variable sorts first.
  const auto wa = a.words();
  const auto wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    const std::uint64_t diff = wa[i] ^ wb[i];
    if (diff != 0) return (wa[i] >> std::countr_zero(diff)) & 1u;
  }
  return false;
}

Anf Anf::from_monomials(std::size_t num_vars, std::vector<BitVec> monomials) {
  for (const auto& m : monomials) {
    if (m.size() != num_vars) {
      throw Error(ErrorCode::DimensionMismatch, "monomial width differs from the variable count");
    }
  }
  std::sort(monomials.begin(), monomials.end(), monomial_less);
  Anf f(num_vars);
  for (std::size_t i = 0; i < monomials.size();) {
    std::size_t j = i + 1;
    while (j < monomials.size() && monomials[j] == monomials[i]) ++j;
    if ((j - i) % 2 == 1) f.terms_.push_back(std::move(monomials[i]));
    i = j;
  }
  return f;
}

Anf Anf::from_index_sets(std::size_t num_vars,
                         const std::vector<std::vector<std::size_t>>& monomials) {
  std::vector<BitVec> masks;
  masks.reserve(monomials.size());
  for (const auto& indices : monomials) {
    BitVec m(num_vars);
    for (auto i : indices) {
      if (i >= num_vars) throw Error(ErrorCode::IndexOutOfRange, "variable index beyond n");
      m.set(i);
    }
    masks.push_back(std::move(m));
  }
  return from_monomials(num_vars, std::move(masks));
}

Anf Anf::constant(std::size_t num_vars, bool value) {
  Anf f(num_vars);
  if (value) f.terms_.emplace_back(num_vars);
  return f;
}

Anf operator+(const Anf& a, const Anf& b) {
  if (a.num_vars_ != b.num_vars_) {
    throw Error(ErrorCode::DimensionMismatch, "adding polynomials over different variable counts");
  }
  std::vector<BitVec> all = a.terms_;
  all.insert(all.end(), b.terms_.begin(), b.terms_.end());
  return Anf::from_monomials(a.num_vars_, std::move(all));
}

TruthTable::TruthTable(std::size_t num_vars, std::size_t cap) : num_vars_(num_vars) {
  if (num_vars > cap || num_vars >= 40) {
    throw Error(ErrorCode::TooLarge, "truth table on " + std::to_string(num_vars) +
                                         " variables exceeds the cap of " + std::to_string(cap));
  }
  words_.assign(std::max<std::uint64_t>(1, (std::uint64_t{1} << num_vars) / 64), 0);
}

TruthTable TruthTable::from_string(std::string_view text, std::size_t cap) {
  if (text.empty() || !std::has_single_bit(text.size())) {
    throw Error(ErrorCode::SyntaxError, "truth table length must be a power of two");
  }
  TruthTable t(static_cast<std::size_t>(std::countr_zero(text.size())), cap);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      t.set(i);
    } else if (text[i] != '0') {
      throw Error(ErrorCode::SyntaxError, "truth table may only contain '0' and '1'", i);
    }
  }
  return t;
}

std::string TruthTable::to_string() const {
  std::string s(size(), '0');
  for (std::uint64_t i = 0; i < size(); ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

void moebius_transform(TruthTable& table) {
  static constexpr std::uint64_t kLowHalf[6] = {
      0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
      0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL,
  };
  auto words = table.words();
  const std::size_t n = table.num_vars();
  for (std::size_t j = 0; j < std::min<std::size_t>(n, 6); ++j) {
    for (auto& w : words) w ^= (w & kLowHalf[j]) << (1u << j);
  }
  for (std::size_t j = 6; j < n; ++j) {
    const std::size_t stride = std::size_t{1} << (j - 6);
    for (std::size_t base = 0; base < words.size(); base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) words[i + stride] ^= words[i];
    }
  }
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t num_vars) : num_vars_(num_vars) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') continue;
      chars_.push_back(c);
      origin_.push_back(i);
    }
    end_position_ = text.size();
  }

  Anf parse() {
    if (chars_.size() == 1 && chars_[0] == '0') return Anf(num_vars_);
    std::vector<BitVec> terms;
    terms.push_back(term());
    while (pos_ < chars_.size()) {
      expect('+');
      terms.push_back(term());
    }
    return Anf::from_monomials(num_vars_, std::move(terms));
  }

 private:
  std::size_t where() const { return pos_ < origin_.size() ? origin_[pos_] : end_position_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::SyntaxError, msg + " at position " + std::to_string(where()), where());
  }

  void expect(char c) {
    if (pos_ >= chars_.size() || chars_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  BitVec term() {
    BitVec m(num_vars_);
    if (pos_ < chars_.size() && chars_[pos_] == '1') {
      ++pos_;
      return m;
    }
    m.set(factor());
    while (pos_ < chars_.size() && chars_[pos_] == '*') {
      ++pos_;
      m.set(factor());
    }
    return m;
  }

  std::size_t factor() {
    const std::size_t start = where();
    expect('x');
    if (pos_ >= chars_.size() || chars_[pos_] < '0' || chars_[pos_] > '9') {
      fail("expected a variable index");
    }
    std::size_t index = 0;
    bool overflow = false;
    while (pos_ < chars_.size() && chars_[pos_] >= '0' && chars_[pos_] <= '9') {
      index = index * 10 + static_cast<std::size_t>(chars_[pos_] - '0');
      overflow = overflow || index > num_vars_;
      ++pos_;
    }
    if (overflow || index == 0 || index > num_vars_) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "variable index must lie in [1, " + std::to_string(num_vars_) + "] at position " +
                      std::to_string(start),
                  start);
    }
    return index - 1;
  }

  std::size_t num_vars_;
  std::vector<char> chars_;
  std::vector<std::size_t> origin_;
  std::size_t end_position_ = 0;
  std::size_t pos_ = 0;
};

}  // namespace

Anf parse_anf(std::string_view text, std::size_t num_vars) { return Parser(text, num_vars).parse(); }

std::string format_anf(const Anf& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& m : f.terms()) {
    if (!out.empty()) out += " + ";
    if (m.none()) {
      out += '1';
      continue;
    }
    bool first = true;
    for (std::size_t i = m.first_set(); i < m.size(); i = m.next_set(i + 1)) {
      if (!first) out += '*';
      out += 'x';
      out += std::to_string(i + 1);
      first = false;
    }
  }
  return out;
}

bool evaluate(const Anf& f, const BitVec& x) {
  if (x.size() != f.num_vars()) {
    throw Error(ErrorCode::DimensionMismatch, "point length differs from the variable count");
  }
  bool value = false;
  for (const auto& m : f.terms()) value ^= x.contains(m);
  return value;
}

std::size_t sparsity(const Anf& f) { return f.terms().size(); }

std::size_t degree(const Anf& f) { return f.is_zero() ? 0 : f.terms().back().popcount(); }

std::size_t crucial_count(const Anf& f) {
  const auto& t = f.terms();
  return static_cast<std::size_t>(std::count_if(t.begin(), t.end(),
                                                [](const BitVec& m) { return m.popcount() >= 3; }));
}

TruthTable anf_to_truth_table(const Anf& f, std::size_t cap) {
  TruthTable table(f.num_vars(), cap);
  for (const auto& m : f.terms()) table.set(m.to_word());
  moebius_transform(table);
  return table;
}

Anf truth_table_to_anf(const TruthTable& table, std::size_t cap) {
  if (table.num_vars() > cap) {
    throw Error(ErrorCode::TooLarge, "truth table exceeds the configured cap");
  }
  TruthTable coeffs = table;
  moebius_transform(coeffs);
  const std::size_t n = table.num_vars();
  std::vector<BitVec> monomials;
  const auto words = coeffs.words();
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    for (std::uint64_t w = words[wi]; w != 0; w &= w - 1) {
      const std::uint64_t index = wi * 64 + static_cast<std::uint64_t>(std::countr_zero(w));
      if (index < table.size()) monomials.push_back(BitVec::from_word(index, n));
    }
  }
  return Anf::from_monomials(n, std::move(monomials));
}

Anf substitute_zero(const Anf& f, std::size_t var) {
  if (var >= f.num_vars()) {
    throw Error(ErrorCode::IndexOutOfRange, "variable x" + std::to_string(var + 1) + " beyond n");
  }
  std::vector<BitVec> kept;
  kept.reserve(f.terms().size());
  for (const auto& m : f.terms()) {
    if (!m.get(var)) kept.push_back(m);
  }
  // Already canonical: filtering preserves order.
  return Anf::from_monomials(f.num_vars(), std::move(kept));
}

namespace {

void toggle(std::unordered_set<BitVec>& set, BitVec&& m) {
  auto [it, inserted] = set.insert(std::move(m));
  if (!inserted) set.erase(it);
}

}  // namespace

Anf compose_affine(const Anf& f, const AffineMap& a, std::size_t term_ceiling) {
  const std::size_t n = f.num_vars();
  if (a.dimension() != n) {
    throw Error(ErrorCode::DimensionMismatch, "affine map dimension differs from the variable count");
  }
  // Variable i becomes the affine form row_i(A) . x + b_i.
  std::vector<std::vector<BitVec>> forms(n);
  for (std::size_t i = 0; i < n; ++i) {
    const BitVec& row = a.matrix().row(i);
    for (std::size_t j = row.first_set(); j < n; j = row.next_set(j + 1)) {
      forms[i].push_back(BitVec::unit(n, j));
    }
    if (a.offset().get(i)) forms[i].emplace_back(n);
  }

  std::unordered_set<BitVec> result;
  for (const auto& m : f.terms()) {
    std::unordered_set<BitVec> product;
    product.insert(BitVec(n));
    for (std::size_t i = m.first_set(); i < n; i = m.next_set(i + 1)) {
      std::unordered_set<BitVec> next;
      for (const auto& p : product) {
        for (const auto& t : forms[i]) toggle(next, p | t);
      }
      if (next.size() > term_ceiling) {
        throw Error(ErrorCode::BlowupExceeded, "symbolic composition exceeded " +
                                                   std::to_string(term_ceiling) + " terms");
      }
      product = std::move(next);
      if (product.empty()) break;
    }
    for (const auto& p : product) toggle(result, BitVec(p));
    if (result.size() > term_ceiling) {
      throw Error(ErrorCode::BlowupExceeded,
                  "symbolic composition exceeded " + std::to_string(term_ceiling) + " terms");
    }
  }
  return Anf::from_monomials(n, std::vector<BitVec>(result.begin(), result.end()));
}

AnfEvaluator::AnfEvaluator(const Anf& f)
    : num_vars_(f.num_vars()), stride_(std::max<std::size_t>(1, BitVec::word_count(f.num_vars()))) {
  words_.assign(stride_ * f.terms().size(), 0);
  for (std::size_t t = 0; t < f.terms().size(); ++t) {
    const auto w = f.terms()[t].words();
    std::copy(w.begin(), w.end(), words_.begin() + static_cast<std::ptrdiff_t>(t * stride_));
  }
}

bool AnfEvaluator::operator()(const BitVec& x) const {
  if (x.size() != num_vars_) {
    throw Error(ErrorCode::DimensionMismatch, "point length differs from the variable count");
  }
  const auto xw = x.words();
  bool value = false;
  for (std::size_t t = 0; t < words_.size(); t += stride_) {
    bool hit = true;
    for (std::size_t k = 0; k < xw.size(); ++k) {
      if ((xw[k] & words_[t + k]) != words_[t + k]) {
        hit = false;
        break;
      }
    }
    value ^= hit;
  }
  return value;
}

bool AnfEvaluator::operator()(std::uint64_t x) const {
  unsigned value = 0;
  for (std::size_t t = 0; t < words_.size(); t += stride_) {
    value ^= static_cast<unsigned>((x & words_[t]) == words_[t]);
  }
  return value & 1u;
}

FunctionInput::FunctionInput(Anf g, std::optional<AffineMap> bijection, std::string comment)
    : g_(std::move(g)), bijection_(std::move(bijection)), comment_(std::move(comment)) {
  if (bijection_) {
    if (bijection_->dimension() != g_.num_vars()) {
      throw Error(ErrorCode::DimensionMismatch, "bijection dimension differs from n");
    }
    inverse_ = bijection_->inverse();
  }
}

bool FunctionInput::evaluate_f(const BitVec& p) const {
  return inverse_ ? evaluate(g_, inverse_->apply(p)) : evaluate(g_, p);
}

}  // namespace anfkit
