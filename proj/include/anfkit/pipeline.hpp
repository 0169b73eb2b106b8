#pragma once

// End-to-end flat finding: greedy 0-restrictions down to a quadratic, Dickson
// decomposition of the residual, and the resulting flat mapped back to the
// coordinates of the represented function. Also hosts flat verification and
// the exhaustive small-n oracles for normality and algebraic thickness.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "anfkit/anf.hpp"
#include "anfkit/flat.hpp"
#include "anfkit/quadratic.hpp"
#include "anfkit/restriction.hpp"

namespace anfkit {

// Injective affine map z -> matrix * z + offset from F2^domain to F2^codomain.
class AffineEmbedding {
 public:
  // Throws DimensionMismatch on shape errors and Inconsistent unless the
  // matrix has full column rank.
  AffineEmbedding(BitMatrix matrix, BitVec offset);

  static AffineEmbedding identity(std::size_t n);

  std::size_t domain_dim() const { return matrix_.cols(); }
  std::size_t codomain_dim() const { return matrix_.rows(); }
  const BitMatrix& matrix() const { return matrix_; }
  const BitVec& offset() const { return offset_; }

  BitVec apply(const BitVec& z) const { return (matrix_ * z) ^ offset_; }

 private:
  BitMatrix matrix_;
  BitVec offset_;
};

// e restricted to domain coordinate `dead_var` (0-based) = 0, as a map on the
// remaining coordinates.
AffineEmbedding embed_zero_restriction(const AffineEmbedding& e, std::size_t dead_var);
// z -> e(a(z)).
AffineEmbedding compose_embedding(const AffineEmbedding& e, const AffineMap& a);

// Image under e of {z : z_i = v for every (i, v) in fixed}. Throws Inconsistent
// on out-of-range or conflicting coordinates.
Flat flat_of_embedding(const AffineEmbedding& e,
                       const std::vector<std::pair<std::size_t, bool>>& fixed);

// Embedding of the alive coordinates (ascending) after zeroing the trace's variables.
AffineEmbedding zero_restriction_embedding(std::size_t n, const RestrictionTrace& trace);
// f with its variables renumbered onto the alive set; f must not mention dead variables.
Anf compress_to_alive(const Anf& f, const BitVec& alive);

inline constexpr std::uint64_t kDefaultSampleCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kDefaultVerifySeed = 0x5eedf1a7ULL;

struct Verdict {
  enum class Kind { Constant, NotConstant, WrongConstant, SampledOk };

  Kind kind = Kind::Constant;
  bool value = false;   // f at the flat offset
  bool exhaustive = true;
  std::uint64_t points_checked = 0;
  std::uint64_t seed = kDefaultVerifySeed;
  // Two flat points where f differs (NotConstant only).
  std::optional<std::pair<BitVec, BitVec>> witness;

  bool ok() const { return kind == Kind::Constant || kind == Kind::SampledOk; }
};

const char* to_string(Verdict::Kind kind);

// Checks that f is constant and equal to `claimed` on the flat: every point
// when 2^k <= sample_cap, otherwise the offset plus sample_cap - 1 uniformly
// random points drawn from `seed`.
Verdict verify_flat(const FunctionInput& input, const Flat& flat, bool claimed,
                    std::uint64_t sample_cap = kDefaultSampleCap,
                    std::uint64_t seed = kDefaultVerifySeed);

struct PipelineOptions {
  std::uint64_t sample_cap = kDefaultSampleCap;
  std::uint64_t seed = kDefaultVerifySeed;
};

struct FlatReport {
  Flat flat;
  bool constant = false;
  RestrictionTrace trace;
  // Decomposition of the residual quadratic in the alive coordinates.
  DicksonForm dickson;
  std::optional<double> epsilon;
  std::optional<double> guaranteed_dim;
  Verdict verification;
};

// max(0, (4/15) * sqrt((2/3) * n^epsilon) - 3).
double guaranteed_dimension(std::size_t n, double epsilon);

// Throws VerificationFailed if the produced flat does not check out; that
// would be an internal bug.
FlatReport find_constant_flat(const FunctionInput& input, std::optional<double> epsilon = std::nullopt,
                              const PipelineOptions& options = {});

inline constexpr std::size_t kDefaultNormalityCap = 8;
inline constexpr std::size_t kDefaultThicknessCap = 4;

struct NormalityResult {
  std::size_t normality;
  Flat witness;
};

// Exact normality by exhaustive flat enumeration, largest dimension first.
// Constant functions have normality n. The witness is the first constant flat
// in a fixed enumeration order, whatever the thread count.
NormalityResult brute_force_normality(const Anf& f, std::size_t cap = kDefaultNormalityCap,
                                      unsigned threads = 1);

// Exact algebraic thickness: minimum sparsity of f o A over all affine bijections.
std::size_t brute_force_thickness(const Anf& f, std::size_t cap = kDefaultThicknessCap);

}  // namespace anfkit
