#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "anfkit/f2.hpp"

namespace anfkit {

// Affine subspace offset + span(basis) of F2^ambient, with independent basis vectors.
class Flat {
 public:
  Flat() = default;
  // Throws DimensionMismatch on length errors and Inconsistent on a dependent basis.
  Flat(BitVec offset, std::vector<BitVec> basis);

  static Flat whole_space(std::size_t n);

  std::size_t ambient() const { return offset_.size(); }
  std::size_t dimension() const { return basis_.size(); }
  const BitVec& offset() const { return offset_; }
  const std::vector<BitVec>& basis() const { return basis_; }

  bool contains(const BitVec& p) const;
  // offset + sum of basis[i] over the set bits i of `coords`; dimension <= 64.
  BitVec point(std::uint64_t coords) const;

 private:
  BitVec offset_;
  std::vector<BitVec> basis_;
};

// Image of a flat under an affine bijection.
Flat map_flat(const AffineMap& a, const Flat& flat);

}  // namespace anfkit
