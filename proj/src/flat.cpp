#include "anfkit/flat.hpp"

#include <utility>

#include "anfkit/error.hpp"

namespace anfkit {

Flat::Flat(BitVec offset, std::vector<BitVec> basis)
    : offset_(std::move(offset)), basis_(std::move(basis)) {
  for (const auto& b : basis_) {
    if (b.size() != offset_.size()) {
      throw Error(ErrorCode::DimensionMismatch, "flat basis vector length differs from ambient");
    }
  }
  if (rank(basis_) != basis_.size()) {
    throw Error(ErrorCode::Inconsistent, "flat basis vectors are linearly dependent");
  }
}

Flat Flat::whole_space(std::size_t n) {
  std::vector<BitVec> basis;
  for (std::size_t i = 0; i < n; ++i) basis.push_back(BitVec::unit(n, i));
  return Flat(BitVec(n), std::move(basis));
}

bool Flat::contains(const BitVec& p) const {
  if (p.size() != ambient()) return false;
  std::vector<BitVec> vectors = basis_;
  vectors.push_back(p ^ offset_);
  return rank(vectors) == basis_.size();
}

BitVec Flat::point(std::uint64_t coords) const {
  BitVec p = offset_;
  for (std::size_t i = 0; i < basis_.size() && i < 64; ++i) {
    if ((coords >> i) & 1u) p ^= basis_[i];
  }
  return p;
}

Flat map_flat(const AffineMap& a, const Flat& flat) {
  if (a.dimension() != flat.ambient()) {
    throw Error(ErrorCode::DimensionMismatch, "affine map and flat differ in dimension");
  }
  std::vector<BitVec> basis;
  basis.reserve(flat.dimension());
  for (const auto& b : flat.basis()) basis.push_back(a.matrix() * b);
  return Flat(a.apply(flat.offset()), std::move(basis));
}

}  // namespace anfkit
