#pragma once

// Test-only reference computations. Each works from first principles on small
// integer-encoded inputs and shares no code path with the library routines it
// checks.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "anfkit/anf.hpp"

namespace oracle {

using Mask = std::uint32_t;

// Monomials of f as integer masks (bit j = x_{j+1}); n <= 32.
inline std::vector<Mask> masks(const anfkit::Anf& f) {
  std::vector<Mask> out;
  for (const auto& m : f.terms()) {
    Mask v = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m.get(j)) v |= Mask{1} << j;
    }
    out.push_back(v);
  }
  return out;
}

// Polynomial value as a sum of monomial products.
inline int eval(const std::vector<Mask>& monomials, Mask x) {
  int v = 0;
  for (Mask m : monomials) {
    int prod = 1;
    for (int j = 0; j < 32; ++j) {
      if ((m >> j) & 1u) prod &= static_cast<int>((x >> j) & 1u);
    }
    v ^= prod;
  }
  return v;
}

inline std::vector<int> table(const std::vector<Mask>& monomials, int n) {
  std::vector<int> t(std::size_t{1} << n);
  for (Mask x = 0; x < t.size(); ++x) t[x] = eval(monomials, x);
  return t;
}

// c_S = sum over T subset of S of f(T), enumerated subset by subset.
inline std::set<Mask> anf_from_table(const std::vector<int>& t) {
  std::set<Mask> coeffs;
  for (Mask s = 0; s < t.size(); ++s) {
    int c = 0;
    Mask sub = s;
    while (true) {
      c ^= t[sub];
      if (sub == 0) break;
      sub = (sub - 1) & s;
    }
    if (c) coeffs.insert(s);
  }
  return coeffs;
}

// Rows given as masks over n columns; y_i = parity(row_i & x) ^ b_i.
inline Mask apply(const std::vector<Mask>& rows, Mask b, Mask x) {
  Mask y = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    y |= static_cast<Mask>(std::popcount(rows[i] & x) & 1) << i;
  }
  return y ^ b;
}

// Size of the smallest variable set meeting every term, by increasing-size enumeration.
inline int min_hitting_set(const std::vector<Mask>& terms, int n) {
  for (int k = 0; k <= n; ++k) {
    for (Mask s = 0; s < (Mask{1} << n); ++s) {
      if (std::popcount(s) != k) continue;
      if (std::all_of(terms.begin(), terms.end(), [&](Mask t) { return (t & s) != 0; })) return k;
    }
  }
  return -1;
}

inline bool constant_on(const std::vector<int>& t, Mask offset, const std::vector<Mask>& basis) {
  const int v0 = t[offset];
  for (Mask c = 0; c < (Mask{1} << basis.size()); ++c) {
    Mask p = offset;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if ((c >> i) & 1u) p ^= basis[i];
    }
    if (t[p] != v0) return false;
  }
  return true;
}

inline bool independent(const std::vector<Mask>& vs) {
  // Every nonempty combination must be nonzero.
  for (Mask c = 1; c < (Mask{1} << vs.size()); ++c) {
    Mask s = 0;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if ((c >> i) & 1u) s ^= vs[i];
    }
    if (s == 0) return false;
  }
  return true;
}

// Normality by trying every increasing tuple of k nonzero vectors and every offset.
inline int normality(const std::vector<int>& t, int n) {
  const Mask points = Mask{1} << n;
  for (int k = n; k >= 0; --k) {
    std::vector<Mask> basis;
    bool found = false;
    auto rec = [&](auto&& self, Mask from) -> void {
      if (found) return;
      if (static_cast<int>(basis.size()) == k) {
        if (!independent(basis)) return;
        for (Mask o = 0; o < points && !found; ++o) found = constant_on(t, o, basis);
        return;
      }
      for (Mask v = from; v < points && !found; ++v) {
        basis.push_back(v);
        self(self, v + 1);
        basis.pop_back();
      }
    };
    rec(rec, 1);
    if (found) return k;
  }
  return 0;
}

}  // namespace oracle
