#include "anfkit/quadratic.hpp"

#include <utility>
#include <vector>

#include "anfkit/error.hpp"

namespace anfkit {

namespace {

// q(x) = sum_{i<j} Q_ij x_i x_j + lin . x + c, with Q symmetric and zero on the diagonal.
struct QuadraticParts {
  BitMatrix q;
  BitVec lin;
  bool c = false;

  explicit QuadraticParts(const Anf& f) : q(f.num_vars(), f.num_vars()), lin(f.num_vars()) {
    for (const auto& m : f.terms()) {
      const auto vars = m.set_bits();
      switch (vars.size()) {
        case 0: c = !c; break;
        case 1: lin.flip(vars[0]); break;
        case 2: toggle(vars[0], vars[1]); break;
        default:
          throw Error(ErrorCode::DegreeTooHigh, "expected a polynomial of degree at most 2");
      }
    }
  }

  void toggle(std::size_t i, std::size_t j) {
    q.row(i).flip(j);
    q.row(j).flip(i);
  }

  // Removes every term that mentions variable i.
  void drop(std::size_t i) {
    const BitVec row = q.row(i);
    for (std::size_t j = row.first_set(); j < row.size(); j = row.next_set(j + 1)) toggle(i, j);
    lin.set(i, false);
  }
};

}  // namespace

BitMatrix bilinear_form(const Anf& f) { return QuadraticParts(f).q; }

DicksonForm dickson_decompose(const Anf& f) {
  const std::size_t n = f.num_vars();
  QuadraticParts g(f);
  std::vector<BitVec> rows;
  BitVec offset(n);
  BitVec unpaired(n);
  for (std::size_t i = 0; i < n; ++i) unpaired.set(i);

  auto push_form = [&](BitVec row, bool constant) {
    if (constant) offset.set(rows.size());
    rows.push_back(std::move(row));
  };

  while (true) {
    std::size_t i = 0;
    while (i < n && g.q.row(i).none()) ++i;
    if (i == n) break;
    const std::size_t j = g.q.row(i).first_set();

    // g = x_i x_j + x_i (a.x + a0) + x_j (b.x + b0) + R
    //   = (x_i + b.x + b0)(x_j + a.x + a0) + (a.x + a0)(b.x + b0) + R
    BitVec a = g.q.row(i);
    a.set(j, false);
    BitVec b = g.q.row(j);
    b.set(i, false);
    const bool a0 = g.lin.get(i);
    const bool b0 = g.lin.get(j);

    push_form(BitVec::unit(n, i) ^ b, b0);
    push_form(BitVec::unit(n, j) ^ a, a0);
    unpaired.set(i, false);
    unpaired.set(j, false);

    g.drop(i);
    g.drop(j);
    for (std::size_t p = a.first_set(); p < n; p = a.next_set(p + 1)) {
      for (std::size_t r = b.first_set(); r < n; r = b.next_set(r + 1)) {
        if (p == r) {
          g.lin.flip(p);
        } else {
          g.toggle(p, r);
        }
      }
    }
    if (a0) g.lin ^= b;
    if (b0) g.lin ^= a;
    g.c ^= a0 && b0;
  }

  DicksonForm d;
  d.t = rows.size();
  // What is left is affine in the unpaired variables.
  std::size_t pivot = n;
  if (g.lin.any()) {
    d.type = FormType::II;
    pivot = g.lin.first_set();
    push_form(g.lin, g.c);
  } else {
    d.type = FormType::I;
    d.c = g.c;
  }
  for (std::size_t v = unpaired.first_set(); v < n; v = unpaired.next_set(v + 1)) {
    if (v != pivot) push_form(BitVec::unit(n, v), false);
  }
  d.map = AffineMap(BitMatrix::from_rows(std::move(rows), n), std::move(offset));
  return d;
}

Anf canonical_anf(const DicksonForm& d, std::size_t n) {
  if (d.t % 2 != 0 || d.t > n || (d.type == FormType::II && d.t + 1 > n) ||
      d.map.dimension() != n) {
    throw Error(ErrorCode::Inconsistent, "Dickson form does not fit " + std::to_string(n) +
                                             " variables");
  }
  std::vector<std::vector<std::size_t>> monomials;
  for (std::size_t k = 0; k < d.t; k += 2) monomials.push_back({k, k + 1});
  if (d.type == FormType::II) {
    monomials.push_back({d.t});
  } else if (d.c) {
    monomials.push_back({});
  }
  return Anf::from_index_sets(n, monomials);
}

QuadraticFlat quadratic_flat(const DicksonForm& d) {
  const std::size_t n = d.map.dimension();
  // x = A^{-1}(y + b): fixed y coordinates drop out of the basis.
  const AffineMap inverse = d.map.inverse();
  const std::size_t fixed_tail = d.type == FormType::II ? d.t : n;
  std::vector<BitVec> basis;
  for (std::size_t k = 0; k < n; ++k) {
    const bool fixed = (k < d.t && k % 2 == 0) || k == fixed_tail;
    if (!fixed) basis.push_back(inverse.matrix().column(k));
  }
  return {Flat(inverse.offset(), std::move(basis)), d.type == FormType::I && d.c};
}

QuadraticFlat quadratic_flat(const Anf& f) { return quadratic_flat(dickson_decompose(f)); }

}  // namespace anfkit
