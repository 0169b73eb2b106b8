#pragma once

// Dickson normal form of quadratic Boolean functions.
//
// Every f of degree <= 2 on n variables can be written, for y = A x + b with A
// invertible, as
//   type I:  f = y1*y2 + y3*y4 + ... + y_{t-1}*y_t + c
//   type II: f = y1*y2 + y3*y4 + ... + y_{t-1}*y_t + y_{t+1}
// where t is even. t equals the rank of the bilinear form of f.

#include <cstddef>

#include "anfkit/anf.hpp"
#include "anfkit/flat.hpp"

namespace anfkit {

enum class FormType { I, II };

struct DicksonForm {
  std::size_t t = 0;  // number of paired variables, even
  FormType type = FormType::I;
  bool c = false;  // constant tail, type I only
  AffineMap map = AffineMap::identity(0);  // y = map(x)
};

// Symmetric zero-diagonal matrix of f(x+y)+f(x)+f(y)+f(0). Throws DegreeTooHigh.
BitMatrix bilinear_form(const Anf& f);

// Pairs are peeled off in order: the lowest variable with a quadratic term,
// together with its lowest partner. Throws DegreeTooHigh when degree(f) > 2.
DicksonForm dickson_decompose(const Anf& f);

// The canonical polynomial of `d` in variables x1..xn. Throws Inconsistent.
Anf canonical_anf(const DicksonForm& d, std::size_t n);

struct QuadraticFlat {
  Flat flat;
  bool constant;
};

// Flat of dimension n - t/2 - [type II] >= floor(n/2) on which f is constant:
// y1 = y3 = ... = y_{t-1} = 0, and y_{t+1} = 0 for type II.
QuadraticFlat quadratic_flat(const Anf& f);
// Same, from an existing decomposition of f.
QuadraticFlat quadratic_flat(const DicksonForm& d);

}  // namespace anfkit
