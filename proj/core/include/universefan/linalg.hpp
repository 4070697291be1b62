#pragma once

#include <optional>
#include <vector>

#include "universefan/rational.hpp"

namespace uf {

using VecI = std::vector<Int>;
using MatI = std::vector<VecI>;
using VecQ = std::vector<Rat>;
using MatQ = std::vector<VecQ>;

Int dot(const VecI& a, const VecI& b);
Rat dot(const VecQ& a, const VecI& b);

// Divides by the gcd of the entries; the zero vector stays zero.
VecI primitive(VecI v);

int rank(MatQ m);
int rank_int(const MatI& m);

// Determinant of a square integer matrix (Bareiss, exact).
Int det(MatI m);

// Index of the lattice generated by the rows inside the saturation of their
// span, i.e. the product of the diagonal of the Smith normal form. Rows must
// be linearly independent. An index of 1 means the rows are a basis of
// span() cap Z^n.
Int lattice_index(MatI m);

// Solves A^T x = b for x with A given row-wise (i.e. finds coefficients
// expressing b in terms of the rows of A). Returns nullopt if inconsistent.
std::optional<VecQ> solve_in_rows(const MatI& rows, const VecI& b);

// True iff b is a nonnegative rational combination of the rows.
bool in_nonneg_row_span(const MatI& rows, const VecI& b);

}  // namespace uf
