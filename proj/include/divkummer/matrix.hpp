#pragma once

#include "divkummer/int.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace divkum {

// Dense integer matrix, row-major.  Lattices are handled as row spans:
// throughout the library a module element is a row vector of generator
// coefficients and maps act on the right.
struct IntMat {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> data;

  IntMat() = default;
  IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  IntMat(std::size_t r, std::size_t c, std::vector<Int> d);
  IntMat(std::initializer_list<std::initializer_list<Int>> init);

  Int& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static IntMat identity(std::size_t n);
  static IntMat zero(std::size_t r, std::size_t c) { return IntMat(r, c); }

  IntMat transposed() const;
  std::vector<Int> row(std::size_t i) const;
  void set_row(std::size_t i, const std::vector<Int>& v);
  bool is_zero_row(std::size_t i) const;
  bool operator==(const IntMat& o) const = default;
};

IntMat mat_mul(const IntMat& a, const IntMat& b);
std::vector<Int> row_mul(const std::vector<Int>& x, const IntMat& m);
IntMat scalar_mul(const Int& k, const IntMat& m);
IntMat mat_add(const IntMat& a, const IntMat& b);
IntMat mat_sub(const IntMat& a, const IntMat& b);
IntMat vstack(const IntMat& a, const IntMat& b);
IntMat hstack(const IntMat& a, const IntMat& b);
IntMat from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols);
IntMat columns(const IntMat& m, std::size_t first, std::size_t count);

// Fraction-free (Bareiss) determinant.
Int determinant(IntMat m);

// Exact inverse of a matrix with det = +-1.
IntMat unimodular_inverse(const IntMat& m);

// Row-style Hermite normal form: same shape as the input, nonzero rows on
// top in echelon form, pivots positive, entries above each pivot reduced
// into [0, pivot).  Pivot selection: smallest absolute value, ties broken
// by lowest row index.
IntMat hnf(IntMat m);

// As above but returns only the nonzero rows (a lattice basis).
IntMat hnf_basis(const IntMat& m);

// H = U * m with U unimodular, H the row HNF of m.
void hnf_transform(const IntMat& m, IntMat& h, IntMat& u);

// Basis of {x : x * m = 0}, as rows.
IntMat kernel_lattice(const IntMat& m);

// Smith normal form: s = u * m * v with u, v unimodular, s diagonal with
// non-negative entries forming a divisibility chain.
struct SnfResult {
  IntMat u, s, v;
  std::vector<Int> diagonal() const;
};
SnfResult snf(const IntMat& m);

// {x : x * f lies in the row span of lat}.
IntMat preimage_lattice(const IntMat& f, const IntMat& lat);

IntMat lattice_sum(const IntMat& a, const IntMat& b);
IntMat lattice_intersect(const IntMat& a, const IntMat& b);
bool in_lattice(const std::vector<Int>& x, const IntMat& hnf_basis_rows);
bool lattice_equal(const IntMat& a, const IntMat& b);
bool lattice_contains(const IntMat& outer, const IntMat& inner);

// Coefficients c with c * basis = x, if any.
std::optional<std::vector<Int>> solve_in_lattice(const std::vector<Int>& x, const IntMat& basis);

// Smallest k > 0 with k*x in the row span of basis; 0 if x is not even in
// the rational span.
Int min_multiplier(const std::vector<Int>& x, const IntMat& basis);

}  // namespace divkum
