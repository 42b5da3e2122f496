#include "divkummer/matrix.hpp"

#include "divkummer/errors.hpp"

#include <algorithm>
#include <limits>

namespace divkum {

IntMat::IntMat(std::size_t r, std::size_t c, std::vector<Int> d) : rows(r), cols(c), data(std::move(d)) {
  if (data.size() != rows * cols) throw input_error("matrix entries do not match rows*cols");
}

IntMat::IntMat(std::initializer_list<std::initializer_list<Int>> init) {
  rows = init.size();
  cols = rows ? init.begin()->size() : 0;
  data.reserve(rows * cols);
  for (const auto& r : init) {
    if (r.size() != cols) throw input_error("ragged matrix literal");
    for (const auto& v : r) data.push_back(v);
  }
}

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::transposed() const {
  IntMat t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

std::vector<Int> IntMat::row(std::size_t i) const {
  return std::vector<Int>(data.begin() + i * cols, data.begin() + (i + 1) * cols);
}

void IntMat::set_row(std::size_t i, const std::vector<Int>& v) {
  for (std::size_t j = 0; j < cols; ++j) at(i, j) = v[j];
}

bool IntMat::is_zero_row(std::size_t i) const {
  for (std::size_t j = 0; j < cols; ++j)
    if (at(i, j) != 0) return false;
  return true;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  if (a.cols != b.rows) throw error("mat_mul shape mismatch");
  IntMat c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Int& aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

std::vector<Int> row_mul(const std::vector<Int>& x, const IntMat& m) {
  if (x.size() != m.rows) throw error("row_mul shape mismatch");
  std::vector<Int> out(m.cols);
  for (std::size_t k = 0; k < m.rows; ++k) {
    if (x[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols; ++j) out[j] += x[k] * m.at(k, j);
  }
  return out;
}

IntMat scalar_mul(const Int& k, const IntMat& m) {
  IntMat out = m;
  for (auto& v : out.data) v *= k;
  return out;
}

IntMat mat_add(const IntMat& a, const IntMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw error("mat_add shape mismatch");
  IntMat c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
  return c;
}

IntMat mat_sub(const IntMat& a, const IntMat& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw error("mat_sub shape mismatch");
  IntMat c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
  return c;
}

IntMat vstack(const IntMat& a, const IntMat& b) {
  if (a.rows == 0 && (a.cols == 0 || a.cols == b.cols)) return b;
  if (b.rows == 0 && (b.cols == 0 || b.cols == a.cols)) return a;
  if (a.cols != b.cols) throw error("vstack shape mismatch");
  IntMat c(a.rows + b.rows, a.cols);
  std::copy(a.data.begin(), a.data.end(), c.data.begin());
  std::copy(b.data.begin(), b.data.end(), c.data.begin() + a.data.size());
  return c;
}

IntMat hstack(const IntMat& a, const IntMat& b) {
  if (a.rows != b.rows) throw error("hstack shape mismatch");
  IntMat c(a.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) c.at(i, j) = a.at(i, j);
    for (std::size_t j = 0; j < b.cols; ++j) c.at(i, a.cols + j) = b.at(i, j);
  }
  return c;
}

IntMat from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols) {
  IntMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw error("from_rows shape mismatch");
    m.set_row(i, rows[i]);
  }
  return m;
}

IntMat columns(const IntMat& m, std::size_t first, std::size_t count) {
  IntMat out(m.rows, count);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < count; ++j) out.at(i, j) = m.at(i, first + j);
  return out;
}

Int determinant(IntMat m) {
  if (m.rows != m.cols) throw error("determinant of non-square matrix");
  std::size_t n = m.rows;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m.at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

namespace {

// Shared HNF elimination; u, when non-null, accumulates the row operations.
void hnf_in_place(IntMat& m, IntMat* u) {
  const std::size_t rows = m.rows, cols = m.cols;
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(a, j), m.at(b, j));
    if (u)
      for (std::size_t j = 0; j < u->cols; ++j) std::swap(u->at(a, j), u->at(b, j));
  };
  auto add_multiple = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols; ++j) m.at(dst, j) += q * m.at(src, j);
    if (u)
      for (std::size_t j = 0; j < u->cols; ++j) u->at(dst, j) += q * u->at(src, j);
  };
  auto negate_row = [&](std::size_t r) {
    for (std::size_t j = 0; j < cols; ++j) m.at(r, j) = -m.at(r, j);
    if (u)
      for (std::size_t j = 0; j < u->cols; ++j) u->at(r, j) = -u->at(r, j);
  };

  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    // Euclid in the column: reduce against the smallest nonzero entry
    // until a single nonzero remains.
    while (true) {
      std::size_t best = rows;
      for (std::size_t r = pivot_row; r < rows; ++r) {
        if (m.at(r, col) == 0) continue;
        if (best == rows || abs_int(m.at(r, col)) < abs_int(m.at(best, col))) best = r;
      }
      if (best == rows) break;  // column is zero below pivot_row
      bool lone = true;
      for (std::size_t r = pivot_row; r < rows; ++r) {
        if (r == best || m.at(r, col) == 0) continue;
        lone = false;
        add_multiple(r, best, -floor_div(m.at(r, col), m.at(best, col)));
      }
      if (lone) {
        swap_rows(pivot_row, best);
        if (m.at(pivot_row, col) < 0) negate_row(pivot_row);
        for (std::size_t r = 0; r < pivot_row; ++r)
          add_multiple(r, pivot_row, -floor_div(m.at(r, col), m.at(pivot_row, col)));
        ++pivot_row;
        break;
      }
    }
  }
}

}  // namespace

IntMat hnf(IntMat m) {
  hnf_in_place(m, nullptr);
  return m;
}

IntMat hnf_basis(const IntMat& m) {
  IntMat h = hnf(m);
  std::size_t rank = 0;
  while (rank < h.rows && !h.is_zero_row(rank)) ++rank;
  IntMat out(rank, h.cols);
  std::copy(h.data.begin(), h.data.begin() + rank * h.cols, out.data.begin());
  return out;
}

void hnf_transform(const IntMat& m, IntMat& h, IntMat& u) {
  h = m;
  u = IntMat::identity(m.rows);
  hnf_in_place(h, &u);
}

IntMat kernel_lattice(const IntMat& m) {
  if (m.cols == 0) return IntMat::identity(m.rows);
  IntMat h, u;
  hnf_transform(m, h, u);
  std::vector<std::vector<Int>> ker;
  for (std::size_t i = 0; i < h.rows; ++i)
    if (h.is_zero_row(i)) ker.push_back(u.row(i));
  return hnf_basis(from_rows(ker, m.rows));
}

SnfResult snf(const IntMat& m) {
  SnfResult res;
  res.s = m;
  res.u = IntMat::identity(m.rows);
  res.v = IntMat::identity(m.cols);
  IntMat& s = res.s;
  IntMat& u = res.u;
  IntMat& v = res.v;
  const std::size_t rows = m.rows, cols = m.cols;
  const std::size_t nmin = std::min(rows, cols);

  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(s.at(a, j), s.at(b, j));
    for (std::size_t j = 0; j < rows; ++j) std::swap(u.at(a, j), u.at(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(s.at(i, a), s.at(i, b));
    for (std::size_t i = 0; i < cols; ++i) std::swap(v.at(i, a), v.at(i, b));
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols; ++j) s.at(dst, j) += q * s.at(src, j);
    for (std::size_t j = 0; j < rows; ++j) u.at(dst, j) += q * u.at(src, j);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows; ++i) s.at(i, dst) += q * s.at(i, src);
    for (std::size_t i = 0; i < cols; ++i) v.at(i, dst) += q * v.at(i, src);
  };
  auto negate_row = [&](std::size_t r) {
    for (std::size_t j = 0; j < cols; ++j) s.at(r, j) = -s.at(r, j);
    for (std::size_t j = 0; j < rows; ++j) u.at(r, j) = -u.at(r, j);
  };
  // Smallest nonzero |entry| in s[t.., t..]; ties by lowest row, then column.
  auto locate_min = [&](std::size_t t, std::size_t& bi, std::size_t& bj) {
    bool found = false;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (s.at(i, j) == 0) continue;
        if (!found || abs_int(s.at(i, j)) < abs_int(s.at(bi, bj))) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    return found;
  };
  auto is_lone = [&](std::size_t t) {
    for (std::size_t i = t + 1; i < rows; ++i)
      if (s.at(i, t) != 0) return false;
    for (std::size_t j = t + 1; j < cols; ++j)
      if (s.at(t, j) != 0) return false;
    return true;
  };

  for (std::size_t t = 0; t < nmin; ++t) {
    std::size_t bi = t, bj = t;
    if (!locate_min(t, bi, bj)) break;  // rest of the matrix is zero
    swap_rows(t, bi);
    swap_cols(t, bj);
    while (true) {
      // Clear column t and row t against the pivot.
      for (std::size_t i = t + 1; i < rows; ++i)
        if (s.at(i, t) != 0) add_row(i, t, -floor_div(s.at(i, t), s.at(t, t)));
      for (std::size_t j = t + 1; j < cols; ++j)
        if (s.at(t, j) != 0) add_col(j, t, -floor_div(s.at(t, j), s.at(t, t)));
      if (!is_lone(t)) {
        locate_min(t, bi, bj);
        swap_rows(t, bi);
        swap_cols(t, bj);
        continue;
      }
      // Pull in any entry the pivot does not divide yet.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < rows && divides_all; ++i)
        for (std::size_t j = t + 1; j < cols && divides_all; ++j)
          if (s.at(i, j) % s.at(t, t) != 0) {
            add_row(t, i, 1);
            divides_all = false;
          }
      if (divides_all) break;
    }
    if (s.at(t, t) < 0) negate_row(t);
  }
  return res;
}

std::vector<Int> SnfResult::diagonal() const {
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(s.rows, s.cols); ++i) d.push_back(s.at(i, i));
  return d;
}

IntMat preimage_lattice(const IntMat& f, const IntMat& lat) {
  if (lat.rows > 0 && lat.cols != f.cols) throw error("preimage_lattice shape mismatch");
  IntMat stacked = vstack(f, IntMat(lat.rows, f.cols, lat.data));
  IntMat ker = kernel_lattice(stacked);
  IntMat proj = columns(ker, 0, f.rows);
  return hnf_basis(proj);
}

IntMat lattice_sum(const IntMat& a, const IntMat& b) { return hnf_basis(vstack(a, b)); }

IntMat lattice_intersect(const IntMat& a, const IntMat& b) {
  if (a.rows == 0 || b.rows == 0) return IntMat(0, std::max(a.cols, b.cols));
  IntMat neg_b = scalar_mul(-1, b);
  IntMat ker = kernel_lattice(vstack(a, neg_b));
  IntMat coeffs = columns(ker, 0, a.rows);
  return hnf_basis(mat_mul(coeffs, a));
}

bool in_lattice(const std::vector<Int>& x, const IntMat& basis) {
  std::vector<Int> r = x;
  for (std::size_t i = 0; i < basis.rows; ++i) {
    if (basis.is_zero_row(i)) continue;
    std::size_t p = 0;
    while (p < basis.cols && basis.at(i, p) == 0) ++p;
    if (r[p] == 0) continue;
    if (r[p] % basis.at(i, p) != 0) return false;
    Int q = r[p] / basis.at(i, p);
    for (std::size_t j = p; j < basis.cols; ++j) r[j] -= q * basis.at(i, j);
  }
  for (const auto& v : r)
    if (v != 0) return false;
  return true;
}

bool lattice_equal(const IntMat& a, const IntMat& b) { return hnf_basis(a) == hnf_basis(b); }

bool lattice_contains(const IntMat& outer, const IntMat& inner) {
  IntMat h = hnf_basis(outer);
  for (std::size_t i = 0; i < inner.rows; ++i)
    if (!in_lattice(inner.row(i), h)) return false;
  return true;
}

std::optional<std::vector<Int>> solve_in_lattice(const std::vector<Int>& x, const IntMat& basis) {
  if (basis.rows == 0) {
    for (const auto& v : x)
      if (v != 0) return std::nullopt;
    return std::vector<Int>{};
  }
  IntMat h, u;
  hnf_transform(basis, h, u);
  std::vector<Int> r = x;
  std::vector<Int> d(basis.rows, 0);
  for (std::size_t i = 0; i < h.rows; ++i) {
    if (h.is_zero_row(i)) continue;
    std::size_t p = 0;
    while (p < h.cols && h.at(i, p) == 0) ++p;
    if (r[p] == 0) continue;
    if (r[p] % h.at(i, p) != 0) return std::nullopt;
    d[i] = r[p] / h.at(i, p);
    for (std::size_t j = p; j < h.cols; ++j) r[j] -= d[i] * h.at(i, j);
  }
  for (const auto& v : r)
    if (v != 0) return std::nullopt;
  return row_mul(d, u);
}

Int min_multiplier(const std::vector<Int>& x, const IntMat& basis) {
  IntMat h = hnf_basis(basis);
  std::vector<Rat> r(x.begin(), x.end());
  Int denom_lcm = 1;
  for (std::size_t i = 0; i < h.rows; ++i) {
    std::size_t p = 0;
    while (p < h.cols && h.at(i, p) == 0) ++p;
    if (r[p] == 0) continue;
    Rat q = r[p] / Rat(h.at(i, p));
    for (std::size_t j = p; j < h.cols; ++j) r[j] -= q * Rat(h.at(i, j));
    denom_lcm = lcm_int(denom_lcm, boost::multiprecision::denominator(q));
  }
  for (const auto& v : r)
    if (v != 0) return 0;
  return denom_lcm;
}

IntMat unimodular_inverse(const IntMat& m) {
  if (m.rows != m.cols) throw error("unimodular_inverse of non-square matrix");
  IntMat h, u;
  hnf_transform(m, h, u);
  if (h != IntMat::identity(m.rows)) throw error("matrix is not unimodular");
  return u;
}

}  // namespace divkum
