#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "divkummer/matrix.hpp"

#include <random>

using namespace divkum;

namespace {

IntMat random_matrix(std::mt19937_64& rng, int max_dim, int entry_bound) {
  std::uniform_int_distribution<int> dim(1, max_dim);
  std::uniform_int_distribution<int> entry(-entry_bound, entry_bound);
  IntMat m(dim(rng), dim(rng));
  for (auto& v : m.data) v = entry(rng);
  return m;
}

// Determinantal-divisor oracle: d_k = gcd of all k x k minors.
Int minor_gcd(const IntMat& m, std::size_t k) {
  std::vector<std::size_t> ri(k), ci(k);
  Int g = 0;
  std::vector<std::size_t> rows(k), cols(k);
  // iterate over k-subsets of rows and columns
  std::vector<std::size_t> rsel(k);
  for (std::size_t i = 0; i < k; ++i) rsel[i] = i;
  auto next_subset = [](std::vector<std::size_t>& s, std::size_t n) {
    std::size_t k2 = s.size();
    std::size_t i = k2;
    while (i > 0) {
      --i;
      if (s[i] + (k2 - i) < n) {
        ++s[i];
        for (std::size_t j2 = i + 1; j2 < k2; ++j2) s[j2] = s[j2 - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    std::vector<std::size_t> csel(k);
    for (std::size_t i = 0; i < k; ++i) csel[i] = i;
    do {
      IntMat sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rsel[i], csel[j]);
      g = gcd_int(g, determinant(sub));
    } while (next_subset(csel, m.cols));
  } while (next_subset(rsel, m.rows));
  return g;
}

}  // namespace

TEST_CASE("hnf basics") {
  CHECK(hnf(IntMat::identity(2)) == IntMat::identity(2));
  CHECK(hnf(IntMat(2, 2)) == IntMat(2, 2));
  IntMat m{{4, 6}, {2, 3}};
  IntMat h = hnf(m);
  CHECK(h == IntMat{{2, 3}, {0, 0}});
  // row space preserved: each row of one lies in the lattice of the other
  IntMat hb = hnf_basis(m);
  CHECK(in_lattice({4, 6}, hb));
  CHECK(in_lattice({2, 3}, hb));
  IntMat orig = hnf_basis(IntMat{{4, 6}, {2, 3}});
  for (std::size_t i = 0; i < hb.rows; ++i) CHECK(in_lattice(hb.row(i), orig));
}

TEST_CASE("hnf reduces entries above pivots") {
  IntMat m{{1, 7, 3}, {0, 5, 2}, {0, 0, 4}};
  IntMat h = hnf(m);
  // pivots positive, entries above in [0, pivot)
  for (std::size_t i = 0; i < h.rows; ++i) {
    std::size_t p = 0;
    while (p < h.cols && h.at(i, p) == 0) ++p;
    if (p == h.cols) continue;
    CHECK(h.at(i, p) > 0);
    for (std::size_t r = 0; r < i; ++r) {
      CHECK(h.at(r, p) >= 0);
      CHECK(h.at(r, p) < h.at(i, p));
    }
  }
}

TEST_CASE("snf examples") {
  SnfResult r = snf(IntMat{{2, 0}, {0, 3}});
  CHECK(r.diagonal() == std::vector<Int>{1, 6});
  CHECK(snf(IntMat::identity(3)).diagonal() == std::vector<Int>{1, 1, 1});
  CHECK(snf(IntMat{{0}}).diagonal() == std::vector<Int>{0});
}

TEST_CASE("snf round trip and divisor oracle") {
  std::mt19937_64 rng(12345);
  for (int iter = 0; iter < 200; ++iter) {
    IntMat m = random_matrix(rng, 5, 20);
    SnfResult r = snf(m);
    CHECK(abs_int(determinant(r.u)) == 1);
    CHECK(abs_int(determinant(r.v)) == 1);
    CHECK(mat_mul(mat_mul(r.u, m), r.v) == r.s);
    auto d = r.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      if (d[i + 1] != 0) CHECK((d[i] == 0 ? d[i + 1] == 0 : d[i + 1] % d[i] == 0));
    }
    Int prev = 1;
    for (std::size_t k = 1; k <= d.size(); ++k) {
      Int dd = minor_gcd(m, k);
      if (dd == 0) {
        CHECK(d[k - 1] == 0);
      } else {
        CHECK(d[k - 1] == dd / prev);
        prev = dd;
      }
    }
  }
}

TEST_CASE("kernel and preimage") {
  IntMat m{{2, 4}, {1, 2}};
  IntMat k = kernel_lattice(m);
  CHECK(k.rows == 1);
  CHECK(in_lattice({1, -2}, k));

  // {x : 2x in 12Z} = 6Z
  IntMat pre = preimage_lattice(IntMat{{2}}, IntMat{{12}});
  CHECK(pre == IntMat{{6}});
}

TEST_CASE("lattice operations") {
  IntMat a{{2, 0}, {0, 3}};
  IntMat b{{3, 0}, {0, 2}};
  IntMat inter = lattice_intersect(a, b);
  CHECK(lattice_equal(inter, IntMat{{6, 0}, {0, 6}}));
  IntMat sum = lattice_sum(a, b);
  CHECK(lattice_equal(sum, IntMat{{1, 0}, {0, 1}}));
  CHECK(lattice_contains(sum, inter));
  CHECK(!lattice_contains(inter, sum));
}

TEST_CASE("solve in lattice") {
  IntMat basis{{2, 0}, {0, 3}};
  auto sol = solve_in_lattice({4, 9}, basis);
  REQUIRE(sol.has_value());
  CHECK(row_mul(*sol, basis) == std::vector<Int>{4, 9});
  CHECK(!solve_in_lattice({1, 0}, basis).has_value());
  CHECK(min_multiplier({1, 0}, basis) == 2);
  CHECK(min_multiplier({1, 1}, basis) == 6);
}

TEST_CASE("unimodular inverse") {
  IntMat u{{1, 2}, {0, 1}};
  IntMat inv = unimodular_inverse(u);
  CHECK(mat_mul(u, inv) == IntMat::identity(2));
  CHECK_THROWS(unimodular_inverse(IntMat{{2, 0}, {0, 1}}));
}
