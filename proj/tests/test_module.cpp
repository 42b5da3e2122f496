#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "divkummer/errors.hpp"
#include "divkummer/module.hpp"

using namespace divkum;

namespace {

FgModule z_module(std::size_t rank, std::vector<Int> factors) {
  std::size_t g = rank + factors.size();
  IntMat rel(factors.size(), g);
  for (std::size_t i = 0; i < factors.size(); ++i) rel.at(i, rank + i) = factors[i];
  return make_module(Ring::integers(), g, rel);
}

}  // namespace

TEST_CASE("canonical presentation") {
  // Z + Z/6 + Z/2 presented with shuffled relations
  IntMat rel{{0, 6, 0}, {0, 0, 2}};
  FgModule m = make_module(Ring::integers(), 3, rel);
  auto inv = invariant_factors(m);
  CHECK(inv.rank == 1);
  CHECK(inv.factors == std::vector<Int>{2, 6});
  CHECK_FALSE(inv.underlying_z);

  // free module of rank 1
  FgModule f = make_module(Ring::integers(), 1, IntMat(0, 1));
  CHECK(invariant_factors(f).rank == 1);
  CHECK(invariant_factors(f).factors.empty());

  // zero module
  FgModule z = make_module(Ring::integers(), 0, IntMat(0, 0));
  CHECK(z.is_zero());

  // redundant generators collapse
  FgModule c = make_module(Ring::integers(), 2, IntMat{{1, 1}, {0, 4}});
  CHECK(c.rank == 0);
  CHECK(c.factors == std::vector<Int>{4});
}

TEST_CASE("kernel quotient preimage") {
  FgModule z4 = z_module(0, {4});
  ModuleMap two = multiplication_map(z4, 2);
  Submodule k = kernel(two);
  CHECK(k.module.factors == std::vector<Int>{2});

  CHECK(kernel(identity_map(z4)).module.is_zero());
  FgModule z6 = z_module(0, {6});
  CHECK(kernel(zero_map(z6, z6)).module.factors == std::vector<Int>{6});

  // Z by 2Z
  FgModule z = z_module(1, {});
  Submodule twoZ = submodule_from_generators(z, IntMat{{2}});
  QuotientResult q = quotient(z, twoZ.inclusion);
  CHECK(q.module.factors == std::vector<Int>{2});
  CHECK(q.module.rank == 0);

  // quotient by zero and by itself
  CHECK(quotient(z6, zero_map(z6, z6)).module == z6);
  CHECK(quotient(z6, identity_map(z6)).module.is_zero());

  // preimage: f = x2 on Z, sub = 12Z -> 6Z
  Submodule twelve = submodule_from_generators(z, IntMat{{12}});
  Submodule pre = preimage(multiplication_map(z, 2), twelve.inclusion);
  CHECK(lattice_equal(pre.inclusion.matrix, IntMat{{6}}));
  // sub = target -> source
  Submodule whole = submodule_from_generators(z, IntMat{{1}});
  CHECK(lattice_equal(preimage(multiplication_map(z, 2), whole.inclusion).inclusion.matrix,
                      IntMat{{1}}));
  // f = identity, sub = S -> S
  CHECK(lattice_equal(preimage(identity_map(z), twelve.inclusion).inclusion.matrix, IntMat{{12}}));
}

TEST_CASE("exactness of kernel and quotient on a finite module") {
  FgModule m = z_module(0, {2, 12});
  ModuleMap f = make_map(m, m, IntMat{{1, 0}, {0, 3}});
  Submodule k = kernel(f);
  // element-wise: image of kernel inclusion equals {x : f(x) = 0}
  std::size_t count = 0;
  for (const auto& x : m.all_elements())
    if (m.is_zero_element(f.apply(x))) ++count;
  CHECK(Int(count) == k.module.order());
  for (const auto& y : k.module.all_elements())
    CHECK(m.is_zero_element(f.apply(k.inclusion.apply(y))));
}

TEST_CASE("hom_module") {
  FgModule z6 = z_module(0, {6});
  FgModule z4 = z_module(0, {4});
  HomModule h = hom_module(z6, z4);
  CHECK(h.group.factors == std::vector<Int>{2});

  // enumeration oracle: maps Z/6 -> Z/4 are multiplications by y with 6y = 0 mod 4
  int oracle = 0;
  for (int y = 0; y < 4; ++y)
    if ((6 * y) % 4 == 0) ++oracle;
  CHECK(Int(oracle) == h.group.order());

  CHECK(hom_module(make_module(Ring::integers(), 0, IntMat(0, 0)), z4).group.is_zero());

  FgModule v = z_module(0, {2, 2});
  FgModule z2 = z_module(0, {2});
  HomModule h2 = hom_module(v, z2);
  CHECK(h2.group.factors == std::vector<Int>{2, 2});

  // elements convert back into genuine maps
  for (const auto& c : h2.group.all_elements()) {
    ModuleMap f = h2.to_map(c);
    CHECK(f.matrix.rows == 2);
  }
}

TEST_CASE("hom cardinality equals exhaustive enumeration") {
  auto mods = {z_module(0, {4}), z_module(0, {2, 2}), z_module(0, {8}), z_module(0, {2, 6})};
  for (const auto& a : mods)
    for (const auto& b : mods) {
      HomModule h = hom_module(a, b);
      // brute force: all matrices with rows killed by the generator orders
      Int count = 0;
      std::vector<std::vector<Int>> rows_choices;
      std::vector<std::vector<Int>> elems = b.all_elements();
      std::vector<std::size_t> idx(a.gens(), 0);
      while (true) {
        IntMat mat(a.gens(), b.gens());
        for (std::size_t i = 0; i < a.gens(); ++i) mat.set_row(i, elems[idx[i]]);
        bool ok = true;
        for (std::size_t i = 0; i < a.gens() && ok; ++i) {
          std::vector<Int> moved = mat.row(i);
          for (auto& x : moved) x *= a.factors[i];
          ok = b.is_zero_element(moved);
        }
        if (ok) ++count;
        std::size_t k = 0;
        for (; k < a.gens(); ++k) {
          if (++idx[k] < elems.size()) break;
          idx[k] = 0;
        }
        if (k == a.gens()) break;
      }
      CHECK(h.group.order() == count);
    }
}

TEST_CASE("quadratic order modules") {
  // Gaussian integers: w^2 = -1, i.e. t=0, n=1
  Ring gauss = Ring::quadratic(0, 1);
  CHECK_THROWS_AS(Ring::quadratic(4, 1), input_error);  // disc 12 > 0

  // R/2R as a module: Z^2 underlying with action [[0,1],[-1,0]]
  IntMat rel{{2, 0}, {0, 2}};
  IntMat act{{0, 1}, {-1, 0}};
  FgModule m = make_module(gauss, 2, rel, act);
  CHECK(m.factors == std::vector<Int>{2, 2});
  CHECK(invariant_factors(m).underlying_z);

  // action matrices must commute for maps
  HomModule h = hom_module(m, m);
  // End_{Z[i]}(R/2R) = R/2R has 4 elements
  CHECK(h.group.order() == 4);

  // an action that does not satisfy the minimal polynomial is rejected
  IntMat rel4{{4, 0}, {0, 4}};
  CHECK_THROWS_AS(make_module(gauss, 2, rel4, IntMat{{1, 0}, {0, 1}}), input_error);
}

TEST_CASE("element helpers") {
  FgModule m = z_module(1, {4});
  CHECK(m.element_order({0, 2}) == 2);
  CHECK(m.element_order({1, 0}) == 0);
  CHECK(m.normalize({3, 7}) == std::vector<Int>{3, 3});
  FgModule f = z_module(0, {2, 3});
  CHECK(f.all_elements().size() == 6);
  CHECK(f.order() == 6);
  CHECK(f.exponent() == 6);
}
