#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "divkummer/duality.hpp"
#include "divkummer/errors.hpp"

using namespace divkum;

namespace {

FgModule z_module(std::vector<Int> factors) {
  IntMat rel(factors.size(), factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) rel.at(i, i) = factors[i];
  return make_module(Ring::integers(), factors.size(), rel);
}

RatVec rv(std::initializer_list<const char*> xs) {
  RatVec v;
  for (const char* x : xs) v.push_back(parse_rat(x));
  return v;
}

}  // namespace

TEST_CASE("joint kernels") {
  IdealFilter inf = IdealFilter::all_nonzero();
  TorsionTarget t = make_target(1, inf);
  FgModule z6 = z_module({6});

  HomElement zero = make_hom_element(z6, t, {rv({"0"})});
  Submodule k0 = joint_kernel({zero});
  CHECK(k0.module.order() == 6);

  HomElement inj = make_hom_element(z6, t, {rv({"1/6"})});
  CHECK(joint_kernel({inj}).module.is_zero());

  HomElement third = make_hom_element(z6, t, {rv({"1/3"})});
  Submodule k3 = joint_kernel({third});
  CHECK(k3.module.order() == 2);  // {0, 3}

  CHECK_THROWS_AS(joint_kernel({}), input_error);
  CHECK_THROWS_AS(make_hom_element(z6, t, {rv({"1/4"})}), input_error);
}

TEST_CASE("closure") {
  IdealFilter inf = IdealFilter::all_nonzero();
  TorsionTarget t = make_target(1, inf);
  FgModule z6 = z_module({6});
  EndLevel e6 = make_end_level(t, 6);
  CHECK(e6.zbasis.size() == 1);

  // the End-span of 2*(x -> x/6) = (x -> x/3) has 3 elements and equals
  // Hom(Z/6 / {0,3}, T)
  HomElement f = make_hom_element(z6, t, {rv({"1/3"})});
  ClosureResult c = closure({f}, e6);
  CHECK(c.w.size() == 3);
  CHECK(c.equal);

  // the full Hom set is closed
  std::vector<HomElement> full;
  for (int k = 0; k < 6; ++k)
    full.push_back(make_hom_element(z6, t, {RatVec{frac_mod1(Rat(k, 6))}}));
  ClosureResult c2 = closure(full, e6);
  CHECK(c2.equal);
  CHECK(c2.w.size() == 6);

  // two independent characters of (Z/2)^2 generate all four
  FgModule v = z_module({2, 2});
  EndLevel e2 = make_end_level(t, 2);
  HomElement f1 = make_hom_element(v, t, {rv({"1/2"}), rv({"0"})});
  HomElement f2 = make_hom_element(v, t, {rv({"0"}), rv({"1/2"})});
  ClosureResult c3 = closure({f1, f2}, e2);
  CHECK(c3.w.size() == 4);
  CHECK(c3.equal);

  // closure is idempotent
  ClosureResult c4 = closure(c.w, e6);
  CHECK(c4.equal);
  CHECK(c4.w.size() == c.w.size());
}

TEST_CASE("cogenerator property") {
  IdealFilter inf = IdealFilter::all_nonzero();
  TorsionTarget t = make_target(1, inf);
  for (const auto& shape : std::vector<std::vector<Int>>{{2}, {4}, {2, 2}, {6}, {2, 4}}) {
    FgModule m = z_module(shape);
    std::vector<HomElement> full;
    // all homs = all integer matrices mod orders
    std::vector<std::vector<Int>> flats;
    std::vector<Int> cur(m.gens(), 0);
    while (true) {
      std::vector<RatVec> vals;
      for (std::size_t i = 0; i < m.gens(); ++i)
        vals.push_back(RatVec{frac_mod1(Rat(cur[i], m.factors[i]))});
      full.push_back(make_hom_element(m, t, vals));
      std::size_t i = 0;
      for (; i < m.gens(); ++i) {
        cur[i] += 1;
        if (cur[i] < m.factors[i]) break;
        cur[i] = 0;
      }
      if (i == m.gens()) break;
    }
    CHECK(joint_kernel(full).module.is_zero());
  }
}

TEST_CASE("duality bijection on small groups") {
  IdealFilter inf = IdealFilter::all_nonzero();

  // M = 0
  {
    TorsionTarget t = make_target(1, inf);
    FgModule zero = make_module(Ring::integers(), 0, IntMat(0, 0));
    DualityReport rep = duality_check(zero, t, make_end_level(t, 1));
    CHECK(rep.ok());
    CHECK(rep.submodule_count == 1);
  }

  // M = (Z/2)^2, s = 1: 5 submodules on both sides
  {
    TorsionTarget t = make_target(1, inf);
    FgModule m = z_module({2, 2});
    DualityReport rep = duality_check(m, t, make_end_level(t, 2));
    CHECK(rep.ok());
    CHECK(rep.submodule_count == 5);
    CHECK(rep.end_submodule_count == 5);
  }

  // M = Z/4, s = 2: 3 submodules on both sides
  {
    TorsionTarget t = make_target(2, inf);
    FgModule m = z_module({4});
    DualityReport rep = duality_check(m, t, make_end_level(t, 4));
    CHECK(rep.ok());
    CHECK(rep.submodule_count == 3);
    CHECK(rep.end_submodule_count == 3);
  }
}

TEST_CASE("duality over a quadratic order") {
  // Gaussian integers acting on R/2R; T = (Q/Z)^2 with the companion action
  Ring gauss = Ring::quadratic(0, 1);
  IdealFilter inf = IdealFilter::all_nonzero();
  TorsionTarget t = make_target(2, inf, gauss);
  IntMat rel{{2, 0}, {0, 2}};
  IntMat act{{0, 1}, {-1, 0}};
  FgModule m = make_module(gauss, 2, rel, act);
  EndLevel e = make_end_level(t, 2);
  // the commutant of the companion matrix mod 2 has Z-rank 2 plus the
  // doubled lattice
  DualityReport rep = duality_check(m, t, e);
  CHECK(rep.bijective);
  CHECK(rep.inclusion_reversing);
}
