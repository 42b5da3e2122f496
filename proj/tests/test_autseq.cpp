#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "divkummer/autseq.hpp"
#include "divkummer/errors.hpp"

using namespace divkum;

namespace {

FgModule z_module(std::size_t rank, std::vector<Int> factors) {
  std::size_t g = rank + factors.size();
  IntMat rel(factors.size(), g);
  for (std::size_t i = 0; i < factors.size(); ++i) rel.at(i, rank + i) = factors[i];
  return make_module(Ring::integers(), g, rel);
}

RatVec rv(std::initializer_list<const char*> xs) {
  RatVec v;
  for (const char* x : xs) v.push_back(parse_rat(x));
  return v;
}

}  // namespace

TEST_CASE("aut groups of small extensions") {
  IdealFilter two = IdealFilter::p_power(2);
  TorsionTarget t = make_target(1, two);

  // N = M: everything trivial
  FgModule m = z_module(1, {2});
  PointedModule pm = make_pointed(two, t, m, {rv({"1/2"})});
  JTExtension triv = make_extension(pm, pm, IntMat::identity(2));
  CHECK(aut_over_base(triv).order() == 1);
  CHECK(aut_fixing_base_and_torsion(triv).order() == 1);
  CHECK(aut_torsion_quotient(triv).order() == 1);

  // N = Z + Z/4 over M = Z + Z/2
  FgModule n = z_module(1, {4});
  PointedModule pn = make_pointed(two, t, n, {rv({"1/4"})});
  JTExtension ext = make_extension(pm, pn, IntMat{{1, 0}, {0, 2}});
  CHECK(aut_over_base(ext).order() == 2);
  CHECK(aut_fixing_base_and_torsion(ext).order() == 1);
  AutGroup tq = aut_torsion_quotient(ext);
  CHECK(tq.order() == 2);
  // normal extension: the restriction is onto Aut_{M[J]}(N[J])
  CHECK(aut_of_torsion_fixing_base(ext).order() == 2);

  // N = (1/2)Z + Z/4 over M = Z + Z/2: orders (2, 4, 2)
  JTExtension ext2 = make_extension(pm, pn, IntMat{{2, 0}, {0, 2}});
  CHECK(aut_over_base(ext2).order() == 4);
  CHECK(aut_fixing_base_and_torsion(ext2).order() == 2);
  CHECK(aut_torsion_quotient(ext2).order() == 2);

  // N with zero J-torsion: trivial kernel group
  FgModule zfree = z_module(1, {});
  PointedModule pz = make_pointed_trivial(two, t, zfree);
  JTExtension ext3 = make_extension(pz, pz, IntMat{{2}});
  CHECK(aut_fixing_base_and_torsion(ext3).order() == 1);

  // N = (1/2)Z + Z/2 over M = Z + Z/2: kernel Hom(Z/2, Z/2) of order 2
  FgModule n2 = z_module(1, {2});
  PointedModule pn2 = make_pointed(two, t, n2, {rv({"1/2"})});
  JTExtension ext4 = make_extension(pm, pn2, IntMat{{2, 0}, {0, 1}});
  CHECK(aut_fixing_base_and_torsion(ext4).order() == 2);
}

TEST_CASE("torsion quotient on a two-dimensional example") {
  IdealFilter two = IdealFilter::p_power(2);
  TorsionTarget t = make_target(2, two);
  // N = Z + (Z/2)^2 over M = Z + diagonal Z/2
  FgModule m = z_module(1, {2});
  PointedModule pm = make_pointed(two, t, m, {rv({"1/2", "1/2"})});
  FgModule n = z_module(1, {2, 2});
  PointedModule pn = make_pointed(two, t, n, {rv({"1/2", "0"}), rv({"0", "1/2"})});
  JTExtension ext = make_extension(pm, pn, IntMat{{1, 0, 0}, {0, 1, 1}});
  AutGroup tq = aut_torsion_quotient(ext);
  CHECK(tq.order() == 2);
}

TEST_CASE("exact sequence reports") {
  IdealFilter two = IdealFilter::p_power(2);
  TorsionTarget t = make_target(1, two);
  FgModule m = z_module(1, {2});
  PointedModule pm = make_pointed(two, t, m, {rv({"1/2"})});
  DivisibleHull gamma = maximal_extension(pm);

  // trivial extension: orders (1,1,1)
  JTExtension triv = make_extension(pm, pm, IntMat::identity(2));
  ExactSequenceReport r0 = exact_sequence(triv, gamma, 16);
  CHECK(r0.orders() == std::vector<Int>{1, 1, 1});
  CHECK(r0.order_identity);

  // N = Z + Z/4 over M = Z + Z/2: orders (1,2,2)
  FgModule n = z_module(1, {4});
  PointedModule pn = make_pointed(two, t, n, {rv({"1/4"})});
  JTExtension ext = make_extension(pm, pn, IntMat{{1, 0}, {0, 2}});
  ExactSequenceReport r1 = exact_sequence(ext, gamma, 16);
  CHECK(r1.orders() == std::vector<Int>{1, 2, 2});
  CHECK(r1.order_identity);
  CHECK(r1.kernel_abelian);
  CHECK(r1.hom_bijection);
  CHECK(r1.action_verified);

  // N = (1/2)Z + Z/4 over M = Z + Z/2: orders (2,4,2)
  JTExtension ext2 = make_extension(pm, pn, IntMat{{2, 0}, {0, 2}});
  ExactSequenceReport r2 = exact_sequence(ext2, gamma, 16);
  CHECK(r2.orders() == std::vector<Int>{2, 4, 2});
  CHECK(r2.order_identity);
  CHECK(r2.kernel_abelian);
  CHECK(r2.hom_bijection);
  CHECK(r2.action_verified);
  CHECK(r2.hom_kernel.factors == std::vector<Int>{2});
  CHECK(r2.sat_quotient_factors == std::vector<Int>{2});

  // a non-normal extension is refused
  FgModule zfree = z_module(1, {});
  PointedModule pz = make_pointed_trivial(two, t, zfree);
  JTExtension bad = make_extension(pz, pz, IntMat{{4}});
  DivisibleHull gz = maximal_extension(pz);
  CHECK_THROWS_AS(exact_sequence(bad, gz, 16), not_normal_error);
}

TEST_CASE("restriction surjectivity for normal extensions") {
  IdealFilter two = IdealFilter::p_power(2);
  TorsionTarget t = make_target(1, two);
  FgModule m = z_module(1, {2});
  PointedModule pm = make_pointed(two, t, m, {rv({"1/2"})});
  FgModule n = z_module(1, {8});
  PointedModule pn = make_pointed(two, t, n, {rv({"1/8"})});
  JTExtension ext = make_extension(pm, pn, IntMat{{1, 0}, {0, 4}});
  DivisibleHull gamma = maximal_extension(pm);
  CHECK(is_normal(ext, gamma, 16).normal);
  CHECK(aut_torsion_quotient(ext).order() == aut_of_torsion_fixing_base(ext).order());
}
