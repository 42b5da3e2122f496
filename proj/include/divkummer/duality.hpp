#pragma once

#include "divkummer/pointed.hpp"

namespace divkum {

// An element of Hom_R(M, T) for a finite module M, stored as one value in
// T per canonical generator.
struct HomElement {
  FgModule source;
  TorsionTarget target;
  std::vector<RatVec> values;
};
HomElement make_hom_element(const FgModule& m, const TorsionTarget& t,
                            std::vector<RatVec> values);
RatVec hom_apply(const HomElement& f, const std::vector<Int>& x);
HomElement hom_compose_end(const HomElement& f, const IntMat& e);  // e o f

// End_R(T) truncated at level e: the full matrix algebra Mat_s(Z/e) over Z,
// or the commutant of the order's action for a quadratic ring; represented
// by a Z-basis of the acting matrices.
struct EndLevel {
  Int e;
  int s;
  std::vector<IntMat> zbasis;
};
EndLevel make_end_level(const TorsionTarget& t, const Int& e);

// Intersection of the kernels; the empty list is rejected (it is not the
// zero map).
Submodule joint_kernel(const std::vector<HomElement>& v);

struct ClosureResult {
  std::vector<HomElement> w;  // all homs vanishing on the joint kernel
  bool equal;                 // the End-span of v already equals w
};
ClosureResult closure(const std::vector<HomElement>& v, const EndLevel& endlevel);

struct DualityReport {
  bool bijective = false;
  bool inclusion_reversing = false;
  std::size_t submodule_count = 0;
  std::size_t end_submodule_count = 0;
  bool ok() const { return bijective && inclusion_reversing; }
};
// Full-lattice verification of the inclusion-reversing bijection between
// R-submodules of M and End(T)-submodules of Hom(M, T).
DualityReport duality_check(const FgModule& m, const TorsionTarget& t, const EndLevel& endlevel);

}  // namespace divkum
