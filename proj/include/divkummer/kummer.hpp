#pragma once

#include "divkummer/duality.hpp"

namespace divkum {

// First group cohomology H^1(G, A) for a finite matrix group acting on a
// finite module, by explicit cocycle/coboundary linear algebra.
// `group` is the full element list (matrices on the canonical generators of
// `a`); closure is verified.
FgModule h1(const std::vector<IntMat>& group, const FgModule& a);

// Generate a matrix group acting on `a` from generators (budget-guarded).
std::vector<IntMat> close_matrix_group(const std::vector<IntMat>& gens, const FgModule& a);

// The smallest positive m | level with m * Mat_s(Z/level) inside the ring
// closure of the generators.
Int subring_index(const std::vector<IntMat>& gens, const Int& level);

// Index of k * Hom_R(x, T) inside Hom_R(x, T), for T with s coordinates.
Int divisibility_index(const FgModule& x, int s, const Int& k);

// A finite stand-in for the pair (im tau, im kappa) at a fixed level.
struct GaloisSimInstance {
  Int level;
  int s;
  FgModule x;                        // level window of Gamma/sat(M)
  std::vector<IntMat> torsion_image; // full element list, s x s mod level
  std::vector<HomElement> kummer_gens;
  TorsionTarget target;

  FgModule t_level() const;  // (Z/level)^s
  IntMat kummer_lattice() const;  // subgroup of Hom(X, T[level]), flat encoding
};
GaloisSimInstance make_instance(const Int& level, int s, const FgModule& x,
                                const std::vector<IntMat>& torsion_gens,
                                const std::vector<HomElement>& kummer_gens);

struct BoundInputs {
  Int d, n, m;
  std::size_t rank_r;
  int s;
};

struct BoundReport {
  Int c;
  std::vector<std::pair<Int, Int>> per_level;  // divisor of level -> index
  std::vector<std::string> notes;
};
// Effective-bound assembly: models Gamma/sat(M) at the given level as the
// rank-r window and returns the index of dnm * Hom inside Hom.
BoundReport kummer_bound(const BoundInputs& in, const std::vector<Int>& torsion_structure,
                         const Int& level, const Ring& ring = Ring::integers());

struct SesReport {
  bool exact = false;
  bool first_map_injective = false;
  Int middle_order;
  std::vector<Int> h1_factors;
};
// The three-term sequence 0 -> sat-points quotient -> ker(im kappa) ->
// H^1(im tau, T[level]) on a simulated instance; sat_points_gens are
// generator rows of the first term inside X.
SesReport ses_cohomology_check(const GaloisSimInstance& inst, const IntMat& sat_points_gens);

struct ThmMainReport {
  bool hyp_d = false, hyp_n = false, hyp_m = false;
  bool conclusion = false;
};
// Checks hypotheses (1)-(3) on the instance (throwing a per-condition
// hypothesis_failure_error when one fails) and then verifies
// im(kappa) >= dnm * Hom(X, T[level]) by explicit containment.
ThmMainReport thm_main_containment_check(const GaloisSimInstance& inst, const BoundInputs& in);

}  // namespace divkum
