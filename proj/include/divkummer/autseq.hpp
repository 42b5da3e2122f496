#pragma once

#include "divkummer/hulls.hpp"

namespace divkum {

// A finite automorphism group given by its full element table (normalized
// matrices on the carrier's canonical generators, identity first), with a
// greedily extracted generating set.  Closure under composition and
// inversion is verified at construction.
struct AutGroup {
  FgModule carrier;
  std::vector<IntMat> elements;
  std::vector<std::size_t> generators;

  std::size_t order() const { return elements.size(); }
  bool is_abelian() const;
};
AutGroup make_aut_group(const FgModule& carrier, std::vector<IntMat> elements);

// Aut_M(N): automorphisms of the total module fixing the embedded base
// pointwise.  The pointing into T is not required to be preserved.
AutGroup aut_over_base(const JTExtension& n);

// Aut_{M + N[J]}(N), cross-checked against Hom(N/(i(M)+N[J]), N[J]) through
// the correspondence sigma -> (class of n -> sigma(n) - n).
AutGroup aut_fixing_base_and_torsion(const JTExtension& n);

// Automorphisms of N[J] fixing i(M)[J] pointwise that extend to N, i.e. the
// image of the restriction Aut_M(N) -> Aut(N[J]).
AutGroup aut_torsion_quotient(const JTExtension& n);

// All automorphisms of the torsion module fixing i(M)[J], without the
// extension requirement; for normal extensions the restriction above is
// surjective onto this group.
AutGroup aut_of_torsion_fixing_base(const JTExtension& n);

struct ExactSequenceReport {
  AutGroup kernel_group;
  AutGroup middle_group;
  AutGroup quotient_group;
  FgModule hom_kernel;                    // Hom(N/(i(M)+N[J]), N[J])
  std::vector<Int> sat_quotient_factors;  // invariants of sat(N)/sat(M)
  bool order_identity = false;
  bool kernel_abelian = false;
  bool hom_bijection = false;   // sigma -> phi_sigma is a group bijection
  bool action_verified = false; // the quotient acts on the kernel by composition
  std::vector<Int> orders() const;
};

// The fundamental exact sequence
//   1 -> Hom(sat(N)/sat(M), tor N) -> Aut_M(N) -> Aut_{tor M}(tor N) -> 1
// computed on a certified-normal extension.
ExactSequenceReport exact_sequence(const JTExtension& n, const DivisibleHull& gamma,
                                   const Int& level);

}  // namespace divkum
