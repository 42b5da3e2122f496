#pragma once

#include "divkummer/module.hpp"

namespace divkum {

enum class FilterKind { Zero, One, PPower, AllNonzero, Principal };

// An ideal filter of the base ring, represented by kind and generators.
// Membership and the stabilization exponent are the only primitives: every
// division of finitely generated modules stabilizes at a finite stage, so
// the filter's infinite union is never materialized.
struct IdealFilter {
  FilterKind kind = FilterKind::AllNonzero;
  Int p = 0;                    // PPower
  std::vector<Int> generators;  // Principal

  static IdealFilter zero() { return {FilterKind::Zero, 0, {}}; }
  static IdealFilter one() { return {FilterKind::One, 0, {}}; }
  static IdealFilter p_power(const Int& p);
  static IdealFilter all_nonzero() { return {FilterKind::AllNonzero, 0, {}}; }
  static IdealFilter principal(std::vector<Int> gens);

  bool operator==(const IdealFilter& o) const = default;
  std::string describe() const;
};

// Right ideal of the base ring.  Over Z: a single non-negative generator.
// Over a quadratic order: a 2x2 HNF basis of the ideal as a Z-lattice in
// coordinates (1, w); closure under multiplication by w is checked.
struct Ideal {
  Ring ring;
  Int gen = 0;     // Integers
  IntMat lattice;  // QuadraticOrder, 2x2

  static Ideal integer(const Int& g);
  static Ideal quadratic(const Ring& ring, const IntMat& lattice_rows);
};

bool filter_member(const IdealFilter& j, const Ideal& i);

// Smallest k with: division by the single ideal (k) equals division by the
// whole filter, for every pair whose quotient is isomorphic to q.
Int stabilization_exponent(const IdealFilter& j, const FgModule& q);

// {x in N : k x in image(sub)}, for sub : M -> N injective.
Submodule divide_by_integer(const Int& k, const ModuleMap& sub);
Submodule divide_ideal(const Ideal& i, const ModuleMap& sub);
Submodule divide_filter(const IdealFilter& j, const ModuleMap& sub);

// N[J] with its inclusion.
Submodule torsion(const IdealFilter& j, const FgModule& n);

bool is_j_torsion(const IdealFilter& j, const FgModule& m);
bool is_jmap(const IdealFilter& j, const ModuleMap& f);

// Essentiality of an injective J-map, decided through the reduction to the
// (finite) torsion level.
bool is_essential(const IdealFilter& j, const ModuleMap& f);

// Lattice-level core used by the property suites: all three lattices live in
// the coordinates of the ambient module, already containing its relations.
IntMat divide_lattice(const IdealFilter& j, const IntMat& m_lat, const IntMat& n_lat,
                      const FgModule& ambient);
IntMat torsion_lattice(const IdealFilter& j, const IntMat& n_lat, const FgModule& ambient);

// Brute-force Baer criterion over the finite testbed ring Z/modulus: every
// homomorphism I -> q from an ideal I in the filter must extend to the whole
// ring.  q must be a module over Z/modulus (exponent dividing modulus).
bool baer_check(const Int& modulus, const IdealFilter& j, const FgModule& q);

}  // namespace divkum
