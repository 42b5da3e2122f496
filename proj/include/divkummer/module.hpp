#pragma once

#include "divkummer/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace divkum {

enum class RingKind { Integers, QuadraticOrder };

// Z, or the order Z[w] with w^2 = t*w - n (imaginary quadratic: t^2 - 4n < 0).
struct Ring {
  RingKind kind = RingKind::Integers;
  Int t = 0, n = 0;

  static Ring integers() { return Ring{}; }
  static Ring quadratic(const Int& t, const Int& n);
  bool is_quadratic() const { return kind == RingKind::QuadraticOrder; }
  Int discriminant() const { return t * t - 4 * n; }
  bool operator==(const Ring& o) const = default;
};

// Finitely generated module in canonical SNF presentation: the first `rank`
// generators are free, the remaining ones are torsion with invariant factors
// d_1 | d_2 | ... (all > 1, ascending).  Elements are integer coefficient
// rows over the canonical generators; torsion coordinates live mod d_i.
class FgModule {
 public:
  FgModule() = default;

  Ring ring;
  std::size_t rank = 0;
  std::vector<Int> factors;
  std::optional<IntMat> action;  // g x g, acting on the right of element rows

  std::size_t gens() const { return rank + factors.size(); }
  bool is_finite() const { return rank == 0; }
  bool is_zero() const { return gens() == 0; }
  Int order() const;     // throws if infinite
  Int exponent() const;  // exponent of the torsion part (1 if none)
  IntMat relation_basis() const;

  // Reduce a coefficient row to the canonical representative.
  std::vector<Int> normalize(std::vector<Int> x) const;
  bool is_zero_element(const std::vector<Int>& x) const;
  std::vector<Int> act(const std::vector<Int>& x) const;  // apply the ring generator

  // All elements, normalized; guarded by the enumeration budget.
  std::vector<std::vector<Int>> all_elements() const;

  // Additive order of an element.
  Int element_order(const std::vector<Int>& x) const;

  bool operator==(const FgModule& o) const = default;
  std::string describe() const;  // e.g. "Z^2 + Z/2 + Z/6"
};

// Canonicalization result: module plus the two change-of-coordinate maps
// between the input presentation and the canonical one.
struct Presented {
  FgModule module;
  IntMat to_canonical;    // old gens x new gens: x_old * to_canonical = x_canonical
  IntMat from_canonical;  // new gens x old gens: canonical generator j as old row
};

// Build the canonical module from an arbitrary presentation (relations rows
// over `gens` generators).  The optional action is given on the input
// generators and is checked: it must preserve the relation lattice and
// satisfy w^2 = t*w - n on the cokernel.
Presented present(const Ring& ring, std::size_t gens, const IntMat& relations,
                  const std::optional<IntMat>& action = std::nullopt);

FgModule make_module(const Ring& ring, std::size_t gens, const IntMat& relations,
                     const std::optional<IntMat>& action = std::nullopt);

// Module homomorphism; rows of `matrix` are the images of the source
// generators, in target coordinates.  Well-definedness (and, when both
// modules carry an action, equivariance) is checked at construction.
struct ModuleMap {
  FgModule source, target;
  IntMat matrix;

  std::vector<Int> apply(const std::vector<Int>& x) const;
  bool is_injective() const;
  bool is_surjective() const;
  bool is_identity() const;
};

ModuleMap make_map(const FgModule& source, const FgModule& target, IntMat matrix);
ModuleMap identity_map(const FgModule& m);
ModuleMap zero_map(const FgModule& source, const FgModule& target);
ModuleMap multiplication_map(const FgModule& m, const Int& k);
ModuleMap compose(const ModuleMap& first, const ModuleMap& then);
bool maps_equal(const ModuleMap& a, const ModuleMap& b);

// Image of a map as a lattice in target coordinates (not including the
// target relations).
IntMat image_lattice(const ModuleMap& f);

struct Submodule {
  FgModule module;
  ModuleMap inclusion;  // module -> ambient
};

// Submodule of `ambient` generated by the given coefficient rows (closed
// under the ring action automatically when the ambient carries one).
Submodule submodule_from_generators(const FgModule& ambient, const IntMat& generators);

// Lattice in ambient coordinates representing a submodule: the image of the
// inclusion together with the ambient relations.
IntMat submodule_lattice(const Submodule& s);

struct QuotientResult {
  FgModule module;
  ModuleMap projection;  // ambient -> quotient
};

// Kernel of f, with its inclusion into the source.
Submodule kernel(const ModuleMap& f);

// Quotient of n by the image of sub (sub need not be injective).
QuotientResult quotient(const FgModule& n, const ModuleMap& sub);
QuotientResult quotient_by_lattice(const FgModule& n, const IntMat& lattice_rows);

// {x in source : f(x) in image(sub)} where sub maps into f's target.
Submodule preimage(const ModuleMap& f, const ModuleMap& sub);

struct InvariantFactors {
  std::size_t rank;
  std::vector<Int> factors;
  bool underlying_z;  // true when reported for a quadratic-order module
};
InvariantFactors invariant_factors(const FgModule& m);

// Hom group of two finite modules (ring-linear: action-commuting when the
// ring is a quadratic order), with a basis converting elements back into
// actual maps.
struct HomModule {
  FgModule group;
  std::vector<IntMat> basis;  // one source x target matrix per generator of `group`
  FgModule source, target;

  ModuleMap to_map(const std::vector<Int>& coeffs) const;
};
HomModule hom_module(const FgModule& a, const FgModule& b);

// Solve f(x) = y; returns a preimage row if one exists.
std::optional<std::vector<Int>> solve_map(const ModuleMap& f, const std::vector<Int>& y);

// Express y (an ambient element known to lie in the submodule) in the
// submodule's coordinates.
std::optional<std::vector<Int>> express_in_submodule(const Submodule& s, const std::vector<Int>& y);

}  // namespace divkum
