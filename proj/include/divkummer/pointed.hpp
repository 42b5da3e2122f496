#pragma once

#include "divkummer/filter.hpp"

namespace divkum {

using RatVec = std::vector<Rat>;

// The torsion target T: s coordinates of Q/Z (filter inf) or of the Prufer
// group Z[1/p]/Z (filter p^inf).  Elements are exact rationals normalized
// into [0,1).  Over a quadratic order T has s = 2 and carries the action of
// the ring generator through the companion matrix of x^2 - t x + n.
struct TorsionTarget {
  int s = 1;
  IdealFilter filter;
  Ring ring;

  IntMat omega_action() const;  // 2x2, row convention
  RatVec normalize(RatVec v) const;
  bool denominator_ok(const Rat& q) const;
  bool operator==(const TorsionTarget& o) const = default;
};
TorsionTarget make_target(int s, const IdealFilter& j, const Ring& ring = Ring::integers());

RatVec rat_add(const RatVec& a, const RatVec& b);
RatVec rat_scale(const Int& k, const RatVec& a);
bool rat_is_zero(const RatVec& a);

// A module together with an injective embedding of its J-torsion into T,
// recorded on the canonical generators of the torsion submodule.
struct PointedModule {
  IdealFilter j;
  TorsionTarget target;
  FgModule module;
  Submodule tor;  // torsion(j, module)
  std::vector<RatVec> pointing;

  RatVec point_tor(const std::vector<Int>& tor_coords) const;
  // Pointing of an arbitrary module element (must be J-torsion).
  RatVec point_element(const std::vector<Int>& x) const;
  // J-torsion component of x under the canonical primary splitting,
  // as a module element.
  std::vector<Int> j_component(const std::vector<Int>& x) const;
};
PointedModule make_pointed(const IdealFilter& j, const TorsionTarget& target,
                           const FgModule& module, std::vector<RatVec> pointing);
// Zero pointing; torsion must be trivial unless the values are supplied.
PointedModule make_pointed_trivial(const IdealFilter& j, const TorsionTarget& target,
                                   const FgModule& module);

struct PointedMap {
  PointedModule source, target;
  ModuleMap map;
};
PointedMap make_pointed_map(const PointedModule& source, const PointedModule& target,
                            IntMat matrix);
bool pointed_map_compatible(const PointedModule& source, const PointedModule& target,
                            const ModuleMap& f);

// A (J,T)-extension: an injective J-map of pointed modules.
struct JTExtension {
  PointedModule base, total;
  ModuleMap inc;
};
JTExtension make_extension(const PointedModule& base, const PointedModule& total, IntMat inc);

// D_J(f(L), M) = f(L) + M[J]?
bool is_pure(const PointedMap& f);

struct PushoutResult {
  PointedModule p;
  PointedMap into_left;   // M -> P
  PointedMap into_right;  // N -> P
  IntMat from_canonical;  // canonical P generators in (M | N) block coordinates
};

// Pushout of f : L -> M (injective and pure) along g : L -> N in the
// category of T-pointed modules.  Throws not_pure_error when purity fails.
PushoutResult pushout(const PointedMap& f, const PointedMap& g);

// The unique map P -> Q induced by a competitor (Q, k, l) with k f = l g.
PointedMap mediate(const PushoutResult& po, const PointedMap& k, const PointedMap& l);

// Structural form of the saturation sat(M) = (M/M[J]) + T: the quotient
// keeps the prime-to-J torsion; the whole of T is carried symbolically.
struct SaturatedModule {
  FgModule quotient_part;
  TorsionTarget target;
  IntMat free_map;                    // module gens -> quotient coordinates
  std::vector<RatVec> t_component;    // T-component of each module generator
};
SaturatedModule saturate(const PointedModule& m);

// Finite window of the saturation at torsion level L: the honest pointed
// module (M/M[J]) + (Z/L)^s with its structural map.
struct WindowSat {
  PointedModule sat;
  ModuleMap incs;  // m.module -> sat.module
};
WindowSat saturate_window(const PointedModule& m, const Int& level);
bool is_window_saturated(const PointedModule& m, const Int& level);

// Minimal window level for the pointing denominators appearing in m.
Int pointing_level(const PointedModule& m);

struct PullbackResult {
  JTExtension ext;
  ModuleMap into_ambient;  // ext.total.module -> (ambient total of the input)
};
PullbackResult pullback(const PointedMap& phi, const JTExtension& ext);

// Pullback re-expressed over the source of an injective phi, so extensions
// of phi(L) and of L can be compared directly.
PullbackResult pullback_to_source(const PointedMap& phi, const JTExtension& ext);

struct PushforwardResult {
  JTExtension ext;       // extension of phi's target
  PointedMap push_map;   // N -> phi_* N
  PushoutResult raw;
};
PushforwardResult pushforward(const PointedMap& phi, const JTExtension& ext);

struct ExtensionMaps {
  std::vector<PointedMap> maps;        // total(a) -> total(b)
  std::vector<bool> is_isomorphism;
};
// All maps of (J,T)-extensions a -> b over the same base module.
ExtensionMaps extension_maps(const JTExtension& a, const JTExtension& b);

struct AdjunctionReport {
  bool hom_bijection = false;
  bool triangle_unit = false;
  bool triangle_counit = false;
  bool counit_iso = false;
  std::size_t hom_count = 0;
};
// Verifies Hom(N, phi^* P) ~ Hom(phi_* N, P) together with the triangle
// identities for the unit and counit of the adjunction.
AdjunctionReport adjunction_check(const PointedMap& phi, const JTExtension& n,
                                  const JTExtension& p);

}  // namespace divkum
