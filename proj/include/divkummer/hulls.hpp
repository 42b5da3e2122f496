#pragma once

#include "divkummer/pointed.hpp"

namespace divkum {

// The canonical structure underlying a module over Z (the quadratic-order
// action, when present, is dropped but can be carried alongside).
FgModule underlying_z_module(const FgModule& m);

// Structured J-hull: (Z[1/p])^r + (Z[1/p]/Z)^k + residual for p^inf, and
// Q^r + (Q/Z)^k for inf.  The residual block is finite of order coprime to
// the filter and is carried verbatim.  Infinite blocks are never
// materialized; computations run inside truncation windows.
struct HullVec {
  RatVec loc;               // localized coordinates
  RatVec pruf;              // Prufer coordinates, in [0,1)
  std::vector<Int> resid;   // residual coordinates
};

struct DivisibleHull {
  Ring ring;
  IdealFilter j;
  std::size_t loc_rank = 0;
  std::size_t prufer_count = 0;
  FgModule residual;
  FgModule source;                 // the embedded module
  std::vector<HullVec> embedding;  // image of each source generator
  bool prufer_is_target = false;   // the Prufer block is all of T
  std::optional<TorsionTarget> target;
  std::optional<IntMat> action;    // quadratic-order action, carried along
};

DivisibleHull jhull(const IdealFilter& j, const FgModule& m);

// Hull of the saturation: the maximal (J,T)-extension of a pointed module.
DivisibleHull maximal_extension(const PointedModule& m);

// Finite window Z^r (in units of 1/L) + (Z/L)^k + residual.
struct HullWindow {
  FgModule window;
  ModuleMap embed;  // underlying-Z source -> window
  Int level;
};
HullWindow hull_window(const DivisibleHull& h, const Int& level);

Int minimal_window_level(const DivisibleHull& h);
Int minimal_embedding_level(const JTExtension& n, const DivisibleHull& gamma);

// All injective J-maps f : N -> Gamma(level window) with f o i = iota.
// Exhaustive at any admissible level; smaller levels raise
// level_too_small_error carrying the minimal sufficient one.
std::vector<ModuleMap> embeddings_at_level(const JTExtension& n, const DivisibleHull& gamma,
                                           const Int& level);

struct NormalityReport {
  bool normal = false;
  Int level;
  std::size_t embedding_count = 0;
};
NormalityReport is_normal(const JTExtension& n, const DivisibleHull& gamma, const Int& level);

}  // namespace divkum
