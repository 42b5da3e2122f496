#include "divkummer/module.hpp"

#include "divkummer/errors.hpp"

#include <algorithm>
#include <numeric>

namespace divkum {

Ring Ring::quadratic(const Int& t, const Int& n) {
  Ring r;
  r.kind = RingKind::QuadraticOrder;
  r.t = t;
  r.n = n;
  if (r.discriminant() >= 0)
    throw input_error("BadDiscriminant: t^2 - 4n must be negative for an imaginary quadratic order");
  return r;
}

Int FgModule::order() const {
  if (!is_finite()) throw error("order of an infinite module");
  Int o = 1;
  for (const auto& d : factors) o *= d;
  return o;
}

Int FgModule::exponent() const { return factors.empty() ? Int(1) : factors.back(); }

IntMat FgModule::relation_basis() const {
  IntMat rel(factors.size(), gens());
  for (std::size_t i = 0; i < factors.size(); ++i) rel.at(i, rank + i) = factors[i];
  return rel;
}

std::vector<Int> FgModule::normalize(std::vector<Int> x) const {
  if (x.size() != gens()) throw error("element has wrong length");
  for (std::size_t i = 0; i < factors.size(); ++i)
    x[rank + i] = floor_mod(x[rank + i], factors[i]);
  return x;
}

bool FgModule::is_zero_element(const std::vector<Int>& x) const {
  auto n = normalize(x);
  return std::all_of(n.begin(), n.end(), [](const Int& v) { return v == 0; });
}

std::vector<Int> FgModule::act(const std::vector<Int>& x) const {
  if (!action) throw error("module carries no ring action");
  return normalize(row_mul(x, *action));
}

std::vector<std::vector<Int>> FgModule::all_elements() const {
  if (!is_finite()) throw infinite_search_error("element enumeration of an infinite module");
  Int o = order();
  if (o > Int(enum_budget())) throw size_limit_error("module too large to enumerate");
  std::vector<std::vector<Int>> out;
  out.reserve(static_cast<std::size_t>(o));
  std::vector<Int> cur(gens(), 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    for (; i < factors.size(); ++i) {
      cur[i] += 1;
      if (cur[i] < factors[i]) break;
      cur[i] = 0;
    }
    if (i == factors.size()) break;
  }
  return out;
}

Int FgModule::element_order(const std::vector<Int>& x) const {
  auto v = normalize(x);
  for (std::size_t i = 0; i < rank; ++i)
    if (v[i] != 0) return 0;  // infinite order
  Int o = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (v[rank + i] == 0) continue;
    o = lcm_int(o, factors[i] / gcd_int(v[rank + i], factors[i]));
  }
  return o;
}

std::string FgModule::describe() const {
  if (is_zero()) return "0";
  std::string s;
  if (rank > 0) {
    s = "Z";
    if (rank > 1) s += "^" + std::to_string(rank);
  }
  for (const auto& d : factors) {
    if (!s.empty()) s += " + ";
    s += "Z/" + to_string(d);
  }
  return s;
}

namespace {

void check_action_valid(const Ring& ring, std::size_t gens, const IntMat& relations,
                        const IntMat& a) {
  if (a.rows != gens || a.cols != gens) throw input_error("action matrix has wrong shape");
  IntMat lat = hnf_basis(relations);
  IntMat moved = mat_mul(relations, a);
  for (std::size_t i = 0; i < moved.rows; ++i)
    if (!in_lattice(moved.row(i), lat))
      throw input_error("action does not preserve the relation lattice");
  // w^2 - t*w + n must vanish on the cokernel.
  IntMat poly = mat_add(mat_sub(mat_mul(a, a), scalar_mul(ring.t, a)),
                        scalar_mul(ring.n, IntMat::identity(gens)));
  for (std::size_t i = 0; i < poly.rows; ++i)
    if (!in_lattice(poly.row(i), lat))
      throw input_error("action does not satisfy the order's minimal polynomial");
}

}  // namespace

Presented present(const Ring& ring, std::size_t gens, const IntMat& relations,
                  const std::optional<IntMat>& action) {
  IntMat rel = relations;
  if (rel.rows == 0) rel = IntMat(0, gens);
  if (rel.cols != gens) throw input_error("relation matrix has wrong number of columns");
  if (ring.is_quadratic() != action.has_value())
    throw input_error("quadratic-order modules require an action matrix; Z-modules forbid one");
  if (action) check_action_valid(ring, gens, rel, *action);

  SnfResult dec = snf(rel);
  std::vector<Int> diag = dec.diagonal();
  diag.resize(gens, Int(0));  // columns beyond min(m,g) are free

  std::vector<std::size_t> free_cols, torsion_cols;
  for (std::size_t j = 0; j < gens; ++j) {
    if (diag[j] == 0)
      free_cols.push_back(j);
    else if (diag[j] != 1)
      torsion_cols.push_back(j);
  }

  std::vector<std::size_t> perm = free_cols;
  perm.insert(perm.end(), torsion_cols.begin(), torsion_cols.end());
  const std::size_t g_new = perm.size();

  IntMat vinv = unimodular_inverse(dec.v);
  IntMat to_can(gens, g_new), from_can(g_new, gens);
  for (std::size_t j = 0; j < g_new; ++j) {
    for (std::size_t i = 0; i < gens; ++i) to_can.at(i, j) = dec.v.at(i, perm[j]);
    for (std::size_t i = 0; i < gens; ++i) from_can.at(j, i) = vinv.at(perm[j], i);
  }

  FgModule m;
  m.ring = ring;
  m.rank = free_cols.size();
  for (std::size_t j : torsion_cols) m.factors.push_back(diag[j]);

  if (action) {
    IntMat a_can = mat_mul(from_can, mat_mul(*action, to_can));
    for (std::size_t i = 0; i < a_can.rows; ++i) a_can.set_row(i, m.normalize(a_can.row(i)));
    m.action = a_can;
  }

  return Presented{std::move(m), std::move(to_can), std::move(from_can)};
}

FgModule make_module(const Ring& ring, std::size_t gens, const IntMat& relations,
                     const std::optional<IntMat>& action) {
  return present(ring, gens, relations, action).module;
}

std::vector<Int> ModuleMap::apply(const std::vector<Int>& x) const {
  return target.normalize(row_mul(x, matrix));
}

bool ModuleMap::is_injective() const { return kernel(*this).module.is_zero(); }

bool ModuleMap::is_surjective() const {
  IntMat full = lattice_sum(matrix, target.relation_basis());
  return lattice_equal(full, IntMat::identity(target.gens()));
}

bool ModuleMap::is_identity() const {
  if (!(source == target)) return false;
  return maps_equal(*this, identity_map(source));
}

ModuleMap make_map(const FgModule& source, const FgModule& target, IntMat matrix) {
  if (!(source.ring == target.ring)) throw input_error("map between modules over different rings");
  if (matrix.rows != source.gens() || matrix.cols != target.gens())
    throw input_error("map matrix has wrong shape");
  for (std::size_t i = 0; i < source.factors.size(); ++i) {
    std::vector<Int> moved = matrix.row(source.rank + i);
    for (auto& v : moved) v *= source.factors[i];
    if (!target.is_zero_element(moved))
      throw input_error("map does not respect the source relations");
  }
  if (source.action && target.action) {
    IntMat lhs = mat_mul(*source.action, matrix);
    IntMat rhs = mat_mul(matrix, *target.action);
    IntMat diff = mat_sub(lhs, rhs);
    for (std::size_t i = 0; i < diff.rows; ++i)
      if (!target.is_zero_element(diff.row(i)))
        throw input_error("map does not commute with the ring action");
  }
  for (std::size_t i = 0; i < matrix.rows; ++i) matrix.set_row(i, target.normalize(matrix.row(i)));
  return ModuleMap{source, target, std::move(matrix)};
}

ModuleMap identity_map(const FgModule& m) {
  return make_map(m, m, IntMat::identity(m.gens()));
}

ModuleMap zero_map(const FgModule& source, const FgModule& target) {
  return make_map(source, target, IntMat(source.gens(), target.gens()));
}

ModuleMap multiplication_map(const FgModule& m, const Int& k) {
  return make_map(m, m, scalar_mul(k, IntMat::identity(m.gens())));
}

ModuleMap compose(const ModuleMap& first, const ModuleMap& then) {
  if (!(first.target == then.source)) throw error("compose: target/source mismatch");
  return make_map(first.source, then.target, mat_mul(first.matrix, then.matrix));
}

bool maps_equal(const ModuleMap& a, const ModuleMap& b) {
  if (!(a.source == b.source) || !(a.target == b.target)) return false;
  for (std::size_t i = 0; i < a.matrix.rows; ++i) {
    std::vector<Int> diff = a.matrix.row(i);
    auto other = b.matrix.row(i);
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] -= other[j];
    if (!a.target.is_zero_element(diff)) return false;
  }
  return true;
}

IntMat image_lattice(const ModuleMap& f) { return hnf_basis(f.matrix); }

Submodule submodule_from_generators(const FgModule& ambient, const IntMat& generators) {
  IntMat gens = generators;
  if (gens.rows == 0) gens = IntMat(0, ambient.gens());
  if (gens.cols != ambient.gens()) throw error("submodule generators have wrong length");

  if (ambient.action) gens = vstack(gens, mat_mul(gens, *ambient.action));

  IntMat amb_rel = ambient.relation_basis();
  IntMat rel = preimage_lattice(gens, amb_rel);

  std::optional<IntMat> sub_action;
  if (ambient.action) {
    IntMat span = vstack(gens, amb_rel);
    IntMat act(gens.rows, gens.rows);
    for (std::size_t i = 0; i < gens.rows; ++i) {
      auto moved = row_mul(gens.row(i), *ambient.action);
      auto sol = solve_in_lattice(moved, span);
      if (!sol) throw error("submodule is not closed under the ring action");
      for (std::size_t j = 0; j < gens.rows; ++j) act.at(i, j) = (*sol)[j];
    }
    sub_action = act;
  }

  Presented pres = present(ambient.ring, gens.rows, rel, sub_action);
  IntMat inc = mat_mul(pres.from_canonical, gens);
  return Submodule{pres.module, make_map(pres.module, ambient, std::move(inc))};
}

IntMat submodule_lattice(const Submodule& s) {
  return lattice_sum(s.inclusion.matrix, s.inclusion.target.relation_basis());
}

Submodule kernel(const ModuleMap& f) {
  IntMat pre = preimage_lattice(f.matrix, f.target.relation_basis());
  return submodule_from_generators(f.source, pre);
}

QuotientResult quotient_by_lattice(const FgModule& n, const IntMat& lattice_rows) {
  IntMat rel = vstack(n.relation_basis(), lattice_rows);
  Presented pres = present(n.ring, n.gens(), rel, n.action);
  return QuotientResult{pres.module, make_map(n, pres.module, pres.to_canonical)};
}

QuotientResult quotient(const FgModule& n, const ModuleMap& sub) {
  if (!(sub.target == n)) throw error("quotient: submodule maps elsewhere");
  return quotient_by_lattice(n, sub.matrix);
}

Submodule preimage(const ModuleMap& f, const ModuleMap& sub) {
  if (!(sub.target == f.target)) throw error("preimage: submodule maps elsewhere");
  IntMat target_lat = lattice_sum(sub.matrix, f.target.relation_basis());
  IntMat pre = preimage_lattice(f.matrix, target_lat);
  return submodule_from_generators(f.source, pre);
}

InvariantFactors invariant_factors(const FgModule& m) {
  return InvariantFactors{m.rank, m.factors, m.ring.is_quadratic()};
}

ModuleMap HomModule::to_map(const std::vector<Int>& coeffs) const {
  if (coeffs.size() != group.gens()) throw error("hom element has wrong length");
  IntMat m(source.gens(), target.gens());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] += coeffs[k] * basis[k].data[i];
  }
  return make_map(source, target, std::move(m));
}

HomModule hom_module(const FgModule& a, const FgModule& b) {
  if (!a.is_finite() || !b.is_finite()) throw infinite_search_error("hom_module needs finite modules");
  if (!(a.ring == b.ring)) throw input_error("hom_module over different rings");
  const std::size_t ga = a.gens(), gb = b.gens(), dim = ga * gb;

  HomModule out;
  out.source = a;
  out.target = b;
  if (dim == 0) {
    out.group = make_module(Ring::integers(), 0, IntMat(0, 0));
    return out;
  }

  // Flattened coordinates x_(i,j) at index i*gb + j; the value of a hom on
  // generator i of `a` is row i of the reshaped matrix.
  IntMat l0(dim, dim);          // e_j * x = 0 in the target
  IntMat well_defined(dim, dim);  // d_i * x_(i,j) = 0 in the target
  for (std::size_t i = 0; i < ga; ++i)
    for (std::size_t j = 0; j < gb; ++j) {
      const std::size_t idx = i * gb + j;
      const Int& ej = b.factors[j];
      l0.at(idx, idx) = ej;
      well_defined.at(idx, idx) = ej / gcd_int(a.factors[i], ej);
    }

  IntMat sol = well_defined;
  if (a.action && b.action) {
    IntMat c(dim, dim);
    for (std::size_t i = 0; i < ga; ++i)
      for (std::size_t j = 0; j < gb; ++j) {
        const std::size_t outi = i * gb + j;
        for (std::size_t k = 0; k < ga; ++k) c.at(k * gb + j, outi) += a.action->at(i, k);
        for (std::size_t k = 0; k < gb; ++k) c.at(i * gb + k, outi) -= b.action->at(k, j);
      }
    sol = lattice_intersect(sol, preimage_lattice(c, l0));
  }

  IntMat rel = preimage_lattice(sol, l0);
  Presented pres = present(Ring::integers(), sol.rows, rel);
  IntMat gen_rows = mat_mul(pres.from_canonical, sol);
  out.group = pres.module;
  for (std::size_t k = 0; k < gen_rows.rows; ++k) {
    IntMat mk(ga, gb);
    for (std::size_t i = 0; i < ga; ++i)
      for (std::size_t j = 0; j < gb; ++j)
        mk.at(i, j) = floor_mod(gen_rows.at(k, i * gb + j), b.factors[j]);
    out.basis.push_back(std::move(mk));
  }
  return out;
}

std::optional<std::vector<Int>> solve_map(const ModuleMap& f, const std::vector<Int>& y) {
  IntMat span = vstack(f.matrix, f.target.relation_basis());
  auto sol = solve_in_lattice(f.target.normalize(y), span);
  if (!sol) return std::nullopt;
  std::vector<Int> x(sol->begin(), sol->begin() + f.source.gens());
  return f.source.normalize(x);
}

std::optional<std::vector<Int>> express_in_submodule(const Submodule& s, const std::vector<Int>& y) {
  return solve_map(s.inclusion, y);
}

}  // namespace divkum
