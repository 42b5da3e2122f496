#include "divkummer/filter.hpp"

#include "divkummer/errors.hpp"

#include <algorithm>

namespace divkum {

IdealFilter IdealFilter::p_power(const Int& p) {
  if (!is_prime(p)) throw input_error("p^inf filter requires a prime, got " + to_string(p));
  return {FilterKind::PPower, p, {}};
}

IdealFilter IdealFilter::principal(std::vector<Int> gens) {
  if (gens.empty()) throw input_error("principal filter needs at least one generator");
  for (const auto& g : gens)
    if (g == 0) throw input_error("principal filter generators must be nonzero");
  return {FilterKind::Principal, 0, std::move(gens)};
}

std::string IdealFilter::describe() const {
  switch (kind) {
    case FilterKind::Zero: return "0";
    case FilterKind::One: return "1";
    case FilterKind::PPower: return to_string(p) + "^inf";
    case FilterKind::AllNonzero: return "inf";
    case FilterKind::Principal: {
      std::string s = "principal(";
      for (std::size_t i = 0; i < generators.size(); ++i) {
        if (i) s += ",";
        s += to_string(generators[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

Ideal Ideal::integer(const Int& g) {
  Ideal i;
  i.ring = Ring::integers();
  i.gen = abs_int(g);
  return i;
}

Ideal Ideal::quadratic(const Ring& ring, const IntMat& lattice_rows) {
  if (!ring.is_quadratic()) throw input_error("quadratic ideal over Z");
  if (lattice_rows.cols != 2) throw input_error("quadratic ideal basis must have 2 columns");
  Ideal i;
  i.ring = ring;
  i.lattice = hnf(lattice_rows.rows == 2 ? lattice_rows : vstack(lattice_rows, IntMat(0, 2)));
  // Closure under multiplication by w: (a, b) -> (-n b, a + t b).
  IntMat basis = hnf_basis(i.lattice);
  for (std::size_t r = 0; r < i.lattice.rows; ++r) {
    Int a = i.lattice.at(r, 0), b = i.lattice.at(r, 1);
    std::vector<Int> moved{-ring.n * b, a + ring.t * b};
    if (!in_lattice(moved, basis))
      throw input_error("lattice is not an ideal: not closed under multiplication by w");
  }
  return i;
}

namespace {

bool is_power_of(Int g, const Int& p) {
  if (g == 0) return false;
  g = abs_int(g);
  while (g % p == 0) g /= p;
  return g == 1;
}

Int lcm_of(const std::vector<Int>& xs) {
  Int l = 1;
  for (const auto& x : xs) l = lcm_int(l, x);
  return l;
}

}  // namespace

bool filter_member(const IdealFilter& j, const Ideal& i) {
  if (!i.ring.is_quadratic()) {
    const Int& g = i.gen;
    switch (j.kind) {
      case FilterKind::Zero: return true;
      case FilterKind::One: return g == 1;
      case FilterKind::PPower: return is_power_of(g, j.p);
      case FilterKind::AllNonzero: return g != 0;
      case FilterKind::Principal: return g != 0 && lcm_of(j.generators) % g == 0;
    }
    return false;
  }
  // w-stable Z-lattice in Z^2; the filter conditions read off the cokernel.
  SnfResult dec = snf(i.lattice);
  auto diag = dec.diagonal();
  Int s2 = diag.size() < 2 ? Int(0) : diag[1];
  switch (j.kind) {
    case FilterKind::Zero: return true;
    case FilterKind::One: return lattice_equal(i.lattice, IntMat::identity(2));
    case FilterKind::PPower: return s2 != 0 && (s2 == 1 || is_power_of(s2, j.p));
    case FilterKind::AllNonzero: return s2 != 0;
    case FilterKind::Principal: {
      if (s2 == 0) return false;
      Int l = lcm_of(j.generators);
      IntMat basis = hnf_basis(i.lattice);
      return in_lattice({l, 0}, basis) && in_lattice({0, l}, basis);
    }
  }
  return false;
}

Int stabilization_exponent(const IdealFilter& j, const FgModule& q) {
  switch (j.kind) {
    case FilterKind::Zero:
      throw input_error("the Zero filter has no finite stabilization stage");
    case FilterKind::One:
      throw input_error("stabilization exponent is undefined for the One filter");
    case FilterKind::PPower: {
      Int e = q.exponent();
      Int pe = 1;
      while (e % j.p == 0) {
        e /= j.p;
        pe *= j.p;
      }
      return pe;
    }
    case FilterKind::AllNonzero:
      return q.exponent();
    case FilterKind::Principal:
      return lcm_of(j.generators);
  }
  throw error("unreachable");
}

Submodule divide_by_integer(const Int& k, const ModuleMap& sub) {
  if (k == 0) throw input_error("division by 0 is only defined through the Zero filter");
  return preimage(multiplication_map(sub.target, k), sub);
}

Submodule divide_ideal(const Ideal& i, const ModuleMap& sub) {
  const FgModule& n = sub.target;
  if (!i.ring.is_quadratic()) return divide_by_integer(i.gen, sub);
  if (!(n.ring == i.ring)) throw input_error("ideal and module rings differ");
  IntMat basis = hnf_basis(i.lattice);
  if (basis.rows == 0) throw input_error("division by the zero ideal is only defined through the Zero filter");
  IntMat target_lat = lattice_sum(sub.matrix, n.relation_basis());
  IntMat result(0, 0);
  for (std::size_t r = 0; r < basis.rows; ++r) {
    // beta = a + b*w acts as a*I + b*A.
    IntMat mult = mat_add(scalar_mul(basis.at(r, 0), IntMat::identity(n.gens())),
                          scalar_mul(basis.at(r, 1), *n.action));
    IntMat pre = preimage_lattice(mult, target_lat);
    result = (r == 0) ? pre : lattice_intersect(result, pre);
  }
  return submodule_from_generators(n, result);
}

Submodule divide_filter(const IdealFilter& j, const ModuleMap& sub) {
  const FgModule& n = sub.target;
  if (j.kind == FilterKind::Zero)
    return submodule_from_generators(n, IntMat::identity(n.gens()));
  if (j.kind == FilterKind::One) return submodule_from_generators(n, sub.matrix);
  FgModule q = quotient(n, sub).module;
  Int k = stabilization_exponent(j, q);
  return divide_by_integer(k, sub);
}

Submodule torsion(const IdealFilter& j, const FgModule& n) {
  std::optional<IntMat> zero_action;
  if (n.ring.is_quadratic()) zero_action = IntMat(0, 0);
  FgModule zero = make_module(n.ring, 0, IntMat(0, 0), zero_action);
  return divide_filter(j, make_map(zero, n, IntMat(0, n.gens())));
}

bool is_j_torsion(const IdealFilter& j, const FgModule& m) {
  switch (j.kind) {
    case FilterKind::Zero: return true;
    case FilterKind::One: return m.is_zero();
    case FilterKind::PPower:
      return m.is_finite() && (m.factors.empty() || is_power_of(m.exponent(), j.p));
    case FilterKind::AllNonzero: return m.is_finite();
    case FilterKind::Principal: {
      Int l = 1;
      for (const auto& g : j.generators) l = lcm_int(l, g);
      return m.is_finite() && l % m.exponent() == 0;
    }
  }
  return false;
}

bool is_jmap(const IdealFilter& j, const ModuleMap& f) {
  return is_j_torsion(j, quotient(f.target, f).module);
}

bool is_essential(const IdealFilter& j, const ModuleMap& f) {
  if (!is_jmap(j, f) || !f.is_injective())
    throw input_error("is_essential requires an injective J-map");
  Submodule tor_n = torsion(j, f.target);
  if (tor_n.module.is_zero()) return true;

  // Image of f inside the torsion submodule, in torsion coordinates.
  IntMat f_lat = lattice_sum(f.matrix, f.target.relation_basis());
  IntMat img_in_tor = hnf_basis(preimage_lattice(tor_n.inclusion.matrix, f_lat));

  check_budget(static_cast<std::uint64_t>(tor_n.module.order()), "essentiality search");
  for (const auto& x : tor_n.module.all_elements()) {
    if (tor_n.module.is_zero_element(x)) continue;
    Submodule cyc = submodule_from_generators(tor_n.module, from_rows({x}, x.size()));
    bool meets = false;
    for (const auto& c : cyc.module.all_elements()) {
      if (cyc.module.is_zero_element(c)) continue;
      if (in_lattice(tor_n.module.normalize(cyc.inclusion.apply(c)), img_in_tor)) {
        meets = true;
        break;
      }
    }
    if (!meets) return false;
  }
  return true;
}

IntMat divide_lattice(const IdealFilter& j, const IntMat& m_lat, const IntMat& n_lat,
                      const FgModule& ambient) {
  if (j.kind == FilterKind::Zero) return hnf_basis(n_lat);
  if (j.kind == FilterKind::One) return hnf_basis(m_lat);
  IntMat n_basis = hnf_basis(n_lat);
  IntMat q_rel = preimage_lattice(n_basis, m_lat);
  FgModule q = make_module(Ring::integers(), n_basis.rows, q_rel);
  Int k = stabilization_exponent(j, q);
  IntMat pre = preimage_lattice(scalar_mul(k, IntMat::identity(ambient.gens())), m_lat);
  return lattice_intersect(n_basis, pre);
}

IntMat torsion_lattice(const IdealFilter& j, const IntMat& n_lat, const FgModule& ambient) {
  return divide_lattice(j, ambient.relation_basis(), n_lat, ambient);
}

bool baer_check(const Int& modulus, const IdealFilter& j, const FgModule& q) {
  if (!q.is_finite()) throw input_error("baer_check requires a finite module");
  if (modulus <= 0) throw input_error("baer_check requires a positive modulus");
  if (q.exponent() != 1 && modulus % q.exponent() != 0)
    throw input_error("module is not defined over Z/" + to_string(modulus));
  if (j.kind == FilterKind::One || j.kind == FilterKind::Principal)
    throw input_error("baer testbed supports the filters p^inf, inf and 0");

  IntMat rel = q.relation_basis();
  for (const Int& d : divisors_sorted(modulus)) {
    if (j.kind == FilterKind::PPower && !is_power_of(d, j.p) && d != 1) continue;
    // Ideal d*(Z/modulus); a hom I -> q is a choice of y = f(d) killed by
    // modulus/d, and it extends iff y is divisible by d in q.
    Int killer = modulus / d;
    IntMat torsion_part = preimage_lattice(scalar_mul(killer, IntMat::identity(q.gens())), rel);
    IntMat divisible_part = lattice_sum(scalar_mul(d, IntMat::identity(q.gens())), rel);
    if (!lattice_contains(divisible_part, torsion_part)) return false;
  }
  return true;
}

}  // namespace divkum
