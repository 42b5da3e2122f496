#include "divkummer/duality.hpp"

#include "divkummer/errors.hpp"

#include <algorithm>
#include <map>

namespace divkum {

namespace {

Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }
Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }

// Flat integer encoding of a hom: entry (i, c) holds E with value E/d_i.
// Encodings live in Z^{g*s}; the zero sublattice is d_i per row block.
std::vector<Int> encode(const HomElement& f) {
  const FgModule& m = f.source;
  const int s = f.target.s;
  std::vector<Int> out(m.gens() * s, 0);
  for (std::size_t i = 0; i < m.gens(); ++i) {
    const Int& d = m.factors[i];
    for (int c = 0; c < s; ++c) {
      Rat scaled = f.values[i][c] * Rat(d);
      out[i * s + c] = rat_num(scaled);
    }
  }
  return out;
}

HomElement decode(const FgModule& m, const TorsionTarget& t, const std::vector<Int>& flat) {
  const int s = t.s;
  std::vector<RatVec> values(m.gens(), RatVec(s, Rat(0)));
  for (std::size_t i = 0; i < m.gens(); ++i)
    for (int c = 0; c < s; ++c) values[i][c] = frac_mod1(Rat(flat[i * s + c], m.factors[i]));
  return make_hom_element(m, t, std::move(values));
}

IntMat zero_hom_lattice(const FgModule& m, int s) {
  IntMat l(m.gens() * s, m.gens() * s);
  for (std::size_t i = 0; i < m.gens(); ++i)
    for (int c = 0; c < s; ++c) l.at(i * s + c, i * s + c) = m.factors[i];
  return l;
}

// {flat encodings of ring-linear homs}: everything over Z, the commutant
// condition over a quadratic order.
IntMat hom_lattice(const FgModule& m, const TorsionTarget& t) {
  const int s = t.s;
  const std::size_t dim = m.gens() * s;
  IntMat base = IntMat::identity(dim);
  if (!m.ring.is_quadratic()) return base;
  // f(x * A) = f(x) * W: sum_k A_ik E_k / d_k = (E_i / d_i) W for all i.
  Int e = m.exponent();
  IntMat w = t.omega_action();
  IntMat cond(dim, dim);
  for (std::size_t i = 0; i < m.gens(); ++i)
    for (int c = 0; c < s; ++c) {
      const std::size_t outi = i * s + c;
      for (std::size_t k = 0; k < m.gens(); ++k)
        for (int c2 = 0; c2 < s; ++c2)
          if (c2 == c) cond.at(k * s + c2, outi) += m.action->at(i, k) * (e / m.factors[k]);
      for (int c2 = 0; c2 < s; ++c2)
        cond.at(i * s + c2, outi) -= w.at(c2, c) * (e / m.factors[i]);
    }
  return lattice_intersect(base, preimage_lattice(cond, scalar_mul(e, IntMat::identity(dim))));
}

// {flat encodings of homs vanishing on the given sublattice of M}.
IntMat vanishing_lattice(const FgModule& m, const TorsionTarget& t, const IntMat& sub_rows) {
  const int s = t.s;
  const std::size_t dim = m.gens() * s;
  Int e = m.exponent();
  IntMat basis = hnf_basis(sub_rows);
  IntMat cond(dim, basis.rows * s);
  for (std::size_t r = 0; r < basis.rows; ++r)
    for (std::size_t i = 0; i < m.gens(); ++i)
      for (int c = 0; c < s; ++c)
        cond.at(i * s + c, r * s + c) = basis.at(r, i) * (e / m.factors[i]);
  IntMat out = preimage_lattice(cond, scalar_mul(e, IntMat::identity(basis.rows * s)));
  return lattice_intersect(out, hom_lattice(m, t));
}

IntMat end_span_lattice(const FgModule& m, const TorsionTarget& t, const EndLevel& endlevel,
                        const std::vector<HomElement>& v) {
  const int s = t.s;
  std::vector<std::vector<Int>> rows;
  for (const auto& f : v)
    for (const auto& b : endlevel.zbasis) rows.push_back(encode(hom_compose_end(f, b)));
  IntMat span = from_rows(rows, m.gens() * s);
  return lattice_sum(span, zero_hom_lattice(m, s));
}

std::vector<std::vector<Int>> lattice_points_mod(const IntMat& lat, const IntMat& zero) {
  // Elements of lat / zero, as flat representatives.
  IntMat basis = hnf_basis(lat);
  IntMat rel = preimage_lattice(basis, zero);
  Presented pres = present(Ring::integers(), basis.rows, rel);
  if (!pres.module.is_finite()) throw infinite_search_error("hom group is infinite");
  std::vector<std::vector<Int>> out;
  for (const auto& c : pres.module.all_elements()) {
    std::vector<Int> flat = row_mul(row_mul(c, pres.from_canonical), basis);
    out.push_back(std::move(flat));
  }
  return out;
}

}  // namespace

HomElement make_hom_element(const FgModule& m, const TorsionTarget& t,
                            std::vector<RatVec> values) {
  if (!m.is_finite()) throw input_error("hom elements are defined for finite modules");
  if (values.size() != m.gens()) throw input_error("one value per generator expected");
  HomElement f{m, t, {}};
  for (std::size_t i = 0; i < values.size(); ++i) {
    RatVec v = t.normalize(std::move(values[i]));
    // the generator's order must kill its image
    for (const auto& q : v)
      if (rat_den(Rat(q * Rat(m.factors[i]))) != 1)
        throw input_error("hom value order does not divide the generator order");
    f.values.push_back(std::move(v));
  }
  if (m.ring.is_quadratic()) {
    IntMat w = t.omega_action();
    for (std::size_t i = 0; i < m.gens(); ++i) {
      std::vector<Int> unit(m.gens(), 0);
      unit[i] = 1;
      RatVec lhs = hom_apply(f, m.act(unit));
      RatVec rhs(t.s, Rat(0));
      for (int c = 0; c < t.s; ++c)
        for (int c2 = 0; c2 < t.s; ++c2) rhs[c] += f.values[i][c2] * Rat(w.at(c2, c));
      for (auto& q : rhs) q = frac_mod1(q);
      if (lhs != rhs) throw input_error("hom element does not commute with the ring action");
    }
  }
  return f;
}

RatVec hom_apply(const HomElement& f, const std::vector<Int>& x) {
  auto n = f.source.normalize(x);
  RatVec out(f.target.s, Rat(0));
  for (std::size_t i = 0; i < n.size(); ++i)
    for (int c = 0; c < f.target.s; ++c) out[c] += Rat(n[i]) * f.values[i][c];
  for (auto& q : out) q = frac_mod1(q);
  return out;
}

HomElement hom_compose_end(const HomElement& f, const IntMat& e) {
  std::vector<RatVec> values;
  for (const auto& v : f.values) {
    RatVec nv(f.target.s, Rat(0));
    for (int c = 0; c < f.target.s; ++c)
      for (int c2 = 0; c2 < f.target.s; ++c2) nv[c] += v[c2] * Rat(e.at(c2, c));
    for (auto& q : nv) q = frac_mod1(q);
    values.push_back(std::move(nv));
  }
  return HomElement{f.source, f.target, std::move(values)};
}

EndLevel make_end_level(const TorsionTarget& t, const Int& e) {
  if (e < 1) throw input_error("end level must be positive");
  EndLevel out{e, t.s, {}};
  if (!t.ring.is_quadratic()) {
    for (int i = 0; i < t.s; ++i)
      for (int j = 0; j < t.s; ++j) {
        IntMat u(t.s, t.s);
        u.at(i, j) = 1;
        out.zbasis.push_back(std::move(u));
      }
    return out;
  }
  // Commutant of the companion action modulo e: solve W X = X W (mod e).
  const int s = t.s;
  IntMat w = t.omega_action();
  const std::size_t dim = s * s;
  IntMat cond(dim, dim);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      const std::size_t outi = i * s + j;
      for (int k = 0; k < s; ++k) {
        cond.at(k * s + j, outi) += w.at(i, k);
        cond.at(i * s + k, outi) -= w.at(k, j);
      }
    }
  IntMat sols = preimage_lattice(cond, scalar_mul(e, IntMat::identity(dim)));
  for (std::size_t r = 0; r < sols.rows; ++r) {
    IntMat b(s, s);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) b.at(i, j) = floor_mod(sols.at(r, i * s + j), e);
    out.zbasis.push_back(std::move(b));
  }
  return out;
}

Submodule joint_kernel(const std::vector<HomElement>& v) {
  if (v.empty()) throw input_error("joint kernel of the empty set is undefined");
  const FgModule& m = v.front().source;
  for (const auto& f : v)
    if (!(f.source == m)) throw input_error("joint kernel needs a common source");
  const int s = v.front().target.s;
  Int e = 1;
  for (const auto& f : v)
    for (const auto& vals : f.values)
      for (const auto& q : vals) e = lcm_int(e, rat_den(q));
  // x in ker(f) iff sum_i x_i f(gen_i) = 0 in T; scale by e.
  IntMat cond(m.gens(), v.size() * s);
  for (std::size_t fi = 0; fi < v.size(); ++fi)
    for (std::size_t i = 0; i < m.gens(); ++i)
      for (int c = 0; c < s; ++c)
        cond.at(i, fi * s + c) = rat_num(v[fi].values[i][c] * Rat(e));
  IntMat pre = preimage_lattice(cond, scalar_mul(e, IntMat::identity(v.size() * s)));
  return submodule_from_generators(m, pre);
}

ClosureResult closure(const std::vector<HomElement>& v, const EndLevel& endlevel) {
  if (v.empty()) throw input_error("closure of the empty set is undefined");
  const FgModule& m = v.front().source;
  const TorsionTarget& t = v.front().target;
  if (m.exponent() != 1 && endlevel.e % m.exponent() != 0)
    throw input_error("end level must be divisible by the module exponent");

  Submodule ker = joint_kernel(v);
  IntMat ker_lat = submodule_lattice(ker);
  IntMat vanish = vanishing_lattice(m, t, ker_lat);
  IntMat span = end_span_lattice(m, t, endlevel, v);

  ClosureResult out;
  out.equal = lattice_equal(vanish, span);
  for (const auto& flat : lattice_points_mod(vanish, zero_hom_lattice(m, t.s)))
    out.w.push_back(decode(m, t, flat));
  return out;
}

DualityReport duality_check(const FgModule& m, const TorsionTarget& t, const EndLevel& endlevel) {
  if (!m.is_finite()) throw input_error("duality check needs a finite module");
  if (m.exponent() != 1 && endlevel.e % m.exponent() != 0)
    throw input_error("end level must be divisible by the module exponent");
  if (m.is_zero()) return DualityReport{true, true, 1, 1};

  // All R-submodules of M, as canonical lattices (BFS closure from cyclics).
  std::vector<IntMat> subs;
  {
    std::map<std::vector<Int>, bool> seen;
    std::vector<IntMat> queue{hnf_basis(m.relation_basis().rows ? m.relation_basis()
                                                                : IntMat(0, m.gens()))};
    if (m.gens() == 0) queue = {IntMat(0, 0)};
    seen[queue[0].data] = true;
    auto elems = m.all_elements();
    while (!queue.empty()) {
      IntMat cur = queue.back();
      queue.pop_back();
      subs.push_back(cur);
      check_budget(subs.size(), "submodule lattice enumeration");
      if (subs.size() > 1024) throw size_limit_error("submodule lattice too large");
      for (const auto& x : elems) {
        IntMat gens = from_rows({x}, m.gens());
        if (m.action) gens = vstack(gens, from_rows({m.act(x)}, m.gens()));
        IntMat next = lattice_sum(cur, gens);
        if (!seen.count(next.data)) {
          seen[next.data] = true;
          queue.push_back(next);
        }
      }
    }
  }

  // All End(T)-submodules of Hom(M, T), as flat lattices.
  IntMat zero_lat = zero_hom_lattice(m, t.s);
  std::vector<IntMat> end_subs;
  {
    std::map<std::vector<Int>, bool> seen;
    std::vector<IntMat> queue{hnf_basis(zero_lat)};
    seen[queue[0].data] = true;
    auto all = lattice_points_mod(hom_lattice(m, t), zero_lat);
    std::vector<HomElement> homs;
    for (const auto& flat : all) homs.push_back(decode(m, t, flat));
    while (!queue.empty()) {
      IntMat cur = queue.back();
      queue.pop_back();
      end_subs.push_back(cur);
      check_budget(end_subs.size(), "End-submodule enumeration");
      if (end_subs.size() > 1024) throw size_limit_error("End-submodule lattice too large");
      for (const auto& f : homs) {
        IntMat orbit = end_span_lattice(m, t, endlevel, {f});
        IntMat next = lattice_sum(cur, orbit);
        if (!seen.count(next.data)) {
          seen[next.data] = true;
          queue.push_back(next);
        }
      }
    }
  }

  DualityReport rep;
  rep.submodule_count = subs.size();
  rep.end_submodule_count = end_subs.size();

  // The two maps are mutually inverse bijections.
  bool bij = subs.size() == end_subs.size();
  std::map<std::vector<Int>, std::vector<Int>> forward;
  for (const auto& sublat : subs) {
    IntMat vanish = vanishing_lattice(m, t, sublat);
    bool found = false;
    for (const auto& es : end_subs) found = found || lattice_equal(vanish, es);
    if (!found) bij = false;
    // back: ker(vanish) must be the submodule again
    std::vector<HomElement> gens;
    for (std::size_t r = 0; r < vanish.rows; ++r) gens.push_back(decode(m, t, vanish.row(r)));
    IntMat back = submodule_lattice(joint_kernel(gens));
    if (!lattice_equal(back, lattice_sum(sublat, m.relation_basis()))) bij = false;
    forward[hnf_basis(sublat).data] = hnf_basis(vanish).data;
  }
  for (const auto& es : end_subs) {
    std::vector<HomElement> gens;
    for (std::size_t r = 0; r < es.rows; ++r) gens.push_back(decode(m, t, es.row(r)));
    IntMat ker_lat = submodule_lattice(joint_kernel(gens));
    IntMat vanish = vanishing_lattice(m, t, ker_lat);
    if (!lattice_equal(vanish, es)) bij = false;
  }
  rep.bijective = bij;

  bool incl = true;
  for (const auto& a : subs)
    for (const auto& b : subs) {
      if (!lattice_contains(hnf_basis(lattice_sum(b, m.relation_basis())),
                            hnf_basis(lattice_sum(a, m.relation_basis()))))
        continue;  // a not inside b
      const auto& va = forward[hnf_basis(a).data];
      const auto& vb = forward[hnf_basis(b).data];
      IntMat ma(va.size() / (m.gens() * t.s), m.gens() * t.s, va);
      IntMat mb(vb.size() / (m.gens() * t.s), m.gens() * t.s, vb);
      if (!lattice_contains(ma, mb)) incl = false;  // a <= b must give V(b) <= V(a)
    }
  rep.inclusion_reversing = incl;
  return rep;
}

}  // namespace divkum
