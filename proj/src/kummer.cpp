#include "divkummer/kummer.hpp"

#include "divkummer/errors.hpp"

#include <algorithm>
#include <map>

namespace divkum {

namespace {

std::vector<Int> mat_key(const FgModule& a, const IntMat& m) {
  IntMat n = m;
  for (std::size_t i = 0; i < n.rows; ++i) n.set_row(i, a.normalize(n.row(i)));
  return n.data;
}

std::vector<Int> flat_encode(const HomElement& f) {
  const FgModule& m = f.source;
  const int s = f.target.s;
  std::vector<Int> out(m.gens() * s, 0);
  for (std::size_t i = 0; i < m.gens(); ++i)
    for (int c = 0; c < s; ++c)
      out[i * s + c] = boost::multiprecision::numerator(f.values[i][c] * Rat(m.factors[i]));
  return out;
}

IntMat zero_hom_lattice(const FgModule& m, int s) {
  IntMat l(m.gens() * s, m.gens() * s);
  for (std::size_t i = 0; i < m.gens(); ++i)
    for (int c = 0; c < s; ++c) l.at(i * s + c, i * s + c) = m.factors[i];
  return l;
}

}  // namespace

std::vector<IntMat> close_matrix_group(const std::vector<IntMat>& gens, const FgModule& a) {
  std::map<std::vector<Int>, IntMat> elems;
  IntMat id = IntMat::identity(a.gens());
  elems[mat_key(a, id)] = id;
  std::vector<IntMat> frontier{id};
  while (!frontier.empty()) {
    std::vector<IntMat> next;
    for (const auto& cur : frontier)
      for (const auto& g : gens) {
        IntMat prod = mat_mul(cur, g);
        auto key = mat_key(a, prod);
        if (!elems.count(key)) {
          check_budget(elems.size() + 1, "matrix group closure");
          IntMat norm(a.gens(), a.gens(), key);
          elems[key] = norm;
          next.push_back(norm);
        }
      }
    frontier = std::move(next);
  }
  std::vector<IntMat> out;
  for (auto& [k, m] : elems) out.push_back(m);
  return out;
}

FgModule h1(const std::vector<IntMat>& group, const FgModule& a) {
  if (!a.is_finite()) throw input_error("h1 needs a finite module");
  const std::size_t g = a.gens();
  if (g == 0) return a;  // zero module

  // Normalize, deduplicate and index the group elements.
  std::vector<IntMat> elems;
  std::map<std::vector<Int>, std::size_t> index;
  for (const auto& e : group) {
    if (e.rows != g || e.cols != g) throw input_error("group element has wrong shape");
    auto key = mat_key(a, e);
    if (!index.count(key)) {
      index[key] = elems.size();
      elems.push_back(IntMat(g, g, key));
    }
  }
  check_budget(static_cast<std::uint64_t>(elems.size()) *
                   static_cast<std::uint64_t>(a.order()),
               "h1 cocycle enumeration");
  IntMat id = IntMat::identity(g);
  if (!index.count(mat_key(a, id))) throw input_error("group lacks the identity");
  for (const auto& e : elems) {
    bool has_inv = false;
    for (const auto& f : elems) {
      if (!index.count(mat_key(a, mat_mul(e, f))))
        throw input_error("group is not closed under multiplication");
      if (mat_key(a, mat_mul(e, f)) == mat_key(a, id)) has_inv = true;
    }
    if (!has_inv) throw input_error("group element has no inverse");
  }

  const std::size_t n = elems.size();
  const std::size_t dim = n * g;
  IntMat rel = a.relation_basis();

  // Greedy generating set: conditions over (generator, element) pairs imply
  // the full cocycle identity by induction on word length.
  std::vector<std::size_t> gen_idx;
  {
    std::map<std::vector<Int>, bool> span;
    span[mat_key(a, id)] = true;
    for (std::size_t i = 0; i < n && span.size() < n; ++i) {
      if (span.count(elems[i].data)) continue;
      gen_idx.push_back(i);
      bool grew = true;
      span[elems[i].data] = true;
      while (grew) {
        grew = false;
        std::vector<std::vector<Int>> present;
        for (const auto& [k, _] : span) present.push_back(k);
        for (const auto& ka : present)
          for (std::size_t gi : gen_idx) {
            auto prod = mat_key(a, mat_mul(IntMat(g, g, ka), elems[gi]));
            if (!span.count(prod)) {
              span[prod] = true;
              grew = true;
            }
          }
      }
    }
  }

  // Right-cocycle condition f(st) = f(s) * rho_t + f(t) for s a generator,
  // matching the right action x -> x * rho and rho_{st} = rho_s rho_t; the
  // extra slot pins f(1) = 0.
  const std::size_t pairs = gen_idx.size() * n + 1;
  IntMat cond(dim, pairs * g);
  std::size_t pair = 0;
  for (std::size_t gi : gen_idx)
    for (std::size_t j = 0; j < n; ++j, ++pair) {
      std::size_t prod = index[mat_key(a, mat_mul(elems[gi], elems[j]))];
      for (std::size_t c = 0; c < g; ++c) {
        cond.at(prod * g + c, pair * g + c) += 1;
        cond.at(j * g + c, pair * g + c) -= 1;
        for (std::size_t c2 = 0; c2 < g; ++c2)
          cond.at(gi * g + c2, pair * g + c) -= elems[j].at(c2, c);
      }
    }
  {
    std::size_t id_idx = index[mat_key(a, id)];
    for (std::size_t c = 0; c < g; ++c) cond.at(id_idx * g + c, pair * g + c) = 1;
  }
  IntMat out_rel(pairs * rel.rows, pairs * g);
  for (std::size_t p2 = 0; p2 < pairs; ++p2)
    for (std::size_t r = 0; r < rel.rows; ++r)
      for (std::size_t c = 0; c < g; ++c) out_rel.at(p2 * rel.rows + r, p2 * g + c) = rel.at(r, c);

  IntMat cocycles = preimage_lattice(cond, out_rel);

  // Coboundaries f(s) = x * (rho_s - id), plus the per-slot relations.
  std::vector<std::vector<Int>> rows;
  for (std::size_t c = 0; c < g; ++c) {
    std::vector<Int> unit(g, 0);
    unit[c] = 1;
    std::vector<Int> row(dim, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Int> moved = row_mul(unit, elems[i]);
      for (std::size_t c2 = 0; c2 < g; ++c2) row[i * g + c2] = moved[c2] - unit[c2];
    }
    rows.push_back(std::move(row));
  }
  IntMat cob = from_rows(rows, dim);
  for (std::size_t i = 0; i < n; ++i) {
    IntMat slot(rel.rows, dim);
    for (std::size_t r = 0; r < rel.rows; ++r)
      for (std::size_t c = 0; c < g; ++c) slot.at(r, i * g + c) = rel.at(r, c);
    cob = vstack(cob, slot);
  }

  IntMat basis = hnf_basis(cocycles);
  IntMat quot_rel = preimage_lattice(basis, cob);
  return make_module(Ring::integers(), basis.rows, quot_rel);
}

Int subring_index(const std::vector<IntMat>& gens, const Int& level) {
  if (level < 1) throw input_error("subring_index needs a positive level");
  if (gens.empty()) throw input_error("subring_index needs at least one generator");
  const std::size_t s = gens.front().rows;
  for (const auto& g : gens) {
    if (g.rows != s || g.cols != s) throw input_error("generators must be square of equal size");
    Int det = floor_mod(determinant(g), level);
    if (level != 1 && gcd_int(det, level) != 1)
      throw input_error("subring_index generators must be invertible mod level");
  }
  const std::size_t dim = s * s;

  auto flatten = [&](const IntMat& m) {
    std::vector<Int> f(dim);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) f[i * s + j] = floor_mod(m.at(i, j), level);
    return f;
  };

  std::vector<std::vector<Int>> rows;
  rows.push_back(flatten(IntMat::identity(s)));
  for (const auto& g : gens) rows.push_back(flatten(g));
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Int> unit(dim, 0);
    unit[i] = level;
    rows.push_back(unit);
  }
  IntMat lattice = hnf_basis(from_rows(rows, dim));

  // Close under multiplication: multiply basis elements until stable.
  bool grew = true;
  while (grew) {
    grew = false;
    IntMat basis = lattice;
    for (std::size_t r1 = 0; r1 < basis.rows && !grew; ++r1)
      for (std::size_t r2 = 0; r2 < basis.rows && !grew; ++r2) {
        IntMat m1(s, s, std::vector<Int>(basis.data.begin() + r1 * dim,
                                         basis.data.begin() + (r1 + 1) * dim));
        IntMat m2(s, s, std::vector<Int>(basis.data.begin() + r2 * dim,
                                         basis.data.begin() + (r2 + 1) * dim));
        std::vector<Int> prod = flatten(mat_mul(m1, m2));
        if (!in_lattice(prod, lattice)) {
          lattice = lattice_sum(lattice, from_rows({prod}, dim));
          grew = true;
        }
      }
  }

  Int m = 1;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      std::vector<Int> unit(dim, 0);
      unit[i * s + j] = 1;
      Int k = min_multiplier(unit, lattice);
      if (k == 0) return 0;  // not reachable: level * unit is in the lattice
      m = lcm_int(m, k);
    }
  return m;
}

Int divisibility_index(const FgModule& x, int s, const Int& k) {
  if (k < 1) throw input_error("divisibility index needs a positive multiplier");
  if (!x.is_finite()) throw input_error("divisibility index needs a finite module");
  std::vector<Int> hom_factors;
  if (!x.ring.is_quadratic()) {
    for (const Int& d : x.factors)
      for (int c = 0; c < s; ++c) hom_factors.push_back(d);
  } else {
    if (s != 2) throw input_error("quadratic orders have torsion rank 2");
    if (x.is_zero()) return 1;
    Int e = x.exponent();
    IntMat rel(2, 2);
    rel.at(0, 0) = e;
    rel.at(1, 1) = e;
    Ring r = x.ring;
    IntMat w{{Int(0), Int(1)}, {-r.n, r.t}};
    FgModule t_level = make_module(r, 2, rel, w);
    hom_factors = hom_module(x, t_level).group.factors;
  }
  Int index = 1;
  for (const Int& d : hom_factors) index *= gcd_int(k, d);
  return index;
}

FgModule GaloisSimInstance::t_level() const {
  IntMat rel(s, s);
  for (int i = 0; i < s; ++i) rel.at(i, i) = level;
  return make_module(Ring::integers(), s, rel);
}

IntMat GaloisSimInstance::kummer_lattice() const {
  std::vector<std::vector<Int>> rows;
  for (const auto& f : kummer_gens) rows.push_back(flat_encode(f));
  return lattice_sum(from_rows(rows, x.gens() * s), zero_hom_lattice(x, s));
}

GaloisSimInstance make_instance(const Int& level, int s, const FgModule& x,
                                const std::vector<IntMat>& torsion_gens,
                                const std::vector<HomElement>& kummer_gens) {
  if (level < 1) throw input_error("instance level must be positive");
  if (!x.is_finite()) throw input_error("instance module must be finite");
  if (x.exponent() != 1 && level % x.exponent() != 0)
    throw input_error("instance level must be divisible by the module exponent");

  GaloisSimInstance inst;
  inst.level = level;
  inst.s = s;
  inst.x = x;
  inst.target = make_target(s, IdealFilter::all_nonzero());

  FgModule tl = inst.t_level();
  for (const auto& g : torsion_gens) {
    if (g.rows != static_cast<std::size_t>(s) || g.cols != static_cast<std::size_t>(s))
      throw input_error("torsion image matrices must be s x s");
    Int det = floor_mod(determinant(g), level);
    if (level != 1 && gcd_int(det, level) != 1)
      throw input_error("torsion image matrices must be invertible mod level");
  }
  inst.torsion_image = close_matrix_group(torsion_gens, tl);

  for (const auto& f : kummer_gens) {
    if (!(f.source == x)) throw input_error("kummer elements must live on the instance module");
    if (f.target.s != s) throw input_error("kummer elements must have s coordinates");
    for (const auto& v : f.values)
      for (const auto& q : v)
        if (level % boost::multiprecision::denominator(q) != 0)
          throw input_error("kummer element does not live at this level");
  }
  inst.kummer_gens = kummer_gens;

  // im(kappa) must be stable under the im(tau)-action by composition.
  IntMat lat = inst.kummer_lattice();
  for (const auto& a : inst.torsion_image)
    for (const auto& f : inst.kummer_gens)
      if (!in_lattice(flat_encode(hom_compose_end(f, a)), lat))
        throw input_error("kummer image is not stable under the torsion action");
  return inst;
}

BoundReport kummer_bound(const BoundInputs& in, const std::vector<Int>& torsion_structure,
                         const Int& level, const Ring& ring) {
  if (in.d < 1 || in.n < 1 || in.m < 1) throw input_error("d, n, m must be positive");
  if (level < 1) throw input_error("level must be positive");
  Int dnm = in.d * in.n * in.m;

  auto window = [&](const Int& l) {
    if (!ring.is_quadratic()) {
      IntMat rel(in.rank_r, in.rank_r);
      for (std::size_t i = 0; i < in.rank_r; ++i) rel.at(i, i) = l;
      return make_module(Ring::integers(), in.rank_r, rel);
    }
    const std::size_t g = 2 * in.rank_r;
    IntMat rel(g, g);
    for (std::size_t i = 0; i < g; ++i) rel.at(i, i) = l;
    IntMat act(g, g);
    for (std::size_t b = 0; b < in.rank_r; ++b) {
      act.at(2 * b, 2 * b + 1) = 1;
      act.at(2 * b + 1, 2 * b) = -ring.n;
      act.at(2 * b + 1, 2 * b + 1) = ring.t;
    }
    return make_module(ring, g, rel, act);
  };

  BoundReport rep;
  rep.c = divisibility_index(window(level), in.s, dnm);
  for (const Int& l : divisors_sorted(level))
    rep.per_level.emplace_back(l, divisibility_index(window(l), in.s, dnm));
  rep.notes.push_back("d, n, m are user-supplied; verified only on simulated instances");
  if (dnm != 0 && level % dnm != 0)
    rep.notes.push_back("window level does not contain dnm; the bound is truncated at " +
                        to_string(level));
  if (!torsion_structure.empty()) {
    std::string t = "torsion structure of M:";
    for (const auto& d : torsion_structure) t += " " + to_string(d);
    rep.notes.push_back(t + " (torsion lies inside sat(M) and does not change c)");
  }
  return rep;
}

SesReport ses_cohomology_check(const GaloisSimInstance& inst, const IntMat& sat_points_gens) {
  SesReport rep;
  Submodule k = joint_kernel(inst.kummer_gens.empty()
                                 ? std::vector<HomElement>{make_hom_element(
                                       inst.x, inst.target,
                                       std::vector<RatVec>(inst.x.gens(),
                                                           RatVec(inst.s, Rat(0))))}
                                 : inst.kummer_gens);
  rep.middle_order = k.module.order();

  IntMat k_lat = submodule_lattice(k);
  Submodule a = submodule_from_generators(inst.x, sat_points_gens);
  IntMat a_lat = submodule_lattice(a);

  // 0 -> A -> ker(im kappa): the first map must embed A inside the kernel.
  rep.first_map_injective = lattice_contains(k_lat, a_lat);

  // In the simulated (split) instance the connecting map to H^1 is zero, so
  // exactness at the middle forces A = ker(im kappa).
  FgModule h = h1(inst.torsion_image, inst.t_level());
  rep.h1_factors = h.factors;
  rep.exact = rep.first_map_injective && lattice_equal(a_lat, k_lat);
  return rep;
}

ThmMainReport thm_main_containment_check(const GaloisSimInstance& inst, const BoundInputs& in) {
  if (in.d < 1 || in.n < 1 || in.m < 1) throw input_error("d, n, m must be positive");
  ThmMainReport rep;

  Submodule k = joint_kernel(inst.kummer_gens.empty()
                                 ? std::vector<HomElement>{make_hom_element(
                                       inst.x, inst.target,
                                       std::vector<RatVec>(inst.x.gens(),
                                                           RatVec(inst.s, Rat(0))))}
                                 : inst.kummer_gens);
  rep.hyp_d = in.d % k.module.exponent() == 0;

  FgModule h = h1(inst.torsion_image, inst.t_level());
  rep.hyp_n = h.is_zero() || in.n % h.exponent() == 0;

  Int idx = subring_index(inst.torsion_image, inst.level);
  rep.hyp_m = idx != 0 && in.m % idx == 0;

  if (!rep.hyp_d || !rep.hyp_n || !rep.hyp_m) {
    std::string what = "conditions failing:";
    std::vector<int> failed;
    if (!rep.hyp_d) {
      what += " (1) d=" + to_string(in.d) + " does not kill the kernel of im(kappa)";
      failed.push_back(1);
    }
    if (!rep.hyp_n) {
      what += " (2) n=" + to_string(in.n) + " does not kill H^1(im tau, T)";
      failed.push_back(2);
    }
    if (!rep.hyp_m) {
      what += " (3) the subring generated by im(tau) only contains " + to_string(idx) +
              "*End(T), not " + to_string(in.m) + "*End(T)";
      failed.push_back(3);
    }
    throw hypothesis_failure_error(what, failed);
  }

  // Conclusion: dnm * Hom(X, T[level]) inside the subgroup im(kappa).
  Int dnm = in.d * in.n * in.m;
  IntMat kappa_lat = inst.kummer_lattice();
  bool contained = true;
  for (std::size_t i = 0; i < inst.x.gens() && contained; ++i)
    for (int c = 0; c < inst.s && contained; ++c) {
      std::vector<Int> unit(inst.x.gens() * inst.s, 0);
      unit[i * inst.s + c] = dnm;
      contained = in_lattice(unit, kappa_lat);
    }
  rep.conclusion = contained;
  return rep;
}

}  // namespace divkum
