#include "divkummer/verification.hpp"

#include "divkummer/autseq.hpp"
#include "divkummer/errors.hpp"
#include "divkummer/io.hpp"
#include "divkummer/kummer.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

namespace divkum {

namespace {

using Clock = std::chrono::steady_clock;

std::string fail(const std::string& what) { return what; }

FgModule z_module(std::size_t rank, std::vector<Int> factors) {
  std::size_t g = rank + factors.size();
  IntMat rel(factors.size(), g);
  for (std::size_t i = 0; i < factors.size(); ++i) rel.at(i, rank + i) = factors[i];
  return make_module(Ring::integers(), g, rel);
}

RatVec rv2(const Rat& a, const Rat& b) { return RatVec{frac_mod1(a), frac_mod1(b)}; }

// All invariant-factor chains d1 | d2 | ... with product <= max_order.
void chains_up_to(const Int& max_order, std::vector<std::vector<Int>>& out) {
  out.push_back({});
  std::function<void(std::vector<Int>&, Int)> rec = [&](std::vector<Int>& cur, Int prod) {
    Int start = cur.empty() ? Int(2) : cur.back();
    for (Int d = start; prod * d <= max_order; ++d) {
      if (!cur.empty() && d % cur.back() != 0) continue;
      cur.push_back(d);
      out.push_back(cur);
      rec(cur, prod * d);
      cur.pop_back();
    }
  };
  std::vector<Int> cur;
  rec(cur, 1);
}

// ---------------------------------------------------------------- criterion 1

std::string c1_snf_oracle() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_int_distribution<int> entry(-20, 20);
  auto next_subset = [](std::vector<std::size_t>& s, std::size_t n) {
    std::size_t k = s.size();
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (s[i] + (k - i) < n) {
        ++s[i];
        for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  auto minor_gcd = [&](const IntMat& m, std::size_t k) {
    Int g = 0;
    std::vector<std::size_t> rsel(k);
    for (std::size_t i = 0; i < k; ++i) rsel[i] = i;
    do {
      std::vector<std::size_t> csel(k);
      for (std::size_t i = 0; i < k; ++i) csel[i] = i;
      do {
        IntMat sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rsel[i], csel[j]);
        g = gcd_int(g, determinant(sub));
      } while (next_subset(csel, m.cols));
    } while (next_subset(rsel, m.rows));
    return g;
  };

  for (int iter = 0; iter < 1000; ++iter) {
    IntMat m(dim(rng), dim(rng));
    for (auto& v : m.data) v = entry(rng);
    SnfResult r = snf(m);
    if (abs_int(determinant(r.u)) != 1) return fail("U not unimodular");
    if (abs_int(determinant(r.v)) != 1) return fail("V not unimodular");
    if (mat_mul(mat_mul(r.u, m), r.v) != r.s) return fail("UmV != S");
    auto d = r.diagonal();
    Int prev = 1;
    for (std::size_t k = 1; k <= d.size(); ++k) {
      Int dd = minor_gcd(m, k);
      if (dd == 0) {
        if (d[k - 1] != 0) return fail("zero divisor mismatch");
        break;
      }
      if (d[k - 1] != dd / prev) return fail("determinantal divisor ratio mismatch");
      prev = dd;
    }
  }
  return "";
}

// ---------------------------------------------------------------- criterion 2

struct RandomTriple {
  FgModule p;
  IntMat full, n_lat, m_lat;
};

RandomTriple random_triple(std::mt19937_64& rng) {
  static const std::vector<std::vector<Int>> shapes = {
      {2, 4}, {12}, {2, 2, 2}, {3, 9}, {6}, {8, 2}, {4, 4}, {30}, {2, 18}, {16}};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(shapes.size()) - 1);
  std::uniform_int_distribution<int> coef(0, 3);
  RandomTriple t;
  t.p = z_module(0, shapes[pick(rng)]);
  t.full = lattice_sum(IntMat::identity(t.p.gens()), t.p.relation_basis());
  auto random_sub = [&](const IntMat& inside) {
    IntMat gens(2, t.p.gens());
    for (std::size_t i = 0; i < 2; ++i) {
      std::vector<Int> combo(t.p.gens(), 0);
      for (std::size_t r = 0; r < inside.rows; ++r) {
        Int k = coef(rng);
        for (std::size_t j = 0; j < t.p.gens(); ++j) combo[j] += k * inside.at(r, j);
      }
      gens.set_row(i, combo);
    }
    return lattice_sum(gens, t.p.relation_basis());
  };
  t.n_lat = random_sub(t.full);
  t.m_lat = random_sub(t.n_lat);
  return t;
}

std::vector<IdealFilter> corpus_filters() {
  return {IdealFilter::p_power(2), IdealFilter::p_power(3), IdealFilter::all_nonzero(),
          IdealFilter::zero(), IdealFilter::one()};
}

std::string c2_division_lemma() {
  std::mt19937_64 rng(1002);
  for (const auto& j : corpus_filters()) {
    for (int iter = 0; iter < 500; ++iter) {
      RandomTriple t = random_triple(rng);
      IntMat d = divide_lattice(j, t.m_lat, t.n_lat, t.p);
      // (1)
      IntMat dp = divide_lattice(j, t.m_lat, t.full, t.p);
      if (!lattice_equal(d, lattice_intersect(dp, t.n_lat))) return fail("identity (1)");
      // (2)
      if (!lattice_equal(divide_lattice(j, t.m_lat, d, t.p), d)) return fail("identity (2)");
      // (3) and (4) via the abstract quotient
      IntMat nb = hnf_basis(t.n_lat);
      FgModule nm = make_module(Ring::integers(), nb.rows, preimage_lattice(nb, t.m_lat));
      Submodule tors = torsion(j, nm);
      IntMat db = hnf_basis(d);
      FgModule dm = make_module(Ring::integers(), db.rows, preimage_lattice(db, t.m_lat));
      if (tors.module.factors != dm.factors || tors.module.rank != dm.rank)
        return fail("identity (3)");
      if (lattice_equal(d, t.n_lat) != is_j_torsion(j, nm)) return fail("identity (4)");
      // (5) torsion of a direct sum splits
      if (iter % 25 == 0) {
        FgModule a = z_module(0, {4, 12});
        FgModule b = z_module(0, {18});
        FgModule ab = z_module(0, {4, 12, 18});
        Submodule ta = torsion(j, a), tb = torsion(j, b), tab = torsion(j, ab);
        Int oa = ta.module.is_finite() ? ta.module.order() : Int(-1);
        Int ob = tb.module.is_finite() ? tb.module.order() : Int(-1);
        Int oab = tab.module.is_finite() ? tab.module.order() : Int(-1);
        if (oa >= 0 && ob >= 0 && oab != oa * ob) return fail("identity (5)");
      }
    }
  }
  return "";
}

// ---------------------------------------------------------------- criterion 3

std::string c3_completeness_composition() {
  std::mt19937_64 rng(1003);
  std::vector<IdealFilter> filters = {IdealFilter::p_power(2), IdealFilter::p_power(3),
                                      IdealFilter::all_nonzero()};
  for (const auto& j : filters) {
    for (int iter = 0; iter < 500; ++iter) {
      RandomTriple t = random_triple(rng);
      IntMat d = divide_lattice(j, t.m_lat, t.full, t.p);
      if (!lattice_equal(divide_lattice(j, d, t.full, t.p), d)) return fail("completeness");

      // composition closure on the chain M <= N <= P when both steps are J-maps
      IntMat nb = hnf_basis(t.n_lat);
      FgModule nm = make_module(Ring::integers(), nb.rows, preimage_lattice(nb, t.m_lat));
      IntMat fb = hnf_basis(t.full);
      FgModule pn = make_module(Ring::integers(), fb.rows, preimage_lattice(fb, t.n_lat));
      FgModule pm = make_module(Ring::integers(), fb.rows, preimage_lattice(fb, t.m_lat));
      if (is_j_torsion(j, nm) && is_j_torsion(j, pn) && !is_j_torsion(j, pm))
        return fail("J-map composition closure");
    }
  }
  return "";
}

// ---------------------------------------------------------------- criterion 4

std::string c4_baer_testbed() {
  std::vector<std::vector<Int>> shapes;
  chains_up_to(64, shapes);
  for (const Int& p : {Int(2), Int(3)}) {
    IdealFilter jp = IdealFilter::p_power(p);
    for (const auto& f : shapes) {
      FgModule q = z_module(0, f);
      Int modulus = q.exponent() * p;
      bool p_divisible = q.order() % p != 0;  // q[p] = 0
      if (baer_check(modulus, jp, q) != p_divisible)
        return fail("baer disagrees with p-divisibility on " + q.describe());
    }
  }
  return "";
}

// ---------------------------------------------------------------- criterion 5

std::string c5_paper_examples() {
  // (a) hull shape on 50 random inputs
  std::mt19937_64 rng(1005);
  std::uniform_int_distribution<int> rank(0, 2);
  static const std::vector<std::vector<Int>> shapes = {
      {}, {2}, {12}, {2, 4}, {3}, {8, 24}, {5, 20}, {6, 6}, {9}, {4, 8}};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(shapes.size()) - 1);
  for (int iter = 0; iter < 50; ++iter) {
    FgModule m = z_module(rank(rng), shapes[pick(rng)]);
    IdealFilter j = (iter % 2 == 0) ? IdealFilter::p_power(2) : IdealFilter::all_nonzero();
    DivisibleHull h = jhull(j, m);
    if (h.loc_rank != m.rank) return fail("hull rank");
    std::size_t expect_pruf = 0;
    Int expect_resid = 1;
    for (const Int& d : m.factors) {
      Int pe = d;
      if (j.kind == FilterKind::PPower) {
        pe = 1;
        Int rest = d;
        while (rest % j.p == 0) {
          rest /= j.p;
          pe *= j.p;
        }
        if (rest > 1) expect_resid *= rest;
      }
      if (pe > 1) ++expect_pruf;
    }
    if (h.prufer_count != expect_pruf) return fail("hull prufer count");
    if (h.residual.is_zero() ? expect_resid != 1 : h.residual.order() != expect_resid)
      return fail("hull residual");
    // the embedding sends the invariant-factor generators to 1/p^e elements
    for (std::size_t k = m.rank; k < m.gens(); ++k) {
      const HullVec& v = h.embedding[k];
      bool nonzero = false;
      for (const auto& q : v.pruf) nonzero = nonzero || q != 0;
      for (const auto& q : v.resid) nonzero = nonzero || q != 0;
      if (!nonzero) return fail("hull embedding misses a torsion generator");
    }
  }

  // (b) the no-pushout document yields NotPure with exit code 1
  Json nopush = {
      {"filter", "2^inf"},
      {"target", {{"s", 1}}},
      {"base", {{"module", {{"generators", 1}, {"relations", Json::array()}}}}},
      {"left", {{"module", {{"generators", 1}, {"relations", Json::array()}}}}},
      {"right", {{"module", {{"generators", 1}, {"relations", Json::array()}}}}},
      {"f", {{"2"}}},
      {"g", {{"2"}}},
  };
  RunResult rr = run_command("pushout", nopush);
  if (rr.exit_code != 1 || rr.report["error"]["name"] != "NotPure")
    return fail("noPushout document did not yield NotPure");

  // (c) the section-3.2 pair is not isomorphic
  {
    IdealFilter two = IdealFilter::p_power(2);
    TorsionTarget t = make_target(2, two);
    FgModule m = z_module(1, {2, 2});
    PointedModule pm1 =
        make_pointed(two, t, m, {rv2(Rat(1, 2), Rat(0)), rv2(Rat(0), Rat(1, 2))});
    PointedModule pm2 =
        make_pointed(two, t, m, {rv2(Rat(0), Rat(1, 2)), rv2(Rat(1, 2), Rat(0))});
    FgModule n = z_module(1, {2, 4});
    PointedModule pn1 =
        make_pointed(two, t, n, {rv2(Rat(0), Rat(1, 2)), rv2(Rat(1, 4), Rat(0))});
    PointedModule pn2 =
        make_pointed(two, t, n, {rv2(Rat(1, 2), Rat(0)), rv2(Rat(0), Rat(1, 4))});
    IntMat inc{{2, 0, 0}, {0, 0, 2}, {0, 1, 0}};
    JTExtension e1 = make_extension(pm1, pn1, inc);
    JTExtension e2 = make_extension(pm2, pn2, inc);
    if (!extension_maps(e1, e2).maps.empty()) return fail("3.2 pair admits a map");
    bool has_id = false;
    for (const auto& f : extension_maps(e1, e1).maps) has_id = has_id || f.map.is_identity();
    if (!has_id) return fail("3.2 extension lacks its identity self-map");
  }

  // (d) torsion of the section-3.1 module with a valid pointing
  {
    IdealFilter inf = IdealFilter::all_nonzero();
    TorsionTarget t = make_target(2, inf);
    FgModule m = z_module(1, {2, 6});
    PointedModule pm =
        make_pointed(inf, t, m, {rv2(Rat(0), Rat(1, 2)), rv2(Rat(1, 6), Rat(0))});
    Int order = pm.tor.module.order();
    if (order != 12 || pm.tor.module.factors != std::vector<Int>{2, 6})
      return fail("3.1 torsion is not Z/6 + Z/2");
  }
  return "";
}

// ---------------------------------------------------------------- criterion 6

// Pointed maps A -> Q whose generator images differ from a reference map by
// J-torsion shifts; exhaustive for competitors built over the pushout legs.
std::vector<PointedMap> maps_near(const PointedModule& a, const PointedModule& q,
                                  const ModuleMap& ref) {
  std::vector<std::vector<std::vector<Int>>> candidates(a.module.gens());
  for (std::size_t i = 0; i < a.module.gens(); ++i) {
    std::vector<Int> unit(a.module.gens(), 0);
    unit[i] = 1;
    std::vector<Int> base = ref.apply(unit);
    for (const auto& tel : q.tor.module.all_elements()) {
      std::vector<Int> shift = q.tor.inclusion.apply(tel);
      std::vector<Int> cand(base.size());
      for (std::size_t c = 0; c < base.size(); ++c) cand[c] = base[c] + shift[c];
      candidates[i].push_back(q.module.normalize(cand));
    }
  }
  std::uint64_t combos = 1;
  for (const auto& c : candidates) {
    combos *= c.size();
    check_budget(combos, "competitor enumeration");
  }
  std::vector<PointedMap> out;
  std::vector<std::size_t> idx(a.module.gens(), 0);
  while (true) {
    IntMat mat(a.module.gens(), q.module.gens());
    for (std::size_t i = 0; i < a.module.gens(); ++i) mat.set_row(i, candidates[i][idx[i]]);
    bool ok = true;
    for (std::size_t i = 0; i < a.module.factors.size() && ok; ++i) {
      std::vector<Int> moved = mat.row(a.module.rank + i);
      for (auto& v : moved) v *= a.module.factors[i];
      ok = q.module.is_zero_element(moved);
    }
    if (ok) {
      ModuleMap f{a.module, q.module, mat};
      if (pointed_map_compatible(a, q, f)) out.push_back(PointedMap{a, q, std::move(f)});
    }
    std::size_t i = 0;
    for (; i < a.module.gens(); ++i) {
      if (++idx[i] < candidates[i].size()) break;
      idx[i] = 0;
    }
    if (i == a.module.gens()) break;
  }
  return out;
}

struct PushoutInstance {
  PointedMap f, g;
};

PushoutInstance random_pushout_instance(std::mt19937_64& rng) {
  IdealFilter two = IdealFilter::p_power(2);
  TorsionTarget t = make_target(2, two);
  std::uniform_int_distribution<int> exp1(1, 3), exp2(0, 2), coin(0, 1);

  Int d1 = 1;
  for (int i = 0; i < exp1(rng); ++i) d1 *= 2;
  FgModule l = z_module(0, {d1});
  PointedModule pl = make_pointed(two, t, l, {rv2(Rat(1, d1), Rat(0))});

  // f: split inclusion into L + C (pure) or a torsion division
  PointedModule pm = pl;
  PointedMap f = make_pointed_map(pl, pl, IntMat::identity(1));
  if (coin(rng)) {
    Int d2 = 1;
    for (int i = 0; i < 1 + exp2(rng); ++i) d2 *= 2;
    std::vector<Int> fs = d1 <= d2 ? std::vector<Int>{d1, d2} : std::vector<Int>{d2, d1};
    FgModule m = z_module(0, fs);
    std::size_t l_slot = d1 <= d2 ? 0 : 1;
    std::vector<RatVec> pointing(2);
    pointing[l_slot] = rv2(Rat(1, fs[l_slot]), Rat(0));
    pointing[1 - l_slot] = rv2(Rat(0), Rat(1, fs[1 - l_slot]));
    pm = make_pointed(two, t, m, pointing);
    IntMat fm(1, 2);
    fm.at(0, l_slot) = 1;
    f = make_pointed_map(pl, pm, fm);
  }

  // g: divide the generator order once or twice
  int depth = 1 + exp2(rng) % 2;
  Int dn = d1;
  for (int i = 0; i < depth; ++i) dn *= 2;
  FgModule n = z_module(0, {dn});
  PointedModule png = make_pointed(two, t, n, {rv2(Rat(1, dn), Rat(0))});
  IntMat gm(1, 1);
  gm.at(0, 0) = dn / d1;
  PointedMap g = make_pointed_map(pl, png, gm);
  return PushoutInstance{std::move(f), std::move(g)};
}

std::string c6_pushout_universal() {
  std::mt19937_64 rng(1006);
  for (int iter = 0; iter < 200; ++iter) {
    PushoutInstance inst = random_pushout_instance(rng);
    if (!is_pure(inst.f)) return fail("instance f not pure");
    PushoutResult po = pushout(inst.f, inst.g);

    // torsion of P is generated by the two torsion images
    {
      IntMat img_m = mat_mul(inst.f.target.tor.inclusion.matrix, po.into_left.map.matrix);
      IntMat img_n = mat_mul(inst.g.target.tor.inclusion.matrix, po.into_right.map.matrix);
      IntMat gen = lattice_sum(lattice_sum(img_m, img_n), po.p.module.relation_basis());
      if (!lattice_equal(gen, submodule_lattice(po.p.tor))) return fail("pushout torsion law");
    }
    // P is spanned by i(M) and j(N): mediating maps are unique
    {
      IntMat span = lattice_sum(vstack(po.into_left.map.matrix, po.into_right.map.matrix),
                                po.p.module.relation_basis());
      if (!lattice_equal(span, IntMat::identity(po.p.module.gens())))
        return fail("pushout not spanned by its legs");
    }

    // competitors over Q = P: all pointed pairs (k, l), built as torsion
    // shifts of the pushout legs, with k f = l g
    auto ks = maps_near(inst.f.target, po.p, po.into_left.map);
    auto ls = maps_near(inst.g.target, po.p, po.into_right.map);
    std::size_t competitors = 0;
    for (const auto& k : ks)
      for (const auto& l : ls) {
        if (!maps_equal(compose(inst.f.map, k.map), compose(inst.g.map, l.map))) continue;
        ++competitors;
        PointedMap med = mediate(po, k, l);
        if (!maps_equal(compose(po.into_left.map, med.map), k.map) ||
            !maps_equal(compose(po.into_right.map, med.map), l.map))
          return fail("mediating map does not commute");
      }
    if (competitors == 0) return fail("no competitor enumerated");
  }
  return "";
}

// ---------------------------------------------------------------- criterion 7

std::string c7_adjunction() {
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<int> exp1(1, 2), coin(0, 1);
  int saturated_seen = 0;
  for (int iter = 0; iter < 100; ++iter) {
    IdealFilter two = IdealFilter::p_power(2);
    TorsionTarget t = make_target(2, two);

    Int d1 = 1;
    for (int i = 0; i < exp1(rng); ++i) d1 *= 2;
    FgModule l = z_module(0, {d1});
    PointedModule pl = make_pointed(two, t, l, {rv2(Rat(1, d1), Rat(0))});

    // phi: split pure inclusion L -> L + C
    Int d2 = 2 * (1 + coin(rng));
    if (d2 == 6) d2 = 4;
    std::vector<Int> fs = d1 <= d2 ? std::vector<Int>{d1, d2} : std::vector<Int>{d2, d1};
    std::size_t l_slot = d1 <= d2 ? 0 : 1;
    std::vector<RatVec> pointing(2);
    pointing[l_slot] = rv2(Rat(1, fs[l_slot]), Rat(0));
    pointing[1 - l_slot] = rv2(Rat(0), Rat(1, fs[1 - l_slot]));
    FgModule m = z_module(0, fs);
    PointedModule pm = make_pointed(two, t, m, pointing);
    IntMat fm(1, 2);
    fm.at(0, l_slot) = 1;
    PointedMap phi = make_pointed_map(pl, pm, fm);

    // n: a division extension of L
    Int dn = d1 * 2;
    FgModule ntot = z_module(0, {dn});
    PointedModule pn = make_pointed(two, t, ntot, {rv2(Rat(1, dn), Rat(0))});
    JTExtension n_ext = make_extension(pl, pn, IntMat{{2}});

    // p: either a division extension of M or (sometimes) a saturated window
    bool saturated_case = iter % 5 == 0;

    if (!saturated_case) {
      // divide both coordinates into Z/big + Z/big, keeping each generator's
      // T-coordinate: generator i of M points into coordinate 0 iff i is the
      // slot carrying L
      Int big = lcm_int(2 * fs[0], 2 * fs[1]);
      FgModule tot = z_module(0, {big, big});
      auto unit_at = [&](int coord, const Int& den) {
        return coord == 0 ? rv2(Rat(1, den), Rat(0)) : rv2(Rat(0), Rat(1, den));
      };
      std::vector<RatVec> tot_pointing = {unit_at(0 == static_cast<int>(l_slot) ? 0 : 1, big),
                                          unit_at(1 == static_cast<int>(l_slot) ? 0 : 1, big)};
      PointedModule ppt = make_pointed(two, t, tot, tot_pointing);
      IntMat inc(2, 2);
      inc.at(0, 0) = big / fs[0];
      inc.at(1, 1) = big / fs[1];
      JTExtension p_ext = make_extension(pm, ppt, inc);
      AdjunctionReport rep = adjunction_check(phi, n_ext, p_ext);
      if (!rep.hom_bijection) return fail("hom bijection");
      if (!rep.triangle_unit) return fail("unit triangle");
      if (!rep.triangle_counit) return fail("counit triangle");
      continue;
    }

    {
      // replace phi and p by the saturation data: phi = incs_w, p extends sat_w(L)
      Int level = 4 * d1;
      WindowSat w = saturate_window(pl, level);
      PointedMap incs = make_pointed_map(pl, w.sat, w.incs.matrix);
      if (!is_pure(incs)) return fail("saturation window map not pure");
      // p: divide the free... there is no free part; extend the window once
      Int lvl2 = level * 2;
      WindowSat w2 = saturate_window(pl, lvl2);
      // inclusion sat_w(level) -> sat_w(lvl2): torsion doubles
      IntMat inc(w.sat.module.gens(), w2.sat.module.gens());
      // both are (Z/level)^2 and (Z/lvl2)^2 shaped: map generator-wise
      for (std::size_t i = 0; i < w.sat.module.gens(); ++i) {
        // find the image by matching pointings through T
        RatVec target_value = w.sat.pointing[i];
        // value v at level: element of w2 with pointing v is (lvl2 * v)
        std::vector<Int> row(w2.sat.module.gens(), 0);
        for (int c = 0; c < 2; ++c) {
          Rat scaled = target_value[c] * Rat(lvl2);
          row[c] = boost::multiprecision::numerator(scaled);
        }
        inc.set_row(i, row);
      }
      JTExtension p_sat = make_extension(w.sat, w2.sat, inc);
      AdjunctionReport rep = adjunction_check(incs, n_ext, p_sat);
      if (!rep.hom_bijection) return fail("hom bijection (saturated case)");
      if (!rep.triangle_unit || !rep.triangle_counit) return fail("triangles (saturated case)");
      if (!rep.counit_iso) return fail("counit not iso on a saturated target");
      ++saturated_seen;
    }
  }
  if (saturated_seen == 0) return fail("no saturated instance exercised");
  return "";
}

// ---------------------------------------------------------------- criterion 8

std::string c8_aut_exact_sequence() {
  std::mt19937_64 rng(1008);
  IdealFilter two = IdealFilter::p_power(2);
  TorsionTarget t = make_target(1, two);
  std::uniform_int_distribution<int> exp1(1, 2), depth(0, 2), freediv(0, 2);

  int done = 0;
  std::vector<std::vector<Int>> seen_orders;
  while (done < 100) {
    Int d1 = 1;
    for (int i = 0; i < exp1(rng); ++i) d1 *= 2;
    FgModule m = z_module(1, {d1});
    PointedModule pm = make_pointed(two, t, m, {RatVec{Rat(1, d1)}});

    Int dn = d1;
    for (int i = 0; i < depth(rng); ++i) dn *= 2;
    Int fd = 1;
    for (int i = 0; i < freediv(rng); ++i) fd *= 2;
    if (dn == d1 && fd == 1) dn *= 2;
    FgModule n = z_module(1, {dn});
    PointedModule pn = make_pointed(two, t, n, {RatVec{Rat(1, dn)}});
    IntMat inc(2, 2);
    inc.at(0, 0) = fd;
    inc.at(1, 1) = dn / d1;
    JTExtension ext = make_extension(pm, pn, inc);

    DivisibleHull gamma = maximal_extension(pm);
    Int level = minimal_embedding_level(ext, gamma) * 2;
    NormalityReport norm = is_normal(ext, gamma, level);
    if (!norm.normal) continue;  // only certified-normal instances

    ExactSequenceReport rep = exact_sequence(ext, gamma, level);
    if (!rep.order_identity) return fail("order identity");
    if (!rep.kernel_abelian) return fail("kernel not abelian");
    if (!rep.hom_bijection) return fail("phi_sigma bijection");
    if (!rep.action_verified) return fail("composition action");
    if (Int(rep.kernel_group.order()) != rep.hom_kernel.order())
      return fail("kernel order vs Hom order");
    seen_orders.push_back(rep.orders());
    ++done;
  }

  // the two pinned instances
  {
    FgModule m = z_module(1, {2});
    PointedModule pm = make_pointed(two, t, m, {RatVec{Rat(1, 2)}});
    FgModule n = z_module(1, {4});
    PointedModule pn = make_pointed(two, t, n, {RatVec{Rat(1, 4)}});
    DivisibleHull gamma = maximal_extension(pm);
    ExactSequenceReport r1 =
        exact_sequence(make_extension(pm, pn, IntMat{{1, 0}, {0, 2}}), gamma, 16);
    if (r1.orders() != std::vector<Int>{1, 2, 2}) return fail("(1,2,2) instance");
    ExactSequenceReport r2 =
        exact_sequence(make_extension(pm, pn, IntMat{{2, 0}, {0, 2}}), gamma, 16);
    if (r2.orders() != std::vector<Int>{2, 4, 2}) return fail("(2,4,2) instance");
  }
  return "";
}

// ---------------------------------------------------------------- criterion 9

std::string c9_duality() {
  std::vector<std::vector<Int>> shapes;
  chains_up_to(24, shapes);
  IdealFilter inf = IdealFilter::all_nonzero();
  for (int s = 1; s <= 2; ++s) {
    TorsionTarget t = make_target(s, inf);
    for (const auto& f : shapes) {
      FgModule m = z_module(0, f);
      EndLevel e = make_end_level(t, m.exponent());
      DualityReport rep = duality_check(m, t, e);
      if (!rep.bijective) return fail("bijection fails on " + m.describe());
      if (!rep.inclusion_reversing) return fail("inclusion reversal fails on " + m.describe());
    }
  }
  return "";
}

// --------------------------------------------------------------- criterion 10

std::string c10_cohomology_bound() {
  // h1(C2 acting by -1 on Z/4) = Z/2
  FgModule z4 = z_module(0, {4});
  IntMat neg{{-1}};
  if (h1({IntMat::identity(1), neg}, z4).factors != std::vector<Int>{2})
    return fail("h1(C2, Z/4) != Z/2");

  // |G| . H^1 = 0 on 200 random instances
  std::mt19937_64 rng(1010);
  std::uniform_int_distribution<int> lpick(2, 12), upick(1, 11);
  for (int iter = 0; iter < 200; ++iter) {
    Int l = lpick(rng);
    FgModule a = (iter % 2) ? z_module(0, {l}) : z_module(0, {l, l});
    std::vector<IntMat> gens;
    if (iter % 2) {
      Int u = upick(rng);
      while (gcd_int(u, l) != 1) ++u;
      gens.push_back(IntMat{{u}});
    } else {
      Int u = upick(rng);
      while (gcd_int(u, l) != 1) ++u;
      IntMat g(2, 2);
      g.at(0, 0) = u;
      g.at(1, 1) = floor_mod(l - 1, l) == 0 ? Int(1) : l - 1;
      gens.push_back(g);
    }
    auto group = close_matrix_group(gens, a);
    if (group.size() > 48) continue;
    FgModule h = h1(group, a);
    if (!h.is_zero() && Int(group.size()) % h.exponent() != 0)
      return fail("|G| does not kill H^1");
  }

  // subring_index({+-I} mod 4) = 4
  IntMat id2 = IntMat::identity(2);
  if (subring_index({id2, scalar_mul(-1, id2)}, 4) != 4) return fail("subring index of {+-I}");

  // closed form c = (dnm)^{rs} against the module-theoretic route
  for (int r = 1; r <= 3; ++r)
    for (const Int& dnm : {Int(2), Int(3), Int(6)}) {
      BoundInputs in{dnm, 1, 1, static_cast<std::size_t>(r), 2};
      BoundReport rep = kummer_bound(in, {}, 36);
      Int expect = 1;
      for (int i = 0; i < 2 * r; ++i) expect *= dnm;
      if (rep.c != expect) return fail("closed form mismatch");
      for (const auto& [l, idx] : rep.per_level)
        if (rep.c % idx != 0) return fail("per-level index does not divide c");
      // independent route through the generic Hom machinery
      if (r <= 2) {
        std::vector<Int> fs(r, Int(36));
        FgModule x = z_module(0, fs);
        FgModule tl = z_module(0, {36, 36});
        HomModule hm = hom_module(x, tl);
        Int idx = 1;
        for (const Int& d : hm.group.factors) idx *= gcd_int(dnm, d);
        if (idx != rep.c) return fail("hom-route cross-check mismatch");
      }
    }

  // containment never fails once the three hypotheses verify
  {
    FgModule x = z_module(0, {4});
    TorsionTarget t2 = make_target(2, IdealFilter::all_nonzero());
    IntMat neg2 = scalar_mul(-1, IntMat::identity(2));
    for (int k = 1; k <= 4; k *= 2) {
      std::vector<HomElement> kappa;
      kappa.push_back(make_hom_element(x, t2, {rv2(Rat(k, 4), Rat(0))}));
      kappa.push_back(make_hom_element(x, t2, {rv2(Rat(0), Rat(k, 4))}));
      GaloisSimInstance inst = make_instance(4, 2, x, {neg2}, kappa);
      Submodule ker = joint_kernel(kappa);
      FgModule h = h1(inst.torsion_image, inst.t_level());
      BoundInputs in{ker.module.exponent(), h.is_zero() ? Int(1) : h.exponent(),
                     subring_index(inst.torsion_image, 4), 1, 2};
      ThmMainReport rep = thm_main_containment_check(inst, in);
      if (!rep.conclusion) return fail("containment failed with verified hypotheses");
    }
  }
  return "";
}

// --------------------------------------------------------------- criterion 11

std::string c11_cli() {
  // round-trip parse/print on constructed objects
  {
    IdealFilter two = IdealFilter::p_power(2);
    TorsionTarget t = make_target(2, two);
    FgModule m = z_module(1, {2, 4});
    PointedModule pm =
        make_pointed(two, t, m, {rv2(Rat(1, 2), Rat(0)), rv2(Rat(0), Rat(1, 4))});
    FgModule m2 = parse_module_obj(module_json(m), Ring::integers());
    if (!(m2 == m)) return fail("module round-trip");
    PointedModule pm2 = parse_pointed(pointed_json(pm), two, t, Ring::integers());
    if (!(pm2.module == pm.module) || pm2.pointing != pm.pointing)
      return fail("pointed round-trip");
    FgModule big = z_module(1, {2, 8});
    PointedModule pbig =
        make_pointed(two, t, big, {rv2(Rat(1, 2), Rat(0)), rv2(Rat(0), Rat(1, 8))});
    JTExtension ext = make_extension(pm, pbig, IntMat{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}});
    JTExtension ext2 = parse_extension(extension_json(ext), two, t, Ring::integers());
    if (!(ext2.total.module == ext.total.module) || !maps_equal(ext2.inc, ext.inc))
      return fail("extension round-trip");

    Ring gauss = Ring::quadratic(0, 1);
    IntMat rel{{2, 0}, {0, 2}};
    IntMat act{{0, 1}, {-1, 0}};
    FgModule qm = make_module(gauss, 2, rel, act);
    if (!(parse_module_obj(module_json(qm), gauss) == qm)) return fail("quadratic round-trip");
  }

  // deterministic reports and exit codes over the sample corpus
  const char* env = std::getenv("DIVKUMMER_SAMPLES");
  std::string dir = env ? env : "samples";
  std::vector<std::pair<std::string, int>> corpus = {
      {"divide_12z.json", 0},    {"s31_example.json", 0},   {"s32_pair.json", 0},
      {"nopushout.json", 1},     {"hull_z12.json", 0},      {"maxext_z.json", 0},
      {"normal_z4.json", 0},     {"autseq_2_4_2.json", 0},  {"duality_z2z2.json", 0},
      {"h1_c2_z4.json", 0},      {"subring_pm_i.json", 0},  {"divindex_z8.json", 0},
      {"kummer_bound_r1.json", 0}, {"ses_level4.json", 0},  {"baer_z3.json", 0},
      {"quadratic_gauss.json", 0}, {"pushout_z2.json", 0},  {"bad_pointing.json", 2},
      {"bad_schema.json", 2}};
  for (const auto& [name, want_code] : corpus) {
    std::ifstream in(dir + "/" + name);
    if (!in) return fail("sample missing: " + name);
    Json doc;
    Json meta;
    in >> meta;
    if (!meta.contains("command") || !meta.contains("input"))
      return fail("sample lacks command/input: " + name);
    std::string command = meta["command"].get<std::string>();
    doc = meta["input"];
    RunResult first = run_command(command, doc);
    RunResult second = run_command(command, doc);
    if (first.report.dump() != second.report.dump())
      return fail("nondeterministic report: " + name);
    if (first.exit_code != want_code)
      return fail("exit code mismatch on " + name + ": got " +
                  std::to_string(first.exit_code));
    if (meta.contains("expect")) {
      const Json& expect = meta["expect"];
      for (auto it = expect.begin(); it != expect.end(); ++it) {
        Json actual = first.report;
        std::istringstream path(it.key());
        std::string part;
        bool okpath = true;
        while (std::getline(path, part, '.')) {
          if (actual.is_object() && actual.contains(part)) {
            actual = actual[part];
          } else if (actual.is_array() && part.find_first_not_of("0123456789") ==
                                              std::string::npos) {
            actual = actual[std::stoul(part)];
          } else {
            okpath = false;
            break;
          }
        }
        if (!okpath || actual != it.value())
          return fail("expectation failed on " + name + " at " + it.key());
      }
    }
  }
  return "";
}

struct Criterion {
  int id;
  const char* name;
  double budget_ms;
  std::string (*body)();
};

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  static const Criterion criteria[] = {
      {1, "snf determinantal-divisor oracle", 10000, c1_snf_oracle},
      {2, "division lemma identities", 60000, c2_division_lemma},
      {3, "completeness and J-map composition", 60000, c3_completeness_composition},
      {4, "baer testbed agrees with p-divisibility", 30000, c4_baer_testbed},
      {5, "paper example reproduction", 10000, c5_paper_examples},
      {6, "pushout universal property", 120000, c6_pushout_universal},
      {7, "adjunction identities", 120000, c7_adjunction},
      {8, "automorphism exact sequence", 120000, c8_aut_exact_sequence},
      {9, "duality bijection", 60000, c9_duality},
      {10, "cohomology and effective bound", 60000, c10_cohomology_bound},
      {11, "cli round-trip and exit codes", 30000, c11_cli},
  };
  std::vector<CriterionResult> out;
  for (const auto& c : criteria) {
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    auto start = Clock::now();
    try {
      r.detail = c.body();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    r.pass = r.detail.empty() && r.ms < c.budget_ms;
    if (r.detail.empty() && r.ms >= c.budget_ms) r.detail = "runtime budget exceeded";
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace divkum
