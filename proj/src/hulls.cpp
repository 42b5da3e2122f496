#include "divkummer/hulls.hpp"

#include "divkummer/errors.hpp"

#include <algorithm>

namespace divkum {

FgModule underlying_z_module(const FgModule& m) {
  FgModule z = m;
  z.ring = Ring::integers();
  z.action.reset();
  return z;
}

namespace {

Int p_part(Int d, const Int& p) {
  Int pe = 1;
  while (d % p == 0) {
    d /= p;
    pe *= p;
  }
  return pe;
}

}  // namespace

DivisibleHull jhull(const IdealFilter& j, const FgModule& m) {
  if (j.kind != FilterKind::PPower && j.kind != FilterKind::AllNonzero)
    throw input_error("hulls are constructed for the filters p^inf and inf only");

  DivisibleHull h;
  h.ring = m.ring;
  h.j = j;
  h.source = m;
  h.action = m.action;
  h.loc_rank = m.rank;

  // Split each invariant factor into its filter part (a Prufer coordinate)
  // and its coprime part (a residual factor).
  std::vector<Int> resid_factors;
  struct TorsionSpot {
    long pruf = -1;
    Int pruf_order = 1;
    long resid = -1;
  };
  std::vector<TorsionSpot> spots;
  for (const Int& d : m.factors) {
    TorsionSpot spot;
    Int pe = (j.kind == FilterKind::PPower) ? p_part(d, j.p) : d;
    Int rest = d / pe;
    if (pe > 1) {
      spot.pruf = static_cast<long>(h.prufer_count++);
      spot.pruf_order = pe;
    }
    if (rest > 1) {
      spot.resid = static_cast<long>(resid_factors.size());
      resid_factors.push_back(rest);
    }
    spots.push_back(spot);
  }

  // Residual factors need not form a chain; canonicalize and keep the map.
  IntMat resid_rel(resid_factors.size(), resid_factors.size());
  for (std::size_t i = 0; i < resid_factors.size(); ++i) resid_rel.at(i, i) = resid_factors[i];
  Presented resid_pres = present(Ring::integers(), resid_factors.size(), resid_rel);
  h.residual = resid_pres.module;

  for (std::size_t k = 0; k < m.gens(); ++k) {
    HullVec v;
    v.loc.assign(h.loc_rank, Rat(0));
    v.pruf.assign(h.prufer_count, Rat(0));
    v.resid.assign(h.residual.gens(), Int(0));
    if (k < m.rank) {
      v.loc[k] = 1;
    } else {
      const TorsionSpot& spot = spots[k - m.rank];
      if (spot.pruf >= 0) v.pruf[spot.pruf] = Rat(1, spot.pruf_order);
      if (spot.resid >= 0) {
        std::vector<Int> raw(resid_factors.size(), 0);
        raw[spot.resid] = 1;
        v.resid = h.residual.normalize(row_mul(raw, resid_pres.to_canonical));
      }
    }
    h.embedding.push_back(std::move(v));
  }
  return h;
}

DivisibleHull maximal_extension(const PointedModule& m) {
  SaturatedModule sat = saturate(m);
  const FgModule& q = sat.quotient_part;

  DivisibleHull h;
  h.ring = m.module.ring;
  h.j = m.j;
  h.source = m.module;
  h.action = m.module.action;
  h.loc_rank = q.rank;
  h.prufer_count = static_cast<std::size_t>(m.target.s);
  h.prufer_is_target = true;
  h.target = m.target;
  // Torsion of M/M[J] is coprime to the filter; it is its own hull block.
  IntMat resid_rel(q.factors.size(), q.factors.size());
  for (std::size_t i = 0; i < q.factors.size(); ++i) resid_rel.at(i, i) = q.factors[i];
  h.residual = make_module(Ring::integers(), q.factors.size(), resid_rel);

  for (std::size_t k = 0; k < m.module.gens(); ++k) {
    HullVec v;
    v.loc.assign(h.loc_rank, Rat(0));
    v.pruf = sat.t_component[k];
    v.resid.assign(h.residual.gens(), Int(0));
    for (std::size_t c = 0; c < q.rank; ++c) v.loc[c] = Rat(sat.free_map.at(k, c));
    for (std::size_t c = 0; c < q.factors.size(); ++c)
      v.resid[c] = floor_mod(sat.free_map.at(k, q.rank + c), q.factors[c]);
    h.embedding.push_back(std::move(v));
  }
  return h;
}

Int minimal_window_level(const DivisibleHull& h) {
  Int level = 1;
  for (const auto& v : h.embedding) {
    for (const auto& q : v.loc) level = lcm_int(level, boost::multiprecision::denominator(q));
    for (const auto& q : v.pruf) level = lcm_int(level, boost::multiprecision::denominator(q));
  }
  return level;
}

HullWindow hull_window(const DivisibleHull& h, const Int& level) {
  if (level < 1) throw input_error("window level must be positive");
  if (h.j.kind == FilterKind::PPower) {
    Int rest = level;
    while (rest % h.j.p == 0) rest /= h.j.p;
    if (rest != 1) throw input_error("window level must be a power of p for a p^inf hull");
  }
  Int needed = minimal_window_level(h);
  if (level % needed != 0) throw level_too_small_error(to_string(needed));

  const std::size_t r = h.loc_rank, k = h.prufer_count, gr = h.residual.gens();
  const std::size_t g = r + k + gr;
  IntMat rel(k + h.residual.factors.size(), g);
  for (std::size_t i = 0; i < k; ++i) rel.at(i, r + i) = level;
  for (std::size_t i = 0; i < h.residual.factors.size(); ++i)
    rel.at(k + i, r + k + i) = h.residual.factors[i];
  Presented pres = present(Ring::integers(), g, rel);

  IntMat embed(h.source.gens(), g);
  for (std::size_t i = 0; i < h.source.gens(); ++i) {
    const HullVec& v = h.embedding[i];
    for (std::size_t c = 0; c < r; ++c)
      embed.at(i, c) = boost::multiprecision::numerator(v.loc[c] * Rat(level));
    for (std::size_t c = 0; c < k; ++c)
      embed.at(i, r + c) = boost::multiprecision::numerator(v.pruf[c] * Rat(level));
    for (std::size_t c = 0; c < gr; ++c) embed.at(i, r + k + c) = v.resid[c];
  }
  ModuleMap em = make_map(underlying_z_module(h.source), pres.module,
                          mat_mul(embed, pres.to_canonical));
  return HullWindow{pres.module, std::move(em), level};
}

Int minimal_embedding_level(const JTExtension& n, const DivisibleHull& gamma) {
  FgModule total_z = underlying_z_module(n.total.module);
  QuotientResult q = quotient(
      total_z, make_map(underlying_z_module(n.base.module), total_z, n.inc.matrix));
  if (!q.module.is_finite())
    throw infinite_search_error("embedding search needs a finite quotient total/base");
  Int exp = q.module.exponent();
  if (gamma.j.kind == FilterKind::PPower) exp = p_part(exp, gamma.j.p);
  return minimal_window_level(gamma) * exp;
}

std::vector<ModuleMap> embeddings_at_level(const JTExtension& n, const DivisibleHull& gamma,
                                           const Int& level) {
  FgModule base_z = underlying_z_module(n.base.module);
  FgModule total_z = underlying_z_module(n.total.module);
  if (!(base_z == underlying_z_module(gamma.source)))
    throw input_error("extension base differs from the hull's source");

  Int needed = minimal_embedding_level(n, gamma);
  if (level % needed != 0) throw level_too_small_error(to_string(needed));

  HullWindow win = hull_window(gamma, level);
  ModuleMap inc = make_map(base_z, total_z, n.inc.matrix);
  QuotientResult q = quotient(total_z, inc);
  const std::size_t g = total_z.gens();
  IntMat win_rel = win.window.relation_basis();
  Submodule win_tor = torsion(gamma.j, win.window);

  std::vector<std::vector<std::vector<Int>>> candidates(g);
  for (std::size_t kgen = 0; kgen < g; ++kgen) {
    std::vector<Int> unit(g, 0);
    unit[kgen] = 1;
    Int o = q.module.element_order(q.projection.apply(unit));
    std::vector<Int> scaled(g, 0);
    scaled[kgen] = o;
    auto sol = solve_in_lattice(total_z.normalize(scaled),
                                vstack(inc.matrix, total_z.relation_basis()));
    if (!sol) throw error("inconsistent quotient order in embedding search");
    std::vector<Int> beta(sol->begin(), sol->begin() + base_z.gens());
    std::vector<Int> w = win.window.normalize(row_mul(beta, win.embed.matrix));
    auto part = solve_in_lattice(
        w, vstack(scalar_mul(o, IntMat::identity(win.window.gens())), win_rel));
    if (!part) return {};
    std::vector<Int> y0(part->begin(), part->begin() + win.window.gens());
    for (const auto& t : win_tor.module.all_elements()) {
      Int to = win_tor.module.element_order(t);
      if (to == 0 || o % to != 0) continue;
      std::vector<Int> te = win_tor.inclusion.apply(t);
      std::vector<Int> cand(win.window.gens());
      for (std::size_t c = 0; c < cand.size(); ++c) cand[c] = y0[c] + te[c];
      candidates[kgen].push_back(win.window.normalize(cand));
    }
    if (candidates[kgen].empty()) return {};
  }

  std::uint64_t combos = 1;
  for (const auto& c : candidates) {
    combos *= c.size();
    check_budget(combos, "embedding search");
  }

  std::vector<ModuleMap> out;
  std::vector<std::size_t> idx(g, 0);
  while (true) {
    IntMat mat(g, win.window.gens());
    for (std::size_t kgen = 0; kgen < g; ++kgen) mat.set_row(kgen, candidates[kgen][idx[kgen]]);

    bool ok = true;
    for (std::size_t i = 0; i < total_z.factors.size() && ok; ++i) {
      std::vector<Int> moved = mat.row(total_z.rank + i);
      for (auto& v : moved) v *= total_z.factors[i];
      ok = win.window.is_zero_element(moved);
    }
    if (ok) {
      IntMat lhs = mat_mul(inc.matrix, mat);
      for (std::size_t i = 0; i < lhs.rows && ok; ++i) {
        std::vector<Int> d = lhs.row(i);
        auto rhs = win.embed.matrix.row(i);
        for (std::size_t c = 0; c < d.size(); ++c) d[c] -= rhs[c];
        ok = win.window.is_zero_element(d);
      }
    }
    // Normality quantifies over injective J-maps; injectivity is a genuine
    // filter here because the pointing condition is dropped.
    if (ok) ok = lattice_equal(preimage_lattice(mat, win_rel), total_z.relation_basis());
    if (ok) out.push_back(ModuleMap{total_z, win.window, mat});

    std::size_t kgen = 0;
    for (; kgen < g; ++kgen) {
      if (++idx[kgen] < candidates[kgen].size()) break;
      idx[kgen] = 0;
    }
    if (kgen == g) break;
  }
  if (out.empty()) throw error("no embedding found at an admissible level");
  return out;
}

NormalityReport is_normal(const JTExtension& n, const DivisibleHull& gamma, const Int& level) {
  std::vector<ModuleMap> embs = embeddings_at_level(n, gamma, level);
  NormalityReport rep;
  rep.level = level;
  rep.embedding_count = embs.size();
  IntMat win_rel = embs.front().target.relation_basis();
  IntMat first = lattice_sum(embs.front().matrix, win_rel);
  rep.normal = true;
  for (const auto& f : embs)
    if (!lattice_equal(first, lattice_sum(f.matrix, win_rel))) {
      rep.normal = false;
      break;
    }
  return rep;
}

}  // namespace divkum
