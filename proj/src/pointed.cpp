#include "divkummer/pointed.hpp"

#include "divkummer/errors.hpp"

#include <algorithm>

namespace divkum {

namespace {

Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }
Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }

RatVec rat_mul_mat(const RatVec& v, const IntMat& m) {
  RatVec out(m.cols, Rat(0));
  for (std::size_t k = 0; k < m.rows; ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < m.cols; ++j) out[j] += v[k] * Rat(m.at(k, j));
  }
  for (auto& q : out) q = frac_mod1(q);
  return out;
}

bool values_integral(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& q) { return rat_den(q) == 1; });
}

}  // namespace

IntMat TorsionTarget::omega_action() const {
  // w * (a + b w) = -n b + (a + t b) w in coordinates (1, w).
  return IntMat{{Int(0), Int(1)}, {-ring.n, ring.t}};
}

RatVec TorsionTarget::normalize(RatVec v) const {
  if (static_cast<int>(v.size()) != s) throw input_error("torsion target value has wrong length");
  for (auto& q : v) {
    q = frac_mod1(q);
    if (!denominator_ok(q)) throw input_error("value denominator not allowed in this torsion target");
  }
  return v;
}

bool TorsionTarget::denominator_ok(const Rat& q) const {
  if (filter.kind != FilterKind::PPower) return true;
  Int d = rat_den(q);
  while (d % filter.p == 0) d /= filter.p;
  return d == 1;
}

TorsionTarget make_target(int s, const IdealFilter& j, const Ring& ring) {
  if (j.kind != FilterKind::PPower && j.kind != FilterKind::AllNonzero)
    throw input_error("torsion targets exist for the filters p^inf and inf only");
  if (s < 1) throw input_error("torsion target needs at least one coordinate");
  if (ring.is_quadratic() && s != 2)
    throw input_error("over a quadratic order the torsion target has s = 2");
  return TorsionTarget{s, j, ring};
}

RatVec rat_add(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = frac_mod1(a[i] + b[i]);
  return out;
}

RatVec rat_scale(const Int& k, const RatVec& a) {
  RatVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = frac_mod1(Rat(k) * a[i]);
  return out;
}

bool rat_is_zero(const RatVec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& q) { return q == 0; });
}

RatVec PointedModule::point_tor(const std::vector<Int>& tor_coords) const {
  RatVec out(target.s, Rat(0));
  for (std::size_t i = 0; i < pointing.size(); ++i) {
    if (tor_coords[i] == 0) continue;
    for (int c = 0; c < target.s; ++c) out[c] += Rat(tor_coords[i]) * pointing[i][c];
  }
  for (auto& q : out) q = frac_mod1(q);
  return out;
}

RatVec PointedModule::point_element(const std::vector<Int>& x) const {
  auto coords = express_in_submodule(tor, module.normalize(x));
  if (!coords) throw error("element is not J-torsion");
  return point_tor(*coords);
}

std::vector<Int> PointedModule::j_component(const std::vector<Int>& x) const {
  std::vector<Int> out = module.normalize(x);
  for (std::size_t k = 0; k < module.gens(); ++k) {
    if (k < module.rank) {
      out[k] = 0;
      continue;
    }
    const Int& d = module.factors[k - module.rank];
    Int c;
    if (j.kind == FilterKind::AllNonzero) {
      c = 1;
    } else {
      Int pe = 1;
      Int rest = d;
      while (rest % j.p == 0) {
        rest /= j.p;
        pe *= j.p;
      }
      if (pe == 1) {
        c = 0;
      } else if (rest == 1) {
        c = 1;
      } else {
        Int alpha, beta;
        xgcd(pe, rest, alpha, beta);
        c = floor_mod(beta * rest, d);
      }
    }
    out[k] *= c;
  }
  return module.normalize(out);
}

PointedModule make_pointed(const IdealFilter& j, const TorsionTarget& target,
                           const FgModule& module, std::vector<RatVec> pointing) {
  if (!(target.filter == j)) throw input_error("torsion target belongs to a different filter");
  if (!(target.ring == module.ring)) throw input_error("torsion target over a different ring");
  PointedModule m;
  m.j = j;
  m.target = target;
  m.module = module;
  m.tor = torsion(j, module);
  if (pointing.size() != m.tor.module.gens())
    throw input_error("NonInjectivePointing: expected one value per torsion generator, got " +
                      std::to_string(pointing.size()));
  for (std::size_t i = 0; i < pointing.size(); ++i) {
    pointing[i] = target.normalize(std::move(pointing[i]));
    // The generator's order must kill its image.
    RatVec killed = rat_scale(m.tor.module.factors[i], pointing[i]);
    if (!rat_is_zero(killed))
      throw input_error("NonInjectivePointing: generator order does not kill its image");
  }
  m.pointing = std::move(pointing);

  check_budget(m.tor.module.is_finite() ? static_cast<std::uint64_t>(m.tor.module.order()) : 0,
               "pointing injectivity check");
  for (const auto& x : m.tor.module.all_elements()) {
    if (m.tor.module.is_zero_element(x)) continue;
    if (rat_is_zero(m.point_tor(x)))
      throw input_error("NonInjectivePointing: nonzero torsion element maps to 0");
  }

  if (module.ring.is_quadratic()) {
    IntMat w = target.omega_action();
    for (std::size_t i = 0; i < m.pointing.size(); ++i) {
      std::vector<Int> gen(m.tor.module.gens(), 0);
      gen[i] = 1;
      RatVec lhs = m.point_tor(m.tor.module.act(gen));
      RatVec rhs = rat_mul_mat(m.pointing[i], w);
      if (lhs != rhs)
        throw input_error("NonInjectivePointing: pointing does not commute with the ring action");
    }
  }
  return m;
}

PointedModule make_pointed_trivial(const IdealFilter& j, const TorsionTarget& target,
                                   const FgModule& module) {
  Submodule tor = torsion(j, module);
  std::vector<RatVec> zeros(tor.module.gens(), RatVec(target.s, Rat(0)));
  return make_pointed(j, target, module, std::move(zeros));
}

bool pointed_map_compatible(const PointedModule& source, const PointedModule& target,
                            const ModuleMap& f) {
  for (std::size_t i = 0; i < source.pointing.size(); ++i) {
    std::vector<Int> gen(source.tor.module.gens(), 0);
    gen[i] = 1;
    std::vector<Int> in_module = source.tor.inclusion.apply(gen);
    RatVec image_value = target.point_element(f.apply(in_module));
    if (image_value != source.pointing[i]) return false;
  }
  return true;
}

PointedMap make_pointed_map(const PointedModule& source, const PointedModule& target,
                            IntMat matrix) {
  if (!(source.j == target.j)) throw input_error("pointed map across different filters");
  ModuleMap f = make_map(source.module, target.module, std::move(matrix));
  if (!pointed_map_compatible(source, target, f))
    throw input_error("map does not respect the pointings");
  return PointedMap{source, target, std::move(f)};
}

JTExtension make_extension(const PointedModule& base, const PointedModule& total, IntMat inc) {
  PointedMap f = make_pointed_map(base, total, std::move(inc));
  if (!f.map.is_injective()) throw input_error("extension inclusion must be injective");
  if (!is_jmap(base.j, f.map)) throw input_error("extension inclusion must be a J-map");
  return JTExtension{base, total, std::move(f.map)};
}

bool is_pure(const PointedMap& f) {
  const FgModule& m = f.target.module;
  IntMat image = lattice_sum(f.map.matrix, m.relation_basis());
  IntMat divided = divide_lattice(f.source.j, image, IntMat::identity(m.gens()), m);
  IntMat target_side = lattice_sum(image, submodule_lattice(f.target.tor));
  return lattice_equal(divided, target_side);
}

PushoutResult pushout(const PointedMap& f, const PointedMap& g) {
  if (!(f.source.module == g.source.module) || f.source.pointing != g.source.pointing)
    throw input_error("pushout legs must share their source");
  if (!(f.target.target == g.target.target))
    throw input_error("pushout legs must point into the same torsion target");
  if (!f.map.is_injective()) throw input_error("pushout needs f injective");
  if (!is_pure(f)) throw not_pure_error();

  const PointedModule& m = f.target;
  const PointedModule& n = g.target;
  const IdealFilter& j = f.source.j;
  const std::size_t gm = m.module.gens(), gn = n.module.gens();

  auto widen = [&](const IntMat& mat, bool left) {
    IntMat out(mat.rows, gm + gn);
    for (std::size_t i = 0; i < mat.rows; ++i)
      for (std::size_t c = 0; c < mat.cols; ++c) out.at(i, left ? c : gm + c) = mat.at(i, c);
    return out;
  };

  IntMat rel = vstack(widen(m.module.relation_basis(), true), widen(n.module.relation_basis(), false));
  // S = {(f(l), -g(l))}.
  IntMat s_rows = hstack(f.map.matrix, scalar_mul(-1, g.map.matrix));
  rel = vstack(rel, s_rows);

  // K glues the torsion points with equal image in T.
  const std::size_t tm = m.tor.module.gens(), tn = n.tor.module.gens();
  Int e = 1;
  for (const auto& v : m.pointing)
    for (const auto& q : v) e = lcm_int(e, rat_den(q));
  for (const auto& v : n.pointing)
    for (const auto& q : v) e = lcm_int(e, rat_den(q));
  IntMat c(tm + tn, m.target.s);
  for (std::size_t i = 0; i < tm; ++i)
    for (int col = 0; col < m.target.s; ++col)
      c.at(i, col) = rat_num(m.pointing[i][col] * Rat(e));
  for (std::size_t i = 0; i < tn; ++i)
    for (int col = 0; col < n.target.s; ++col)
      c.at(tm + i, col) = -rat_num(n.pointing[i][col] * Rat(e));
  IntMat fiber = preimage_lattice(c, scalar_mul(e, IntMat::identity(m.target.s)));
  std::vector<std::vector<Int>> k_rows;
  for (std::size_t r = 0; r < fiber.rows; ++r) {
    std::vector<Int> u(fiber.data.begin() + r * fiber.cols, fiber.data.begin() + r * fiber.cols + tm);
    std::vector<Int> v(fiber.data.begin() + r * fiber.cols + tm,
                       fiber.data.begin() + (r + 1) * fiber.cols);
    std::vector<Int> mm = row_mul(u, m.tor.inclusion.matrix);
    std::vector<Int> nn = row_mul(v, n.tor.inclusion.matrix);
    std::vector<Int> row(gm + gn);
    for (std::size_t i = 0; i < gm; ++i) row[i] = mm[i];
    for (std::size_t i = 0; i < gn; ++i) row[gm + i] = -nn[i];
    k_rows.push_back(std::move(row));
  }
  rel = vstack(rel, from_rows(k_rows, gm + gn));

  std::optional<IntMat> action;
  if (m.module.ring.is_quadratic()) {
    IntMat a(gm + gn, gm + gn);
    for (std::size_t i = 0; i < gm; ++i)
      for (std::size_t k = 0; k < gm; ++k) a.at(i, k) = m.module.action->at(i, k);
    for (std::size_t i = 0; i < gn; ++i)
      for (std::size_t k = 0; k < gn; ++k) a.at(gm + i, gm + k) = n.module.action->at(i, k);
    action = a;
  }

  Presented pres = present(m.module.ring, gm + gn, rel, action);
  const FgModule& p = pres.module;

  IntMat i_mat(gm, p.gens()), j_mat(gn, p.gens());
  for (std::size_t r = 0; r < gm; ++r)
    for (std::size_t cidx = 0; cidx < p.gens(); ++cidx) i_mat.at(r, cidx) = pres.to_canonical.at(r, cidx);
  for (std::size_t r = 0; r < gn; ++r)
    for (std::size_t cidx = 0; cidx < p.gens(); ++cidx) j_mat.at(r, cidx) = pres.to_canonical.at(gm + r, cidx);

  // Pointing u([(x,y)]) = s(x) + t(y); every torsion class is represented by
  // a pair of torsion points because f is pure.
  Submodule tor_p = torsion(j, p);
  IntMat span = vstack(widen(m.tor.inclusion.matrix, true), widen(n.tor.inclusion.matrix, false));
  span = vstack(span, rel);
  std::vector<RatVec> values;
  for (std::size_t i = 0; i < tor_p.module.gens(); ++i) {
    std::vector<Int> gen(tor_p.module.gens(), 0);
    gen[i] = 1;
    std::vector<Int> block = row_mul(tor_p.inclusion.apply(gen), pres.from_canonical);
    auto sol = solve_in_lattice(block, span);
    if (!sol) throw error("pushout torsion is not generated by the two torsion images");
    std::vector<Int> a(sol->begin(), sol->begin() + tm);
    std::vector<Int> b(sol->begin() + tm, sol->begin() + tm + tn);
    values.push_back(rat_add(m.point_tor(a), n.point_tor(b)));
  }

  PointedModule pp = make_pointed(j, m.target, p, std::move(values));
  PushoutResult out{pp, make_pointed_map(m, pp, std::move(i_mat)),
                    make_pointed_map(n, pp, std::move(j_mat)), pres.from_canonical};
  return out;
}

PointedMap mediate(const PushoutResult& po, const PointedMap& k, const PointedMap& l) {
  if (!(k.target.module == l.target.module) || k.target.pointing != l.target.pointing)
    throw input_error("mediate: competitor legs land in different modules");
  IntMat stacked = vstack(k.map.matrix, l.map.matrix);
  IntMat mat = mat_mul(po.from_canonical, stacked);
  return make_pointed_map(po.p, k.target, std::move(mat));
}

SaturatedModule saturate(const PointedModule& m) {
  QuotientResult q = quotient(m.module, m.tor.inclusion);
  SaturatedModule out;
  out.quotient_part = q.module;
  out.target = m.target;
  out.free_map = q.projection.matrix;
  for (std::size_t k = 0; k < m.module.gens(); ++k) {
    std::vector<Int> unit(m.module.gens(), 0);
    unit[k] = 1;
    std::vector<Int> xj = m.j_component(unit);
    if (m.module.is_zero_element(xj))
      out.t_component.push_back(RatVec(m.target.s, Rat(0)));
    else
      out.t_component.push_back(m.point_element(xj));
  }
  return out;
}

Int pointing_level(const PointedModule& m) {
  Int level = 1;
  for (const auto& v : m.pointing)
    for (const auto& q : v) level = lcm_int(level, boost::multiprecision::denominator(q));
  return level;
}

WindowSat saturate_window(const PointedModule& m, const Int& level) {
  if (level < 1) throw input_error("window level must be positive");
  if (m.j.kind == FilterKind::PPower) {
    Int rest = level;
    while (rest % m.j.p == 0) rest /= m.j.p;
    if (rest != 1) throw input_error("window level must be a power of p for the p^inf filter");
  }
  SaturatedModule sat = saturate(m);
  Int needed = 1;
  for (const auto& v : sat.t_component)
    for (const auto& q : v) needed = lcm_int(needed, boost::multiprecision::denominator(q));

  const std::size_t gq = sat.quotient_part.gens();
  const int s = m.target.s;

  std::optional<IntMat> action;
  std::vector<RatVec> delta;
  if (m.module.ring.is_quadratic()) {
    // The transported action on Q + T has an off-diagonal part Q -> T.
    ModuleMap proj = make_map(m.module, sat.quotient_part, sat.free_map);
    IntMat w = m.target.omega_action();
    for (std::size_t k = 0; k < gq; ++k) {
      std::vector<Int> unit(gq, 0);
      unit[k] = 1;
      auto lift = solve_map(proj, unit);
      if (!lift) throw error("saturation projection is not surjective");
      auto value_of = [&](const std::vector<Int>& x) {
        std::vector<Int> xj = m.j_component(x);
        return m.module.is_zero_element(xj) ? RatVec(s, Rat(0)) : m.point_element(xj);
      };
      RatVec lhs = value_of(m.module.act(*lift));
      RatVec rhs = rat_mul_mat(value_of(*lift), w);
      RatVec d(s);
      for (int c2 = 0; c2 < s; ++c2) d[c2] = frac_mod1(lhs[c2] - rhs[c2]);
      for (const auto& q : d) needed = lcm_int(needed, boost::multiprecision::denominator(q));
      delta.push_back(std::move(d));
    }
  }
  if (level % needed != 0) throw level_too_small_error(to_string(needed));

  IntMat qrel = sat.quotient_part.relation_basis();
  IntMat rel(qrel.rows + s, gq + s);
  for (std::size_t i = 0; i < qrel.rows; ++i)
    for (std::size_t c2 = 0; c2 < gq; ++c2) rel.at(i, c2) = qrel.at(i, c2);
  for (int i = 0; i < s; ++i) rel.at(qrel.rows + i, gq + i) = level;

  if (m.module.ring.is_quadratic()) {
    IntMat a(gq + s, gq + s);
    for (std::size_t i = 0; i < gq; ++i) {
      for (std::size_t k = 0; k < gq; ++k) a.at(i, k) = sat.quotient_part.action->at(i, k);
      for (int c2 = 0; c2 < s; ++c2) a.at(i, gq + c2) = rat_num(delta[i][c2] * Rat(level));
    }
    IntMat w = m.target.omega_action();
    for (int i = 0; i < s; ++i)
      for (int c2 = 0; c2 < s; ++c2) a.at(gq + i, gq + c2) = w.at(i, c2);
    action = a;
  }

  Presented pres = present(m.module.ring, gq + s, rel, action);

  // The J-torsion of Q + (Z/L)^s lies entirely in the window block.
  Submodule tor_sat = torsion(m.j, pres.module);
  std::vector<RatVec> values;
  for (std::size_t i = 0; i < tor_sat.module.gens(); ++i) {
    std::vector<Int> gen(tor_sat.module.gens(), 0);
    gen[i] = 1;
    std::vector<Int> block = row_mul(tor_sat.inclusion.apply(gen), pres.from_canonical);
    std::vector<Int> qpart(block.begin(), block.begin() + gq);
    if (!sat.quotient_part.is_zero_element(qpart))
      throw error("window saturation torsion leaks into the quotient part");
    RatVec v(s);
    for (int c2 = 0; c2 < s; ++c2) v[c2] = frac_mod1(Rat(block[gq + c2], level));
    values.push_back(std::move(v));
  }
  PointedModule satp = make_pointed(m.j, m.target, pres.module, std::move(values));

  IntMat incs_block(m.module.gens(), gq + s);
  for (std::size_t i = 0; i < m.module.gens(); ++i) {
    for (std::size_t c2 = 0; c2 < gq; ++c2) incs_block.at(i, c2) = sat.free_map.at(i, c2);
    for (int c2 = 0; c2 < s; ++c2) incs_block.at(i, gq + c2) = rat_num(sat.t_component[i][c2] * Rat(level));
  }
  IntMat incs_mat = mat_mul(incs_block, pres.to_canonical);
  PointedMap incs = make_pointed_map(m, satp, std::move(incs_mat));
  return WindowSat{satp, incs.map};
}

bool is_window_saturated(const PointedModule& m, const Int& level) {
  const int s = m.target.s;
  if (m.tor.module.factors != std::vector<Int>(s, level)) return false;
  IntMat v(m.pointing.size(), s);
  for (std::size_t i = 0; i < m.pointing.size(); ++i)
    for (int c = 0; c < s; ++c) {
      Rat scaled = m.pointing[i][c] * Rat(level);
      if (boost::multiprecision::denominator(scaled) != 1) return false;
      v.at(i, c) = boost::multiprecision::numerator(scaled);
    }
  return lattice_equal(lattice_sum(v, scalar_mul(level, IntMat::identity(s))), IntMat::identity(s));
}

PullbackResult pullback(const PointedMap& phi, const JTExtension& ext) {
  if (!(phi.target.module == ext.base.module) || phi.target.pointing != ext.base.pointing)
    throw input_error("pullback: phi must land in the extension's base");
  const IdealFilter& j = phi.source.j;

  Submodule img = submodule_from_generators(phi.target.module, phi.map.matrix);
  std::vector<RatVec> img_pointing;
  {
    Submodule img_tor = torsion(j, img.module);
    for (std::size_t i = 0; i < img_tor.module.gens(); ++i) {
      std::vector<Int> gen(img_tor.module.gens(), 0);
      gen[i] = 1;
      img_pointing.push_back(phi.target.point_element(img.inclusion.apply(img_tor.inclusion.apply(gen))));
    }
  }
  PointedModule base = make_pointed(j, phi.target.target, img.module, std::move(img_pointing));

  ModuleMap img_in_total = compose(img.inclusion, ext.inc);
  Submodule div = divide_filter(j, img_in_total);
  std::vector<RatVec> div_pointing;
  {
    Submodule div_tor = torsion(j, div.module);
    for (std::size_t i = 0; i < div_tor.module.gens(); ++i) {
      std::vector<Int> gen(div_tor.module.gens(), 0);
      gen[i] = 1;
      div_pointing.push_back(ext.total.point_element(div.inclusion.apply(div_tor.inclusion.apply(gen))));
    }
  }
  PointedModule total = make_pointed(j, phi.target.target, div.module, std::move(div_pointing));

  IntMat inc(img.module.gens(), div.module.gens());
  for (std::size_t i = 0; i < img.module.gens(); ++i) {
    std::vector<Int> unit(img.module.gens(), 0);
    unit[i] = 1;
    auto coords = express_in_submodule(div, img_in_total.apply(unit));
    if (!coords) throw error("pullback image is not inside the division module");
    inc.set_row(i, *coords);
  }
  JTExtension out = make_extension(base, total, std::move(inc));
  return PullbackResult{std::move(out), div.inclusion};
}

PullbackResult pullback_to_source(const PointedMap& phi, const JTExtension& ext) {
  if (!phi.map.is_injective()) throw input_error("pullback_to_source needs an injective map");
  PullbackResult pb = pullback(phi, ext);
  // Identify L with phi(L).
  Submodule img = submodule_from_generators(phi.target.module, phi.map.matrix);
  IntMat iso(phi.source.module.gens(), img.module.gens());
  for (std::size_t i = 0; i < phi.source.module.gens(); ++i) {
    std::vector<Int> unit(phi.source.module.gens(), 0);
    unit[i] = 1;
    auto coords = express_in_submodule(img, phi.map.apply(unit));
    if (!coords) throw error("phi image decomposition failed");
    iso.set_row(i, *coords);
  }
  IntMat inc = mat_mul(iso, pb.ext.inc.matrix);
  JTExtension rebased = make_extension(phi.source, pb.ext.total, std::move(inc));
  return PullbackResult{std::move(rebased), pb.into_ambient};
}

PushforwardResult pushforward(const PointedMap& phi, const JTExtension& ext) {
  if (!(phi.source.module == ext.base.module) || phi.source.pointing != ext.base.pointing)
    throw input_error("pushforward: phi must start at the extension's base");
  PointedMap inc_map = make_pointed_map(ext.base, ext.total, ext.inc.matrix);
  PushoutResult po = pushout(phi, inc_map);
  JTExtension out = make_extension(phi.target, po.p, po.into_left.map.matrix);
  return PushforwardResult{std::move(out), po.into_right, std::move(po)};
}

ExtensionMaps extension_maps(const JTExtension& a, const JTExtension& b) {
  if (!(a.base.module == b.base.module))
    throw input_error("extension_maps: extensions have different bases");
  QuotientResult qa = quotient(a.total.module, a.inc);
  if (!qa.module.is_finite())
    throw infinite_search_error("extension_maps needs a finite quotient total/base");

  const FgModule& at = a.total.module;
  const FgModule& bt = b.total.module;
  const std::size_t g = at.gens();
  IntMat bt_rel = bt.relation_basis();

  Submodule b_tor = torsion(b.total.j, bt);

  std::vector<std::vector<std::vector<Int>>> candidates(g);
  for (std::size_t k = 0; k < g; ++k) {
    std::vector<Int> unit(g, 0);
    unit[k] = 1;
    Int o = qa.module.element_order(qa.projection.apply(unit));
    // o * x_k = i_a(beta) exactly in the total module.
    std::vector<Int> scaled(g, 0);
    scaled[k] = o;
    auto sol = solve_in_lattice(at.normalize(scaled), vstack(a.inc.matrix, at.relation_basis()));
    if (!sol) throw error("quotient order computation is inconsistent");
    std::vector<Int> beta(sol->begin(), sol->begin() + a.base.module.gens());
    std::vector<Int> w = bt.normalize(row_mul(beta, b.inc.matrix));
    // Solutions of o * y = w in b's total.
    auto part = solve_in_lattice(w, vstack(scalar_mul(o, IntMat::identity(bt.gens())), bt_rel));
    if (!part) return {};
    std::vector<Int> y0(part->begin(), part->begin() + bt.gens());
    for (const auto& t : b_tor.module.all_elements()) {
      std::vector<Int> te = b_tor.inclusion.apply(t);
      if (b_tor.module.element_order(t) != 0 && o % b_tor.module.element_order(t) == 0) {
        std::vector<Int> cand(bt.gens());
        for (std::size_t c = 0; c < bt.gens(); ++c) cand[c] = y0[c] + te[c];
        candidates[k].push_back(bt.normalize(cand));
      }
    }
    if (candidates[k].empty()) return {};
  }

  std::uint64_t combos = 1;
  for (const auto& c : candidates) {
    combos *= c.size();
    check_budget(combos, "extension map search");
  }

  ExtensionMaps out;
  std::vector<std::size_t> idx(g, 0);
  IntMat full = IntMat::identity(bt.gens());
  while (true) {
    IntMat mat(g, bt.gens());
    for (std::size_t k = 0; k < g; ++k) mat.set_row(k, candidates[k][idx[k]]);

    bool ok = true;
    // Source relations.
    for (std::size_t i = 0; i < at.factors.size() && ok; ++i) {
      std::vector<Int> moved = mat.row(at.rank + i);
      for (auto& v : moved) v *= at.factors[i];
      ok = bt.is_zero_element(moved);
    }
    // Equivariance.
    if (ok && at.action && bt.action) {
      IntMat diff = mat_sub(mat_mul(*at.action, mat), mat_mul(mat, *bt.action));
      for (std::size_t i = 0; i < diff.rows && ok; ++i) ok = bt.is_zero_element(diff.row(i));
    }
    // phi o i_a = i_b.
    if (ok) {
      IntMat lhs = mat_mul(a.inc.matrix, mat);
      for (std::size_t i = 0; i < lhs.rows && ok; ++i) {
        std::vector<Int> d = lhs.row(i);
        auto rhs = b.inc.matrix.row(i);
        for (std::size_t c = 0; c < d.size(); ++c) d[c] -= rhs[c];
        ok = bt.is_zero_element(d);
      }
    }
    if (ok) {
      ModuleMap f{at, bt, mat};
      if (!pointed_map_compatible(a.total, b.total, f)) ok = false;
      if (ok) {
        // Maps of (J,T)-extensions are injective; a violation here would be
        // a genuine defect.
        if (!lattice_equal(preimage_lattice(mat, bt_rel), at.relation_basis()))
          throw error("found a non-injective map of (J,T)-extensions");
        bool surj = lattice_equal(lattice_sum(mat, bt_rel), full);
        out.maps.push_back(PointedMap{a.total, b.total, std::move(f)});
        out.is_isomorphism.push_back(surj);
      }
    }

    std::size_t k = 0;
    for (; k < g; ++k) {
      if (++idx[k] < candidates[k].size()) break;
      idx[k] = 0;
    }
    if (k == g) break;
  }
  return out;
}

AdjunctionReport adjunction_check(const PointedMap& phi, const JTExtension& n,
                                  const JTExtension& p) {
  AdjunctionReport rep;
  PullbackResult pbp = pullback_to_source(phi, p);
  PushforwardResult pfn = pushforward(phi, n);

  ExtensionMaps hom1 = extension_maps(n, pbp.ext);
  ExtensionMaps hom2 = extension_maps(pfn.ext, p);
  rep.hom_count = hom1.maps.size();

  PointedMap k_leg = make_pointed_map(p.base, p.total, p.inc.matrix);
  auto psi = [&](const PointedMap& f) {
    PointedMap l_leg =
        make_pointed_map(n.total, p.total, mat_mul(f.map.matrix, pbp.into_ambient.matrix));
    return mediate(pfn.raw, k_leg, l_leg);
  };

  // The hom-set bijection.
  std::vector<ModuleMap> images;
  bool bij = hom1.maps.size() == hom2.maps.size();
  for (const auto& f : hom1.maps) {
    if (!bij) break;
    PointedMap g = psi(f);
    bool found = false;
    for (const auto& h : hom2.maps) found = found || maps_equal(h.map, g.map);
    for (const auto& seen : images)
      if (maps_equal(seen, g.map)) found = false;
    if (!found) bij = false;
    images.push_back(g.map);
  }
  rep.hom_bijection = bij;

  // Unit of the adjunction: N -> phi^* phi_* N through the pushout map.
  PullbackResult pb2 = pullback_to_source(phi, pfn.ext);
  auto corestrict = [](const ModuleMap& wide, const ModuleMap& into_ambient,
                       const FgModule& small_target) {
    IntMat mat(wide.source.gens(), small_target.gens());
    for (std::size_t i = 0; i < wide.source.gens(); ++i) {
      std::vector<Int> unit(wide.source.gens(), 0);
      unit[i] = 1;
      auto coords = solve_map(into_ambient, wide.apply(unit));
      if (!coords) throw error("corestriction leaves the division submodule");
      mat.set_row(i, *coords);
    }
    return mat;
  };
  PointedMap unit_n = make_pointed_map(
      n.total, pb2.ext.total, corestrict(pfn.push_map.map, pb2.into_ambient, pb2.ext.total.module));

  // Counit: phi_* phi^* P -> P, mediated over the pushout of phi^* P.
  PushforwardResult pf3 = pushforward(phi, pbp.ext);
  PointedMap l4 = make_pointed_map(pbp.ext.total, p.total, pbp.into_ambient.matrix);
  PointedMap counit_via_pf3 = mediate(pf3.raw, k_leg, l4);  // phi_* phi^* P -> P
  rep.counit_iso = counit_via_pf3.map.is_injective() && counit_via_pf3.map.is_surjective();

  // Triangle 1 on phi_* N: counit(phi_* N) o phi_*(unit_N) = id.
  {
    PushforwardResult pf2 = pushforward(phi, pb2.ext);
    PointedMap k2 = make_pointed_map(pf2.ext.base, pf2.ext.total, pf2.ext.inc.matrix);
    PointedMap l2 = make_pointed_map(
        n.total, pf2.ext.total, mat_mul(unit_n.map.matrix, pf2.push_map.map.matrix));
    PointedMap pf_unit = mediate(pfn.raw, k2, l2);  // phi_* N -> phi_* phi^* phi_* N
    PointedMap k3 = make_pointed_map(pfn.ext.base, pfn.ext.total, pfn.ext.inc.matrix);
    PointedMap l3 = make_pointed_map(pb2.ext.total, pfn.ext.total, pb2.into_ambient.matrix);
    PointedMap counit2 = mediate(pf2.raw, k3, l3);  // phi_* phi^* phi_* N -> phi_* N
    rep.triangle_unit = maps_equal(compose(pf_unit.map, counit2.map),
                                   identity_map(pfn.ext.total.module));
  }

  // Triangle 2 on phi^* P: phi^*(counit_P) o unit(phi^* P) = id.
  {
    PullbackResult pb3 = pullback_to_source(phi, pf3.ext);
    PointedMap unit_pbp = make_pointed_map(
        pbp.ext.total, pb3.ext.total,
        corestrict(pf3.push_map.map, pb3.into_ambient, pb3.ext.total.module));
    // Restrict the counit along the pullback.
    IntMat restricted(pb3.ext.total.module.gens(), pbp.ext.total.module.gens());
    for (std::size_t i = 0; i < pb3.ext.total.module.gens(); ++i) {
      std::vector<Int> unit(pb3.ext.total.module.gens(), 0);
      unit[i] = 1;
      std::vector<Int> wide = counit_via_pf3.map.apply(pb3.into_ambient.apply(unit));
      auto coords = solve_map(pbp.into_ambient, wide);
      if (!coords) throw error("restricted counit leaves the pullback");
      restricted.set_row(i, *coords);
    }
    PointedMap phi_star_counit = make_pointed_map(pb3.ext.total, pbp.ext.total, restricted);
    rep.triangle_counit = maps_equal(compose(unit_pbp.map, phi_star_counit.map),
                                     identity_map(pbp.ext.total.module));
  }

  return rep;
}

}  // namespace divkum
