#include "divkummer/autseq.hpp"

#include "divkummer/errors.hpp"

#include <algorithm>
#include <map>

namespace divkum {

namespace {

using MatKey = std::vector<Int>;

MatKey key_of(const FgModule& m, const IntMat& mat) {
  IntMat n = mat;
  for (std::size_t i = 0; i < n.rows; ++i) n.set_row(i, m.normalize(n.row(i)));
  return n.data;
}

IntMat normalized(const FgModule& m, IntMat mat) {
  for (std::size_t i = 0; i < mat.rows; ++i) mat.set_row(i, m.normalize(mat.row(i)));
  return mat;
}

bool is_bijective_endo(const FgModule& m, const IntMat& mat) {
  return lattice_equal(preimage_lattice(mat, m.relation_basis()), m.relation_basis());
}

// Enumerate endomorphism matrices of the form id + (torsion-valued rows),
// filtered by arbitrary extra predicates.
template <typename Filter>
std::vector<IntMat> search_over_base(const FgModule& total, const Submodule& tor,
                                     const Filter& keep) {
  const std::size_t g = total.gens();
  std::vector<std::vector<Int>> tor_elems;
  for (const auto& t : tor.module.all_elements()) tor_elems.push_back(tor.inclusion.apply(t));

  // Per-generator relation constraint: d_j * t_j = 0.
  std::vector<std::vector<std::vector<Int>>> candidates(g);
  for (std::size_t jgen = 0; jgen < g; ++jgen) {
    for (const auto& t : tor_elems) {
      if (jgen >= total.rank) {
        std::vector<Int> scaled = t;
        for (auto& v : scaled) v *= total.factors[jgen - total.rank];
        if (!total.is_zero_element(scaled)) continue;
      }
      candidates[jgen].push_back(t);
    }
  }
  std::uint64_t combos = 1;
  for (const auto& c : candidates) {
    combos *= c.size();
    check_budget(combos, "automorphism search");
  }

  std::vector<IntMat> out;
  std::vector<std::size_t> idx(g, 0);
  while (true) {
    IntMat shift(g, g);
    for (std::size_t jgen = 0; jgen < g; ++jgen) shift.set_row(jgen, candidates[jgen][idx[jgen]]);
    IntMat sigma = normalized(total, mat_add(IntMat::identity(g), shift));
    if (keep(sigma, shift)) out.push_back(sigma);

    std::size_t jgen = 0;
    for (; jgen < g; ++jgen) {
      if (++idx[jgen] < candidates[jgen].size()) break;
      idx[jgen] = 0;
    }
    if (jgen == g) break;
  }
  return out;
}

bool rows_vanish(const FgModule& m, const IntMat& rows) {
  for (std::size_t i = 0; i < rows.rows; ++i)
    if (!m.is_zero_element(rows.row(i))) return false;
  return true;
}

}  // namespace

bool AutGroup::is_abelian() const {
  for (std::size_t a = 0; a < elements.size(); ++a)
    for (std::size_t b = a + 1; b < elements.size(); ++b)
      if (key_of(carrier, mat_mul(elements[a], elements[b])) !=
          key_of(carrier, mat_mul(elements[b], elements[a])))
        return false;
  return true;
}

AutGroup make_aut_group(const FgModule& carrier, std::vector<IntMat> elements) {
  std::map<MatKey, std::size_t> index;
  std::vector<IntMat> elems;
  for (auto& e : elements) {
    IntMat n = normalized(carrier, std::move(e));
    MatKey k = n.data;
    if (!index.count(k)) {
      index[k] = elems.size();
      elems.push_back(std::move(n));
    }
  }
  // identity first
  IntMat id = IntMat::identity(carrier.gens());
  MatKey idk = key_of(carrier, id);
  if (!index.count(idk)) throw error("automorphism table lacks the identity");
  std::swap(elems[index[idk]], elems[0]);
  index.clear();
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i].data] = i;

  // closure and invertibility
  for (const auto& a : elems)
    for (const auto& b : elems)
      if (!index.count(key_of(carrier, mat_mul(a, b))))
        throw error("automorphism table is not closed under composition");
  for (const auto& a : elems) {
    bool has_inverse = false;
    for (const auto& b : elems)
      if (key_of(carrier, mat_mul(a, b)) == idk) has_inverse = true;
    if (!has_inverse) throw error("automorphism table is not closed under inversion");
  }

  AutGroup g{carrier, std::move(elems), {}};
  // greedy generators
  std::map<MatKey, bool> generated;
  generated[idk] = true;
  std::size_t covered = 1;
  for (std::size_t i = 1; i < g.elements.size() && covered < g.elements.size(); ++i) {
    if (generated.count(g.elements[i].data)) continue;
    g.generators.push_back(i);
    // close the generated subgroup
    bool grew = true;
    generated[g.elements[i].data] = true;
    ++covered;
    while (grew) {
      grew = false;
      std::vector<MatKey> present;
      for (const auto& [k, _] : generated) present.push_back(k);
      for (const auto& ka : present)
        for (std::size_t gi : g.generators) {
          IntMat a(g.carrier.gens(), g.carrier.gens(), ka);
          MatKey prod = key_of(g.carrier, mat_mul(a, g.elements[gi]));
          if (!generated.count(prod)) {
            generated[prod] = true;
            ++covered;
            grew = true;
          }
        }
    }
  }
  return g;
}

AutGroup aut_over_base(const JTExtension& n) {
  const FgModule& total = n.total.module;
  const Submodule& tor = n.total.tor;
  IntMat inc = n.inc.matrix;
  auto keep = [&](const IntMat& sigma, const IntMat& shift) {
    if (!rows_vanish(total, mat_mul(inc, shift))) return false;  // fixes i(M)
    if (total.action) {
      IntMat comm = mat_sub(mat_mul(*total.action, shift), mat_mul(shift, *total.action));
      if (!rows_vanish(total, comm)) return false;
    }
    return is_bijective_endo(total, sigma);
  };
  return make_aut_group(total, search_over_base(total, tor, keep));
}

AutGroup aut_fixing_base_and_torsion(const JTExtension& n) {
  const FgModule& total = n.total.module;
  const Submodule& tor = n.total.tor;
  IntMat inc = n.inc.matrix;
  IntMat tor_rows = tor.inclusion.matrix;
  auto keep = [&](const IntMat& sigma, const IntMat& shift) {
    if (!rows_vanish(total, mat_mul(inc, shift))) return false;
    if (!rows_vanish(total, mat_mul(tor_rows, shift))) return false;  // fixes N[J]
    if (total.action) {
      IntMat comm = mat_sub(mat_mul(*total.action, shift), mat_mul(shift, *total.action));
      if (!rows_vanish(total, comm)) return false;
    }
    return is_bijective_endo(total, sigma);
  };
  AutGroup g = make_aut_group(total, search_over_base(total, tor, keep));

  // Cross-check against Hom(N/(i(M)+N[J]), N[J]).
  QuotientResult q = quotient_by_lattice(total, vstack(inc, tor_rows));
  HomModule hom = hom_module(q.module, tor.module);
  if (Int(g.order()) != hom.group.order())
    throw error("Aut_{M+N[J]}(N) disagrees with Hom(N/(i(M)+N[J]), N[J])");
  return g;
}

namespace {

IntMat restrict_to_torsion(const JTExtension& n, const IntMat& sigma) {
  const Submodule& tor = n.total.tor;
  IntMat out(tor.module.gens(), tor.module.gens());
  for (std::size_t i = 0; i < tor.module.gens(); ++i) {
    std::vector<Int> unit(tor.module.gens(), 0);
    unit[i] = 1;
    std::vector<Int> moved = n.total.module.normalize(row_mul(tor.inclusion.apply(unit), sigma));
    auto coords = express_in_submodule(tor, moved);
    if (!coords) throw error("automorphism does not preserve the torsion submodule");
    out.set_row(i, *coords);
  }
  return out;
}

}  // namespace

AutGroup aut_torsion_quotient(const JTExtension& n) {
  AutGroup full = aut_over_base(n);
  std::vector<IntMat> restricted;
  for (const auto& sigma : full.elements) restricted.push_back(restrict_to_torsion(n, sigma));
  return make_aut_group(n.total.tor.module, std::move(restricted));
}

AutGroup aut_of_torsion_fixing_base(const JTExtension& n) {
  const FgModule& tor = n.total.tor.module;
  // image of the base torsion inside tor(N)
  Submodule base_tor = torsion(n.base.j, n.base.module);
  IntMat fixed(base_tor.module.gens(), tor.gens());
  for (std::size_t i = 0; i < base_tor.module.gens(); ++i) {
    std::vector<Int> unit(base_tor.module.gens(), 0);
    unit[i] = 1;
    std::vector<Int> in_total = n.inc.apply(base_tor.inclusion.apply(unit));
    auto coords = express_in_submodule(n.total.tor, in_total);
    if (!coords) throw error("base torsion is not inside the total torsion");
    fixed.set_row(i, *coords);
  }

  check_budget(static_cast<std::uint64_t>(tor.order()) * tor.gens(), "torsion automorphism search");
  std::vector<std::vector<Int>> elems = tor.all_elements();
  std::vector<std::vector<std::vector<Int>>> candidates(tor.gens());
  for (std::size_t jgen = 0; jgen < tor.gens(); ++jgen)
    for (const auto& e : elems) {
      std::vector<Int> scaled = e;
      for (auto& v : scaled) v *= tor.factors[jgen];
      if (tor.is_zero_element(scaled)) candidates[jgen].push_back(e);
    }
  std::uint64_t combos = 1;
  for (const auto& c : candidates) {
    combos *= c.size();
    check_budget(combos, "torsion automorphism search");
  }

  std::vector<IntMat> found;
  std::vector<std::size_t> idx(tor.gens(), 0);
  while (true) {
    IntMat mat(tor.gens(), tor.gens());
    for (std::size_t jgen = 0; jgen < tor.gens(); ++jgen) mat.set_row(jgen, candidates[jgen][idx[jgen]]);
    bool ok = is_bijective_endo(tor, mat);
    if (ok && tor.action) {
      IntMat comm = mat_sub(mat_mul(*tor.action, mat), mat_mul(mat, *tor.action));
      ok = rows_vanish(tor, comm);
    }
    if (ok) {
      IntMat moved = mat_mul(fixed, mat);
      for (std::size_t i = 0; i < moved.rows && ok; ++i) {
        std::vector<Int> d = moved.row(i);
        auto rhs = fixed.row(i);
        for (std::size_t c = 0; c < d.size(); ++c) d[c] -= rhs[c];
        ok = tor.is_zero_element(d);
      }
    }
    if (ok) found.push_back(mat);

    std::size_t jgen = 0;
    for (; jgen < tor.gens(); ++jgen) {
      if (++idx[jgen] < candidates[jgen].size()) break;
      idx[jgen] = 0;
    }
    if (jgen == tor.gens()) break;
  }
  return make_aut_group(tor, std::move(found));
}

std::vector<Int> ExactSequenceReport::orders() const {
  return {Int(kernel_group.order()), Int(middle_group.order()), Int(quotient_group.order())};
}

ExactSequenceReport exact_sequence(const JTExtension& n, const DivisibleHull& gamma,
                                   const Int& level) {
  NormalityReport norm = is_normal(n, gamma, level);
  if (!norm.normal) throw not_normal_error();

  ExactSequenceReport rep;
  rep.middle_group = aut_over_base(n);
  rep.kernel_group = aut_fixing_base_and_torsion(n);
  rep.quotient_group = aut_torsion_quotient(n);

  const FgModule& total = n.total.module;
  const Submodule& tor = n.total.tor;
  QuotientResult q = quotient_by_lattice(total, vstack(n.inc.matrix, tor.inclusion.matrix));
  HomModule hom = hom_module(q.module, tor.module);
  rep.hom_kernel = hom.group;

  // sat(N)/sat(M) = (N/N[J]) / image(M/M[J]); the T summands cancel.
  {
    QuotientResult qn = quotient(total, tor.inclusion);
    Submodule base_tor = torsion(n.base.j, n.base.module);
    QuotientResult qm = quotient(n.base.module, base_tor.inclusion);
    IntMat induced(qm.module.gens(), qn.module.gens());
    for (std::size_t i = 0; i < qm.module.gens(); ++i) {
      std::vector<Int> unit(qm.module.gens(), 0);
      unit[i] = 1;
      auto lift = solve_map(qm.projection, unit);
      if (!lift) throw error("saturation projection not surjective");
      induced.set_row(i, qn.projection.apply(n.inc.apply(*lift)));
    }
    FgModule sat_q = quotient_by_lattice(qn.module, induced).module;
    rep.sat_quotient_factors = sat_q.factors;
    if (sat_q.factors != q.module.factors || sat_q.rank != q.module.rank)
      throw error("sat(N)/sat(M) disagrees with N/(i(M)+N[J])");
  }

  rep.order_identity =
      rep.middle_group.order() == rep.kernel_group.order() * rep.quotient_group.order();
  rep.kernel_abelian = rep.kernel_group.is_abelian();

  // sigma -> phi_sigma is a bijective group homomorphism onto the Hom group.
  {
    auto phi_of = [&](const IntMat& sigma) {
      IntMat shift = mat_sub(sigma, IntMat::identity(total.gens()));
      IntMat phi(q.module.gens(), tor.module.gens());
      for (std::size_t i = 0; i < q.module.gens(); ++i) {
        std::vector<Int> unit(q.module.gens(), 0);
        unit[i] = 1;
        auto lift = solve_map(q.projection, unit);
        if (!lift) throw error("quotient projection not surjective");
        auto coords = express_in_submodule(tor, total.normalize(row_mul(*lift, shift)));
        if (!coords) throw error("phi_sigma does not land in the torsion");
        phi.set_row(i, *coords);
      }
      return normalized(tor.module, phi);
    };
    std::vector<MatKey> seen;
    bool bij = true;
    std::vector<IntMat> phis;
    for (const auto& sigma : rep.kernel_group.elements) phis.push_back(phi_of(sigma));
    for (const auto& p : phis) {
      MatKey k = p.data;
      if (std::find(seen.begin(), seen.end(), k) != seen.end()) bij = false;
      seen.push_back(k);
    }
    if (Int(phis.size()) != hom.group.order()) bij = false;
    // additivity on composition
    for (std::size_t a = 0; a < rep.kernel_group.elements.size() && bij; ++a)
      for (std::size_t b = 0; b < rep.kernel_group.elements.size() && bij; ++b) {
        IntMat comp = mat_mul(rep.kernel_group.elements[a], rep.kernel_group.elements[b]);
        IntMat sum = mat_add(phis[a], phis[b]);
        bij = key_of(tor.module, phi_of(comp)) == key_of(tor.module, sum);
      }
    rep.hom_bijection = bij;
  }

  // The quotient acts on the kernel by composition: conjugating a kernel
  // element by a lift of rho turns phi into rho o phi.
  {
    bool ok = true;
    auto phi_of = [&](const IntMat& sigma) {
      IntMat shift = mat_sub(sigma, IntMat::identity(total.gens()));
      IntMat phi(q.module.gens(), tor.module.gens());
      for (std::size_t i = 0; i < q.module.gens(); ++i) {
        std::vector<Int> unit(q.module.gens(), 0);
        unit[i] = 1;
        auto lift = solve_map(q.projection, unit);
        auto coords = express_in_submodule(tor, total.normalize(row_mul(*lift, shift)));
        if (!coords) throw error("phi_sigma does not land in the torsion");
        phi.set_row(i, *coords);
      }
      return phi;
    };
    for (const auto& rho : rep.quotient_group.elements) {
      // a lift of rho inside Aut_M(N)
      const IntMat* lift = nullptr;
      for (const auto& sigma : rep.middle_group.elements)
        if (key_of(tor.module, restrict_to_torsion(n, sigma)) == key_of(tor.module, rho)) {
          lift = &sigma;
          break;
        }
      if (!lift) {
        ok = false;
        break;
      }
      IntMat lift_inv;
      for (const auto& sigma : rep.middle_group.elements)
        if (key_of(total, mat_mul(*lift, sigma)) ==
            key_of(total, IntMat::identity(total.gens()))) {
          lift_inv = sigma;
          break;
        }
      if (lift_inv.rows == 0) {
        ok = false;
        break;
      }
      for (const auto& kappa : rep.kernel_group.elements) {
        // row convention: sigma o kappa o sigma^{-1} is inv * kappa * lift
        IntMat conj = normalized(total, mat_mul(lift_inv, mat_mul(kappa, *lift)));
        bool in_kernel = false;
        for (const auto& e : rep.kernel_group.elements)
          if (key_of(total, e) == key_of(total, conj)) in_kernel = true;
        if (!in_kernel) {
          ok = false;
          break;
        }
        IntMat lhs = normalized(tor.module, phi_of(conj));
        IntMat rhs = normalized(tor.module, mat_mul(phi_of(kappa), rho));
        if (key_of(tor.module, lhs) != key_of(tor.module, rhs)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    rep.action_verified = ok;
  }

  return rep;
}

}  // namespace divkum
