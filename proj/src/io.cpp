#include "divkummer/io.hpp"

#include "divkummer/errors.hpp"
#include "divkummer/verification.hpp"

#include <algorithm>
#include <cstdio>

namespace divkum {

Int json_int(const Json& j) {
  if (j.is_string()) return parse_int(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  throw input_error("expected an integer (as decimal string)");
}

Rat json_rat(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw input_error("expected a rational (as string like \"1/6\")");
}

IntMat json_matrix(const Json& j) {
  if (!j.is_array()) throw input_error("expected a matrix (array of rows)");
  std::size_t rows = j.size();
  std::size_t cols = rows ? j[0].size() : 0;
  IntMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw input_error("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = json_int(j[i][c]);
  }
  return m;
}

Ring parse_ring(const Json& doc) {
  if (!doc.contains("ring")) return Ring::integers();
  const Json& r = doc["ring"];
  std::string kind = r.value("kind", "Z");
  if (kind == "Z" || kind == "integers") return Ring::integers();
  if (kind == "quadratic") {
    if (!r.contains("t") || !r.contains("n"))
      throw input_error("ring.quadratic needs trace t and norm n");
    return Ring::quadratic(json_int(r["t"]), json_int(r["n"]));
  }
  throw input_error("ring.kind must be Z or quadratic");
}

IdealFilter parse_filter(const Json& j) {
  if (j.is_object()) {
    if (j.contains("principal")) {
      std::vector<Int> gens;
      for (const auto& g : j["principal"]) gens.push_back(json_int(g));
      return IdealFilter::principal(std::move(gens));
    }
    throw input_error("filter object must contain a principal generator list");
  }
  std::string s = j.get<std::string>();
  if (s == "0") return IdealFilter::zero();
  if (s == "1") return IdealFilter::one();
  if (s == "inf") return IdealFilter::all_nonzero();
  auto caret = s.find("^inf");
  if (caret != std::string::npos && caret + 4 == s.size())
    return IdealFilter::p_power(parse_int(s.substr(0, caret)));
  throw input_error("filter must be one of 0, 1, inf, p^inf or {principal: [...]}");
}

FgModule parse_module_obj(const Json& module_obj, const Ring& ring) {
  if (!module_obj.is_object()) throw input_error("module must be an object");
  if (!module_obj.contains("generators")) throw input_error("module.generators missing");
  std::size_t gens = module_obj["generators"].get<std::size_t>();
  IntMat rel(0, gens);
  if (module_obj.contains("relations") && !module_obj["relations"].empty()) {
    rel = json_matrix(module_obj["relations"]);
    if (rel.cols != gens)
      throw input_error("module.relations rows must have one entry per generator");
  }
  std::optional<IntMat> action;
  if (module_obj.contains("action")) action = json_matrix(module_obj["action"]);
  return make_module(ring, gens, rel, action);
}

FgModule parse_module(const Json& doc) {
  if (!doc.contains("module")) throw input_error("module missing");
  return parse_module_obj(doc["module"], parse_ring(doc));
}

TorsionTarget parse_target(const Json& doc, const IdealFilter& j, const Ring& ring) {
  int s = 1;
  if (doc.contains("target")) {
    if (doc["target"].is_object())
      s = doc["target"].value("s", 1);
    else
      s = doc["target"].get<int>();
  } else if (ring.is_quadratic()) {
    s = 2;
  }
  return make_target(s, j, ring);
}

namespace {

std::vector<RatVec> parse_pointing(const Json& j, int s) {
  std::vector<RatVec> out;
  for (const auto& row : j) {
    RatVec v;
    for (const auto& q : row) v.push_back(json_rat(q));
    if (static_cast<int>(v.size()) != s)
      throw input_error("pointing rows must have s coordinates");
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

PointedModule parse_pointed(const Json& obj, const IdealFilter& j, const TorsionTarget& t,
                            const Ring& ring) {
  if (!obj.is_object() || !obj.contains("module"))
    throw input_error("pointed module object needs a module");
  FgModule m = parse_module_obj(obj["module"], ring);
  if (obj.contains("pointing")) return make_pointed(j, t, m, parse_pointing(obj["pointing"], t.s));
  return make_pointed_trivial(j, t, m);
}

JTExtension parse_extension(const Json& obj, const IdealFilter& j, const TorsionTarget& t,
                            const Ring& ring) {
  if (!obj.is_object()) throw input_error("extension must be an object");
  if (!obj.contains("base") || !obj.contains("total") || !obj.contains("inc"))
    throw input_error("extension needs base, total and inc");
  PointedModule base = parse_pointed(obj["base"], j, t, ring);
  PointedModule total = parse_pointed(obj["total"], j, t, ring);
  return make_extension(base, total, json_matrix(obj["inc"]));
}

Json matrix_json(const IntMat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols; ++c) row.push_back(to_string(m.at(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json ring_json(const Ring& r) {
  if (!r.is_quadratic()) return Json{{"kind", "Z"}};
  return Json{{"kind", "quadratic"}, {"t", to_string(r.t)}, {"n", to_string(r.n)}};
}

Json module_json(const FgModule& m) {
  Json out;
  out["generators"] = m.gens();
  out["relations"] = matrix_json(m.relation_basis());
  if (m.action) out["action"] = matrix_json(*m.action);
  return out;
}

Json pointed_json(const PointedModule& m) {
  Json out;
  out["module"] = module_json(m.module);
  Json pointing = Json::array();
  for (const auto& v : m.pointing) {
    Json row = Json::array();
    for (const auto& q : v) row.push_back(to_string(q));
    pointing.push_back(std::move(row));
  }
  out["pointing"] = std::move(pointing);
  return out;
}

Json extension_json(const JTExtension& e) {
  return Json{{"base", pointed_json(e.base)},
              {"total", pointed_json(e.total)},
              {"inc", matrix_json(e.inc.matrix)}};
}

Json filter_json(const IdealFilter& j) {
  if (j.kind == FilterKind::Principal) {
    Json gens = Json::array();
    for (const auto& g : j.generators) gens.push_back(to_string(g));
    return Json{{"principal", std::move(gens)}};
  }
  return Json(j.describe());
}

std::string input_digest(const Json& doc) {
  std::string s = doc.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

namespace {

Json invariants_json(const FgModule& m) {
  auto inv = invariant_factors(m);
  Json factors = Json::array();
  for (const auto& d : inv.factors) factors.push_back(to_string(d));
  Json out{{"rank", inv.rank}, {"factors", std::move(factors)}, {"description", m.describe()}};
  if (inv.underlying_z) out["underlying_z"] = true;
  return out;
}

Json submodule_json(const Submodule& s) {
  return Json{{"module", invariants_json(s.module)},
              {"basis", matrix_json(hnf_basis(s.inclusion.matrix))}};
}

IdealFilter doc_filter(const Json& doc, const char* fallback = nullptr) {
  if (doc.contains("filter")) return parse_filter(doc["filter"]);
  if (fallback) return parse_filter(Json(fallback));
  throw input_error("filter missing");
}

ModuleMap doc_submodule_inclusion(const Json& doc, const FgModule& m) {
  if (!doc.contains("submodule")) throw input_error("submodule missing");
  IntMat gens = json_matrix(doc["submodule"]);
  if (gens.rows == 0) gens = IntMat(0, m.gens());
  if (gens.cols != m.gens())
    throw input_error("submodule rows must have one entry per generator");
  return submodule_from_generators(m, gens).inclusion;
}

Json hull_json(const DivisibleHull& h) {
  Json emb = Json::array();
  for (const auto& v : h.embedding) {
    Json loc = Json::array(), pruf = Json::array(), resid = Json::array();
    for (const auto& q : v.loc) loc.push_back(to_string(q));
    for (const auto& q : v.pruf) pruf.push_back(to_string(q));
    for (const auto& q : v.resid) resid.push_back(to_string(q));
    emb.push_back(Json{{"localized", loc}, {"prufer", pruf}, {"residual", resid}});
  }
  Json out{{"localized_rank", h.loc_rank},
           {"prufer_count", h.prufer_count},
           {"residual", invariants_json(h.residual)},
           {"embedding", std::move(emb)}};
  if (h.prufer_is_target) out["prufer_block_is_target"] = true;
  return out;
}

Json aut_json(const AutGroup& g) {
  Json gens = Json::array();
  for (std::size_t i : g.generators) gens.push_back(matrix_json(g.elements[i]));
  return Json{{"order", g.order()}, {"abelian", g.is_abelian()}, {"generators", std::move(gens)}};
}

struct PointedContext {
  IdealFilter j;
  TorsionTarget t;
  Ring ring;
};

PointedContext pointed_context(const Json& doc, const char* default_filter = nullptr) {
  Ring ring = parse_ring(doc);
  IdealFilter j = doc_filter(doc, default_filter);
  TorsionTarget t = parse_target(doc, j, ring);
  return {std::move(j), std::move(t), std::move(ring)};
}

std::vector<HomElement> parse_hom_elements(const Json& arr, const FgModule& x,
                                           const TorsionTarget& t) {
  std::vector<HomElement> out;
  for (const auto& e : arr) out.push_back(make_hom_element(x, t, parse_pointing(e, t.s)));
  return out;
}

std::vector<IntMat> parse_matrix_list(const Json& arr) {
  std::vector<IntMat> out;
  for (const auto& m : arr) out.push_back(json_matrix(m));
  return out;
}

Json dispatch(const std::string& command, const Json& doc) {
  if (command == "snf") {
    if (!doc.contains("matrix")) throw input_error("snf needs a matrix");
    SnfResult r = snf(json_matrix(doc["matrix"]));
    Json diag = Json::array();
    for (const auto& d : r.diagonal()) diag.push_back(to_string(d));
    return Json{{"u", matrix_json(r.u)},
                {"s", matrix_json(r.s)},
                {"v", matrix_json(r.v)},
                {"diagonal", std::move(diag)}};
  }

  if (command == "info") {
    FgModule m = parse_module(doc);
    Json out{{"module", module_json(m)}, {"invariants", invariants_json(m)}};
    if (doc.contains("filter")) {
      IdealFilter j = parse_filter(doc["filter"]);
      out["torsion"] = submodule_json(torsion(j, m));
      out["filter"] = filter_json(j);
    }
    return out;
  }

  if (command == "divide") {
    FgModule m = parse_module(doc);
    ModuleMap sub = doc_submodule_inclusion(doc, m);
    if (doc.contains("k"))
      return Json{{"result", submodule_json(divide_by_integer(json_int(doc["k"]), sub))}};
    if (doc.contains("ideal")) {
      Ideal ideal = Ideal::quadratic(m.ring, json_matrix(doc["ideal"]));
      return Json{{"result", submodule_json(divide_ideal(ideal, sub))}};
    }
    IdealFilter j = doc_filter(doc);
    return Json{{"filter", filter_json(j)}, {"result", submodule_json(divide_filter(j, sub))}};
  }

  if (command == "torsion") {
    FgModule m = parse_module(doc);
    IdealFilter j = doc_filter(doc);
    return Json{{"filter", filter_json(j)}, {"result", submodule_json(torsion(j, m))}};
  }

  if (command == "jmap" || command == "essential") {
    Ring ring = parse_ring(doc);
    if (!doc.contains("source") || !doc.contains("target_module") || !doc.contains("matrix"))
      throw input_error(command + " needs source, target_module and matrix");
    FgModule src = parse_module_obj(doc["source"], ring);
    FgModule tgt = parse_module_obj(doc["target_module"], ring);
    ModuleMap f = make_map(src, tgt, json_matrix(doc["matrix"]));
    IdealFilter j = doc_filter(doc);
    bool verdict = command == "jmap" ? is_jmap(j, f) : is_essential(j, f);
    return Json{{"verdict", verdict}};
  }

  if (command == "baer") {
    if (!doc.contains("modulus")) throw input_error("baer needs a modulus");
    FgModule q = parse_module(doc);
    IdealFilter j = doc_filter(doc);
    return Json{{"verdict", baer_check(json_int(doc["modulus"]), j, q)}};
  }

  if (command == "pure") {
    PointedContext ctx = pointed_context(doc);
    if (!doc.contains("phi")) throw input_error("pure needs a phi object");
    const Json& p = doc["phi"];
    PointedModule src = parse_pointed(p.at("source"), ctx.j, ctx.t, ctx.ring);
    PointedModule dst = parse_pointed(p.at("dest"), ctx.j, ctx.t, ctx.ring);
    PointedMap f = make_pointed_map(src, dst, json_matrix(p.at("matrix")));
    return Json{{"verdict", is_pure(f)}};
  }

  if (command == "pushout") {
    PointedContext ctx = pointed_context(doc);
    PointedModule base = parse_pointed(doc.at("base"), ctx.j, ctx.t, ctx.ring);
    PointedModule left = parse_pointed(doc.at("left"), ctx.j, ctx.t, ctx.ring);
    PointedModule right = parse_pointed(doc.at("right"), ctx.j, ctx.t, ctx.ring);
    PointedMap f = make_pointed_map(base, left, json_matrix(doc.at("f")));
    PointedMap g = make_pointed_map(base, right, json_matrix(doc.at("g")));
    PushoutResult po = pushout(f, g);
    return Json{{"pushout", pointed_json(po.p)},
                {"invariants", invariants_json(po.p.module)},
                {"into_left", matrix_json(po.into_left.map.matrix)},
                {"into_right", matrix_json(po.into_right.map.matrix)}};
  }

  if (command == "saturate") {
    PointedContext ctx = pointed_context(doc);
    PointedModule m = parse_pointed(doc, ctx.j, ctx.t, ctx.ring);
    SaturatedModule sat = saturate(m);
    Json tcomp = Json::array();
    for (const auto& v : sat.t_component) {
      Json row = Json::array();
      for (const auto& q : v) row.push_back(to_string(q));
      tcomp.push_back(std::move(row));
    }
    Json out{{"quotient_part", invariants_json(sat.quotient_part)},
             {"torsion_block", "T"},
             {"free_map", matrix_json(sat.free_map)},
             {"t_component", std::move(tcomp)}};
    if (doc.contains("level")) {
      WindowSat w = saturate_window(m, json_int(doc["level"]));
      out["window"] = Json{{"module", pointed_json(w.sat)},
                           {"incs", matrix_json(w.incs.matrix)},
                           {"saturated", is_window_saturated(w.sat, json_int(doc["level"]))}};
    }
    return out;
  }

  if (command == "pullback" || command == "pushforward") {
    PointedContext ctx = pointed_context(doc);
    JTExtension ext = parse_extension(doc.at("extension"), ctx.j, ctx.t, ctx.ring);
    const Json& p = doc.at("phi");
    if (command == "pullback") {
      PointedModule src = parse_pointed(p.at("source"), ctx.j, ctx.t, ctx.ring);
      PointedMap phi = make_pointed_map(src, ext.base, json_matrix(p.at("matrix")));
      PullbackResult pb = pullback(phi, ext);
      return Json{{"extension", extension_json(pb.ext)},
                  {"total_invariants", invariants_json(pb.ext.total.module)}};
    }
    PointedModule dst = parse_pointed(p.at("dest"), ctx.j, ctx.t, ctx.ring);
    PointedMap phi = make_pointed_map(ext.base, dst, json_matrix(p.at("matrix")));
    PushforwardResult pf = pushforward(phi, ext);
    return Json{{"extension", extension_json(pf.ext)},
                {"total_invariants", invariants_json(pf.ext.total.module)}};
  }

  if (command == "maps") {
    PointedContext ctx = pointed_context(doc);
    JTExtension a = parse_extension(doc.at("extension"), ctx.j, ctx.t, ctx.ring);
    JTExtension b = parse_extension(doc.at("extension2"), ctx.j, ctx.t, ctx.ring);
    ExtensionMaps maps = extension_maps(a, b);
    Json list = Json::array(), isos = Json::array();
    for (std::size_t i = 0; i < maps.maps.size(); ++i) {
      list.push_back(matrix_json(maps.maps[i].map.matrix));
      isos.push_back(static_cast<bool>(maps.is_isomorphism[i]));
    }
    return Json{{"count", maps.maps.size()}, {"maps", list}, {"isomorphisms", isos}};
  }

  if (command == "hull") {
    FgModule m = parse_module(doc);
    IdealFilter j = doc_filter(doc);
    return Json{{"filter", filter_json(j)}, {"hull", hull_json(jhull(j, m))}};
  }

  if (command == "maxext") {
    PointedContext ctx = pointed_context(doc);
    PointedModule m = parse_pointed(doc, ctx.j, ctx.t, ctx.ring);
    DivisibleHull h = maximal_extension(m);
    return Json{{"gamma", hull_json(h)}};
  }

  if (command == "normal") {
    PointedContext ctx = pointed_context(doc);
    JTExtension ext = parse_extension(doc.at("extension"), ctx.j, ctx.t, ctx.ring);
    DivisibleHull gamma = maximal_extension(ext.base);
    Int level =
        doc.contains("level") ? json_int(doc["level"]) : minimal_embedding_level(ext, gamma);
    NormalityReport rep = is_normal(ext, gamma, level);
    return Json{{"normal", rep.normal},
                {"level", to_string(rep.level)},
                {"embeddings", rep.embedding_count}};
  }

  if (command == "autseq") {
    PointedContext ctx = pointed_context(doc);
    JTExtension ext = parse_extension(doc.at("extension"), ctx.j, ctx.t, ctx.ring);
    DivisibleHull gamma = maximal_extension(ext.base);
    Int level =
        doc.contains("level") ? json_int(doc["level"]) : minimal_embedding_level(ext, gamma);
    ExactSequenceReport rep = exact_sequence(ext, gamma, level);
    Json orders = Json::array();
    for (const auto& o : rep.orders()) orders.push_back(to_string(o));
    Json satq = Json::array();
    for (const auto& d : rep.sat_quotient_factors) satq.push_back(to_string(d));
    return Json{{"orders", std::move(orders)},
                {"kernel", aut_json(rep.kernel_group)},
                {"middle", aut_json(rep.middle_group)},
                {"quotient", aut_json(rep.quotient_group)},
                {"hom_kernel", invariants_json(rep.hom_kernel)},
                {"sat_quotient_factors", std::move(satq)},
                {"order_identity", rep.order_identity},
                {"kernel_abelian", rep.kernel_abelian},
                {"hom_bijection", rep.hom_bijection},
                {"action_verified", rep.action_verified}};
  }

  if (command == "duality") {
    Ring ring = parse_ring(doc);
    FgModule m = parse_module(doc);
    IdealFilter j = doc_filter(doc, "inf");
    TorsionTarget t = parse_target(doc, j, ring);
    Int e = doc.contains("endlevel") ? json_int(doc["endlevel"]) : m.exponent();
    DualityReport rep = duality_check(m, t, make_end_level(t, e));
    return Json{{"verdict", rep.ok()},
                {"bijective", rep.bijective},
                {"inclusion_reversing", rep.inclusion_reversing},
                {"submodules", rep.submodule_count},
                {"end_submodules", rep.end_submodule_count}};
  }

  if (command == "h1") {
    FgModule m = parse_module(doc);
    if (!doc.contains("group")) throw input_error("h1 needs a group element list");
    auto gens = parse_matrix_list(doc["group"]);
    FgModule h = h1(close_matrix_group(gens, m), m);
    return Json{{"h1", invariants_json(h)}};
  }

  if (command == "subring-index") {
    if (!doc.contains("level") || !doc.contains("generators"))
      throw input_error("subring-index needs level and generators");
    return Json{{"m", to_string(subring_index(parse_matrix_list(doc["generators"]),
                                              json_int(doc["level"])))}};
  }

  if (command == "div-index") {
    FgModule m = parse_module(doc);
    int s = doc.value("s", 1);
    if (!doc.contains("k")) throw input_error("div-index needs k");
    return Json{{"index", to_string(divisibility_index(m, s, json_int(doc["k"])))}};
  }

  if (command == "kummer-bound") {
    if (!doc.contains("bound")) throw input_error("kummer-bound needs a bound block");
    const Json& b = doc["bound"];
    BoundInputs in;
    in.d = json_int(b.at("d"));
    in.n = json_int(b.at("n"));
    in.m = json_int(b.at("m"));
    in.rank_r = b.at("rank").get<std::size_t>();
    in.s = b.value("s", 2);
    std::vector<Int> torsion;
    if (b.contains("torsion"))
      for (const auto& d : b["torsion"]) torsion.push_back(json_int(d));
    BoundReport rep = kummer_bound(in, torsion, json_int(b.at("level")), parse_ring(doc));
    Json per = Json::array();
    for (const auto& [l, idx] : rep.per_level)
      per.push_back(Json{{"level", to_string(l)}, {"index", to_string(idx)}});
    return Json{{"c", to_string(rep.c)}, {"per_level", per}, {"notes", rep.notes}};
  }

  if (command == "ses-check" || command == "thm-main") {
    if (!doc.contains("galois")) throw input_error(command + " needs a galois block");
    const Json& g = doc["galois"];
    Ring ring = parse_ring(doc);
    FgModule x = parse_module_obj(g.at("x"), ring);
    Int level = json_int(g.at("level"));
    int s = g.value("s", 2);
    TorsionTarget t = make_target(s, IdealFilter::all_nonzero());
    std::vector<HomElement> kappa;
    if (g.contains("kummer_image")) kappa = parse_hom_elements(g["kummer_image"], x, t);
    std::vector<IntMat> tau;
    if (g.contains("torsion_image")) tau = parse_matrix_list(g["torsion_image"]);
    GaloisSimInstance inst = make_instance(level, s, x, tau, kappa);
    if (command == "ses-check") {
      IntMat sat_points(0, x.gens());
      if (g.contains("sat_points") && !g["sat_points"].empty())
        sat_points = json_matrix(g["sat_points"]);
      SesReport rep = ses_cohomology_check(inst, sat_points);
      Json h1f = Json::array();
      for (const auto& d : rep.h1_factors) h1f.push_back(to_string(d));
      return Json{{"exact", rep.exact},
                  {"first_map_injective", rep.first_map_injective},
                  {"middle_order", to_string(rep.middle_order)},
                  {"h1_factors", std::move(h1f)}};
    }
    if (!doc.contains("bound")) throw input_error("thm-main needs a bound block");
    const Json& b = doc["bound"];
    BoundInputs in;
    in.d = json_int(b.at("d"));
    in.n = json_int(b.at("n"));
    in.m = json_int(b.at("m"));
    in.rank_r = b.value("rank", 1);
    in.s = s;
    ThmMainReport rep = thm_main_containment_check(inst, in);
    return Json{{"hypotheses", Json{{"d", rep.hyp_d}, {"n", rep.hyp_n}, {"m", rep.hyp_m}}},
                {"conclusion", rep.conclusion}};
  }

  if (command == "verify") {
    auto results = run_acceptance();
    Json list = Json::array();
    std::size_t passed = 0;
    for (const auto& r : results) {
      list.push_back(
          Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      if (r.pass) ++passed;
    }
    return Json{{"criteria", std::move(list)},
                {"passed", passed},
                {"failed", results.size() - passed}};
  }

  throw input_error("unknown command: " + command);
}

}  // namespace

std::vector<std::string> command_names() {
  return {"snf",      "info",        "divide",      "torsion",      "jmap",
          "essential", "baer",       "pure",        "pushout",      "saturate",
          "pullback", "pushforward", "maps",        "hull",         "maxext",
          "normal",   "autseq",      "duality",     "h1",           "subring-index",
          "div-index", "kummer-bound", "ses-check", "thm-main",     "verify"};
}

RunResult run_command(const std::string& command, const Json& doc) {
  RunResult out;
  out.report["command"] = command;
  out.report["input_digest"] = input_digest(doc);
  out.report["warnings"] = Json::array();
  try {
    out.report["result"] = dispatch(command, doc);
    out.exit_code = 0;
  } catch (const not_pure_error& e) {
    out.exit_code = 1;
    out.report["error"] = Json{{"kind", "refusal"}, {"name", "NotPure"}, {"message", e.what()}};
  } catch (const not_normal_error& e) {
    out.exit_code = 1;
    out.report["error"] = Json{{"kind", "refusal"}, {"name", "NotNormal"}, {"message", e.what()}};
  } catch (const level_too_small_error& e) {
    out.exit_code = 1;
    out.report["error"] = Json{{"kind", "refusal"},
                               {"name", "LevelTooSmall"},
                               {"minimal_level", e.minimal_level},
                               {"message", e.what()}};
  } catch (const hypothesis_failure_error& e) {
    out.exit_code = 1;
    out.report["error"] = Json{{"kind", "refusal"},
                               {"name", "HypothesisFailure"},
                               {"conditions", e.failed_conditions},
                               {"message", e.what()}};
  } catch (const infinite_search_error& e) {
    out.exit_code = 1;
    out.report["error"] =
        Json{{"kind", "refusal"}, {"name", "InfiniteSearch"}, {"message", e.what()}};
  } catch (const size_limit_error& e) {
    out.exit_code = 1;
    out.report["error"] = Json{{"kind", "refusal"}, {"name", "SizeLimit"}, {"message", e.what()}};
  } catch (const input_error& e) {
    out.exit_code = 2;
    out.report["error"] = Json{{"kind", "input"}, {"message", e.what()}};
  } catch (const Json::exception& e) {
    out.exit_code = 2;
    out.report["error"] = Json{{"kind", "input"}, {"message", e.what()}};
  } catch (const std::exception& e) {
    out.exit_code = 2;
    out.report["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
  }
  return out;
}

}  // namespace divkum
