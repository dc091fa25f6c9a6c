#include "kwb/oracle.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace kwb {

namespace {

using Json = nlohmann::ordered_json;

Int parse_int_string(const Json &j, const std::string &where) {
  if (!j.is_string()) throw OracleError("integers must be decimal strings", where);
  const std::string s = j.get<std::string>();
  if (s.empty()) throw OracleError("empty integer string", where);
  std::size_t start = (s[0] == '-') ? 1 : 0;
  if (start == s.size()) throw OracleError("malformed integer string '" + s + "'", where);
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw OracleError("malformed integer string '" + s + "'", where);
  return Int(s);
}

FgAbGroup parse_group(const Json &j, const std::string &where) {
  if (!j.is_object()) throw OracleError("group must be an object", where);
  if (!j.contains("free_rank") || !j.contains("invariant_factors"))
    throw OracleError("group needs free_rank and invariant_factors", where);
  CanonicalForm cf;
  Int fr = parse_int_string(j.at("free_rank"), where + ".free_rank");
  if (fr < 0) throw OracleError("negative free rank", where);
  cf.free_rank = static_cast<std::size_t>(fr);
  const Json &fac = j.at("invariant_factors");
  if (!fac.is_array()) throw OracleError("invariant_factors must be an array", where);
  Int prev = 0;
  for (std::size_t i = 0; i < fac.size(); ++i) {
    Int d = parse_int_string(fac[i], where + ".invariant_factors[" + std::to_string(i) + "]");
    if (d < 2) throw OracleError("invariant factors must be >= 2", where);
    if (prev != 0 && d % prev != 0) throw OracleError("invariant factors must form a divisibility chain", where);
    cf.invariant_factors.push_back(d);
    prev = d;
  }
  return FgAbGroup::from_canonical(cf);
}

Json group_to_json(const FgAbGroup &g) {
  Json j = Json::object();
  const CanonicalForm &cf = g.canonical();
  j["free_rank"] = std::to_string(cf.free_rank);
  Json fac = Json::array();
  for (const Int &d : cf.invariant_factors) fac.push_back(d.str());
  j["invariant_factors"] = fac;
  return j;
}

ZMat parse_matrix(const Json &j, std::size_t rows, std::size_t cols, const std::string &where) {
  if (!j.is_array()) throw OracleError("matrix must be an array of rows", where);
  if (j.size() != rows) throw OracleError("matrix has " + std::to_string(j.size()) + " rows, expected " +
                                              std::to_string(rows),
                                          where);
  ZMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw OracleError("matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries",
                        where);
    for (std::size_t c = 0; c < cols; ++c)
      m(i, c) = parse_int_string(j[i][c], where + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
  }
  return m;
}

Json matrix_to_json(const ZMat &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

AdjKind parse_adj_kind(const std::string &s, const std::string &where) {
  if (s == "poly") return AdjKind::Poly;
  if (s == "negpoly") return AdjKind::NegPoly;
  if (s == "laurent") return AdjKind::Laurent;
  throw OracleError("unknown adjunction kind '" + s + "'", where);
}

std::string adj_kind_name(AdjKind k) {
  switch (k) {
  case AdjKind::Poly:
    return "poly";
  case AdjKind::NegPoly:
    return "negpoly";
  case AdjKind::Laurent:
    return "laurent";
  }
  return "?";
}

const std::vector<std::string> kMapKinds = {"i_plus",   "i_minus",  "j_plus",      "j_minus", "ev0_plus",
                                            "ev0_minus", "phi_inverse", "rho"};

struct FamilyKeys {
  Expression base, pos, neg, lau;
};

FamilyKeys family_of(const Expression &prefix, const std::string &var, const std::string &twist) {
  return FamilyKeys{prefix, prefix.extended({AdjKind::Poly, var, twist}),
                    prefix.extended({AdjKind::NegPoly, var, twist}),
                    prefix.extended({AdjKind::Laurent, var, twist})};
}

std::pair<Expression, Expression> map_endpoints(const std::string &kind, const FamilyKeys &f,
                                                const std::string &where) {
  if (kind == "i_plus") return {f.base, f.pos};
  if (kind == "i_minus") return {f.base, f.neg};
  if (kind == "j_plus") return {f.pos, f.lau};
  if (kind == "j_minus") return {f.neg, f.lau};
  if (kind == "ev0_plus") return {f.pos, f.base};
  if (kind == "ev0_minus") return {f.neg, f.base};
  throw OracleError("unknown structural map kind '" + kind + "'", where);
}

} // namespace

OracleData oracle_parse(const std::string &text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception &e) {
    throw OracleError(std::string("JSON parse error: ") + e.what());
  }
  for (const char *key : {"schema_version", "mode", "objects", "degrees", "groups", "maps"})
    if (!j.contains(key)) throw OracleError(std::string("missing required key '") + key + "'");

  OracleData d;
  d.schema_version = j.at("schema_version").is_string() ? j.at("schema_version").get<std::string>() : "";
  if (d.schema_version != "1") throw OracleError("unsupported schema_version '" + d.schema_version + "'");
  std::string mode = j.at("mode").is_string() ? j.at("mode").get<std::string>() : "";
  if (mode == "independent")
    d.mode = SourceMode::Independent;
  else if (mode == "bhs-extended")
    d.mode = SourceMode::BhsExtended;
  else if (mode == "oracle")
    d.mode = SourceMode::Oracle;
  else
    throw OracleError("mode must be independent | bhs-extended | oracle");
  if (j.contains("description") && j.at("description").is_string())
    d.description = j.at("description").get<std::string>();

  // objects
  if (!j.at("objects").is_array()) throw OracleError("objects must be an array");
  std::map<std::string, Expression> by_name;
  std::map<std::string, std::string> root_of;
  for (std::size_t i = 0; i < j.at("objects").size(); ++i) {
    std::string where = "objects[" + std::to_string(i) + "]";
    const Json &o = j.at("objects")[i];
    if (!o.is_object() || !o.contains("name") || !o.contains("adjunctions"))
      throw OracleError("object needs name and adjunctions", where);
    std::string name = o.at("name").get<std::string>();
    if (by_name.count(name)) throw OracleError("duplicate object name '" + name + "'", where);
    Expression e;
    const Json &adjs = o.at("adjunctions");
    if (!adjs.is_array()) throw OracleError("adjunctions must be an array", where);
    if (adjs.empty()) {
      e.base = name;
    } else {
      if (!o.contains("base")) throw OracleError("extension object needs a base", where);
      std::string base_name = o.at("base").get<std::string>();
      if (!root_of.count(base_name) && !by_name.count(base_name))
        throw OracleError("unknown base object '" + base_name + "'", where);
      // base must itself be a root
      auto bit = by_name.find(base_name);
      if (bit == by_name.end() || !bit->second.chain.empty())
        throw OracleError("base must name a root object", where);
      e.base = base_name;
      for (std::size_t a = 0; a < adjs.size(); ++a) {
        const Json &aj = adjs[a];
        std::string aw = where + ".adjunctions[" + std::to_string(a) + "]";
        if (!aj.is_object() || !aj.contains("kind") || !aj.contains("var"))
          throw OracleError("adjunction needs kind and var", aw);
        Adjunction adj;
        adj.kind = parse_adj_kind(aj.at("kind").get<std::string>(), aw);
        adj.var = aj.at("var").get<std::string>();
        if (aj.contains("twist")) adj.twist = aj.at("twist").get<std::string>();
        e.chain.push_back(adj);
      }
      // the parent expression must be declared
      Expression parent = e.parent();
      bool found = false;
      for (const auto &kv : by_name)
        if (kv.second == parent) found = true;
      if (!found) throw OracleError("parent of '" + name + "' (" + parent.key() + ") is not declared", where);
    }
    by_name.emplace(name, e);
    root_of.emplace(name, e.base);
    d.objects.push_back({name, e});
  }

  // degrees
  const Json &deg = j.at("degrees");
  if (!deg.is_object() || !deg.contains("lo") || !deg.contains("hi"))
    throw OracleError("degrees needs lo and hi");
  d.lo = deg.at("lo").is_number_integer() ? deg.at("lo").get<int>()
                                          : static_cast<int>(parse_int_string(deg.at("lo"), "degrees.lo"));
  d.hi = deg.at("hi").is_number_integer() ? deg.at("hi").get<int>()
                                          : static_cast<int>(parse_int_string(deg.at("hi"), "degrees.hi"));
  if (d.lo > d.hi) throw OracleError("degrees.lo exceeds degrees.hi");

  // groups
  if (!j.at("groups").is_object()) throw OracleError("groups must be an object");
  for (const auto &item : j.at("groups").items()) {
    std::string where = "groups['" + item.key() + "']";
    std::size_t at = item.key().rfind('@');
    if (at == std::string::npos) throw OracleError("group key must be <object>@<degree>", where);
    std::string obj = item.key().substr(0, at);
    int degree = 0;
    try {
      degree = std::stoi(item.key().substr(at + 1));
    } catch (...) {
      throw OracleError("malformed degree in group key", where);
    }
    auto it = by_name.find(obj);
    if (it == by_name.end()) throw OracleError("group for undeclared object '" + obj + "'", where);
    if (degree < d.lo || degree > d.hi) throw OracleError("group degree outside the declared window", where);
    d.groups.emplace(it->second.key() + "@" + std::to_string(degree), parse_group(item.value(), where));
  }

  auto group_at = [&](const Expression &e, int degree) -> const FgAbGroup * {
    auto it = d.groups.find(e.key() + "@" + std::to_string(degree));
    return it == d.groups.end() ? nullptr : &it->second;
  };

  // maps
  if (!j.at("maps").is_array()) throw OracleError("maps must be an array");
  for (std::size_t i = 0; i < j.at("maps").size(); ++i) {
    std::string where = "maps[" + std::to_string(i) + "]";
    const Json &m = j.at("maps")[i];
    if (!m.is_object() || !m.contains("kind") || !m.contains("object") || !m.contains("degree") ||
        !m.contains("matrix"))
      throw OracleError("map needs kind, object, degree, matrix", where);
    OracleMapEntry e;
    e.kind = m.at("kind").get<std::string>();
    if (std::find(kMapKinds.begin(), kMapKinds.end(), e.kind) == kMapKinds.end())
      throw OracleError("unknown map kind '" + e.kind + "'", where);
    e.object = m.at("object").get<std::string>();
    if (!by_name.count(e.object)) throw OracleError("map references undeclared object '" + e.object + "'", where);
    e.degree = m.at("degree").is_number_integer()
                   ? m.at("degree").get<int>()
                   : static_cast<int>(parse_int_string(m.at("degree"), where + ".degree"));
    if (m.contains("var")) e.var = m.at("var").get<std::string>();
    if (m.contains("twist")) e.twist = m.at("twist").get<std::string>();
    const Expression &prefix = by_name.at(e.object);
    std::size_t rows = 0, cols = 0;
    if (e.kind == "phi_inverse") {
      const FgAbGroup *g = group_at(prefix, e.degree);
      if (!g) throw OracleError("phi_inverse needs the group of its object at that degree", where);
      rows = cols = g->num_generators();
    } else if (e.kind == "rho") {
      if (e.var.empty()) throw OracleError("rho needs var", where);
      // validated later against the assembled restricted BHS map
      FamilyKeys fam = family_of(prefix, e.var, e.twist);
      const FgAbGroup *gl = group_at(fam.lau, e.degree);
      if (!gl) throw OracleError("rho needs the Laurent group at its degree", where);
      cols = gl->num_generators();
      rows = 0; // resolved during validation
      e.matrix = parse_matrix(m.at("matrix"), m.at("matrix").size(), cols, where + ".matrix");
      d.maps.push_back(std::move(e));
      continue;
    } else {
      if (e.var.empty()) throw OracleError(e.kind + " needs var", where);
      FamilyKeys fam = family_of(prefix, e.var, e.twist);
      auto ends = map_endpoints(e.kind, fam, where);
      const FgAbGroup *gf = group_at(ends.first, e.degree);
      const FgAbGroup *gt = group_at(ends.second, e.degree);
      if (!gf || !gt)
        throw OracleError("map endpoints not declared: " + ends.first.key() + " / " + ends.second.key() + " at " +
                              std::to_string(e.degree),
                          where);
      rows = gt->num_generators();
      cols = gf->num_generators();
    }
    e.matrix = parse_matrix(m.at("matrix"), rows, cols, where + ".matrix");
    d.maps.push_back(std::move(e));
  }

  // optional nil tables
  if (j.contains("nil")) {
    if (!j.at("nil").is_array()) throw OracleError("nil must be an array");
    for (std::size_t i = 0; i < j.at("nil").size(); ++i) {
      std::string where = "nil[" + std::to_string(i) + "]";
      const Json &m = j.at("nil")[i];
      if (!m.is_object() || !m.contains("object") || !m.contains("degree") || !m.contains("k_nil") ||
          !m.contains("nk_shift"))
        throw OracleError("nil entry needs object, degree, k_nil, nk_shift", where);
      OracleData::NilEntry e;
      e.object = m.at("object").get<std::string>();
      if (!by_name.count(e.object)) throw OracleError("nil entry for undeclared object", where);
      e.degree = m.at("degree").get<int>();
      e.k_nil = parse_group(m.at("k_nil"), where + ".k_nil");
      e.nk_shift = parse_group(m.at("nk_shift"), where + ".nk_shift");
      d.nil.push_back(std::move(e));
    }
  }

  // --- semantic validation ---
  auto find_map = [&](const std::string &kind, const Expression &prefix, const std::string &var,
                      const std::string &twist, int degree) -> const OracleMapEntry * {
    for (const auto &me : d.maps) {
      if (me.kind != kind || me.degree != degree || me.var != var || me.twist != twist) continue;
      if (by_name.at(me.object) == prefix) return &me;
    }
    return nullptr;
  };

  auto hom_of = [&](const OracleMapEntry &me) -> GroupHom {
    const Expression &prefix = by_name.at(me.object);
    FamilyKeys fam = family_of(prefix, me.var, me.twist);
    auto ends = map_endpoints(me.kind, fam, "maps");
    return GroupHom(*group_at(ends.first, me.degree), *group_at(ends.second, me.degree), me.matrix);
  };

  for (const auto &me : d.maps) {
    if (me.kind == "rho") continue;
    const Expression &prefix = by_name.at(me.object);
    if (me.kind == "phi_inverse") {
      GroupHom h(*group_at(prefix, me.degree), *group_at(prefix, me.degree), me.matrix);
      if (!h.is_well_defined())
        throw OracleError("phi_inverse is not a well-defined homomorphism at degree " + std::to_string(me.degree),
                          "object " + me.object);
      continue;
    }
    GroupHom h = hom_of(me);
    if (!h.is_well_defined())
      throw OracleError(me.kind + " is not a well-defined homomorphism at degree " + std::to_string(me.degree),
                        "object " + me.object);
  }

  // composite identities where complete families are declared
  for (const auto &obj : d.objects) {
    // candidate (var, twist) pairs from declared maps
    for (const auto &me : d.maps) {
      if (by_name.at(me.object) != obj.expr || me.kind == "phi_inverse" || me.kind == "rho") continue;
      const std::string &var = me.var;
      const std::string &twist = me.twist;
      int degree = me.degree;
      auto ip = find_map("i_plus", obj.expr, var, twist, degree);
      auto im = find_map("i_minus", obj.expr, var, twist, degree);
      auto jp = find_map("j_plus", obj.expr, var, twist, degree);
      auto jm = find_map("j_minus", obj.expr, var, twist, degree);
      auto ep = find_map("ev0_plus", obj.expr, var, twist, degree);
      auto em = find_map("ev0_minus", obj.expr, var, twist, degree);
      std::string fam_where = "object " + obj.name + ", var " + var + ", degree " + std::to_string(degree);
      if (ip && ep) {
        GroupHom c = compose(hom_of(*ep), hom_of(*ip));
        if (!c.equal_as_hom(GroupHom::identity(c.domain())))
          throw OracleError("identity violation: ev0_plus o i_plus != id", fam_where);
      }
      if (im && em) {
        GroupHom c = compose(hom_of(*em), hom_of(*im));
        if (!c.equal_as_hom(GroupHom::identity(c.domain())))
          throw OracleError("identity violation: ev0_minus o i_minus != id", fam_where);
      }
      if (ip && im && jp && jm) {
        GroupHom a = compose(hom_of(*jp), hom_of(*ip));
        GroupHom b = compose(hom_of(*jm), hom_of(*im));
        if (!a.equal_as_hom(b)) throw OracleError("identity violation: j_plus o i_plus != j_minus o i_minus",
                                                  fam_where);
      }
    }
  }

  // rho entries: rho o BHS_r = id with NK kernels computed from declared data
  for (const auto &me : d.maps) {
    if (me.kind != "rho") continue;
    const Expression &prefix = by_name.at(me.object);
    std::string fam_where = "rho at object " + me.object + ", degree " + std::to_string(me.degree);
    auto ip = find_map("i_plus", prefix, me.var, me.twist, me.degree);
    auto im = find_map("i_minus", prefix, me.var, me.twist, me.degree);
    auto jp = find_map("j_plus", prefix, me.var, me.twist, me.degree);
    auto jm = find_map("j_minus", prefix, me.var, me.twist, me.degree);
    auto ep = find_map("ev0_plus", prefix, me.var, me.twist, me.degree);
    auto em = find_map("ev0_minus", prefix, me.var, me.twist, me.degree);
    if (!ip || !im || !jp || !jm || !ep || !em)
      throw OracleError("rho needs the complete structural family at its degree", fam_where);
    SubgroupPart nkp = kernel(hom_of(*ep));
    SubgroupPart nkm = kernel(hom_of(*em));
    const FgAbGroup *ga = group_at(prefix, me.degree);
    auto sum = direct_sum({*ga, nkp.group, nkm.group});
    GroupHom bhs_r = sum_into(sum, {compose(hom_of(*jp), hom_of(*ip)), compose(hom_of(*jp), nkp.embedding),
                                    compose(hom_of(*jm), nkm.embedding)});
    if (me.matrix.rows() != sum.group.num_generators())
      throw OracleError("rho matrix has " + std::to_string(me.matrix.rows()) + " rows, expected " +
                            std::to_string(sum.group.num_generators()) +
                            " (generators of K_i(A) + NK+ + NK- in construction order)",
                        fam_where);
    GroupHom rho(bhs_r.codomain(), sum.group, me.matrix);
    if (!rho.is_well_defined()) throw OracleError("rho is not a well-defined homomorphism", fam_where);
    if (!compose(rho, bhs_r).equal_as_hom(GroupHom::identity(sum.group)))
      throw OracleError("identity violation: rho o BHS_r != id", fam_where);
  }

  return d;
}

OracleData oracle_load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw OracleError("cannot open oracle file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return oracle_parse(ss.str());
}

OracleBackend::OracleBackend(OracleData data) : data_(std::move(data)) {
  for (const auto &kv : data_.groups) by_key_.emplace(kv.first, kv.second);
}

std::optional<FgAbGroup> OracleBackend::raw_group(const Expression &e, int degree) const {
  auto it = by_key_.find(e.key() + "@" + std::to_string(degree));
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

std::optional<GroupHom> OracleBackend::raw_map(const MapRequest &r, int degree) const {
  if (!r.trailing.empty()) return std::nullopt;
  std::string kind = hom_kind_name(r.kind);
  for (const auto &me : data_.maps) {
    if (me.kind != kind || me.degree != degree || me.var != r.adj.var || me.twist != r.adj.twist) continue;
    // match the prefix object
    bool match = false;
    for (const auto &obj : data_.objects)
      if (obj.name == me.object && obj.expr == r.prefix) match = true;
    if (!match) continue;
    auto gf = raw_group(r.from_expression(), degree);
    auto gt = raw_group(r.to_expression(), degree);
    if (!gf || !gt) return std::nullopt;
    return GroupHom(*gf, *gt, me.matrix);
  }
  return std::nullopt;
}

std::optional<GroupHom> OracleBackend::raw_phi_action(const Expression &e, const std::string &twist,
                                                      int degree) const {
  for (const auto &me : data_.maps) {
    if (me.kind != "phi_inverse" || me.degree != degree || me.twist != twist) continue;
    for (const auto &obj : data_.objects)
      if (obj.name == me.object && obj.expr == e) {
        auto g = raw_group(e, degree);
        if (!g) return std::nullopt;
        return GroupHom(*g, *g, me.matrix);
      }
  }
  return std::nullopt;
}

KSource oracle_source(const OracleData &data, std::optional<SourceMode> mode_override) {
  SourceMode mode = mode_override.value_or(data.mode);
  return KSource(mode, {std::make_shared<OracleBackend>(data)});
}

KSource overlay_source(const OracleData &data, SourceMode mode) {
  return KSource(mode, {std::make_shared<OracleBackend>(data), std::make_shared<EngineBackend>()});
}

std::string oracle_export_text(const KSource &src, const std::vector<Expression> &bases, int lo, int hi) {
  Json j = Json::object();
  j["schema_version"] = "1";
  j["mode"] = source_mode_name(src.mode());
  j["description"] = "exported slice";
  Json objects = Json::array();
  Json groups = Json::object();
  Json maps = Json::array();

  for (const Expression &base : bases) {
    if (!base.chain.empty()) throw OracleError("export expects base expressions (no adjunctions)");
    std::string var = base.fresh_var();
    Adjunction adj{AdjKind::Laurent, var, ""};
    FamilyKeys fam = family_of(base, var, "");

    Json ob = Json::object();
    ob["name"] = base.key();
    ob["adjunctions"] = Json::array();
    objects.push_back(ob);
    auto ext_obj = [&](const Expression &e, AdjKind kind) {
      Json o = Json::object();
      o["name"] = e.key();
      o["base"] = base.key();
      Json adjs = Json::array();
      Json a = Json::object();
      a["kind"] = adj_kind_name(kind);
      a["var"] = var;
      adjs.push_back(a);
      o["adjunctions"] = adjs;
      objects.push_back(o);
    };
    ext_obj(fam.pos, AdjKind::Poly);
    ext_obj(fam.neg, AdjKind::NegPoly);
    ext_obj(fam.lau, AdjKind::Laurent);

    std::map<std::string, CanonicalIso> isos;
    auto canon = [&](const Expression &e, int degree) -> const CanonicalIso & {
      std::string key = e.key() + "@" + std::to_string(degree);
      auto it = isos.find(key);
      if (it != isos.end()) return it->second;
      FgAbGroup g = src.group(e, degree).group;
      return isos.emplace(key, canonical_iso(g)).first->second;
    };

    for (int degree = lo; degree <= hi; ++degree) {
      for (const Expression &e : {fam.base, fam.pos, fam.neg, fam.lau}) {
        FgAbGroup g = src.group(e, degree).group;
        groups[e.key() + "@" + std::to_string(degree)] = group_to_json(FgAbGroup::from_canonical(g.canonical()));
      }
      auto emit = [&](HomKind kind, const Expression &efrom, const Expression &eto) {
        GroupHom h = src.map({base, adj, {}, kind}, degree);
        const CanonicalIso &cf = canon(efrom, degree);
        const CanonicalIso &ct = canon(eto, degree);
        GroupHom in_canon = compose(ct.to_canonical, compose(h, cf.from_canonical));
        Json m = Json::object();
        m["kind"] = hom_kind_name(kind);
        m["object"] = base.key();
        m["var"] = var;
        m["degree"] = degree;
        m["matrix"] = matrix_to_json(in_canon.matrix());
        maps.push_back(m);
      };
      emit(HomKind::IPlus, fam.base, fam.pos);
      emit(HomKind::IMinus, fam.base, fam.neg);
      emit(HomKind::JPlus, fam.pos, fam.lau);
      emit(HomKind::JMinus, fam.neg, fam.lau);
      emit(HomKind::Ev0Plus, fam.pos, fam.base);
      emit(HomKind::Ev0Minus, fam.neg, fam.base);
    }
  }

  j["objects"] = objects;
  Json degrees = Json::object();
  degrees["lo"] = lo;
  degrees["hi"] = hi;
  j["degrees"] = degrees;
  j["groups"] = groups;
  j["maps"] = maps;
  return j.dump(2) + "\n";
}

void oracle_export(const KSource &src, const std::vector<Expression> &bases, int lo, int hi,
                   const std::string &path) {
  std::ofstream out(path);
  if (!out) throw OracleError("cannot write oracle file '" + path + "'");
  out << oracle_export_text(src, bases, lo, hi);
}

} // namespace kwb
