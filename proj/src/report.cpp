#include "kwb/report.hpp"

#include <sstream>

namespace kwb {

ReportJson json_group(const FgAbGroup &g) {
  ReportJson j = ReportJson::object();
  const CanonicalForm &cf = g.canonical();
  j["free_rank"] = std::to_string(cf.free_rank);
  ReportJson fac = ReportJson::array();
  for (const Int &d : cf.invariant_factors) fac.push_back(d.str());
  j["invariant_factors"] = fac;
  j["pretty"] = g.to_string();
  return j;
}

ReportJson json_matrix(const ZMat &m) {
  ReportJson rows = ReportJson::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ReportJson row = ReportJson::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

ReportJson json_hom(const GroupHom &h) {
  ReportJson j = ReportJson::object();
  j["domain"] = h.domain().to_string();
  j["codomain"] = h.codomain().to_string();
  j["matrix"] = json_matrix(h.matrix());
  return j;
}

ReportJson json_instance(const StructuredKInstance &inst) {
  ReportJson j = ReportJson::object();
  j["base"] = inst.base.key();
  j["variable"] = inst.var;
  if (!inst.twist.empty()) j["twist"] = inst.twist;
  j["window"] = {inst.lo, inst.hi};
  j["valid"] = inst.valid();
  if (!inst.valid()) j["validation"] = inst.validation;
  ReportJson degrees = ReportJson::object();
  for (const auto &kv : inst.slices) {
    ReportJson s = ReportJson::object();
    s["K(A)"] = kv.second.a.to_string();
    s["K(A[t])"] = kv.second.pos.to_string();
    s["K(A[t^-1])"] = kv.second.neg.to_string();
    s["K(A[t,t^-1])"] = kv.second.lau.to_string();
    s["provenance"] = provenance_name(kv.second.provenance);
    degrees[std::to_string(kv.first)] = s;
  }
  j["degrees"] = degrees;
  return j;
}

ReportJson json_nk(const NkResult &r, int degree, bool positive) {
  ReportJson j = ReportJson::object();
  j["degree"] = degree;
  j["sign"] = positive ? "+" : "-";
  j["group"] = json_group(r.part.group);
  j["inclusion"] = json_matrix(r.part.embedding.matrix());
  j["ambient_retraction"] = json_matrix(r.ambient_retraction.matrix());
  j["splitting_iso"] = r.splitting_iso;
  return j;
}

ReportJson json_fundamental(const FundamentalSequenceResult &r) {
  ReportJson j = ReportJson::object();
  j["degree"] = r.degree;
  j["terms"] = {r.term1.to_string(), r.term2.to_string(), r.term3.to_string(), r.term4.to_string()};
  j["spot1_exact"] = r.spot1_injective;
  j["spot2_exact"] = r.spot2.exact();
  j["spot3_exact"] = r.spot3.exact();
  j["spot4_exact"] = r.spot4_surjective;
  j["section_found"] = r.section.has_value();
  if (r.declared_km1) {
    j["declared_km1"] = r.declared_km1->to_string();
    j["cokernel_matches_declared"] = r.coker_matches_declared;
  }
  j["pass"] = r.pass;
  if (!r.pass) j["failure"] = r.failure;
  return j;
}

ReportJson json_bhs(const BhsCheckResult &r, int degree) {
  ReportJson j = ReportJson::object();
  j["degree"] = degree;
  j["verdict"] = r.verdict;
  j["lhs"] = r.lhs.to_string();
  if (r.assembled) {
    j["rhs"] = r.assembled->codomain().to_string();
    j["witness"] = json_matrix(r.assembled->matrix());
  }
  j["pass"] = r.is_iso;
  return j;
}

ReportJson json_contracted(const ContractednessReport &r) {
  ReportJson j = ReportJson::object();
  j["c"] = r.c;
  ReportJson per = ReportJson::array();
  for (const auto &d : r.degrees) {
    ReportJson e = ReportJson::object();
    e["degree"] = d.degree;
    e["retraction_found"] = d.rho_found;
    if (d.bhs_iso) e["bhs_iso"] = *d.bhs_iso;
    e["pass"] = d.pass;
    per.push_back(e);
  }
  j["degrees"] = per;
  j["pass"] = r.pass;
  return j;
}

ReportJson json_tower(const TowerResult &r) {
  ReportJson j = ReportJson::object();
  j["window"] = {r.lo, r.hi};
  j["n_max"] = r.n_max;
  ReportJson levels = ReportJson::array();
  for (const auto &lvl : r.levels) {
    ReportJson l = ReportJson::object();
    for (const auto &kv : lvl) l[std::to_string(kv.first)] = kv.second.to_string();
    levels.push_back(l);
  }
  j["levels"] = levels;
  ReportJson st = ReportJson::array();
  for (const auto &d : r.stabilization) {
    ReportJson e = ReportJson::object();
    e["degree"] = d.degree;
    e["checked_up_to"] = d.checked_up_to;
    e["stabilized"] = d.stabilized;
    if (d.stabilized) {
      e["level"] = d.level;
      e["value"] = d.stable_value->to_string();
      e["section_witness"] = d.section_witness;
    }
    st.push_back(e);
  }
  j["stabilization"] = st;
  j["all_stabilized"] = r.all_stabilized;
  if (!r.gap.empty()) j["gap"] = r.gap;
  return j;
}

ReportJson json_negk(const NegativeKResult &r) {
  ReportJson j = ReportJson::object();
  ReportJson lv = ReportJson::array();
  for (const auto &l : r.levels) {
    ReportJson e = ReportJson::object();
    e["degree"] = l.degree;
    e["group"] = l.group ? l.group->to_string() : "(gap)";
    e["provenance"] = l.provenance;
    lv.push_back(e);
  }
  j["levels"] = lv;
  j["complete"] = r.complete;
  if (!r.gap.empty()) j["gap"] = r.gap;
  return j;
}

ReportJson json_kh(const KhResult &r, int degree) {
  ReportJson j = ReportJson::object();
  j["degree"] = degree;
  j["stable"] = r.stable;
  if (r.stable) {
    j["stable_at"] = r.stable_index;
    j["group"] = r.group->to_string();
    j["ev_and_inclusion_mutually_inverse"] = r.ev_mutually_inverse;
    j["nk_vanishes"] = r.nk_vanishes;
  }
  ReportJson chain = ReportJson::array();
  for (const auto &g : r.chain) chain.push_back(g.to_string());
  j["chain"] = chain;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

namespace {

void render_rec(const ReportJson &j, const std::string &prefix, std::ostringstream &os) {
  if (j.is_object()) {
    for (const auto &item : j.items()) {
      std::string key = prefix.empty() ? item.key() : prefix + "." + item.key();
      render_rec(item.value(), key, os);
    }
  } else if (j.is_array()) {
    bool scalar = true;
    for (const auto &v : j)
      if (!v.is_primitive()) scalar = false;
    if (scalar) {
      os << prefix << ": ";
      for (std::size_t i = 0; i < j.size(); ++i) os << (i ? " " : "") << j[i].dump();
      os << "\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) render_rec(j[i], prefix + "[" + std::to_string(i) + "]", os);
    }
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

} // namespace

std::string render_text(const ReportJson &j) {
  std::ostringstream os;
  render_rec(j, "", os);
  return os.str();
}

} // namespace kwb
