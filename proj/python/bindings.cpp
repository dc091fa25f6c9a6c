#include "kwb/oracle.hpp"
#include "kwb/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace kwb;

namespace {

py::int_ int_to_py(const Int &x) { return py::int_(py::str(x.str())); }

ZMat matrix_from_py(const std::vector<std::vector<py::int_>> &rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.front().size() : 0;
  ZMat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw py::value_error("ragged matrix");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Int(py::str(rows[i][j]).cast<std::string>());
  }
  return m;
}

py::list matrix_to_py(const ZMat &m) {
  py::list rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    py::list row;
    for (std::size_t j = 0; j < m.cols(); ++j) row.append(int_to_py(m(i, j)));
    rows.append(row);
  }
  return rows;
}

Expression expr_of(const std::string &selector) {
  auto e = parse_expression(selector);
  if (!e) throw py::value_error("malformed selector '" + selector + "'");
  return *e;
}

std::optional<SourceMode> mode_of(const std::string &m) {
  if (m.empty()) return std::nullopt;
  if (m == "independent") return SourceMode::Independent;
  if (m == "bhs-extended") return SourceMode::BhsExtended;
  if (m == "oracle") return SourceMode::Oracle;
  throw py::value_error("mode must be independent | bhs-extended | oracle");
}

KSource source_of(const std::string &oracle_path, const std::string &mode, SourceMode fallback) {
  auto m = mode_of(mode);
  if (!oracle_path.empty()) return oracle_source(oracle_load(oracle_path), m);
  return KSource::engine(m.value_or(fallback));
}

std::string dump(const ReportJson &j) { return j.dump(2); }

} // namespace

PYBIND11_MODULE(_kwb, m) {
  m.doc() = "exact algebraic K-theory workbench: Smith forms, K0/K1 engines, "
            "Bass-Heller-Swan checks, delooping towers";

  py::register_exception<SourceGap>(m, "SourceGap");
  py::register_exception<OracleError>(m, "OracleFileError");
  py::register_exception<EngineError>(m, "EngineError");

  py::class_<FgAbGroup>(m, "FgAbGroup")
      .def_static("from_invariants",
                  [](std::size_t free_rank, const std::vector<py::int_> &factors) {
                    CanonicalForm cf;
                    cf.free_rank = free_rank;
                    for (const auto &f : factors) cf.invariant_factors.push_back(Int(py::str(f).cast<std::string>()));
                    return FgAbGroup::from_canonical(cf);
                  },
                  py::arg("free_rank"), py::arg("invariant_factors") = std::vector<py::int_>{})
      .def_static("from_presentation",
                  [](std::size_t generators, const std::vector<std::vector<py::int_>> &relations) {
                    ZMat rel = matrix_from_py(relations);
                    if (rel.rows() == 0) rel = ZMat(0, generators);
                    return FgAbGroup(generators, rel);
                  },
                  py::arg("generators"), py::arg("relations") = std::vector<std::vector<py::int_>>{})
      .def_property_readonly("free_rank", [](const FgAbGroup &g) { return g.canonical().free_rank; })
      .def_property_readonly("invariant_factors",
                             [](const FgAbGroup &g) {
                               py::list out;
                               for (const Int &d : g.canonical().invariant_factors) out.append(int_to_py(d));
                               return out;
                             })
      .def_property_readonly("is_trivial", &FgAbGroup::is_trivial)
      .def("isomorphic", &FgAbGroup::isomorphic)
      .def("__repr__", [](const FgAbGroup &g) { return "<FgAbGroup " + g.to_string() + ">"; })
      .def("__str__", &FgAbGroup::to_string);

  m.def("smith_normal_form",
        [](const std::vector<std::vector<py::int_>> &a) {
          SmithForm f = smith_normal_form(matrix_from_py(a));
          py::dict out;
          out["u"] = matrix_to_py(f.u);
          out["d"] = matrix_to_py(f.d);
          out["v"] = matrix_to_py(f.v);
          return out;
        },
        py::arg("matrix"), "Deterministic Smith normal form: u * a * v = d.");

  m.def("kernel_cokernel",
        [](std::size_t dom_gens, const std::vector<std::vector<py::int_>> &dom_rel, std::size_t cod_gens,
           const std::vector<std::vector<py::int_>> &cod_rel, const std::vector<std::vector<py::int_>> &map) {
          ZMat dr = matrix_from_py(dom_rel);
          if (dr.rows() == 0) dr = ZMat(0, dom_gens);
          ZMat cr = matrix_from_py(cod_rel);
          if (cr.rows() == 0) cr = ZMat(0, cod_gens);
          GroupHom f(FgAbGroup(dom_gens, dr), FgAbGroup(cod_gens, cr), matrix_from_py(map));
          if (!f.is_well_defined()) throw py::value_error("map is not well-defined");
          py::dict out;
          out["kernel"] = kernel(f).group;
          out["cokernel"] = cokernel(f).group;
          out["injective"] = is_injective(f);
          out["surjective"] = is_surjective(f);
          return out;
        },
        py::arg("dom_gens"), py::arg("dom_relations"), py::arg("cod_gens"), py::arg("cod_relations"),
        py::arg("matrix"));

  m.def("classify_ring",
        [](const std::string &selector) {
          auto r = ring_of_expression(expr_of(selector));
          if (!r) throw py::value_error("not a ring selector: " + selector);
          RingClass c = classify_ring(*r);
          py::dict out;
          out["kind"] = ring_class_name(c.kind);
          out["detail"] = c.detail;
          return out;
        },
        py::arg("ring"));

  m.def("k0",
        [](const std::string &selector, bool idempotent_complete) {
          auto r = ring_of_expression(expr_of(selector));
          if (!r) throw py::value_error("not a ring selector: " + selector);
          return k0(*r, idempotent_complete).group;
        },
        py::arg("ring"), py::arg("idempotent_complete") = true);

  m.def("k1",
        [](const std::string &selector) {
          auto r = ring_of_expression(expr_of(selector));
          if (!r) throw py::value_error("not a ring selector: " + selector);
          return k1(*r).group;
        },
        py::arg("ring"));

  m.def("certify_sk1",
        [](const std::string &selector, int samples, unsigned seed, int length) {
          auto r = ring_of_expression(expr_of(selector));
          if (!r) throw py::value_error("not a ring selector: " + selector);
          return certify_sk1(*r, samples, seed, length);
        },
        py::arg("ring"), py::arg("samples") = 50, py::arg("seed") = 0xC0FFEE, py::arg("length") = 8,
        "Reduce seeded random SL_2/SL_3 samples to the identity by elementary moves.");

  m.def("nk",
        [](const std::string &selector, int degree, const std::string &oracle, const std::string &mode) {
          KSource src = source_of(oracle, mode, SourceMode::Independent);
          StructuredKInstance inst = assemble_instance(src, expr_of(selector), degree, degree);
          ReportJson j = ReportJson::object();
          j["nk_plus"] = json_nk(nk(inst, degree, true), degree, true);
          j["nk_minus"] = json_nk(nk(inst, degree, false), degree, false);
          return dump(j);
        },
        py::arg("selector"), py::arg("degree") = 1, py::arg("oracle") = "", py::arg("mode") = "");

  m.def("fundamental_sequence",
        [](const std::string &selector, int degree, const std::string &oracle, const std::string &mode) {
          KSource src = source_of(oracle, mode, SourceMode::Independent);
          StructuredKInstance inst = assemble_instance(src, expr_of(selector), degree, degree);
          return dump(json_fundamental(fundamental_sequence(src, inst, degree)));
        },
        py::arg("selector"), py::arg("degree") = 1, py::arg("oracle") = "", py::arg("mode") = "");

  m.def("bhs_check",
        [](const std::string &selector, int degree, const std::string &oracle, const std::string &mode) {
          KSource src = source_of(oracle, mode, SourceMode::Independent);
          StructuredKInstance inst = assemble_instance(src, expr_of(selector), degree, degree);
          return dump(json_bhs(bhs_check(src, inst, degree), degree));
        },
        py::arg("selector"), py::arg("degree") = 1, py::arg("oracle") = "", py::arg("mode") = "");

  m.def("contracted_check",
        [](const std::string &selector, int c, int lo, int hi, const std::string &oracle, const std::string &mode) {
          KSource src = source_of(oracle, mode, SourceMode::Independent);
          StructuredKInstance inst = assemble_instance(src, expr_of(selector), lo, hi);
          return dump(json_contracted(contracted_check(src, inst, c)));
        },
        py::arg("selector"), py::arg("c") = 0, py::arg("lo") = 0, py::arg("hi") = 1, py::arg("oracle") = "",
        py::arg("mode") = "");

  m.def("negative_k",
        [](const std::string &selector, int depth, const std::string &oracle, const std::string &mode) {
          KSource src = source_of(oracle, mode, SourceMode::BhsExtended);
          return dump(json_negk(negative_k(src, expr_of(selector), depth)));
        },
        py::arg("selector"), py::arg("depth") = 3, py::arg("oracle") = "", py::arg("mode") = "");

  m.def("shadow_tower",
        [](const std::string &selector, int lo, int hi, int n_max, bool connective, const std::string &oracle,
           const std::string &mode) {
          KSource src = source_of(oracle, mode, SourceMode::BhsExtended);
          return dump(json_tower(shadow_tower(src, expr_of(selector), lo, hi, n_max, connective)));
        },
        py::arg("selector"), py::arg("lo") = -2, py::arg("hi") = 1, py::arg("n_max") = 3,
        py::arg("connective") = true, py::arg("oracle") = "", py::arg("mode") = "");

  m.def("kh_groups",
        [](const std::string &selector, int degree, int bound, const std::string &oracle, const std::string &mode) {
          KSource src = source_of(oracle, mode, SourceMode::BhsExtended);
          return dump(json_kh(kh_groups(src, expr_of(selector), degree, bound), degree));
        },
        py::arg("selector"), py::arg("degree") = 1, py::arg("bound") = 4, py::arg("oracle") = "",
        py::arg("mode") = "");

  m.def("oracle_export",
        [](const std::string &selector, int lo, int hi, const std::string &mode) {
          KSource src = KSource::engine(mode_of(mode).value_or(SourceMode::Independent));
          return oracle_export_text(src, {expr_of(selector)}, lo, hi);
        },
        py::arg("selector"), py::arg("lo") = 0, py::arg("hi") = 1, py::arg("mode") = "");

  m.def("oracle_validate",
        [](const std::string &path) {
          OracleData d = oracle_load(path);
          py::dict out;
          out["mode"] = source_mode_name(d.mode);
          out["objects"] = d.objects.size();
          out["lo"] = d.lo;
          out["hi"] = d.hi;
          return out;
        },
        py::arg("path"), "Load and fully validate an oracle file; raises OracleFileError on any violation.");
}
