#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "endotriv/json_io.hpp"

namespace py = pybind11;
using namespace endo;

namespace {

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw ValidationError(std::string("JSON parse error: ") + e.what());
  }
}

FieldOverride field_pair(std::optional<std::pair<int, int>> f) {
  return f ? FieldOverride(*f) : FieldOverride{};
}

// The C++ API hands out shared_ptr<const ...>; wrap them in value holders
// for the bindings.
struct PyField {
  Field f;
};

struct PyGroup {
  Group g;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "endotrivial-module calculator (C++ core)";

  py::register_exception<ValidationError>(m, "ValidationError");

  py::class_<PyField>(m, "Field")
      .def_static("get",
                  [](int p, int e) { return PyField{FieldSpec::get(p, e)}; },
                  py::arg("p"), py::arg("e") = 1)
      .def_property_readonly("p", [](const PyField& f) { return f.f->p(); })
      .def_property_readonly("e", [](const PyField& f) { return f.f->e(); })
      .def_property_readonly("q", [](const PyField& f) { return f.f->q(); })
      .def("modulus", [](const PyField& f) { return f.f->modulus(); })
      .def("add", [](const PyField& f, int a, int b) {
        return (int)f.f->add((uint8_t)a, (uint8_t)b);
      })
      .def("mul", [](const PyField& f, int a, int b) {
        return (int)f.f->mul((uint8_t)a, (uint8_t)b);
      })
      .def("inv", [](const PyField& f, int a) { return (int)f.f->inv((uint8_t)a); })
      .def("__repr__", [](const PyField& f) { return "<" + f.f->name() + ">"; });

  py::class_<PyGroup>(m, "Group")
      .def_static("from_json",
                  [](const std::string& text) { return PyGroup{group_from_json(parse(text))}; })
      .def_static("cyclic",
                  [](int n, const std::string& label) {
                    Perm cycle(n);
                    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
                    return PyGroup{FiniteGroup::enumerate({cycle}, {label},
                                                          "C" + std::to_string(n))};
                  },
                  py::arg("n"), py::arg("label") = "g")
      .def_property_readonly("order", [](const PyGroup& g) { return g.g->order(); })
      .def_property_readonly("degree", [](const PyGroup& g) { return g.g->degree(); })
      .def_property_readonly("name", [](const PyGroup& g) { return g.g->name(); })
      .def("to_json", [](const PyGroup& g) { return group_to_json(g.g).dump(); })
      .def("__repr__", [](const PyGroup& g) {
        return "<Group " +
               (g.g->name().empty() ? "order " + std::to_string(g.g->order())
                                    : g.g->name()) +
               ">";
      });

  py::class_<ModuleRep>(m, "Module")
      .def_static("from_json",
                  [](const std::string& text) { return module_from_json(parse(text)); })
      .def_static("trivial",
                  [](const PyGroup& g, const PyField& f) { return trivial_module(g.g, f.f); })
      .def_static("regular",
                  [](const PyGroup& g, const PyField& f) { return regular_module(g.g, f.f); })
      .def_property_readonly("dim", &ModuleRep::dim)
      .def_property_readonly("group", [](const ModuleRep& m) { return PyGroup{m.group()}; })
      .def("tensor", [](const ModuleRep& a, const ModuleRep& b) { return tensor(a, b); })
      .def("dual", [](const ModuleRep& a) { return dual_module(a); })
      .def("direct_sum",
           [](const ModuleRep& a, const ModuleRep& b) { return direct_sum(a, b); })
      .def("to_json",
           [](const ModuleRep& m, const std::string& name) {
             return module_to_json(m, name).dump();
           },
           py::arg("name") = "")
      .def("__repr__", [](const ModuleRep& m) {
        return "<Module dim " + std::to_string(m.dim()) + " over " +
               (m.group()->name().empty() ? "group" : m.group()->name()) + "/" +
               m.field()->name() + ">";
      });

  m.def("strip",
        [](const ModuleRep& mod) {
          StripResult s = strip(mod);
          return py::make_tuple(s.cls.rep, s.free_rank);
        },
        "Split off all free summands; returns (stripped module, free rank).");
  m.def("norm_rank", &norm_rank);
  m.def("omega",
        [](const ModuleRep& mod, int r) { return omega(mod, r).rep; },
        py::arg("module"), py::arg("r") = 1);
  m.def("is_projective", &is_projective, py::arg("module"), py::arg("p"));
  m.def("is_endotrivial", &is_endotrivial, py::arg("module"), py::arg("p"));
  m.def("stable_iso",
        [](const ModuleRep& a, const ModuleRep& b, uint64_t seed) -> std::string {
          IsoResult r = stable_iso(strip(a).cls, strip(b).cls, seed);
          switch (r.verdict) {
            case IsoVerdict::Iso: return "Iso";
            case IsoVerdict::NotIso: return "NotIso";
            default: return "Undetermined";
          }
        },
        py::arg("a"), py::arg("b"), py::arg("seed") = 0);
  m.def("omega_order",
        [](const PyGroup& g, const PyField& f, int cap) {
          OmegaOrderResult r = omega_order(g.g, f.f, cap);
          return py::make_tuple(r.order ? py::object(py::int_(*r.order)) : py::none(),
                                r.dims);
        },
        py::arg("group"), py::arg("field"), py::arg("cap") = 12);
  m.def("ext_hat",
        [](const PyGroup& g, const PyField& f, int lo, int hi) {
          StableClass k{trivial_module(g.g, f.f)};
          CompleteResolution res =
              complete_resolution(k, std::min(lo - 1, 0), std::max(hi + 1, 0));
          py::dict out;
          for (int i = lo; i <= hi; ++i)
            out[py::int_(i)] = ext_hat(res, trivial_module(g.g, f.f), i).dim;
          return out;
        },
        py::arg("group"), py::arg("field"), py::arg("lo"), py::arg("hi"),
        "Tate Ext-hat^i(k, k) dimensions for i in [lo, hi].");

  m.def("t_group",
        [](const PyGroup& g, const PyField& f, const std::vector<ModuleRep>& extras) {
          return tgroup_report_json(t_group(g.g, f.f, extras)).dump();
        },
        py::arg("group"), py::arg("field"),
        py::arg("extras") = std::vector<ModuleRep>{},
        "T(G) report as a JSON string.");

  m.def("amalgam",
        [](const std::string& spec_text, std::optional<std::pair<int, int>> field) {
          Json j = parse(spec_text);
          AmalgamSpec s = amalgam_from_json(j, field_pair(field));
          GogOracles oracles;
          if (j.contains("oracles")) oracles = oracles_from_json(j["oracles"], false);
          return gog_result_json(t_amalgam(s, oracles)).dump();
        },
        py::arg("spec_json"), py::arg("field") = py::none());
  m.def("hnn",
        [](const std::string& spec_text, std::optional<std::pair<int, int>> field) {
          Json j = parse(spec_text);
          HnnSpec s = hnn_from_json(j, field_pair(field));
          GogOracles oracles;
          if (j.contains("oracles")) oracles = oracles_from_json(j["oracles"], true);
          return gog_result_json(t_hnn(s, oracles)).dump();
        },
        py::arg("spec_json"), py::arg("field") = py::none());
  m.def("components",
        [](const std::string& spec_text, std::optional<std::pair<int, int>> field) {
          Json j = parse(spec_text);
          ComponentReport r =
              j.contains("H")
                  ? components_hnn(hnn_from_json(j, field_pair(field)))
                  : components_amalgam(amalgam_from_json(j, field_pair(field)));
          return components_json(r).dump();
        },
        py::arg("spec_json"), py::arg("field") = py::none());
  m.def("inflation_map",
        [](const std::string& spec_text, std::optional<std::pair<int, int>> field) {
          InflateFile f = inflate_from_json(parse(spec_text), field_pair(field));
          if (!std::holds_alternative<AmalgamSpec>(f.spec))
            throw ValidationError("inflation maps are computed for amalgam targets");
          return inflation_map_json(
                     inflation_map(std::get<AmalgamSpec>(f.spec), f.data, f.extras))
              .dump();
        },
        py::arg("spec_json"), py::arg("field") = py::none());

  m.def("snf", [](const std::vector<std::vector<long long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    ZMat a(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) a(i, j) = rows[i][j];
    SnfResult s = snf(a);
    auto to_py = [](const ZMat& zm) {
      std::vector<std::vector<std::string>> out(zm.rows());
      for (int i = 0; i < zm.rows(); ++i)
        for (int j = 0; j < zm.cols(); ++j) out[i].push_back(zm(i, j).str());
      return out;
    };
    return py::make_tuple(to_py(s.d), to_py(s.u), to_py(s.v));
  });
}
