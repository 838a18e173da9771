#include "endotriv/json_io.hpp"

#include <sstream>

namespace endo {

namespace {

void need(const Json& j, const char* key, const char* what) {
  if (!j.contains(key))
    throw ValidationError(std::string(what) + ": missing key '" + key + "'");
}

[[noreturn]] void bad(const std::string& path, const std::string& reason) {
  throw ValidationError(path + ": " + reason);
}

}  // namespace

Json field_to_json(const Field& f) { return Json{{"p", f->p()}, {"e", f->e()}}; }

Field field_from_json(const Json& j) {
  need(j, "p", "field");
  need(j, "e", "field");
  if (!j["p"].is_number_integer() || !j["e"].is_number_integer())
    bad("field", "p and e must be integers");
  return FieldSpec::get(j["p"].get<int>(), j["e"].get<int>());
}

Json group_to_json(const Group& g) {
  Json j;
  j["schema_version"] = 1;
  if (!g->name().empty()) j["name"] = g->name();
  j["degree"] = g->degree();
  Json gens = Json::array();
  for (int i = 0; i < g->num_generators(); ++i) gens.push_back(g->generator(i));
  j["generators"] = gens;
  j["labels"] = g->labels();
  return j;
}

Group group_from_json(const Json& j) {
  need(j, "degree", "group");
  need(j, "generators", "group");
  need(j, "labels", "group");
  int degree = j["degree"].get<int>();
  std::vector<Perm> gens;
  for (const Json& g : j["generators"]) {
    Perm p;
    for (const Json& x : g) p.push_back(x.get<int>());
    if (static_cast<int>(p.size()) != degree) bad("group.generators", "wrong degree");
    gens.push_back(std::move(p));
  }
  std::vector<std::string> labels = j["labels"].get<std::vector<std::string>>();
  std::string name = j.value("name", "");
  return FiniteGroup::enumerate(std::move(gens), std::move(labels), name, 20000, degree);
}

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.field()->decode(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Mat mat_from_json(const Json& j, const Field& f) {
  if (!j.is_array()) bad("matrix", "expected an array of rows");
  int rows = static_cast<int>(j.size());
  int cols = rows == 0 ? 0 : static_cast<int>(j[0].size());
  Mat m(f, rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) bad("matrix", "ragged rows");
    for (int c = 0; c < cols; ++c) {
      std::vector<int> coeffs = j[i][c].get<std::vector<int>>();
      m(i, c) = f->encode(coeffs);
    }
  }
  return m;
}

Json module_to_json(const ModuleRep& m, const std::string& name) {
  Json j;
  j["schema_version"] = 1;
  if (!name.empty()) j["name"] = name;
  j["group"] = group_to_json(m.group());
  j["field"] = field_to_json(m.field());
  j["dim"] = m.dim();
  Json mats = Json::object();
  for (int s = 0; s < m.group()->num_generators(); ++s)
    mats[m.group()->label(s)] = mat_to_json(m.action(s));
  j["matrices"] = mats;
  return j;
}

ModuleRep module_from_json(const Json& j) {
  need(j, "group", "module");
  need(j, "field", "module");
  need(j, "dim", "module");
  need(j, "matrices", "module");
  Group g = group_from_json(j["group"]);
  Field f = field_from_json(j["field"]);
  int dim = j["dim"].get<int>();
  std::vector<Mat> action;
  for (int s = 0; s < g->num_generators(); ++s) {
    const std::string& label = g->label(s);
    if (!j["matrices"].contains(label))
      bad("module.matrices", "missing matrix for generator '" + label + "'");
    Mat m = mat_from_json(j["matrices"][label], f);
    if (m.rows() != dim || m.cols() != dim)
      bad("module.matrices." + label, "matrix shape does not match dim");
    action.push_back(std::move(m));
  }
  return ModuleRep::make_validated(g, f, dim, std::move(action));
}

Json hom_to_json(const GroupHom& h) {
  Json j = Json::object();
  for (int s = 0; s < h.source->num_generators(); ++s)
    j[h.source->label(s)] = h.target->word_string(h.images[s]);
  return j;
}

GroupHom hom_from_json(const Json& j, const Group& source, const Group& target) {
  GroupHom h;
  h.source = source;
  h.target = target;
  for (int s = 0; s < source->num_generators(); ++s) {
    const std::string& label = source->label(s);
    if (!j.contains(label)) bad("hom", "missing image word for generator '" + label + "'");
    auto word = target->parse_word(j[label].get<std::string>());
    if (!word) bad("hom." + label, "unparseable word in target labels");
    h.images.push_back(target->evaluate_word(*word));
  }
  return h;
}

Json fgab_to_json(const FgAbGroup& g) {
  Json j;
  j["n_gens"] = g.n_gens;
  j["relations"] = zmat_to_json(g.relations);
  j["labels"] = g.gen_labels;
  return j;
}

FgAbGroup fgab_from_json(const Json& j) {
  need(j, "n_gens", "fgab group");
  need(j, "relations", "fgab group");
  FgAbGroup g;
  g.n_gens = j["n_gens"].get<int>();
  g.relations = zmat_from_json(j["relations"]);
  if (g.relations.cols() != g.n_gens && !(g.relations.rows() == 0))
    bad("fgab group", "relation width does not match n_gens");
  if (g.relations.rows() == 0) g.relations = ZMat(0, g.n_gens);
  if (j.contains("labels"))
    g.gen_labels = j["labels"].get<std::vector<std::string>>();
  while (static_cast<int>(g.gen_labels.size()) < g.n_gens)
    g.gen_labels.push_back("x" + std::to_string(g.gen_labels.size()));
  return g;
}

Json zmat_to_json(const ZMat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

ZMat zmat_from_json(const Json& j) {
  int rows = static_cast<int>(j.size());
  int cols = rows == 0 ? 0 : static_cast<int>(j[0].size());
  ZMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c) {
      const Json& v = j[i][c];
      if (v.is_string())
        m(i, c) = BigInt(v.get<std::string>());
      else
        m(i, c) = v.get<long long>();
    }
  return m;
}

namespace {

Field resolve_field(const Json& j, const FieldOverride& over, const char* what) {
  if (over) return FieldSpec::get(over->first, over->second);
  if (j.contains("field")) return field_from_json(j["field"]);
  bad(what, "no field given (neither in the file nor via --field)");
}

void check_p(const Json& j, int p, bool overridden, const char* what) {
  // An explicit --field wins over whatever the file pinned.
  if (!overridden && j.contains("p") && j["p"].get<int>() != p)
    bad(what, "file's p disagrees with the field characteristic");
}

}  // namespace

AmalgamSpec amalgam_from_json(const Json& j, const FieldOverride& field) {
  need(j, "A", "amalgam");
  need(j, "B", "amalgam");
  need(j, "C", "amalgam");
  need(j, "embed_A", "amalgam");
  need(j, "embed_B", "amalgam");
  AmalgamSpec s;
  s.name = j.value("name", "");
  s.a = group_from_json(j["A"]);
  s.b = group_from_json(j["B"]);
  s.c = group_from_json(j["C"]);
  s.embed_a = hom_from_json(j["embed_A"], s.c, s.a);
  s.embed_b = hom_from_json(j["embed_B"], s.c, s.b);
  s.field = resolve_field(j, field, "amalgam");
  s.p = s.field->p();
  check_p(j, s.p, field.has_value(), "amalgam");
  validate_spec(s);
  return s;
}

Json amalgam_to_json(const AmalgamSpec& s) {
  Json j;
  j["schema_version"] = 1;
  if (!s.name.empty()) j["name"] = s.name;
  j["p"] = s.p;
  j["field"] = field_to_json(s.field);
  j["A"] = group_to_json(s.a);
  j["B"] = group_to_json(s.b);
  j["C"] = group_to_json(s.c);
  j["embed_A"] = hom_to_json(s.embed_a);
  j["embed_B"] = hom_to_json(s.embed_b);
  return j;
}

HnnSpec hnn_from_json(const Json& j, const FieldOverride& field) {
  need(j, "H", "hnn");
  need(j, "A", "hnn");
  need(j, "incl", "hnn");
  need(j, "f", "hnn");
  HnnSpec s;
  s.name = j.value("name", "");
  s.h = group_from_json(j["H"]);
  s.a = group_from_json(j["A"]);
  s.incl = hom_from_json(j["incl"], s.a, s.h);
  s.f = hom_from_json(j["f"], s.a, s.h);
  s.field = resolve_field(j, field, "hnn");
  s.p = s.field->p();
  check_p(j, s.p, field.has_value(), "hnn");
  validate_spec(s);
  return s;
}

Json hnn_to_json(const HnnSpec& s) {
  Json j;
  j["schema_version"] = 1;
  if (!s.name.empty()) j["name"] = s.name;
  j["p"] = s.p;
  j["field"] = field_to_json(s.field);
  j["H"] = group_to_json(s.h);
  j["A"] = group_to_json(s.a);
  j["incl"] = hom_to_json(s.incl);
  j["f"] = hom_to_json(s.f);
  return j;
}

GogOracles oracles_from_json(const Json& j, bool hnn) {
  GogOracles o;
  const char* va = hnn ? "T_H" : "T_A";
  const char* vb = "T_B";
  const char* ve = hnn ? "T_A" : "T_C";
  const char* ra = hnn ? "res_incl" : "res_A";
  const char* rb = hnn ? "res_f" : "res_B";
  if (j.contains(va)) o.t_vertex_a = fgab_from_json(j[va]);
  if (!hnn && j.contains(vb)) o.t_vertex_b = fgab_from_json(j[vb]);
  if (j.contains(ve)) o.t_edge = fgab_from_json(j[ve]);
  if (j.contains(ra)) o.res_a = zmat_from_json(j[ra]);
  if (j.contains(rb)) o.res_b = zmat_from_json(j[rb]);
  return o;
}

bool is_oracle_only(const Json& j, bool hnn) {
  if (!j.contains("oracles")) return false;
  return hnn ? !j.contains("H") : !(j.contains("A") && j.contains("B"));
}

OracleAmalgam oracle_amalgam_from_json(const Json& j, const FieldOverride& field) {
  need(j, "oracles", "oracle amalgam");
  const Json& o = j["oracles"];
  for (const char* key : {"T_A", "T_B", "T_C", "res_A", "res_B"}) need(o, key, "oracles");
  OracleAmalgam out;
  out.name = j.value("name", "");
  out.field = resolve_field(j, field, "oracle amalgam");
  out.p = out.field->p();
  check_p(j, out.p, field.has_value(), "oracle amalgam");
  out.t_a = fgab_from_json(o["T_A"]);
  out.t_b = fgab_from_json(o["T_B"]);
  out.t_c = fgab_from_json(o["T_C"]);
  out.res_a = zmat_from_json(o["res_A"]);
  out.res_b = zmat_from_json(o["res_B"]);
  return out;
}

OracleHnn oracle_hnn_from_json(const Json& j, const FieldOverride& field) {
  need(j, "oracles", "oracle hnn");
  const Json& o = j["oracles"];
  for (const char* key : {"T_H", "T_A", "res_incl", "res_f", "aut_A"})
    need(o, key, "oracles");
  OracleHnn out;
  out.name = j.value("name", "");
  out.field = resolve_field(j, field, "oracle hnn");
  out.p = out.field->p();
  check_p(j, out.p, field.has_value(), "oracle hnn");
  out.t_vertex = fgab_from_json(o["T_H"]);
  out.t_edge = fgab_from_json(o["T_A"]);
  out.res_incl = zmat_from_json(o["res_incl"]);
  out.res_f = zmat_from_json(o["res_f"]);
  out.aut_edge = fgab_from_json(o["aut_A"]);
  if (o.contains("aut_H")) out.aut_vertex = fgab_from_json(o["aut_H"]);
  if (o.contains("aut_map")) out.aut_map = zmat_from_json(o["aut_map"]);
  out.split_by_inflation = o.value("split_by_inflation", false);
  return out;
}

InflateFile inflate_from_json(const Json& j, const FieldOverride& field) {
  need(j, "quotient", "inflate");
  need(j, "vertex_maps", "inflate");
  InflateFile out;
  out.name = j.value("name", "");
  out.data.quotient = group_from_json(j["quotient"]);
  if (j.contains("amalgam")) {
    AmalgamSpec s = amalgam_from_json(j["amalgam"], field);
    need(j["vertex_maps"], "A", "inflate.vertex_maps");
    need(j["vertex_maps"], "B", "inflate.vertex_maps");
    out.data.map_a = hom_from_json(j["vertex_maps"]["A"], s.a, out.data.quotient);
    out.data.map_b = hom_from_json(j["vertex_maps"]["B"], s.b, out.data.quotient);
    out.spec = s;
  } else if (j.contains("hnn")) {
    HnnSpec s = hnn_from_json(j["hnn"], field);
    need(j["vertex_maps"], "H", "inflate.vertex_maps");
    need(j["vertex_maps"], "t_image", "inflate.vertex_maps");
    out.data.map_a = hom_from_json(j["vertex_maps"]["H"], s.h, out.data.quotient);
    auto word = out.data.quotient->parse_word(j["vertex_maps"]["t_image"].get<std::string>());
    if (!word) bad("inflate.vertex_maps.t_image", "unparseable word");
    out.data.t_image = out.data.quotient->evaluate_word(*word);
    out.spec = s;
  } else {
    bad("inflate", "needs an 'amalgam' or 'hnn' member");
  }
  if (j.contains("extra"))
    for (const Json& e : j["extra"]) out.extras.push_back(module_from_json(e));
  return out;
}

// ---- reports ---------------------------------------------------------------

Json canonical_json(const FgAbGroup& g) {
  CanonicalForm c = canonical(g);
  Json torsion = Json::array();
  for (const BigInt& d : c.torsion) torsion.push_back(d.str());
  return Json{{"canonical", canonical_string(g)},
              {"free_rank", c.free_rank},
              {"torsion", torsion},
              {"labels", g.gen_labels}};
}

Json tgroup_report_json(const TGroupReport& r) {
  Json j;
  j["group"] = r.group->name().empty() ? Json("(unnamed)") : Json(r.group->name());
  j["field"] = field_to_json(r.field);
  j["value"] = canonical_json(r.value);
  j["completeness"] =
      r.completeness == Completeness::Verified ? "Verified" : "ComputedSubgroup";
  Json gens = Json::array();
  for (const TGenerator& g : r.generators)
    gens.push_back(Json{{"label", g.label}, {"dim", g.rep.dim()}});
  j["generators"] = gens;
  if (r.omega_ord) {
    Json o;
    if (r.omega_ord->order)
      o["order"] = *r.omega_ord->order;
    else
      o["no_relation_up_to"] = r.omega_ord->cap;
    o["syzygy_dims"] = r.omega_ord->dims;
    j["omega"] = o;
  }
  Json ev = Json::array();
  for (const EvidenceEntry& e : r.evidence)
    ev.push_back(Json{{"check", e.check}, {"result", e.result}});
  j["evidence"] = ev;
  return j;
}

Json gog_result_json(const GogTResult& r) {
  Json j;
  if (r.value) j["T"] = canonical_json(*r.value);
  if (r.extension) {
    Json e;
    e["sub"] = canonical_json(r.extension->sub);
    e["quotient"] = canonical_json(r.extension->quotient);
    if (r.extension->resolved) {
      e["resolved"] = canonical_json(*r.extension->resolved);
      e["split_reason"] = *r.extension->split_reason;
    }
    j["extension"] = e;
  }
  j["nodes"] = Json{{"A", canonical_json(r.value_a)},
                    {"B", canonical_json(r.value_b)},
                    {"edge", canonical_json(r.value_edge)}};
  j["res_A"] = zmat_to_json(r.res_a);
  j["res_B"] = zmat_to_json(r.res_b);
  j["exactness_audit"] = r.exactness_audit;
  j["derivation"] = r.derivation;
  return j;
}

Json components_json(const ComponentReport& r) {
  Json j;
  j["count"] = r.count;
  Json nodes = Json::array();
  for (const auto& n : r.nodes)
    nodes.push_back(Json{{"vertex", n.vertex}, {"order", n.order}});
  j["classes"] = nodes;
  j["components"] = r.components;
  return j;
}

Json inflation_map_json(const InflationMapResult& r) {
  Json j;
  j["T_quotient"] = canonical_json(r.t_quotient.value);
  j["T_G"] = canonical_json(*r.t_g.value);
  j["matrix"] = zmat_to_json(r.map.images);
  j["kernel"] = canonical_json(r.kernel.group);
  j["derivation"] = r.derivation;
  return j;
}

Json strip_report_json(const ModuleRep& input, const StripResult& s) {
  Json j;
  j["input_dim"] = input.dim();
  j["free_rank"] = s.free_rank;
  j["stripped_dim"] = s.cls.dim();
  j["stripped_module"] = module_to_json(s.cls.rep);
  return j;
}

Json iso_report_json(const IsoResult& r) {
  Json j;
  switch (r.verdict) {
    case IsoVerdict::Iso: j["verdict"] = "Iso"; break;
    case IsoVerdict::NotIso: j["verdict"] = "NotIso"; break;
    case IsoVerdict::Undetermined: j["verdict"] = "Undetermined"; break;
  }
  j["hom_dim"] = r.hom_dim;
  j["exhaustive"] = r.exhaustive;
  if (r.iso) j["iso"] = mat_to_json(*r.iso);
  return j;
}

namespace {

void render_value(std::ostream& os, const Json& j, int indent);

void render_object(std::ostream& os, const Json& j, int indent) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    os << std::string(indent, ' ') << it.key() << ": ";
    if (it.value().is_object() || (it.value().is_array() && !it.value().empty() &&
                                   (it.value()[0].is_object() || it.value()[0].is_array()))) {
      os << "\n";
      render_value(os, it.value(), indent + 2);
    } else {
      render_value(os, it.value(), 0);
      os << "\n";
    }
  }
}

void render_value(std::ostream& os, const Json& j, int indent) {
  if (j.is_object()) {
    render_object(os, j, indent);
  } else if (j.is_array()) {
    if (!j.empty() && (j[0].is_object() || j[0].is_array())) {
      for (const Json& e : j) {
        if (e.is_object()) {
          render_object(os, e, indent + 2);
          os << std::string(indent, ' ') << "-\n";
        } else {
          os << std::string(indent, ' ') << e.dump() << "\n";
        }
      }
    } else {
      os << j.dump();
    }
  } else if (j.is_string()) {
    os << j.get<std::string>();
  } else {
    os << j.dump();
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream os;
  render_object(os, report, 0);
  return os.str();
}

}  // namespace endo
