#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "endotriv/json_io.hpp"

using namespace endo;

namespace {

struct Options {
  std::string field;
  uint64_t seed = 0;
  int cap_omega = 12;
  int cap_dim = 4096;
  int cap_iso = 10000;
  bool json_only = false;
  bool text_only = false;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open file");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError(path + ": JSON parse error: " + e.what());
  }
  return j;
}

FieldOverride parse_field(const std::string& s) {
  if (s.empty()) return {};
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw ValidationError("--field expects 'p,e', got '" + s + "'");
  return std::make_pair(std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1)));
}

Caps caps_of(const Options& o) {
  Caps c;
  c.omega_cap = o.cap_omega;
  c.dim_cap = o.cap_dim;
  c.iso_search_cap = o.cap_iso;
  c.seed = o.seed;
  return c;
}

int emit(const Options& o, const std::string& command, Json result, int exit_code = 0) {
  Json envelope;
  envelope["schema_version"] = 1;
  envelope["command"] = command;
  envelope["seed"] = o.seed;
  envelope["result"] = std::move(result);
  if (!o.text_only) std::cout << envelope.dump(2) << "\n";
  if (!o.json_only && !o.text_only) std::cout << "---\n";
  if (!o.json_only) std::cout << render_text(envelope);
  return exit_code;
}

ModuleRep load_module(const std::string& path) { return module_from_json(read_json(path)); }

void require_p_group_module(const ModuleRep& m, const std::string& what) {
  if (!is_p_group(*m.group(), m.field()->p()))
    throw ValidationError(what + " expects a module over a p-group for the field characteristic");
}

int cmd_validate(const Options& o, const std::string& path) {
  Json j = read_json(path);
  Json result;
  result["file"] = path;
  if (j.contains("matrices")) {
    ModuleRep m = module_from_json(j);
    result["kind"] = "module";
    result["dim"] = m.dim();
    result["group_order"] = m.group()->order();
  } else if (j.contains("quotient")) {
    FieldOverride fo = parse_field(o.field);
    InflateFile f = inflate_from_json(j, fo);
    if (std::holds_alternative<AmalgamSpec>(f.spec))
      validate_inflation(std::get<AmalgamSpec>(f.spec), f.data);
    else
      validate_inflation(std::get<HnnSpec>(f.spec), f.data);
    result["kind"] = "inflate";
  } else if (j.contains("H")) {
    hnn_from_json(j, parse_field(o.field));
    result["kind"] = "hnn";
  } else if (j.contains("A") && j.contains("B")) {
    amalgam_from_json(j, parse_field(o.field));
    result["kind"] = "amalgam";
  } else if (j.contains("generators")) {
    Group g = group_from_json(j);
    result["kind"] = "group";
    result["order"] = g->order();
  } else {
    throw ValidationError(path + ": unrecognized document kind");
  }
  result["valid"] = true;
  return emit(o, "validate", result);
}

int cmd_strip(const Options& o, const std::string& path) {
  ModuleRep m = load_module(path);
  require_p_group_module(m, "strip");
  StripResult s = strip(m);
  return emit(o, "strip", strip_report_json(m, s));
}

int cmd_omega(const Options& o, const std::string& path, int r) {
  ModuleRep m = load_module(path);
  require_p_group_module(m, "omega");
  StableClass out = omega(m, r, o.cap_dim);
  Json result;
  result["r"] = r;
  result["input_dim"] = m.dim();
  result["dim"] = out.dim();
  result["module"] = module_to_json(out.rep);
  return emit(o, "omega", result);
}

int cmd_is_projective(const Options& o, const std::string& path, int p) {
  ModuleRep m = load_module(path);
  if (p == 0) p = m.field()->p();
  Json result;
  result["p"] = p;
  result["projective"] = is_projective(m, p);
  return emit(o, "is-projective", result);
}

int cmd_is_endotrivial(const Options& o, const std::string& path, int p) {
  ModuleRep m = load_module(path);
  if (p == 0) p = m.field()->p();
  Json result;
  result["p"] = p;
  result["endotrivial"] = is_endotrivial(m, p);
  return emit(o, "is-endotrivial", result);
}

int cmd_stable_iso(const Options& o, const std::string& p1, const std::string& p2) {
  ModuleRep m1 = load_module(p1);
  ModuleRep m2 = load_module(p2);
  require_p_group_module(m1, "stable-iso");
  if (!m1.same_context(m2))
    throw ValidationError("stable-iso: modules live over different groups or fields");
  StableClass c1 = strip(m1).cls;
  StableClass c2 = strip(m2).cls;
  IsoResult r = stable_iso(c1, c2, o.seed, o.cap_iso);
  int code = r.verdict == IsoVerdict::Undetermined ? 3 : 0;
  return emit(o, "stable-iso", iso_report_json(r), code);
}

int cmd_tgroup(const Options& o, const std::string& group_path,
               const std::vector<std::string>& extra_paths) {
  FieldOverride fo = parse_field(o.field);
  if (!fo) throw ValidationError("tgroup requires --field p,e");
  Group g = group_from_json(read_json(group_path));
  Field f = FieldSpec::get(fo->first, fo->second);
  std::vector<ModuleRep> extras;
  for (const std::string& path : extra_paths) {
    ModuleRep e = load_module(path);
    if (!e.group()->same(*g))
      throw ValidationError(path + ": extra module is over a different group");
    if (!e.field()->same(*f))
      throw ValidationError(path + ": extra module is over a different field");
    extras.push_back(std::move(e));
  }
  TGroupReport rep = t_group(g, f, extras, caps_of(o));
  Json result = tgroup_report_json(rep);
  result["T"] = canonical_string(rep.value);
  return emit(o, "tgroup", result);
}

int cmd_exthat(const Options& o, const std::string& group_path, const std::string& range,
               const std::string& of_path, const std::string& coeff) {
  FieldOverride fo = parse_field(o.field);
  if (!fo) throw ValidationError("exthat requires --field p,e");
  Group g = group_from_json(read_json(group_path));
  Field f = FieldSpec::get(fo->first, fo->second);
  if (!is_p_group(*g, f->p()))
    throw ValidationError("exthat expects a p-group for the field characteristic");

  auto dots = range.find("..");
  if (dots == std::string::npos)
    throw ValidationError("--range expects LO..HI, got '" + range + "'");
  int lo = std::stoi(range.substr(0, dots));
  int hi = std::stoi(range.substr(dots + 2));
  if (lo > hi) throw ValidationError("--range: LO must be <= HI");

  StableClass cls{trivial_module(g, f)};
  if (!of_path.empty()) {
    ModuleRep m = load_module(of_path);
    if (!m.group()->same(*g) || !m.field()->same(*f))
      throw ValidationError("--of module does not match the group/field");
    cls = strip(m).cls;
  }
  ModuleRep coeffs = trivial_module(g, f);
  if (coeff == "regular")
    coeffs = regular_module(g, f);
  else if (coeff != "trivial" && !coeff.empty())
    coeffs = load_module(coeff);

  CompleteResolution res =
      complete_resolution(cls, std::min(lo - 1, 0), std::max(hi + 1, 0), o.cap_dim);
  Json dims = Json::object();
  for (int i = lo; i <= hi; ++i)
    dims[std::to_string(i)] = ext_hat(res, coeffs, i).dim;
  Json result;
  result["range"] = range;
  result["dims"] = dims;
  Json ranks = Json::object();
  for (int i = res.lo; i <= res.hi; ++i) ranks[std::to_string(i)] = res.rank_at(i);
  result["resolution_ranks"] = ranks;
  return emit(o, "exthat", result);
}

int cmd_amalgam(const Options& o, const std::string& path) {
  Json j = read_json(path);
  GogTResult r;
  if (is_oracle_only(j, false)) {
    r = t_amalgam_oracle(oracle_amalgam_from_json(j, parse_field(o.field)));
  } else {
    AmalgamSpec s = amalgam_from_json(j, parse_field(o.field));
    GogOracles oracles;
    if (j.contains("oracles")) oracles = oracles_from_json(j["oracles"], false);
    r = t_amalgam(s, oracles, caps_of(o));
  }
  Json result = gog_result_json(r);
  if (r.value) result["T_string"] = canonical_string(*r.value);
  return emit(o, "amalgam", result);
}

int cmd_hnn(const Options& o, const std::string& path) {
  Json j = read_json(path);
  GogTResult r;
  if (is_oracle_only(j, true)) {
    r = t_hnn_oracle(oracle_hnn_from_json(j, parse_field(o.field)));
  } else {
    HnnSpec s = hnn_from_json(j, parse_field(o.field));
    GogOracles oracles;
    if (j.contains("oracles")) oracles = oracles_from_json(j["oracles"], true);
    r = t_hnn(s, oracles, caps_of(o));
  }
  Json result = gog_result_json(r);
  if (r.value) result["T_string"] = canonical_string(*r.value);
  return emit(o, "hnn", result);
}

int cmd_components(const Options& o, const std::string& path) {
  Json j = read_json(path);
  ComponentReport r;
  if (j.contains("H"))
    r = components_hnn(hnn_from_json(j, parse_field(o.field)));
  else
    r = components_amalgam(amalgam_from_json(j, parse_field(o.field)));
  return emit(o, "components", components_json(r));
}

int cmd_inflate(const Options& o, const std::string& path, const std::string& module_path) {
  Json j = read_json(path);
  InflateFile f = inflate_from_json(j, parse_field(o.field));
  if (!module_path.empty()) {
    // Inflate a single module and report the resulting gluing data.
    ModuleRep m = load_module(module_path);
    Json result;
    if (std::holds_alternative<AmalgamSpec>(f.spec)) {
      const AmalgamSpec& s = std::get<AmalgamSpec>(f.spec);
      GogModule x = inflate(s, f.data, m);
      result["vertex_A"] = module_to_json(gog_restrict_a(x));
      result["vertex_B"] = module_to_json(gog_restrict_b(s, x));
      result["endotrivial"] = is_endotrivial_gog(s, x);
    } else {
      const HnnSpec& s = std::get<HnnSpec>(f.spec);
      GogModule x = inflate(s, f.data, m);
      result["vertex_H"] = module_to_json(gog_restrict_h(x));
      result["theta"] = mat_to_json(x.glue);
      result["endotrivial"] = is_endotrivial_gog(s, x);
    }
    return emit(o, "inflate", result);
  }
  if (!std::holds_alternative<AmalgamSpec>(f.spec))
    throw ValidationError("inflation maps are computed for amalgam targets");
  InflationMapResult r =
      inflation_map(std::get<AmalgamSpec>(f.spec), f.data, f.extras, caps_of(o));
  return emit(o, "inflate", inflation_map_json(r));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"endotriv: endotrivial-module calculator for finite groups and "
               "one-edge graphs of finite groups"};
  app.require_subcommand(1);

  Options o;
  app.add_option("--field", o.field, "field as p,e (e.g. 2,2 for F4)");
  app.add_option("--seed", o.seed, "seed for randomized searches");
  app.add_option("--cap-omega", o.cap_omega, "omega-order search cap");
  app.add_option("--cap-dim", o.cap_dim, "dimension safety cap");
  app.add_option("--cap-iso", o.cap_iso, "random isomorphism search cap");
  app.add_flag("--json", o.json_only, "JSON output only");
  app.add_flag("--text", o.text_only, "text output only");

  std::string file1, file2, range = "0..4", of_path, coeff = "trivial", module_path;
  int r_exp = 1, p_flag = 0;
  std::vector<std::string> extras;

  CLI::App* validate = app.add_subcommand("validate", "validate a JSON document");
  validate->add_option("file", file1)->required();
  CLI::App* strip_cmd = app.add_subcommand("strip", "split off all free summands");
  strip_cmd->add_option("module", file1)->required();
  CLI::App* omega_cmd = app.add_subcommand("omega", "syzygy of a module");
  omega_cmd->add_option("module", file1)->required();
  omega_cmd->add_option("--r", r_exp, "syzygy exponent (may be negative)");
  CLI::App* isproj = app.add_subcommand("is-projective", "projectivity test");
  isproj->add_option("module", file1)->required();
  isproj->add_option("--p", p_flag, "prime (defaults to the field characteristic)");
  CLI::App* isendo = app.add_subcommand("is-endotrivial", "endotriviality test");
  isendo->add_option("module", file1)->required();
  isendo->add_option("--p", p_flag, "prime (defaults to the field characteristic)");
  CLI::App* iso = app.add_subcommand("stable-iso", "stable isomorphism test");
  iso->add_option("module1", file1)->required();
  iso->add_option("module2", file2)->required();
  CLI::App* tg = app.add_subcommand("tgroup", "group of endotrivial modules");
  tg->add_option("group", file1)->required();
  tg->add_option("--extra", extras, "extra generator module files");
  tg->add_option("--cap", o.cap_omega, "omega-order search cap");
  CLI::App* eh = app.add_subcommand("exthat", "Tate Ext-hat dimensions");
  eh->add_option("group", file1)->required();
  eh->add_option("--range", range, "degree range LO..HI");
  eh->add_option("--of", of_path, "module whose class is resolved (default: k)");
  eh->add_option("--coefficients", coeff, "trivial | regular | module file");
  CLI::App* am = app.add_subcommand("amalgam", "T(G) for an amalgamated free product");
  am->add_option("spec", file1)->required();
  CLI::App* hn = app.add_subcommand("hnn", "T(G) for an HNN extension");
  hn->add_option("spec", file1)->required();
  CLI::App* comp = app.add_subcommand("components", "p-subgroup poset components");
  comp->add_option("spec", file1)->required();
  CLI::App* infl = app.add_subcommand("inflate", "inflation along a quotient map");
  infl->add_option("spec", file1)->required();
  infl->add_option("--module", module_path, "inflate a single module instead of the map");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(o, file1);
    if (strip_cmd->parsed()) return cmd_strip(o, file1);
    if (omega_cmd->parsed()) return cmd_omega(o, file1, r_exp);
    if (isproj->parsed()) return cmd_is_projective(o, file1, p_flag);
    if (isendo->parsed()) return cmd_is_endotrivial(o, file1, p_flag);
    if (iso->parsed()) return cmd_stable_iso(o, file1, file2);
    if (tg->parsed()) return cmd_tgroup(o, file1, extras);
    if (eh->parsed()) return cmd_exthat(o, file1, range, of_path, coeff);
    if (am->parsed()) return cmd_amalgam(o, file1);
    if (hn->parsed()) return cmd_hnn(o, file1);
    if (comp->parsed()) return cmd_components(o, file1);
    if (infl->parsed()) return cmd_inflate(o, file1, module_path);
  } catch (const ValidationError& e) {
    Json err;
    err["error"] = Json{{"kind", "validation"}, {"reason", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json err;
    err["error"] = Json{{"kind", "internal"}, {"reason", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 0;
}
