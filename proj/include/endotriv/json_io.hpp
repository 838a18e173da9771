#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <variant>

#include "endotriv/gog.hpp"

namespace endo {

using Json = nlohmann::ordered_json;

// ---- wire formats ----------------------------------------------------------
Json field_to_json(const Field& f);
Field field_from_json(const Json& j);

Json group_to_json(const Group& g);
Group group_from_json(const Json& j);

// Field elements serialize as coefficient vectors [c0, ..., c_{e-1}],
// matrices as row-major nested arrays of those.
Json mat_to_json(const Mat& m);
Mat mat_from_json(const Json& j, const Field& f);

Json module_to_json(const ModuleRep& m, const std::string& name = "");
// Eagerly validated (invertibility + Cayley consistency).
ModuleRep module_from_json(const Json& j);

// Homomorphisms as {"source_label": "word in target labels"}.
Json hom_to_json(const GroupHom& h);
GroupHom hom_from_json(const Json& j, const Group& source, const Group& target);

Json fgab_to_json(const FgAbGroup& g);
FgAbGroup fgab_from_json(const Json& j);
Json zmat_to_json(const ZMat& m);
ZMat zmat_from_json(const Json& j);

using FieldOverride = std::optional<std::pair<int, int>>;

AmalgamSpec amalgam_from_json(const Json& j, const FieldOverride& field = {});
Json amalgam_to_json(const AmalgamSpec& s);
HnnSpec hnn_from_json(const Json& j, const FieldOverride& field = {});
Json hnn_to_json(const HnnSpec& s);
GogOracles oracles_from_json(const Json& j, bool hnn);
// Full-oracle specs carry no group objects, only a complete "oracles" block.
bool is_oracle_only(const Json& j, bool hnn);
OracleAmalgam oracle_amalgam_from_json(const Json& j, const FieldOverride& field = {});
OracleHnn oracle_hnn_from_json(const Json& j, const FieldOverride& field = {});

struct InflateFile {
  std::string name;
  std::variant<AmalgamSpec, HnnSpec> spec;
  InflationData data;
  std::vector<ModuleRep> extras;
};
InflateFile inflate_from_json(const Json& j, const FieldOverride& field = {});

// ---- reports ---------------------------------------------------------------
Json canonical_json(const FgAbGroup& g);
Json tgroup_report_json(const TGroupReport& r);
Json gog_result_json(const GogTResult& r);
Json components_json(const ComponentReport& r);
Json inflation_map_json(const InflationMapResult& r);
Json strip_report_json(const ModuleRep& input, const StripResult& s);
Json iso_report_json(const IsoResult& r);

// Human-readable rendering of a report produced above; every number it
// prints is also present in the JSON.
std::string render_text(const Json& report);

}  // namespace endo
