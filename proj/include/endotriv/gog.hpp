#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "endotriv/tgroup.hpp"

namespace endo {

// One-edge graphs of finite groups: an amalgamated free product A *_C B ...
struct AmalgamSpec {
  std::string name;
  Group a, b, c;
  GroupHom embed_a;  // C -> A
  GroupHom embed_b;  // C -> B
  Field field;
  int p = 0;
};

// ... or an HNN extension H *_(f, A) = <H, t | t a t^-1 = f(a)>.
struct HnnSpec {
  std::string name;
  Group h, a;
  GroupHom incl;  // A -> H
  GroupHom f;     // A -> H
  Field field;
  int p = 0;
};

void validate_spec(const AmalgamSpec& spec);
void validate_spec(const HnnSpec& spec);

// Module over the fundamental group, stored by its finite gluing data: the
// vertex modules plus phi (amalgam) or the stable-letter matrix theta (HNN).
struct GogModule {
  bool hnn = false;
  ModuleRep m;                 // over A, or over H for HNN
  std::optional<ModuleRep> n;  // over B (amalgam only)
  Mat glue;                    // phi : M|C -> N|C, or theta
};

// Validates the gluing equations and builds the module.
GogModule c_module(const AmalgamSpec& spec, const ModuleRep& m, const ModuleRep& n,
                   const Mat& phi);
GogModule e_module(const HnnSpec& spec, const ModuleRep& m, const Mat& theta);

ModuleRep gog_restrict_a(const GogModule& x);
// The phi-twisted action of B on the underlying space of M.
ModuleRep gog_restrict_b(const AmalgamSpec& spec, const GogModule& x);
ModuleRep gog_restrict_h(const GogModule& x);

GogModule gog_tensor(const AmalgamSpec& spec, const GogModule& x, const GogModule& y);
GogModule gog_tensor(const HnnSpec& spec, const GogModule& x, const GogModule& y);

bool is_endotrivial_gog(const AmalgamSpec& spec, const GogModule& x);
bool is_endotrivial_gog(const HnnSpec& spec, const GogModule& x);

// Finite-scale version of the free-padding trick: pads M and N with free
// vertex modules until the given stable isomorphism of the stripped
// C-restrictions extends to a genuine one.
GogModule align_representatives(const AmalgamSpec& spec, const ModuleRep& m,
                                const ModuleRep& n, const Mat& phi_stable);

struct ExtensionData {
  FgAbGroup sub;
  FgAbGroup quotient;
  std::optional<FgAbGroup> resolved;
  std::optional<std::string> split_reason;
};

// Per-node oracle values for vertex groups the engine cannot compute itself.
struct GogOracles {
  std::optional<FgAbGroup> t_vertex_a;  // T(A), or T(H) for HNN
  std::optional<FgAbGroup> t_vertex_b;  // T(B)
  std::optional<FgAbGroup> t_edge;      // T(C), or T(A) for HNN
  std::optional<ZMat> res_a;            // T(vertex) -> T(edge) matrices
  std::optional<ZMat> res_b;
};

// Fully oracle-driven assembly, for graphs whose vertex groups are
// themselves infinite (iterated constructions): the user supplies every T
// and Aut-hat value with its restriction maps; the engine contributes the
// exact-sequence bookkeeping.
struct OracleAmalgam {
  std::string name;
  Field field;
  int p = 0;
  FgAbGroup t_a, t_b, t_c;
  ZMat res_a, res_b;  // T(A) -> T(C), T(B) -> T(C)
};

struct OracleHnn {
  std::string name;
  Field field;
  int p = 0;
  FgAbGroup t_vertex;  // T(H)
  FgAbGroup t_edge;    // T(A)
  ZMat res_incl, res_f;
  FgAbGroup aut_edge;                  // Aut-hat_A(k)
  std::optional<FgAbGroup> aut_vertex; // with the map below when non-zero
  std::optional<ZMat> aut_map;         // Aut-hat_H -> Aut-hat_A
  bool split_by_inflation = false;     // user asserts G = (base) x Z
};



struct GogTResult {
  std::optional<FgAbGroup> value;          // T(G) when determined
  std::optional<ExtensionData> extension;  // HNN extension report
  std::vector<std::string> derivation;
  bool exactness_audit = false;

  // Node data when computed in-engine (absent under oracles).
  std::optional<TGroupReport> node_a, node_b, node_edge;
  FgAbGroup value_a, value_b, value_edge;  // the values actually used
  ZMat res_a, res_b;
  std::optional<PullbackResult> pb;
};

GogTResult t_amalgam(const AmalgamSpec& spec, const GogOracles& oracles = {},
                     const Caps& caps = {});
GogTResult t_hnn(const HnnSpec& spec, const GogOracles& oracles = {},
                 const Caps& caps = {});

// Requires a finite edge group (delta = 0 holds for any vertex groups since
// scalars always restrict onto scalars).
GogTResult t_amalgam_oracle(const OracleAmalgam& o);
GogTResult t_hnn_oracle(const OracleHnn& o);

struct ComponentReport {
  struct Node {
    int vertex = 0;  // 0 = A (or H), 1 = B
    int order = 0;
  };
  std::vector<Node> nodes;                  // one per vertex-wise conjugacy class
  std::vector<std::vector<int>> components; // node indices grouped
  int count = 0;
};

ComponentReport components_amalgam(const AmalgamSpec& spec);
ComponentReport components_hnn(const HnnSpec& spec);

// Inflation along a quotient map G -> Q given vertex-wise.
struct InflationData {
  Group quotient;
  GroupHom map_a;              // A -> Q (or H -> Q)
  std::optional<GroupHom> map_b;
  std::optional<int> t_image;  // element of Q the stable letter maps to (HNN)
};

void validate_inflation(const AmalgamSpec& spec, const InflationData& data);
void validate_inflation(const HnnSpec& spec, const InflationData& data);

GogModule inflate(const AmalgamSpec& spec, const InflationData& data, const ModuleRep& m);
GogModule inflate(const HnnSpec& spec, const InflationData& data, const ModuleRep& m);

struct InflationMapResult {
  TGroupReport t_quotient;
  GogTResult t_g;
  FgAbHom map;  // T(Q) -> T(G)
  SubgroupPresentation kernel;
  std::vector<std::string> derivation;
};

// The induced map T(Q) -> T(G) on every generator of T(Q).
InflationMapResult inflation_map(const AmalgamSpec& spec, const InflationData& data,
                                 const std::vector<ModuleRep>& extras = {},
                                 const Caps& caps = {});

}  // namespace endo
