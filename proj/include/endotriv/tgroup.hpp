#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endotriv/fgab.hpp"
#include "endotriv/stable.hpp"

namespace endo {

struct Caps {
  int omega_cap = 12;
  int iso_search_cap = 10000;
  int dim_cap = 4096;
  int extra_exp = 2;       // exponent box for extra generators
  int free_coord_box = 2;  // coordinate box for free directions in searches
  uint64_t seed = 0;
};

// Supported shapes: a p-group, or P x F with F a p'-complement centralizing
// the Sylow subgroup P (this includes p'-groups, with P trivial).
struct GroupShape {
  Group group;
  int p = 0;
  Subgroup sylow;
  std::optional<Subgroup> complement;  // present for genuine product shape
  bool is_p_group() const { return !complement.has_value(); }
};

std::optional<GroupShape> detect_shape(const Group& g, int p);

struct OmegaOrderResult {
  std::optional<int> order;  // nullopt = NoRelationUpTo(cap)
  int cap = 0;
  std::vector<int> dims;  // minimal syzygy dimensions for n = 1, 2, ...
};

// Smallest n in [1, cap] with the n-th minimal syzygy of k one-dimensional.
// `g` must be a p-group with p dividing its order.
OmegaOrderResult omega_order(const Group& g, const Field& f, int cap = 12,
                             int dim_cap = 4096);

struct EvidenceEntry {
  std::string check;
  std::string result;  // "Iso" / "NotIso" / "Undetermined"
};

enum class Completeness { Verified, ComputedSubgroup };

struct TGenerator {
  enum Kind { OmegaK, Character, Extra };
  std::string label;
  Kind kind;
  ModuleRep rep;  // representative over the full group
};

struct TGroupReport {
  Group group;
  Field field;
  GroupShape shape;
  std::vector<TGenerator> generators;
  FgAbGroup value;
  Completeness completeness = Completeness::ComputedSubgroup;
  std::vector<EvidenceEntry> evidence;
  std::optional<OmegaOrderResult> omega_ord;
};

// Assembles T(G) for a supported group: the omega class, the 1-dimensional
// characters, and user-supplied extra generators (each checked endotrivial),
// with relations found by the stable-triviality box search.
TGroupReport t_group(const Group& g, const Field& f,
                     const std::vector<ModuleRep>& extras = {}, const Caps& caps = {});

// Is [w] = [k] in T(G)? Restriction to the Sylow subgroup must strip to
// dimension 1; for product shape the complement must also act trivially on
// H-hat^0(P; w).
bool is_stably_trivial(const ModuleRep& w, const GroupShape& shape);

// Syzygy of the trivial module over an arbitrary finite group, via greedy
// (not necessarily minimal) free covers; the class is the point, not the
// representative's size.
ModuleRep syzygy_of_k(const Group& g, const Field& f, int r, int dim_cap = 4096);

// Representative module of a coordinate tuple in the report's generators.
ModuleRep class_representative(const TGroupReport& rep, const std::vector<long long>& coords,
                               const Caps& caps = {});

// Coordinates of [m] in the target report's generator box; nullopt when the
// box is exhausted without a match.
std::optional<std::vector<long long>> express_class(const ModuleRep& m,
                                                    const TGroupReport& target,
                                                    const Caps& caps = {});

// Restriction map T(source) -> T(target) along an embedding of target.group
// into source.group. Throws when a generator image cannot be expressed.
FgAbHom t_restriction(const TGroupReport& source, const GroupHom& embedding,
                      const TGroupReport& target, const Caps& caps = {});

}  // namespace endo
