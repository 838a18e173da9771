#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "endotriv/modrep.hpp"

namespace endo {

// Representative with no free summands over its p-group.
struct StableClass {
  ModuleRep rep;
  int dim() const { return rep.dim(); }
};

// Matrix of the norm element (sum over all group elements) acting on m.
Mat norm_matrix(const ModuleRep& m);
// Rank of the norm matrix; equals the number of free rank-1 summands when
// the group is a p-group in characteristic p.
int norm_rank(const ModuleRep& m);

struct StripResult {
  StableClass cls;
  int free_rank = 0;
  // Split witness: to_parts maps m to (free^free_rank, stripped) coordinates,
  // from_parts is its inverse. The free block carries the standard
  // kP^free_rank action, basis ordered (copy, group element).
  Mat to_parts;
  Mat from_parts;
};

// Splits all free summands off a module over a p-group: vectors not killed
// by the norm generate free rank-1 summands, peeled in norm-rank batches
// until none remain.
StripResult strip(const ModuleRep& m);

// Projective over kG iff free over a Sylow p-subgroup.
bool is_projective(const ModuleRep& m, int p);

// Minimal free cover of a module over a p-group (m should carry no free
// summands for minimality of the iterated construction).
struct CoverResult {
  int rank = 0;
  Mat generators;  // dim(m) x rank, lifted basis of m / (rad m)
  Mat map;         // dim(m) x (rank * |P|), column (i, g) = g * v_i
};
CoverResult minimal_cover(const ModuleRep& m);

// Syzygy operator over a p-group: r > 0 iterates kernels of minimal free
// covers, r < 0 the dual construction, r = 0 strips.
StableClass omega(const ModuleRep& m, int r, int dim_cap = 4096);

enum class IsoVerdict { Iso, NotIso, Undetermined };

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::Undetermined;
  std::optional<Mat> iso;
  int hom_dim = 0;
  bool exhaustive = false;
};

// Stable isomorphism test between stripped representatives. Exhaustive over
// hom-space coefficient tuples while q^dim(Hom) <= 2^16, after that up to
// `random_cap` seeded random combinations; Undetermined only on exhaustion
// of the random phase.
IsoResult stable_iso(const StableClass& m, const StableClass& n, uint64_t seed = 0,
                     int random_cap = 10000);

// Endotriviality for modules over finite groups, detected on conjugacy class
// representatives of elementary abelian p-subgroups.
bool is_endotrivial(const ModuleRep& m, int p);

// Doubly infinite acyclic complex of free modules around a stripped module
// over a p-group, spliced at coincidence degree 0 from the minimal free
// resolution and the dual of the minimal free resolution of the dual.
struct CompleteResolution {
  ModuleRep module;
  int lo = 0, hi = 0;   // materialized degrees lo..hi
  std::vector<int> ranks;       // ranks[i - lo] = free rank of Q_i
  std::vector<Mat> boundaries;  // boundaries[i - lo - 1] = d_i : Q_i -> Q_{i-1}
  int rank_at(int i) const { return ranks[i - lo]; }
  const Mat& boundary(int i) const { return boundaries[i - lo - 1]; }
};

CompleteResolution complete_resolution(const StableClass& m, int lo, int hi,
                                       int dim_cap = 4096);

struct ExtHatResult {
  int dim = 0;
  Mat cocycles;  // kernel basis of the outgoing differential, coordinates in N^{rank_i}
};

// Tate Ext-hat^i(M, N) from a materialized window covering [i-1, i+1].
ExtHatResult ext_hat(const CompleteResolution& res, const ModuleRep& n, int i);
// Convenience: builds the window internally.
ExtHatResult ext_hat(const StableClass& m, const ModuleRep& n, int i, int dim_cap = 4096);

}  // namespace endo
