#pragma once

#include <memory>
#include <string>
#include <vector>

#include "endotriv/gf.hpp"
#include "endotriv/group.hpp"

namespace endo {

// A kG-module given by one invertible matrix per group generator, acting on
// column vectors.
class ModuleRep {
 public:
  ModuleRep() = default;

  // Functor outputs are valid by construction and skip the Cayley check.
  static ModuleRep make_unchecked(Group g, Field f, int dim, std::vector<Mat> action);
  // Eager validation for user input: invertibility per generator plus Cayley
  // consistency of the matrices propagated over the BFS tree.
  static ModuleRep make_validated(Group g, Field f, int dim, std::vector<Mat> action);

  const Group& group() const { return group_; }
  const Field& field() const { return field_; }
  int dim() const { return dim_; }
  const Mat& action(int gen) const { return action_[gen]; }
  const std::vector<Mat>& actions() const { return action_; }

  Mat act_word(const Word& w) const;
  Mat act_element(int elem) const { return act_word(group_->word(elem)); }
  // Matrices for every group element, in element order.
  std::vector<Mat> element_matrices() const;

  bool same_context(const ModuleRep& o) const {
    return group_->same(*o.group_) && field_->same(*o.field_);
  }

 private:
  Group group_;
  Field field_;
  int dim_ = 0;
  std::vector<Mat> action_;
};

// Throws ValidationError naming the offending Cayley edge.
void validate_module(const ModuleRep& m);

ModuleRep trivial_module(const Group& g, const Field& f);
ModuleRep regular_module(const Group& g, const Field& f);
// Basis = left cosets gH, action by left multiplication.
ModuleRep permutation_module(const Group& g, const Subgroup& h, const Field& f);

ModuleRep restrict_to(const ModuleRep& m, const Subgroup& h);
// Restriction along an embedding of h.source into m's group.
ModuleRep restrict_along(const ModuleRep& m, const GroupHom& e);

// m is a module over h.group(); result is over h.parent(). Block-permutation
// action on the BFS-first coset transversal.
ModuleRep induce(const ModuleRep& m, const Subgroup& h);

ModuleRep dual_module(const ModuleRep& m);
ModuleRep tensor(const ModuleRep& a, const ModuleRep& b);
ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b);

struct HomSpace {
  std::vector<Mat> basis;  // each dim(target) x dim(source)
  int dim() const { return static_cast<int>(basis.size()); }
};

// Basis of Hom_kG(m, n) = {f : f m(g) = n(g) f for all g}, canonically
// ordered (row-reduced in flattened coordinates).
HomSpace hom_kG(const ModuleRep& m, const ModuleRep& n);

// Smallest action-closed subspace containing the given column vectors;
// basis columns returned in spin-discovery order, reduced.
Mat spin(const ModuleRep& m, const Mat& vectors);

struct SubmoduleResult {
  ModuleRep sub;
  Mat inclusion;  // dim(m) x dim(sub)
};
SubmoduleResult submodule_generated(const ModuleRep& m, const Mat& vectors);

struct QuotientResult {
  ModuleRep quot;
  Mat projection;  // dim(quot) x dim(m)
};
QuotientResult quotient(const ModuleRep& m, const Mat& sub_inclusion);

// Greedy module generating set (columns): standard basis vectors, in index
// order, each taken when outside the submodule generated so far.
Mat module_generators(const ModuleRep& m);

// All homomorphisms G -> F^x as 1-dimensional modules, deduplicated and
// sorted by scalar tuple.
std::vector<ModuleRep> one_dim_reps(const Group& g, const Field& f);

}  // namespace endo
