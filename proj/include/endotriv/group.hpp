#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "endotriv/gf.hpp"

namespace endo {

// Permutation of {0, ..., degree-1}, stored as the image vector.
using Perm = std::vector<int>;
// Word in group generators: token t >= 0 is generator t, token t < 0 is the
// inverse of generator (-1 - t).
using Word = std::vector<int>;

Perm perm_compose(const Perm& g, const Perm& h);  // (g*h)(x) = g(h(x))
Perm perm_inverse(const Perm& g);
Perm perm_identity(int degree);

// Finite group with a full element enumeration. Elements are indexed by BFS
// discovery order from the identity (index 0); every element carries its
// shortest-lexicographic word in the generators and their inverses.
class FiniteGroup {
 public:
  // `degree` is only consulted when there are no generators (the trivial
  // group still needs a permutation degree to live alongside others).
  static std::shared_ptr<const FiniteGroup> enumerate(
      std::vector<Perm> generators, std::vector<std::string> labels,
      std::string name = "", int cap = 20000, int degree = 1);

  int degree() const { return degree_; }
  int order() const { return static_cast<int>(elements_.size()); }
  int num_generators() const { return static_cast<int>(generators_.size()); }
  const Perm& generator(int i) const { return generators_[i]; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& name() const { return name_; }

  const Perm& element(int i) const { return elements_[i]; }
  const Word& word(int i) const { return words_[i]; }
  int generator_element(int i) const { return gen_elements_[i]; }

  int mult(int a, int b) const;
  int inverse(int a) const { return inverses_[a]; }
  int element_order(int a) const;
  // -1 when the permutation is not an element.
  int index_of(const Perm& p) const;
  int evaluate_word(const Word& w) const;
  std::string word_string(int elem) const;
  std::optional<Word> parse_word(const std::string& text) const;

  bool same(const FiniteGroup& o) const;
  bool is_abelian() const;

 private:
  FiniteGroup() = default;
  int degree_ = 0;
  std::string name_;
  std::vector<Perm> generators_;
  std::vector<std::string> labels_;
  std::vector<int> gen_elements_;
  std::vector<Perm> elements_;
  std::vector<Word> words_;
  std::vector<int> inverses_;
  std::unordered_map<std::string, int> index_;
  static std::string key_of(const Perm& p);
};

using Group = std::shared_ptr<const FiniteGroup>;

// Subgroup given by its sorted element indices in the parent, with a chosen
// generating set; carries a standalone enumeration of itself.
class Subgroup {
 public:
  static Subgroup from_elements(Group parent, std::vector<int> elements);
  static Subgroup generated_by(Group parent, const std::vector<int>& gen_elems);
  static Subgroup trivial(Group parent);

  const Group& parent() const { return parent_; }
  const std::vector<int>& elements() const { return elements_; }
  const std::vector<int>& generator_elements() const { return gen_elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  bool contains(int parent_elem) const;

  // The subgroup as a group in its own right (same permutation degree).
  const Group& group() const { return group_; }
  // Parent element index of a group() element index.
  int to_parent(int sub_elem) const { return to_parent_[sub_elem]; }
  // group() element index of a parent element index, -1 if absent.
  int from_parent(int parent_elem) const;

 private:
  Group parent_;
  std::vector<int> elements_;
  std::vector<int> gen_elements_;
  Group group_;
  std::vector<int> to_parent_;
};

// Homomorphism between enumerated groups, given by generator images.
struct GroupHom {
  Group source;
  Group target;
  std::vector<int> images;  // target element index per source generator

  int apply(int source_elem) const;
};

using Embedding = GroupHom;

struct HomCheck {
  bool ok = true;
  std::string reason;
};

// Multiplicativity on all pairs of source elements, via stored words.
HomCheck validate_hom(const GroupHom& h);
// validate_hom plus injectivity.
HomCheck validate_embedding(const GroupHom& h);

GroupHom inclusion_hom(const Subgroup& h);

int p_part(int n, int p);
bool is_p_group(const FiniteGroup& g, int p);

// A subgroup of order the p-part of |G|, grown by adjoining normalizing
// p-elements. The trivial subgroup when p does not divide |G|.
Subgroup sylow_p(Group g, int p);

// One representative per conjugacy class of non-trivial elementary abelian
// p-subgroups, sorted by (order, minimal element tuple).
std::vector<Subgroup> elementary_abelian_reps(Group g, int p);

// All non-trivial elementary abelian p-subgroups (test support).
std::vector<Subgroup> all_elementary_abelian(Group g, int p);

// All non-trivial p-subgroups.
std::vector<Subgroup> all_p_subgroups(Group g, int p);

// g with g*h1*g^-1 = h2, or nullopt.
std::optional<int> conjugacy_of_subgroups(const FiniteGroup& g, const Subgroup& h1,
                                          const Subgroup& h2);

// Partition of `subs` into conjugacy classes; returns indices into `subs`.
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g,
                                                const std::vector<Subgroup>& subs);

}  // namespace endo
