#include "endotriv/group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace endo {

Perm perm_compose(const Perm& g, const Perm& h) {
  Perm r(g.size());
  for (size_t x = 0; x < h.size(); ++x) r[x] = g[h[x]];
  return r;
}

Perm perm_inverse(const Perm& g) {
  Perm r(g.size());
  for (size_t x = 0; x < g.size(); ++x) r[g[x]] = static_cast<int>(x);
  return r;
}

Perm perm_identity(int degree) {
  Perm r(degree);
  for (int x = 0; x < degree; ++x) r[x] = x;
  return r;
}

std::string FiniteGroup::key_of(const Perm& p) {
  std::string k;
  k.reserve(p.size() * 2);
  for (int x : p) {
    k.push_back(static_cast<char>(x & 0xff));
    k.push_back(static_cast<char>((x >> 8) & 0xff));
  }
  return k;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::enumerate(
    std::vector<Perm> generators, std::vector<std::string> labels,
    std::string name, int cap, int degree_hint) {
  if (generators.size() != labels.size())
    throw ValidationError("generator/label count mismatch");
  int degree = generators.empty() ? degree_hint : static_cast<int>(generators[0].size());
  if (degree < 1) throw ValidationError("permutation degree must be >= 1");
  for (const Perm& g : generators) {
    if (static_cast<int>(g.size()) != degree)
      throw ValidationError("generators have unequal degrees");
    std::vector<bool> seen(degree, false);
    for (int x : g) {
      if (x < 0 || x >= degree || seen[x])
        throw ValidationError("generator is not a bijection");
      seen[x] = true;
    }
  }
  {
    std::set<std::string> label_set(labels.begin(), labels.end());
    if (label_set.size() != labels.size())
      throw ValidationError("generator labels must be distinct");
  }

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->degree_ = degree;
  g->name_ = std::move(name);
  g->generators_ = std::move(generators);
  g->labels_ = std::move(labels);

  // Edge alphabet: gen 0, gen 0 inverse, gen 1, ... BFS with this expansion
  // order yields shortest-lexicographic words.
  std::vector<std::pair<int, Perm>> edges;
  for (int i = 0; i < g->num_generators(); ++i) {
    edges.emplace_back(i, g->generators_[i]);
    edges.emplace_back(-1 - i, perm_inverse(g->generators_[i]));
  }

  g->elements_.push_back(perm_identity(degree));
  g->words_.push_back({});
  g->index_[key_of(g->elements_[0])] = 0;
  for (size_t head = 0; head < g->elements_.size(); ++head) {
    Perm cur = g->elements_[head];  // copy: elements_ may reallocate
    for (const auto& [tok, perm] : edges) {
      Perm next = perm_compose(cur, perm);  // right multiplication
      std::string k = key_of(next);
      if (g->index_.count(k)) continue;
      if (static_cast<int>(g->elements_.size()) >= cap)
        throw ValidationError("group enumeration exceeded cap " + std::to_string(cap));
      g->index_[k] = static_cast<int>(g->elements_.size());
      g->elements_.push_back(std::move(next));
      Word w = g->words_[head];
      w.push_back(tok);
      g->words_.push_back(std::move(w));
    }
  }

  g->inverses_.resize(g->order());
  for (int i = 0; i < g->order(); ++i)
    g->inverses_[i] = g->index_.at(key_of(perm_inverse(g->elements_[i])));
  g->gen_elements_.resize(g->num_generators());
  for (int i = 0; i < g->num_generators(); ++i)
    g->gen_elements_[i] = g->index_.at(key_of(g->generators_[i]));
  return g;
}

int FiniteGroup::mult(int a, int b) const {
  return index_.at(key_of(perm_compose(elements_[a], elements_[b])));
}

int FiniteGroup::element_order(int a) const {
  int n = 1, x = a;
  while (x != 0) {
    x = mult(x, a);
    ++n;
  }
  return n;
}

int FiniteGroup::index_of(const Perm& p) const {
  auto it = index_.find(key_of(p));
  return it == index_.end() ? -1 : it->second;
}

int FiniteGroup::evaluate_word(const Word& w) const {
  int x = 0;
  for (int tok : w) {
    int gi = tok >= 0 ? tok : -1 - tok;
    int e = gen_elements_[gi];
    if (tok < 0) e = inverses_[e];
    x = mult(x, e);
  }
  return x;
}

std::string FiniteGroup::word_string(int elem) const {
  const Word& w = words_[elem];
  std::ostringstream out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out << ' ';
    int tok = w[i];
    if (tok >= 0)
      out << labels_[tok];
    else
      out << labels_[-1 - tok] << '\'';
  }
  return out.str();
}

std::optional<Word> FiniteGroup::parse_word(const std::string& text) const {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    bool inv = false;
    if (!tok.empty() && tok.back() == '\'') {
      inv = true;
      tok.pop_back();
    }
    int gi = -1;
    for (int i = 0; i < num_generators(); ++i)
      if (labels_[i] == tok) {
        gi = i;
        break;
      }
    if (gi < 0) return std::nullopt;
    w.push_back(inv ? -1 - gi : gi);
  }
  return w;
}

bool FiniteGroup::same(const FiniteGroup& o) const {
  return degree_ == o.degree_ && generators_ == o.generators_ && labels_ == o.labels_;
}

bool FiniteGroup::is_abelian() const {
  for (int i = 0; i < num_generators(); ++i)
    for (int j = i + 1; j < num_generators(); ++j) {
      int a = gen_elements_[i], b = gen_elements_[j];
      if (mult(a, b) != mult(b, a)) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> closure_of(const FiniteGroup& g, std::vector<int> seed) {
  std::set<int> elems = {0};
  std::deque<int> queue = {0};
  std::sort(seed.begin(), seed.end());
  for (int s : seed)
    if (!elems.count(s)) {
      elems.insert(s);
      queue.push_back(s);
    }
  std::vector<int> gens = seed;
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int s : gens) {
      int y = g.mult(x, s);
      if (!elems.count(y)) {
        elems.insert(y);
        queue.push_back(y);
      }
      int z = g.mult(x, g.inverse(s));
      if (!elems.count(z)) {
        elems.insert(z);
        queue.push_back(z);
      }
    }
  }
  return std::vector<int>(elems.begin(), elems.end());
}

}  // namespace

Subgroup Subgroup::from_elements(Group parent, std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::set<int> eset(elements.begin(), elements.end());
  if (!eset.count(0)) throw ValidationError("subgroup must contain the identity");
  for (int a : elements) {
    if (!eset.count(parent->inverse(a)))
      throw ValidationError("subgroup not closed under inverse");
    for (int b : elements)
      if (!eset.count(parent->mult(a, b)))
        throw ValidationError("subgroup not closed under multiplication");
  }

  Subgroup s;
  s.parent_ = parent;
  s.elements_ = elements;
  // Greedy generating set, elements in index order.
  std::set<int> have = {0};
  for (int a : elements) {
    if (have.count(a)) continue;
    s.gen_elements_.push_back(a);
    auto c = closure_of(*parent, s.gen_elements_);
    have = std::set<int>(c.begin(), c.end());
    if (have.size() == elements.size()) break;
  }

  std::vector<Perm> gens;
  std::vector<std::string> labels;
  for (size_t i = 0; i < s.gen_elements_.size(); ++i) {
    gens.push_back(parent->element(s.gen_elements_[i]));
    labels.push_back("s" + std::to_string(i));
  }
  s.group_ = FiniteGroup::enumerate(gens, labels, "", parent->order() + 1,
                                    parent->degree());
  s.to_parent_.resize(s.group_->order());
  for (int i = 0; i < s.group_->order(); ++i) {
    int pe = parent->index_of(s.group_->element(i));
    if (pe < 0) throw ValidationError("subgroup enumeration escaped the parent");
    s.to_parent_[i] = pe;
  }
  if (s.group_->order() != s.order())
    throw ValidationError("chosen generators do not generate the subgroup");
  return s;
}

Subgroup Subgroup::generated_by(Group parent, const std::vector<int>& gen_elems) {
  return from_elements(parent, closure_of(*parent, gen_elems));
}

Subgroup Subgroup::trivial(Group parent) { return from_elements(parent, {0}); }

bool Subgroup::contains(int parent_elem) const {
  return std::binary_search(elements_.begin(), elements_.end(), parent_elem);
}

int Subgroup::from_parent(int parent_elem) const {
  return group_->index_of(parent_->element(parent_elem));
}

int GroupHom::apply(int source_elem) const {
  const Word& w = source->word(source_elem);
  int x = 0;
  for (int tok : w) {
    int gi = tok >= 0 ? tok : -1 - tok;
    int e = images[gi];
    if (tok < 0) e = target->inverse(e);
    x = target->mult(x, e);
  }
  return x;
}

HomCheck validate_hom(const GroupHom& h) {
  if (static_cast<int>(h.images.size()) != h.source->num_generators())
    return {false, "image count does not match source generator count"};
  for (int e : h.images)
    if (e < 0 || e >= h.target->order()) return {false, "image index out of range"};
  int n = h.source->order();
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = h.apply(i);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (h.target->mult(img[a], img[b]) != img[h.source->mult(a, b)])
        return {false, "NotHomomorphism at pair (" + h.source->word_string(a) + ", " +
                           h.source->word_string(b) + ")"};
  return {true, ""};
}

HomCheck validate_embedding(const GroupHom& h) {
  HomCheck c = validate_hom(h);
  if (!c.ok) return c;
  std::set<int> img;
  for (int i = 0; i < h.source->order(); ++i) img.insert(h.apply(i));
  if (static_cast<int>(img.size()) != h.source->order()) return {false, "NotInjective"};
  return {true, ""};
}

GroupHom inclusion_hom(const Subgroup& h) {
  GroupHom e;
  e.source = h.group();
  e.target = h.parent();
  e.images = h.generator_elements();
  return e;
}

int p_part(int n, int p) {
  int r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

bool is_p_group(const FiniteGroup& g, int p) {
  int n = g.order();
  return p_part(n, p) == n;
}

Subgroup sylow_p(Group g, int p) {
  int target = p_part(g->order(), p);
  std::vector<int> cur = {0};
  while (static_cast<int>(cur.size()) < target) {
    std::set<int> cset(cur.begin(), cur.end());
    std::vector<int> normalizer;
    for (int x = 0; x < g->order(); ++x) {
      bool norm = true;
      for (int a : cur)
        if (!cset.count(g->mult(g->mult(x, a), g->inverse(x)))) {
          norm = false;
          break;
        }
      if (norm) normalizer.push_back(x);
    }
    int pick = -1;
    for (int x : normalizer) {
      if (cset.count(x)) continue;
      int ord = g->element_order(x);
      if (p_part(ord, p) == ord) {
        pick = x;
        break;
      }
    }
    if (pick < 0) throw ValidationError("sylow search stalled");
    std::vector<int> seed = cur;
    seed.push_back(pick);
    cur = closure_of(*g, seed);
  }
  return Subgroup::from_elements(g, cur);
}

namespace {

// Grow p-subgroups layer by layer starting from the cyclic ones; when
// `elementary` every adjoined element must have order p and centralize the
// layer, otherwise it must normalize it with p-th power falling inside.
std::vector<std::vector<int>> grow_p_subgroups(const FiniteGroup& g, int p,
                                               bool elementary) {
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> layer;
  for (int x = 1; x < g.order(); ++x)
    if (g.element_order(x) == p) {
      auto c = closure_of(g, {x});
      if (seen.insert(c).second) layer.push_back(c);
    }
  std::vector<std::vector<int>> all = layer;
  while (!layer.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& s : layer) {
      std::set<int> sset(s.begin(), s.end());
      for (int x = 1; x < g.order(); ++x) {
        if (sset.count(x)) continue;
        int ord = g.element_order(x);
        if (elementary) {
          if (ord != p) continue;
          bool central = true;
          for (int a : s)
            if (g.mult(a, x) != g.mult(x, a)) {
              central = false;
              break;
            }
          if (!central) continue;
        } else {
          if (p_part(ord, p) != ord) continue;
          bool norm = true;
          for (int a : s)
            if (!sset.count(g.mult(g.mult(x, a), g.inverse(x)))) {
              norm = false;
              break;
            }
          if (!norm) continue;
          int xp = x;
          for (int i = 1; i < p; ++i) xp = g.mult(xp, x);
          if (!sset.count(xp)) continue;
        }
        std::vector<int> seed = s;
        seed.push_back(x);
        auto c = closure_of(g, seed);
        if (c.size() == s.size() * p && seen.insert(c).second) next.push_back(c);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return all;
}

}  // namespace

std::vector<Subgroup> all_elementary_abelian(Group g, int p) {
  std::vector<Subgroup> out;
  for (auto& s : grow_p_subgroups(*g, p, true))
    out.push_back(Subgroup::from_elements(g, std::move(s)));
  return out;
}

std::vector<Subgroup> all_p_subgroups(Group g, int p) {
  std::vector<Subgroup> out;
  for (auto& s : grow_p_subgroups(*g, p, false))
    out.push_back(Subgroup::from_elements(g, std::move(s)));
  return out;
}

std::optional<int> conjugacy_of_subgroups(const FiniteGroup& g, const Subgroup& h1,
                                          const Subgroup& h2) {
  if (h1.order() != h2.order()) return std::nullopt;
  std::set<int> target(h2.elements().begin(), h2.elements().end());
  for (int x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (int a : h1.elements())
      if (!target.count(g.mult(g.mult(x, a), g.inverse(x)))) {
        ok = false;
        break;
      }
    if (ok) return x;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g,
                                                const std::vector<Subgroup>& subs) {
  std::vector<std::vector<int>> classes;
  std::vector<bool> used(subs.size(), false);
  for (size_t i = 0; i < subs.size(); ++i) {
    if (used[i]) continue;
    std::vector<int> cls = {static_cast<int>(i)};
    used[i] = true;
    for (size_t j = i + 1; j < subs.size(); ++j) {
      if (used[j]) continue;
      if (conjugacy_of_subgroups(g, subs[i], subs[j])) {
        cls.push_back(static_cast<int>(j));
        used[j] = true;
      }
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<Subgroup> elementary_abelian_reps(Group g, int p) {
  auto all = all_elementary_abelian(g, p);
  auto classes = conjugacy_classes(*g, all);
  std::vector<Subgroup> reps;
  for (const auto& cls : classes) {
    int best = cls[0];
    for (int i : cls)
      if (all[i].elements() < all[best].elements()) best = i;
    reps.push_back(all[best]);
  }
  std::sort(reps.begin(), reps.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return reps;
}

}  // namespace endo
