#include "endotriv/modrep.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace endo {

ModuleRep ModuleRep::make_unchecked(Group g, Field f, int dim, std::vector<Mat> action) {
  if (static_cast<int>(action.size()) != g->num_generators())
    throw ValidationError("one action matrix per generator required");
  if (dim < 0) throw ValidationError("module dimension must be non-negative");
  ModuleRep m;
  m.group_ = std::move(g);
  m.field_ = std::move(f);
  m.dim_ = dim;
  m.action_ = std::move(action);
  for (const Mat& a : m.action_) {
    if (a.rows() != m.dim_ || a.cols() != m.dim_)
      throw ValidationError("action matrices must be square of size dim");
    if (!a.field()->same(*m.field_))
      throw ValidationError("action matrix field mismatch");
  }
  return m;
}

ModuleRep ModuleRep::make_validated(Group g, Field f, int dim, std::vector<Mat> action) {
  ModuleRep m = make_unchecked(std::move(g), std::move(f), dim, std::move(action));
  validate_module(m);
  return m;
}

Mat ModuleRep::act_word(const Word& w) const {
  Mat r = Mat::identity(field_, dim_);
  for (int tok : w) {
    if (tok >= 0)
      r = r * action_[tok];
    else
      r = r * inverse(action_[-1 - tok]);
  }
  return r;
}

std::vector<Mat> ModuleRep::element_matrices() const {
  // BFS discovery order guarantees a parent is seen before its children.
  std::vector<Mat> out;
  out.reserve(group_->order());
  std::vector<Mat> gen_inv;
  for (const Mat& a : action_) gen_inv.push_back(inverse(a));
  out.push_back(Mat::identity(field_, dim_));
  for (int i = 1; i < group_->order(); ++i) {
    const Word& w = group_->word(i);
    Word parent_word(w.begin(), w.end() - 1);
    int parent = group_->evaluate_word(parent_word);
    int tok = w.back();
    if (tok >= 0)
      out.push_back(out[parent] * action_[tok]);
    else
      out.push_back(out[parent] * gen_inv[-1 - tok]);
  }
  return out;
}

void validate_module(const ModuleRep& m) {
  const Group& g = m.group();
  for (int i = 0; i < g->num_generators(); ++i)
    if (!try_inverse(m.action(i)))
      throw ValidationError("action matrix for generator '" + g->label(i) +
                            "' is not invertible");
  std::vector<Mat> mats = m.element_matrices();
  for (int x = 0; x < g->order(); ++x)
    for (int s = 0; s < g->num_generators(); ++s) {
      int y = g->mult(x, g->generator_element(s));
      if (mats[y] != mats[x] * m.action(s)) {
        std::string xw = g->word_string(x);
        throw ValidationError("Cayley edge (" + (xw.empty() ? "1" : xw) + "*" +
                              g->label(s) + ") inconsistent");
      }
    }
}

ModuleRep trivial_module(const Group& g, const Field& f) {
  std::vector<Mat> action(g->num_generators(), Mat::identity(f, 1));
  return ModuleRep::make_unchecked(g, f, 1, std::move(action));
}

ModuleRep regular_module(const Group& g, const Field& f) {
  int n = g->order();
  std::vector<Mat> action;
  for (int s = 0; s < g->num_generators(); ++s) {
    Mat a(f, n, n);
    int ge = g->generator_element(s);
    for (int x = 0; x < n; ++x) a(g->mult(ge, x), x) = 1;  // left multiplication
    action.push_back(std::move(a));
  }
  return ModuleRep::make_unchecked(g, f, n, std::move(action));
}

ModuleRep permutation_module(const Group& g, const Subgroup& h, const Field& f) {
  if (!h.parent()->same(*g)) throw ValidationError("subgroup of a different group");
  int n = g->order();
  // BFS-first transversal: cosets indexed by first-discovered element.
  std::vector<int> coset_of(n, -1);
  std::vector<int> transversal;
  for (int x = 0; x < n; ++x) {
    if (coset_of[x] >= 0) continue;
    int c = static_cast<int>(transversal.size());
    transversal.push_back(x);
    for (int hh : h.elements()) coset_of[g->mult(x, hh)] = c;
  }
  int d = static_cast<int>(transversal.size());
  std::vector<Mat> action;
  for (int s = 0; s < g->num_generators(); ++s) {
    Mat a(f, d, d);
    int ge = g->generator_element(s);
    for (int c = 0; c < d; ++c) a(coset_of[g->mult(ge, transversal[c])], c) = 1;
    action.push_back(std::move(a));
  }
  return ModuleRep::make_unchecked(g, f, d, std::move(action));
}

ModuleRep restrict_to(const ModuleRep& m, const Subgroup& h) {
  if (!h.parent()->same(*m.group()))
    throw ValidationError("restricting to a subgroup of a different group");
  std::vector<Mat> action;
  for (int s = 0; s < h.group()->num_generators(); ++s)
    action.push_back(m.act_element(h.generator_elements()[s]));
  return ModuleRep::make_unchecked(h.group(), m.field(), m.dim(), std::move(action));
}

ModuleRep restrict_along(const ModuleRep& m, const GroupHom& e) {
  if (!e.target->same(*m.group()))
    throw ValidationError("embedding target does not match the module's group");
  std::vector<Mat> action;
  for (int s = 0; s < e.source->num_generators(); ++s)
    action.push_back(m.act_element(e.images[s]));
  return ModuleRep::make_unchecked(e.source, m.field(), m.dim(), std::move(action));
}

ModuleRep induce(const ModuleRep& m, const Subgroup& h) {
  if (!h.group()->same(*m.group()))
    throw ValidationError("induce expects a module over the subgroup");
  const Group& g = h.parent();
  const Field& f = m.field();
  int n = g->order();
  std::vector<int> coset_of(n, -1);
  std::vector<int> transversal;
  for (int x = 0; x < n; ++x) {
    if (coset_of[x] >= 0) continue;
    int c = static_cast<int>(transversal.size());
    transversal.push_back(x);
    for (int hh : h.elements()) coset_of[g->mult(x, hh)] = c;
  }
  int r = static_cast<int>(transversal.size());
  int d = r * m.dim();
  std::vector<Mat> action;
  for (int s = 0; s < g->num_generators(); ++s) {
    Mat a(f, d, d);
    int ge = g->generator_element(s);
    for (int c = 0; c < r; ++c) {
      int y = g->mult(ge, transversal[c]);
      int c2 = coset_of[y];
      // twist = t_{c2}^{-1} * ge * t_c, an element of H
      int twist = g->mult(g->inverse(transversal[c2]), y);
      int hs = h.from_parent(twist);
      if (hs < 0) throw ValidationError("transversal cocycle escaped the subgroup");
      Mat block = m.act_element(hs);
      for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j)
          a(c2 * m.dim() + i, c * m.dim() + j) = block(i, j);
    }
    action.push_back(std::move(a));
  }
  return ModuleRep::make_unchecked(g, f, d, std::move(action));
}

ModuleRep dual_module(const ModuleRep& m) {
  std::vector<Mat> action;
  for (const Mat& a : m.actions()) action.push_back(inverse(a).transpose());
  return ModuleRep::make_unchecked(m.group(), m.field(), m.dim(), std::move(action));
}

ModuleRep tensor(const ModuleRep& a, const ModuleRep& b) {
  if (!a.same_context(b)) throw ValidationError("tensor: group/field mismatch");
  std::vector<Mat> action;
  for (int s = 0; s < a.group()->num_generators(); ++s)
    action.push_back(kron(a.action(s), b.action(s)));
  return ModuleRep::make_unchecked(a.group(), a.field(), a.dim() * b.dim(), std::move(action));
}

ModuleRep direct_sum(const ModuleRep& a, const ModuleRep& b) {
  if (!a.same_context(b)) throw ValidationError("direct_sum: group/field mismatch");
  std::vector<Mat> action;
  for (int s = 0; s < a.group()->num_generators(); ++s)
    action.push_back(block_diag(a.action(s), b.action(s)));
  return ModuleRep::make_unchecked(a.group(), a.field(), a.dim() + b.dim(), std::move(action));
}

Mat spin(const ModuleRep& m, const Mat& vectors) {
  if (vectors.rows() != m.dim()) throw ValidationError("spin: vector size mismatch");
  // Row space of the transposed working set, kept reduced.
  Mat rows = rref(vectors.transpose(), false).rref;
  rows = rows.submatrix(0, 0, rank_of(rows), m.dim());
  bool grew = true;
  while (grew) {
    grew = false;
    for (const Mat& a : m.actions()) {
      Mat imaged = rows * a.transpose();
      Mat combined = rref(vstack(rows, imaged), false).rref;
      int rk = 0;
      for (int i = 0; i < combined.rows(); ++i) {
        bool nz = false;
        for (int j = 0; j < combined.cols(); ++j)
          if (combined(i, j)) nz = true;
        if (nz) ++rk;
      }
      if (rk > rows.rows()) {
        rows = combined.submatrix(0, 0, rk, m.dim());
        grew = true;
      }
    }
  }
  return rows.transpose();
}

SubmoduleResult submodule_generated(const ModuleRep& m, const Mat& vectors) {
  Mat basis = spin(m, vectors);
  std::vector<Mat> action;
  for (const Mat& a : m.actions()) {
    auto x = solve_right(basis, a * basis);
    if (!x) throw ValidationError("submodule basis is not action-closed");
    action.push_back(*x);
  }
  SubmoduleResult r;
  r.sub = ModuleRep::make_unchecked(m.group(), m.field(), basis.cols(), std::move(action));
  r.inclusion = basis;
  return r;
}

QuotientResult quotient(const ModuleRep& m, const Mat& sub_inclusion) {
  int d = m.dim(), s = sub_inclusion.cols();
  if (sub_inclusion.rows() != d) throw ValidationError("quotient: inclusion mismatch");
  // Complete the subspace basis with standard basis vectors.
  RrefResult r = rref(sub_inclusion.transpose(), false);
  std::set<int> pivot_cols(r.pivots.begin(), r.pivots.end());
  Mat comp(m.field(), d, d - s);
  int c = 0;
  for (int i = 0; i < d && c < d - s; ++i)
    if (!pivot_cols.count(i)) comp(i, c++) = 1;
  Mat change = hstack(sub_inclusion, comp);
  Mat change_inv = inverse(change);
  Mat proj = change_inv.submatrix(s, 0, d - s, d);
  std::vector<Mat> action;
  for (const Mat& a : m.actions()) action.push_back(proj * a * comp);
  QuotientResult q;
  q.quot = ModuleRep::make_unchecked(m.group(), m.field(), d - s, std::move(action));
  q.projection = proj;
  return q;
}

Mat module_generators(const ModuleRep& m) {
  Mat gens(m.field(), m.dim(), 0);
  Mat closure(m.field(), m.dim(), 0);
  for (int i = 0; i < m.dim(); ++i) {
    if (closure.cols() == m.dim()) break;
    // Is e_i in the current closure?
    Mat ei(m.field(), m.dim(), 1);
    ei(i, 0) = 1;
    if (closure.cols() > 0 && solve_right(closure, ei)) continue;
    gens = hstack(gens, ei);
    closure = spin(m, gens);
  }
  return gens;
}

HomSpace hom_kG(const ModuleRep& m, const ModuleRep& n) {
  if (!m.same_context(n)) throw ValidationError("hom_kG: group/field mismatch");
  const Field& f = m.field();
  const Group& g = m.group();
  HomSpace hs;
  if (m.dim() == 0 || n.dim() == 0) return hs;

  // Free presentation of m: cover kG^r -> m on a greedy generating set; a
  // hom m -> n is an assignment of the generators' images killing the
  // cover's kernel.
  Mat gens = module_generators(m);
  int r = gens.cols();
  int go = g->order();
  std::vector<Mat> m_elems = m.element_matrices();
  std::vector<Mat> n_elems = n.element_matrices();

  Mat cover(f, m.dim(), r * go);
  for (int i = 0; i < r; ++i) {
    Mat vi = gens.column(i);
    for (int x = 0; x < go; ++x) {
      Mat col = m_elems[x] * vi;
      for (int row = 0; row < m.dim(); ++row) cover(row, i * go + x) = col(row, 0);
    }
  }
  Mat ker = kernel_basis(cover);  // (r*go) x s

  // Constraints: for each kernel column kappa, sum_{i,x} kappa_(i,x) n(x) w_i = 0.
  int nn = n.dim();
  Mat constraints(f, ker.cols() * nn, r * nn);
  for (int kcol = 0; kcol < ker.cols(); ++kcol)
    for (int i = 0; i < r; ++i)
      for (int x = 0; x < go; ++x) {
        uint8_t cval = ker(i * go + x, kcol);
        if (!cval) continue;
        const Mat& nx = n_elems[x];
        for (int a = 0; a < nn; ++a)
          for (int b = 0; b < nn; ++b) {
            uint8_t v = f->mul(cval, nx(a, b));
            if (!v) continue;
            uint8_t& slot = constraints(kcol * nn + a, i * nn + b);
            slot = f->add(slot, v);
          }
      }
  Mat sols = kernel_basis(constraints);  // (r*nn) x h

  // Recover each hom as a matrix: f * cover = image columns.
  Mat cover_t = cover.transpose();
  for (int h = 0; h < sols.cols(); ++h) {
    Mat image(f, nn, r * go);
    for (int i = 0; i < r; ++i) {
      Mat wi(f, nn, 1);
      for (int a = 0; a < nn; ++a) wi(a, 0) = sols(i * nn + a, h);
      for (int x = 0; x < go; ++x) {
        Mat col = n_elems[x] * wi;
        for (int row = 0; row < nn; ++row) image(row, i * go + x) = col(row, 0);
      }
    }
    auto ft = solve_right(cover_t, image.transpose());
    if (!ft) throw ValidationError("hom recovery failed");  // cover has full row rank
    hs.basis.push_back(ft->transpose());
  }

  // Canonical order: row-reduce the flattened basis.
  if (!hs.basis.empty()) {
    Mat flat(f, hs.dim(), nn * m.dim());
    for (int i = 0; i < hs.dim(); ++i)
      for (int a = 0; a < nn; ++a)
        for (int b = 0; b < m.dim(); ++b) flat(i, a * m.dim() + b) = hs.basis[i](a, b);
    RrefResult rr = rref(flat, false);
    std::vector<Mat> reduced;
    for (int i = 0; i < rr.rank; ++i) {
      Mat fm(f, nn, m.dim());
      for (int a = 0; a < nn; ++a)
        for (int b = 0; b < m.dim(); ++b) fm(a, b) = rr.rref(i, a * m.dim() + b);
      reduced.push_back(std::move(fm));
    }
    hs.basis = std::move(reduced);
  }
  return hs;
}

std::vector<ModuleRep> one_dim_reps(const Group& g, const Field& f) {
  int ng = g->num_generators();
  if (ng > 6) throw ValidationError("one_dim_reps capped at 6 generators");
  // Candidate scalars per generator: units whose order divides the
  // generator's order.
  std::vector<std::vector<uint8_t>> candidates(ng);
  for (int s = 0; s < ng; ++s) {
    int ord = g->element_order(g->generator_element(s));
    for (int u = 1; u < f->q(); ++u)
      if (f->pow(static_cast<uint8_t>(u), ord) == f->one())
        candidates[s].push_back(static_cast<uint8_t>(u));
  }
  std::vector<ModuleRep> out;
  std::set<std::vector<uint8_t>> seen;
  std::vector<uint8_t> tuple(ng, 1);
  std::vector<size_t> idx(ng, 0);
  while (true) {
    for (int s = 0; s < ng; ++s) tuple[s] = candidates[s].empty() ? 1 : candidates[s][idx[s]];
    // Cayley consistency: scalars along any two words for the same element agree.
    bool ok = true;
    std::vector<uint8_t> scalar_of(g->order(), 0);
    scalar_of[0] = f->one();
    for (int x = 1; x < g->order() && ok; ++x) {
      const Word& w = g->word(x);
      Word pw(w.begin(), w.end() - 1);
      int parent = g->evaluate_word(pw);
      int tok = w.back();
      uint8_t sc = tok >= 0 ? tuple[tok] : f->inv(tuple[-1 - tok]);
      scalar_of[x] = f->mul(scalar_of[parent], sc);
    }
    for (int x = 0; x < g->order() && ok; ++x)
      for (int s = 0; s < ng && ok; ++s) {
        int y = g->mult(x, g->generator_element(s));
        if (scalar_of[y] != f->mul(scalar_of[x], tuple[s])) ok = false;
      }
    if (ok && seen.insert(tuple).second) {
      std::vector<Mat> action;
      for (int s = 0; s < ng; ++s) {
        Mat a(f, 1, 1);
        a(0, 0) = tuple[s];
        action.push_back(std::move(a));
      }
      out.push_back(ModuleRep::make_unchecked(g, f, 1, std::move(action)));
    }
    // Advance the mixed-radix counter.
    int s = 0;
    for (; s < ng; ++s) {
      if (candidates[s].empty()) continue;
      if (++idx[s] < candidates[s].size()) break;
      idx[s] = 0;
    }
    if (s == ng) break;
  }
  std::sort(out.begin(), out.end(), [](const ModuleRep& a, const ModuleRep& b) {
    for (int s = 0; s < a.group()->num_generators(); ++s) {
      uint8_t av = a.action(s)(0, 0), bv = b.action(s)(0, 0);
      if (av != bv) return av < bv;
    }
    return false;
  });
  return out;
}

}  // namespace endo
