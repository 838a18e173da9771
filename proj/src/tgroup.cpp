#include "endotriv/tgroup.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace endo {

std::optional<GroupShape> detect_shape(const Group& g, int p) {
  GroupShape shape;
  shape.group = g;
  shape.p = p;
  shape.sylow = sylow_p(g, p);
  if (shape.sylow.order() == g->order()) return shape;  // p-group

  // p'-elements must form a centralizing complement.
  std::vector<int> pprime;
  for (int x = 0; x < g->order(); ++x)
    if (g->element_order(x) % p != 0) pprime.push_back(x);
  if (static_cast<int>(pprime.size()) * shape.sylow.order() != g->order())
    return std::nullopt;
  std::set<int> pset(pprime.begin(), pprime.end());
  for (int a : pprime)
    for (int b : pprime)
      if (!pset.count(g->mult(a, b))) return std::nullopt;
  for (int a : pprime)
    for (int x : shape.sylow.elements())
      if (g->mult(a, x) != g->mult(x, a)) return std::nullopt;
  shape.complement = Subgroup::from_elements(g, pprime);
  return shape;
}

OmegaOrderResult omega_order(const Group& g, const Field& f, int cap, int dim_cap) {
  if (!is_p_group(*g, f->p()) || g->order() % f->p() != 0)
    throw ValidationError("omega_order needs a non-trivial p-group");
  OmegaOrderResult out;
  out.cap = cap;
  StableClass cur{trivial_module(g, f)};
  for (int n = 1; n <= cap; ++n) {
    cur = omega(cur.rep, 1, dim_cap);
    out.dims.push_back(cur.dim());
    if (cur.dim() == 1) {
      out.order = n;
      return out;
    }
  }
  return out;
}

ModuleRep syzygy_of_k(const Group& g, const Field& f, int r, int dim_cap) {
  if (r == 0) return trivial_module(g, f);
  bool negative = r < 0;
  int steps = negative ? -r : r;
  ModuleRep cur = trivial_module(g, f);
  if (negative) cur = dual_module(cur);
  int go = g->order();
  for (int i = 0; i < steps; ++i) {
    Mat gens = module_generators(cur);
    std::vector<Mat> elems = cur.element_matrices();
    Mat cover(f, cur.dim(), gens.cols() * go);
    for (int c = 0; c < gens.cols(); ++c)
      for (int x = 0; x < go; ++x) {
        Mat col = elems[x] * gens.column(c);
        for (int row = 0; row < cur.dim(); ++row) cover(row, c * go + x) = col(row, 0);
      }
    if (gens.cols() * go > dim_cap)
      throw ValidationError("syzygy_of_k: cover dimension exceeds cap");
    Mat k = kernel_basis(cover);
    // Free-module action restricted to the kernel.
    std::vector<Mat> action;
    for (int s = 0; s < g->num_generators(); ++s) {
      Mat reg(f, go, go);
      int ge = g->generator_element(s);
      for (int x = 0; x < go; ++x) reg(g->mult(ge, x), x) = 1;
      Mat free_act = kron(Mat::identity(f, gens.cols()), reg);
      auto xsol = solve_right(k, free_act * k);
      if (!xsol) throw ValidationError("syzygy_of_k: kernel not action-closed");
      action.push_back(*xsol);
    }
    cur = ModuleRep::make_unchecked(g, f, k.cols(), std::move(action));
  }
  return negative ? dual_module(cur) : cur;
}

namespace {

// H-hat^0(P; w) data for product-shape groups: dimension and the scalars by
// which the complement generators act.
struct HHat0 {
  int dim = 0;
  std::vector<uint8_t> complement_scalars;
};

HHat0 hhat0(const ModuleRep& w, const GroupShape& shape) {
  const Field& f = w.field();
  const Subgroup& syl = shape.sylow;
  // Fixed points of P.
  Mat stacked(f, 0, w.dim());
  bool first = true;
  for (int ge : syl.generator_elements()) {
    Mat blk = w.act_element(ge) - Mat::identity(f, w.dim());
    stacked = first ? blk : vstack(stacked, blk);
    first = false;
  }
  Mat fixed = first ? Mat::identity(f, w.dim()) : kernel_basis(stacked);
  // Norm image inside the fixed points.
  Mat norm = Mat::zero(f, w.dim(), w.dim());
  for (int x : syl.elements()) norm = norm + w.act_element(x);
  RrefResult nr = rref(norm.transpose(), false);
  Mat nimg(f, w.dim(), nr.rank);
  for (int i = 0; i < nr.rank; ++i)
    for (int j = 0; j < w.dim(); ++j) nimg(j, i) = nr.rref(i, j);
  Mat y = solve_right(fixed, nimg).value();  // norm image in fixed coordinates

  HHat0 out;
  int k = fixed.cols();
  out.dim = k - rank_of(y);
  if (out.dim != 1 || !shape.complement) return out;

  // One complement coordinate: extend the norm image to a basis of the fixed
  // space and watch the last coordinate.
  RrefResult yr = rref(y.transpose(), false);
  std::set<int> pivots(yr.pivots.begin(), yr.pivots.end());
  Mat ext(f, k, 1);
  for (int i = 0; i < k; ++i)
    if (!pivots.count(i)) {
      ext(i, 0) = 1;
      break;
    }
  Mat basis = y.cols() > 0 ? hstack(y, ext) : ext;
  for (int ge : shape.complement->generator_elements()) {
    Mat acted = w.act_element(ge) * fixed;          // complement preserves fixed points
    Mat in_fixed = solve_right(fixed, acted).value();  // k x k
    Mat coords = solve_right(basis, in_fixed * ext).value();
    out.complement_scalars.push_back(coords(basis.cols() - 1, 0));
  }
  return out;
}

}  // namespace

bool is_stably_trivial(const ModuleRep& w, const GroupShape& shape) {
  if (shape.sylow.order() == 1) return true;  // trivial stable category
  ModuleRep res = restrict_to(w, shape.sylow);
  StripResult s = strip(res);
  if (s.cls.dim() != 1) return false;
  if (!shape.complement) return true;
  HHat0 h = hhat0(w, shape);
  if (h.dim != 1) return false;
  for (uint8_t c : h.complement_scalars)
    if (c != w.field()->one()) return false;
  return true;
}

namespace {

// Character-group data extracted from one_dim_reps.
struct CharData {
  std::vector<ModuleRep> gens;
  std::vector<long long> orders;
};

using ScalarTuple = std::vector<uint8_t>;

ScalarTuple tuple_of(const ModuleRep& chi) {
  ScalarTuple t;
  for (int s = 0; s < chi.group()->num_generators(); ++s) t.push_back(chi.action(s)(0, 0));
  return t;
}

CharData char_generators(const Group& g, const Field& f) {
  std::vector<ModuleRep> reps = one_dim_reps(g, f);
  std::set<ScalarTuple> all;
  for (const ModuleRep& r : reps) all.insert(tuple_of(r));

  auto mul_tuples = [&](const ScalarTuple& a, const ScalarTuple& b) {
    ScalarTuple c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = f->mul(a[i], b[i]);
    return c;
  };
  ScalarTuple one(g->num_generators(), f->one());
  auto order_of = [&](const ScalarTuple& t) {
    long long n = 1;
    ScalarTuple cur = t;
    while (cur != one) {
      cur = mul_tuples(cur, t);
      ++n;
    }
    return n;
  };

  // Greedy generating sequence: largest order first, ties by tuple.
  std::vector<ScalarTuple> sorted(all.begin(), all.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [&](const ScalarTuple& a, const ScalarTuple& b) {
                     long long oa = order_of(a), ob = order_of(b);
                     if (oa != ob) return oa > ob;
                     return a < b;
                   });
  CharData out;
  std::set<ScalarTuple> generated = {one};
  for (const ScalarTuple& t : sorted) {
    if (t == one || generated.count(t)) continue;
    // Adjoin t.
    std::set<ScalarTuple> next = generated;
    std::vector<ScalarTuple> frontier(generated.begin(), generated.end());
    for (const ScalarTuple& base : frontier) {
      ScalarTuple cur = base;
      for (long long i = 1; i < order_of(t); ++i) {
        cur = mul_tuples(cur, t);
        next.insert(cur);
      }
    }
    generated = std::move(next);
    for (const ModuleRep& r : reps)
      if (tuple_of(r) == t) out.gens.push_back(r);
    out.orders.push_back(order_of(t));
    if (generated.size() == all.size()) break;
  }
  return out;
}

// Exact presentation of the character group on the greedy generators:
// order rows plus every trivial product inside the exponent box.
FgAbGroup char_value_group(const CharData& chars, const Field& f) {
  int n = static_cast<int>(chars.gens.size());
  std::vector<std::vector<long long>> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<long long> row(n, 0);
    row[i] = chars.orders[i];
    rows.push_back(row);
  }
  if (n > 0) {
    std::vector<long long> e(n, 0);
    while (true) {
      bool zero = std::all_of(e.begin(), e.end(), [](long long v) { return v == 0; });
      if (!zero) {
        bool trivial = true;
        int ngen = chars.gens[0].group()->num_generators();
        for (int s = 0; s < ngen && trivial; ++s) {
          uint8_t prod = f->one();
          for (int j = 0; j < n; ++j)
            prod = f->mul(prod, f->pow(chars.gens[j].action(s)(0, 0), e[j]));
          if (prod != f->one()) trivial = false;
        }
        if (trivial) rows.push_back(e);
      }
      int i = 0;
      for (; i < n; ++i) {
        if (++e[i] < chars.orders[i]) break;
        e[i] = 0;
      }
      if (i == n) break;
    }
  }
  FgAbGroup g;
  g.n_gens = n;
  g.relations = ZMat(static_cast<int>(rows.size()), n);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int c = 0; c < n; ++c) g.relations(static_cast<int>(r), c) = rows[r][c];
  for (int i = 0; i < n; ++i) g.gen_labels.push_back("c" + std::to_string(i));
  return g;
}

std::string coords_label(const TGroupReport& rep, const std::vector<long long>& coords) {
  std::ostringstream out;
  bool any = false;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    if (any) out << " + ";
    if (coords[i] != 1) out << coords[i] << "*";
    out << rep.generators[i].label;
    any = true;
  }
  if (!any) out << "0";
  return out.str();
}

// Pinned answers from the classification literature, used only to gate the
// Verified status.
std::optional<CanonicalForm> pinned_form(const Group& g, const Field& f,
                                         const GroupShape& shape,
                                         const CharData& chars) {
  int p = f->p();
  auto pinned_p_group = [&](const Group& pg) -> std::optional<CanonicalForm> {
    int n = pg->order();
    if (n == 1) return CanonicalForm{0, {}};
    bool cyclic = false;
    for (int x = 0; x < n && !cyclic; ++x)
      if (pg->element_order(x) == n) cyclic = true;
    if (cyclic) {
      if (n == 2) return CanonicalForm{0, {}};
      return CanonicalForm{0, {2}};
    }
    if (n == 8 && !pg->is_abelian()) {
      int involutions = 0;
      for (int x = 1; x < n; ++x)
        if (pg->element_order(x) == 2) ++involutions;
      if (involutions == 1) {
        // Quaternion group: the answer depends on cube roots of unity.
        if ((f->q() - 1) % 3 == 0) return CanonicalForm{0, {2, 4}};
        return CanonicalForm{0, {4}};
      }
    }
    return std::nullopt;
  };

  if (g->order() % p != 0) return CanonicalForm{0, {}};
  auto ppart = pinned_p_group(shape.sylow.group());
  if (!ppart) return std::nullopt;
  FgAbGroup pv;
  pv.n_gens = static_cast<int>(ppart->torsion.size());
  pv.relations = ZMat(pv.n_gens, pv.n_gens);
  for (int i = 0; i < pv.n_gens; ++i) pv.relations(i, i) = ppart->torsion[i];
  for (int i = 0; i < pv.n_gens; ++i) pv.gen_labels.push_back("t" + std::to_string(i));
  return canonical(product(pv, char_value_group(chars, f)));
}

}  // namespace

ModuleRep class_representative(const TGroupReport& rep, const std::vector<long long>& coords,
                               const Caps& caps) {
  const Group& g = rep.group;
  const Field& f = rep.field;
  bool pgroup = rep.shape.is_p_group();
  ModuleRep acc = trivial_module(g, f);
  auto fold = [&](const ModuleRep& m) {
    acc = tensor(acc, m);
    if (pgroup) acc = strip(acc).cls.rep;
    if (acc.dim() > caps.dim_cap)
      throw ValidationError("class_representative: dimension exceeds cap");
  };
  for (size_t i = 0; i < coords.size(); ++i) {
    long long c = coords[i];
    if (c == 0) continue;
    const TGenerator& gen = rep.generators[i];
    if (gen.kind == TGenerator::OmegaK) {
      ModuleRep om = pgroup ? omega(trivial_module(g, f), static_cast<int>(c), caps.dim_cap).rep
                            : syzygy_of_k(g, f, static_cast<int>(c), caps.dim_cap);
      fold(om);
    } else {
      ModuleRep base = c > 0 ? gen.rep : dual_module(gen.rep);
      for (long long i2 = 0; i2 < (c > 0 ? c : -c); ++i2) fold(base);
    }
  }
  return acc;
}

std::optional<std::vector<long long>> express_class(const ModuleRep& m,
                                                    const TGroupReport& target,
                                                    const Caps& caps) {
  int n = static_cast<int>(target.generators.size());
  // Per-generator coordinate ranges: torsion order when finite, otherwise a
  // symmetric box.
  std::vector<std::vector<long long>> ranges(n);
  for (int i = 0; i < n; ++i) {
    std::optional<long long> ord;
    for (long long cand = 1; cand <= 64; ++cand) {
      ZMat v(n, 1);
      v(i, 0) = cand;
      if (z_solve(target.value.relations.transpose(), v)) {
        ord = cand;
        break;
      }
    }
    if (ord) {
      for (long long c = 0; c < *ord; ++c) ranges[i].push_back(c);
    } else {
      ranges[i].push_back(0);
      for (long long c = 1; c <= caps.free_coord_box; ++c) {
        ranges[i].push_back(c);
        ranges[i].push_back(-c);
      }
    }
  }
  std::vector<size_t> idx(n, 0);
  while (true) {
    std::vector<long long> coords(n);
    for (int i = 0; i < n; ++i) coords[i] = ranges[i][idx[i]];
    ModuleRep cand = class_representative(target, coords, caps);
    if (is_stably_trivial(tensor(m, dual_module(cand)), target.shape)) return coords;
    int i = 0;
    for (; i < n; ++i) {
      if (++idx[i] < ranges[i].size()) break;
      idx[i] = 0;
    }
    if (i >= n) break;
  }
  return std::nullopt;
}

FgAbHom t_restriction(const TGroupReport& source, const GroupHom& embedding,
                      const TGroupReport& target, const Caps& caps) {
  if (!embedding.target->same(*source.group) || !embedding.source->same(*target.group))
    throw ValidationError("t_restriction: embedding endpoints do not match the reports");
  ZMat images(target.value.n_gens, source.value.n_gens);
  for (size_t i = 0; i < source.generators.size(); ++i) {
    ModuleRep res = restrict_along(source.generators[i].rep, embedding);
    auto coords = express_class(res, target, caps);
    if (!coords)
      throw ValidationError("t_restriction: ExpressionNotFound for generator " +
                            source.generators[i].label);
    for (int r = 0; r < target.value.n_gens; ++r) images(r, static_cast<int>(i)) = (*coords)[r];
  }
  FgAbHom hom{source.value, target.value, images};
  if (!hom_well_defined(hom))
    throw ValidationError("t_restriction: images do not define a homomorphism");
  return hom;
}

TGroupReport t_group(const Group& g, const Field& f, const std::vector<ModuleRep>& extras,
                     const Caps& caps) {
  int p = f->p();
  auto shape = detect_shape(g, p);
  if (!shape)
    throw ValidationError("UnsupportedGroupShape: not a p-group or P x (p'-group)");

  TGroupReport rep;
  rep.group = g;
  rep.field = f;
  rep.shape = *shape;

  if (g->order() % p != 0) {
    rep.value = FgAbGroup::trivial();
    rep.completeness = Completeness::Verified;
    rep.evidence.push_back({"p does not divide |G|: stable category trivial", "Iso"});
    return rep;
  }

  // Omega generator.
  rep.omega_ord = omega_order(shape->sylow.group(), f, caps.omega_cap, caps.dim_cap);
  {
    ModuleRep om = shape->is_p_group() ? omega(trivial_module(g, f), 1, caps.dim_cap).rep
                                       : syzygy_of_k(g, f, 1, caps.dim_cap);
    rep.generators.push_back({"[Ωk]", TGenerator::OmegaK, om});
  }

  // Characters.
  CharData chars = char_generators(g, f);
  for (size_t i = 0; i < chars.gens.size(); ++i)
    rep.generators.push_back({"χ" + std::to_string(i + 1), TGenerator::Character,
                              chars.gens[i]});

  // Extras.
  for (size_t i = 0; i < extras.size(); ++i) {
    if (!extras[i].group()->same(*g) || !extras[i].field()->same(*f))
      throw ValidationError("extra generator lives over a different group or field");
    if (!is_endotrivial(extras[i], p))
      throw ValidationError("NotEndotrivial: extra generator " + std::to_string(i + 1));
    ModuleRep e = shape->is_p_group() ? strip(extras[i]).cls.rep : extras[i];
    rep.generators.push_back({"[E" + std::to_string(i + 1) + "]", TGenerator::Extra, e});
  }

  int n = static_cast<int>(rep.generators.size());
  std::vector<std::vector<long long>> rel_rows;
  std::vector<std::string> labels;
  for (const TGenerator& tg : rep.generators) labels.push_back(tg.label);

  // Known orders as relation rows.
  if (rep.omega_ord->order) {
    std::vector<long long> row(n, 0);
    row[0] = *rep.omega_ord->order;
    rel_rows.push_back(row);
  }
  for (size_t i = 0; i < chars.orders.size(); ++i) {
    std::vector<long long> row(n, 0);
    row[1 + i] = chars.orders[i];
    rel_rows.push_back(row);
  }

  // Box search for the remaining relations.
  std::vector<std::vector<long long>> ranges(n);
  {
    // Omega exponents.
    if (rep.omega_ord->order)
      for (long long c = 0; c < *rep.omega_ord->order; ++c) ranges[0].push_back(c);
    else {
      ranges[0].push_back(0);
      for (long long c = 1; c <= caps.omega_cap; ++c) {
        ranges[0].push_back(c);
        ranges[0].push_back(-c);
      }
    }
    int pos = 1;
    for (size_t i = 0; i < chars.orders.size(); ++i, ++pos)
      for (long long c = 0; c < chars.orders[i]; ++c) ranges[pos].push_back(c);
    for (size_t i = 0; i < extras.size(); ++i, ++pos) {
      ranges[pos].push_back(0);
      for (long long c = 1; c <= caps.extra_exp; ++c) {
        ranges[pos].push_back(c);
        ranges[pos].push_back(-c);
      }
    }
  }
  std::vector<size_t> idx(n, 0);
  while (true) {
    std::vector<long long> coords(n);
    bool zero = true;
    for (int i = 0; i < n; ++i) {
      coords[i] = ranges[i][idx[i]];
      if (coords[i] != 0) zero = false;
    }
    if (!zero) {
      ModuleRep w = class_representative(rep, coords, caps);
      bool trivial = is_stably_trivial(w, rep.shape);
      rep.evidence.push_back({"[" + coords_label(rep, coords) + "] == 0",
                              trivial ? "Iso" : "NotIso"});
      if (trivial) rel_rows.push_back(coords);
    }
    int i = 0;
    for (; i < n; ++i) {
      if (++idx[i] < ranges[i].size()) break;
      idx[i] = 0;
    }
    if (i == n) break;
  }

  FgAbGroup value;
  value.n_gens = n;
  value.relations = ZMat(static_cast<int>(rel_rows.size()), n);
  for (size_t r = 0; r < rel_rows.size(); ++r)
    for (int c = 0; c < n; ++c) value.relations(static_cast<int>(r), c) = rel_rows[r][c];
  value.gen_labels = labels;
  rep.value = value;

  auto pin = pinned_form(g, f, rep.shape, chars);
  bool undetermined = false;
  for (const auto& e : rep.evidence)
    if (e.result == "Undetermined") undetermined = true;
  if (pin && canonical(rep.value) == *pin && !undetermined)
    rep.completeness = Completeness::Verified;
  else
    rep.completeness = Completeness::ComputedSubgroup;
  return rep;
}

}  // namespace endo
