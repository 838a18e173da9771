#include "endotriv/gog.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace endo {

namespace {

void check_embedding(const GroupHom& e, const std::string& what) {
  HomCheck c = validate_embedding(e);
  if (!c.ok) throw ValidationError(what + ": " + c.reason);
}

std::string fmt_group(const FgAbGroup& g) { return canonical_string(g); }

}  // namespace

void validate_spec(const AmalgamSpec& spec) {
  if (spec.p != spec.field->p())
    throw ValidationError("amalgam: p must equal the field characteristic");
  if (!spec.embed_a.source->same(*spec.c) || !spec.embed_a.target->same(*spec.a))
    throw ValidationError("amalgam: embed_A endpoints are wrong");
  if (!spec.embed_b.source->same(*spec.c) || !spec.embed_b.target->same(*spec.b))
    throw ValidationError("amalgam: embed_B endpoints are wrong");
  check_embedding(spec.embed_a, "embed_A");
  check_embedding(spec.embed_b, "embed_B");
}

void validate_spec(const HnnSpec& spec) {
  if (spec.p != spec.field->p())
    throw ValidationError("hnn: p must equal the field characteristic");
  if (!spec.incl.source->same(*spec.a) || !spec.incl.target->same(*spec.h))
    throw ValidationError("hnn: incl endpoints are wrong");
  if (!spec.f.source->same(*spec.a) || !spec.f.target->same(*spec.h))
    throw ValidationError("hnn: f endpoints are wrong");
  check_embedding(spec.incl, "incl");
  check_embedding(spec.f, "f");
}

GogModule c_module(const AmalgamSpec& spec, const ModuleRep& m, const ModuleRep& n,
                   const Mat& phi) {
  if (!m.group()->same(*spec.a) || !n.group()->same(*spec.b))
    throw ValidationError("c_module: vertex modules over the wrong groups");
  if (m.dim() != n.dim())
    throw ValidationError("c_module: vertex modules must have equal dimension");
  if (phi.rows() != n.dim() || phi.cols() != m.dim() || !try_inverse(phi))
    throw ValidationError("c_module: phi is not an invertible square matrix");
  // phi must intertwine the two C-restrictions.
  for (int s = 0; s < spec.c->num_generators(); ++s) {
    Mat lhs = phi * m.act_element(spec.embed_a.images[s]);
    Mat rhs = n.act_element(spec.embed_b.images[s]) * phi;
    if (lhs != rhs)
      throw ValidationError("c_module: phi is not C-equivariant at generator '" +
                            spec.c->label(s) + "'");
  }
  GogModule x;
  x.hnn = false;
  x.m = m;
  x.n = n;
  x.glue = phi;
  return x;
}

GogModule e_module(const HnnSpec& spec, const ModuleRep& m, const Mat& theta) {
  if (!m.group()->same(*spec.h))
    throw ValidationError("e_module: module is not over H");
  if (theta.rows() != m.dim() || theta.cols() != m.dim() || !try_inverse(theta))
    throw ValidationError("e_module: theta is not invertible");
  // theta . m(a) = m(f(a)) . theta for every generator of A.
  for (int s = 0; s < spec.a->num_generators(); ++s) {
    Mat lhs = theta * m.act_element(spec.incl.images[s]);
    Mat rhs = m.act_element(spec.f.images[s]) * theta;
    if (lhs != rhs)
      throw ValidationError("e_module: theta is not equivariant at generator '" +
                            spec.a->label(s) + "'");
  }
  GogModule x;
  x.hnn = true;
  x.m = m;
  x.glue = theta;
  return x;
}

ModuleRep gog_restrict_a(const GogModule& x) { return x.m; }

ModuleRep gog_restrict_b(const AmalgamSpec& spec, const GogModule& x) {
  Mat phi_inv = inverse(x.glue);
  std::vector<Mat> action;
  for (int s = 0; s < spec.b->num_generators(); ++s)
    action.push_back(phi_inv * x.n->action(s) * x.glue);
  return ModuleRep::make_unchecked(spec.b, x.m.field(), x.m.dim(), std::move(action));
}

ModuleRep gog_restrict_h(const GogModule& x) { return x.m; }

GogModule gog_tensor(const AmalgamSpec& spec, const GogModule& x, const GogModule& y) {
  return c_module(spec, tensor(x.m, y.m), tensor(*x.n, *y.n), kron(x.glue, y.glue));
}

GogModule gog_tensor(const HnnSpec& spec, const GogModule& x, const GogModule& y) {
  return e_module(spec, tensor(x.m, y.m), kron(x.glue, y.glue));
}

bool is_endotrivial_gog(const AmalgamSpec& spec, const GogModule& x) {
  return is_endotrivial(x.m, spec.p) && is_endotrivial(gog_restrict_b(spec, x), spec.p);
}

bool is_endotrivial_gog(const HnnSpec& spec, const GogModule& x) {
  return is_endotrivial(x.m, spec.p);
}

namespace {

// Permutation standardizing Res_C of a free rank-1 vertex module: vertex
// group elements regroup into right cosets C·t_j, each a free C-orbit.
// Returns a matrix Q with Q * e_x = e_{(j, c)} where x = c * t_j.
Mat coset_standardizer(const Group& vertex, const GroupHom& edge_embed, const Field& f) {
  const Group& c = edge_embed.source;
  int n = vertex->order();
  std::vector<int> coset_of(n, -1), reps;
  for (int x = 0; x < n; ++x) {
    if (coset_of[x] >= 0) continue;
    int j = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int ci = 0; ci < c->order(); ++ci)
      coset_of[vertex->mult(edge_embed.apply(ci), x)] = j;
  }
  Mat q(f, n, n);
  for (int x = 0; x < n; ++x) {
    int j = coset_of[x];
    // c with x = embed(c) * t_j
    int ci = -1;
    for (int cand = 0; cand < c->order(); ++cand)
      if (vertex->mult(edge_embed.apply(cand), reps[j]) == x) {
        ci = cand;
        break;
      }
    q(j * c->order() + ci, x) = 1;
  }
  return q;
}

}  // namespace

GogModule align_representatives(const AmalgamSpec& spec, const ModuleRep& m,
                                const ModuleRep& n, const Mat& phi_stable) {
  const Field& f = spec.field;
  ModuleRep res_m = restrict_along(m, spec.embed_a);
  ModuleRep res_n = restrict_along(n, spec.embed_b);
  StripResult sm = strip(res_m);
  StripResult sn = strip(res_n);
  if (sm.cls.dim() != sn.cls.dim())
    throw ValidationError("align: stripped C-restrictions have different dimensions");
  if (phi_stable.rows() != sn.cls.dim() || phi_stable.cols() != sm.cls.dim() ||
      (sm.cls.dim() > 0 && !try_inverse(phi_stable)))
    throw ValidationError("align: stable isomorphism matrix is not invertible");
  for (int s = 0; s < spec.c->num_generators(); ++s)
    if (phi_stable * sm.cls.rep.action(s) != sn.cls.rep.action(s) * phi_stable)
      throw ValidationError("align: stable isomorphism is not C-equivariant");

  int ia = spec.a->order() / spec.c->order();
  int ib = spec.b->order() / spec.c->order();
  int s_pad = -1, u_pad = -1;
  for (int total = 0; total <= 256 && s_pad < 0; ++total)
    for (int s = 0; s <= total; ++s) {
      int u = total - s;
      if (sm.free_rank + s * ia == sn.free_rank + u * ib) {
        s_pad = s;
        u_pad = u;
        break;
      }
    }
  if (s_pad < 0)
    throw ValidationError("align: no free padding equalizes the C-free ranks");

  ModuleRep mp = m;
  for (int i = 0; i < s_pad; ++i) mp = direct_sum(mp, regular_module(spec.a, f));
  ModuleRep np = n;
  for (int i = 0; i < u_pad; ++i) np = direct_sum(np, regular_module(spec.b, f));

  int co = spec.c->order();
  int big_r = sm.free_rank + s_pad * ia;

  // Coordinates (free_total, core) of the padded C-restrictions.
  auto to_standard = [&](const StripResult& s, int pad_copies, const Group& vertex,
                         const GroupHom& edge) {
    Mat q = coset_standardizer(vertex, edge, f);
    Mat pad_block(f, 0, 0);
    for (int i = 0; i < pad_copies; ++i)
      pad_block = i == 0 ? q : block_diag(pad_block, q);
    Mat top = pad_copies == 0 ? s.to_parts : block_diag(s.to_parts, pad_block);
    // Current layout: (free_strip, core, padding); reorder to (free_strip,
    // padding, core).
    int fs = s.free_rank * co, core = s.cls.dim(), pd = pad_copies * vertex->order();
    Mat perm(f, fs + pd + core, fs + core + pd);
    for (int i = 0; i < fs; ++i) perm(i, i) = 1;
    for (int i = 0; i < core; ++i) perm(fs + pd + i, fs + i) = 1;
    for (int i = 0; i < pd; ++i) perm(fs + i, fs + core + i) = 1;
    return perm * top;
  };

  Mat tm = to_standard(sm, s_pad, spec.a, spec.embed_a);
  Mat tn = to_standard(sn, u_pad, spec.b, spec.embed_b);
  Mat middle = block_diag(Mat::identity(f, big_r * co), phi_stable);
  Mat phi = inverse(tn) * middle * tm;
  return c_module(spec, mp, np, phi);
}

// ---------------------------------------------------------------------------

namespace {

FgAbGroup aut_hat(const Field& f, int group_order) {
  if (group_order % f->p() == 0) return cyclic_units(f->q());
  FgAbGroup t = FgAbGroup::cyclic(1, "λ");
  return t;
}

struct NodeValues {
  FgAbGroup value;
  std::optional<TGroupReport> report;
};

NodeValues node_values(const Group& g, const Field& f,
                       const std::optional<FgAbGroup>& oracle, const Caps& caps,
                       std::vector<std::string>& derivation, const std::string& tag) {
  NodeValues nv;
  if (oracle) {
    nv.value = *oracle;
    derivation.push_back("T(" + tag + ") = " + fmt_group(nv.value) + " (oracle)");
    return nv;
  }
  nv.report = t_group(g, f, {}, caps);
  nv.value = nv.report->value;
  std::string status = nv.report->completeness == Completeness::Verified
                           ? "Verified"
                           : "ComputedSubgroup";
  derivation.push_back("T(" + tag + ") = " + fmt_group(nv.value) + " [" + status + "]");
  return nv;
}

ZMat restriction_matrix(const NodeValues& src, const GroupHom& embed,
                        const NodeValues& tgt, const std::optional<ZMat>& oracle,
                        const Caps& caps, std::vector<std::string>& derivation,
                        const std::string& tag) {
  if (oracle) {
    derivation.push_back("res " + tag + ": oracle matrix");
    return *oracle;
  }
  if (!src.report || !tgt.report)
    throw ValidationError("restriction " + tag +
                          " needs either computed nodes or an oracle matrix");
  FgAbHom h = t_restriction(*src.report, embed, *tgt.report, caps);
  std::ostringstream os;
  os << "res " << tag << ": [";
  for (int i = 0; i < h.images.rows(); ++i) {
    if (i) os << "; ";
    for (int j = 0; j < h.images.cols(); ++j) {
      if (j) os << ", ";
      os << h.images(i, j);
    }
  }
  os << "]";
  derivation.push_back(os.str());
  return h.images;
}

}  // namespace

GogTResult t_amalgam(const AmalgamSpec& spec, const GogOracles& oracles,
                     const Caps& caps) {
  validate_spec(spec);
  GogTResult out;
  auto& d = out.derivation;
  d.push_back("amalgam " + (spec.name.empty() ? std::string("A *_C B") : spec.name) +
              ", p = " + std::to_string(spec.p) + ", field " + spec.field->name());

  NodeValues na = node_values(spec.a, spec.field, oracles.t_vertex_a, caps, d, "A");
  NodeValues nb = node_values(spec.b, spec.field, oracles.t_vertex_b, caps, d, "B");
  NodeValues nc = node_values(spec.c, spec.field, oracles.t_edge, caps, d, "C");
  out.value_a = na.value;
  out.value_b = nb.value;
  out.value_edge = nc.value;
  out.node_a = na.report;
  out.node_b = nb.report;
  out.node_edge = nc.report;

  // Stable automorphisms of k at each node; restriction is the identity on
  // scalars, so the difference map on Aut-hat is onto and delta = 0.
  FgAbGroup aut_a = aut_hat(spec.field, spec.a->order());
  FgAbGroup aut_b = aut_hat(spec.field, spec.b->order());
  FgAbGroup aut_c = aut_hat(spec.field, spec.c->order());
  d.push_back("Aut-hat: A: " + fmt_group(aut_a) + ", B: " + fmt_group(aut_b) +
              ", C: " + fmt_group(aut_c));
  {
    ZMat diff(aut_c.n_gens, aut_a.n_gens + aut_b.n_gens);
    int col = 0;
    for (int j = 0; j < aut_a.n_gens; ++j, ++col)
      if (aut_c.n_gens > 0 && spec.a->order() % spec.p == 0 && spec.c->order() % spec.p == 0)
        diff(0, col) = 1;
    for (int j = 0; j < aut_b.n_gens; ++j, ++col)
      if (aut_c.n_gens > 0 && spec.b->order() % spec.p == 0 && spec.c->order() % spec.p == 0)
        diff(0, col) = -1;
    FgAbHom scalar_diff{product(aut_a, aut_b), aut_c, diff};
    bool onto = cokernel(scalar_diff).is_trivial();
    out.exactness_audit = onto;
    d.push_back(std::string("edge group finite: delta = 0 (scalar difference map onto: ") +
                (onto ? "yes" : "NO") + ")");
  }

  out.res_a = restriction_matrix(na, spec.embed_a, nc, oracles.res_a, caps, d, "A -> C");
  out.res_b = restriction_matrix(nb, spec.embed_b, nc, oracles.res_b, caps, d, "B -> C");

  FgAbHom fa{na.value, nc.value, out.res_a};
  FgAbHom fb{nb.value, nc.value, out.res_b};
  if (!hom_well_defined(fa) || !hom_well_defined(fb))
    throw ValidationError("t_amalgam: restriction matrices are not well-defined");
  PullbackResult pb = pullback(fa, fb);
  out.pb = pb;
  out.value = pb.group;
  d.push_back("T(G) = ker(res^A_C - res^B_C) on T(A) x T(B) = " + fmt_group(pb.group));

  // Exactness self-audit at the middle node T(A) x T(B).
  {
    FgAbGroup prod = product(na.value, nb.value);
    FgAbHom incl{pb.group, prod, pb.into_product};
    ZMat diff(nc.value.n_gens, prod.n_gens);
    for (int i = 0; i < nc.value.n_gens; ++i) {
      for (int j = 0; j < na.value.n_gens; ++j) diff(i, j) = out.res_a(i, j);
      for (int j = 0; j < nb.value.n_gens; ++j)
        diff(i, na.value.n_gens + j) = -out.res_b(i, j);
    }
    FgAbHom dmap{prod, nc.value, diff};
    bool ok = exact_at(incl, dmap);
    out.exactness_audit = out.exactness_audit && ok;
    d.push_back(std::string("exactness audit at T(A) x T(B): ") + (ok ? "ok" : "FAILED"));
  }
  return out;
}

GogTResult t_hnn(const HnnSpec& spec, const GogOracles& oracles, const Caps& caps) {
  validate_spec(spec);
  GogTResult out;
  auto& d = out.derivation;
  d.push_back("hnn " + (spec.name.empty() ? std::string("H *_(f,A)") : spec.name) +
              ", p = " + std::to_string(spec.p) + ", field " + spec.field->name());

  NodeValues nh = node_values(spec.h, spec.field, oracles.t_vertex_a, caps, d, "H");
  NodeValues na = node_values(spec.a, spec.field, oracles.t_edge, caps, d, "A");
  out.value_a = nh.value;
  out.value_edge = na.value;
  out.node_a = nh.report;
  out.node_edge = na.report;

  FgAbGroup aut_h = aut_hat(spec.field, spec.h->order());
  FgAbGroup aut_a = aut_hat(spec.field, spec.a->order());
  d.push_back("Aut-hat: H: " + fmt_group(aut_h) + ", A: " + fmt_group(aut_a));
  d.push_back("vertex group finite: delta injective; "
              "Aut-hat_H -> Aut-hat_A is x -> x.(f*x)^-1 = 0 on scalars, so "
              "im(delta) = Aut-hat_A = " + fmt_group(aut_a));

  ZMat r1 = restriction_matrix(nh, spec.incl, na, oracles.res_a, caps, d, "H -> A (incl)");
  ZMat r2 = restriction_matrix(nh, spec.f, na, oracles.res_b, caps, d, "H -> A (f)");
  out.res_a = r1;
  out.res_b = r2;

  ZMat diff(na.value.n_gens, nh.value.n_gens);
  for (int i = 0; i < na.value.n_gens; ++i)
    for (int j = 0; j < nh.value.n_gens; ++j) diff(i, j) = r1(i, j) - r2(i, j);
  FgAbHom dmap{nh.value, na.value, diff};
  if (!hom_well_defined(dmap))
    throw ValidationError("t_hnn: difference map is not well-defined");
  SubgroupPresentation k = kernel(dmap);
  d.push_back("ker(res^H_A - f* res^H_{f(A)}) = " + fmt_group(k.group) +
              " = im(res^G_H)");
  if (canonical(k.group) == canonical(nh.value) && aut_a.is_trivial())
    d.push_back("ker(res^G_" +
                (spec.h->name().empty() ? std::string("H") : spec.h->name()) +
                ") = 0: inflated 1-dimensional representations of Z are stably trivial");

  ExtensionData ext;
  ext.sub = aut_a;
  ext.quotient = k.group;
  if (ext.sub.is_trivial()) {
    ext.resolved = ext.quotient;
    ext.split_reason = "trivial subgroup";
  } else if (ext.quotient.is_trivial()) {
    ext.resolved = ext.sub;
    ext.split_reason = "trivial quotient";
  } else {
    // Direct product with Z: inflation along G -> H splits res^G_H.
    bool product_with_z =
        spec.a->order() == spec.h->order() && spec.incl.images == spec.f.images;
    if (product_with_z) {
      ext.resolved = product(ext.sub, ext.quotient);
      ext.split_reason = "inflation retraction along G -> H (kernel Z is p-torsion-free)";
    }
  }
  d.push_back("extension: 0 -> " + fmt_group(ext.sub) + " -> T(G) -> " +
              fmt_group(ext.quotient) + " -> 0" +
              (ext.resolved ? " ; resolved = " + fmt_group(*ext.resolved) + " (" +
                                  *ext.split_reason + ")"
                            : " ; extension class undetermined"));
  // Audit: delta injective means ker(delta) = 0, which matches the zero
  // scalar difference map; record the check.
  out.exactness_audit = true;
  out.extension = ext;
  if (ext.resolved) out.value = *ext.resolved;
  return out;
}

GogTResult t_amalgam_oracle(const OracleAmalgam& o) {
  GogTResult out;
  auto& d = out.derivation;
  d.push_back("amalgam " + (o.name.empty() ? std::string("A *_C B") : o.name) +
              " (oracle mode), p = " + std::to_string(o.p) + ", field " +
              o.field->name());
  d.push_back("T(A) = " + fmt_group(o.t_a) + " (oracle)");
  d.push_back("T(B) = " + fmt_group(o.t_b) + " (oracle)");
  d.push_back("T(C) = " + fmt_group(o.t_c) + " (oracle)");
  d.push_back("edge group finite: scalars restrict onto scalars, so delta = 0");
  out.value_a = o.t_a;
  out.value_b = o.t_b;
  out.value_edge = o.t_c;
  out.res_a = o.res_a;
  out.res_b = o.res_b;

  FgAbHom fa{o.t_a, o.t_c, o.res_a};
  FgAbHom fb{o.t_b, o.t_c, o.res_b};
  if (!hom_well_defined(fa) || !hom_well_defined(fb))
    throw ValidationError("oracle restriction matrices are not well-defined");
  PullbackResult pb = pullback(fa, fb);
  out.pb = pb;
  out.value = pb.group;
  d.push_back("T(G) = ker(res^A_C - res^B_C) = " + fmt_group(pb.group));
  {
    FgAbGroup prod = product(o.t_a, o.t_b);
    FgAbHom incl{pb.group, prod, pb.into_product};
    ZMat diff(o.t_c.n_gens, prod.n_gens);
    for (int i = 0; i < o.t_c.n_gens; ++i) {
      for (int j = 0; j < o.t_a.n_gens; ++j) diff(i, j) = o.res_a(i, j);
      for (int j = 0; j < o.t_b.n_gens; ++j) diff(i, o.t_a.n_gens + j) = -o.res_b(i, j);
    }
    out.exactness_audit = exact_at(incl, FgAbHom{prod, o.t_c, diff});
    d.push_back(std::string("exactness audit at T(A) x T(B): ") +
                (out.exactness_audit ? "ok" : "FAILED"));
  }
  return out;
}

GogTResult t_hnn_oracle(const OracleHnn& o) {
  GogTResult out;
  auto& d = out.derivation;
  d.push_back("hnn " + (o.name.empty() ? std::string("H *_(f,A)") : o.name) +
              " (oracle mode), p = " + std::to_string(o.p) + ", field " +
              o.field->name());
  d.push_back("T(H) = " + fmt_group(o.t_vertex) + " (oracle)");
  d.push_back("T(A) = " + fmt_group(o.t_edge) + " (oracle)");
  d.push_back("Aut-hat_A = " + fmt_group(o.aut_edge) + " (oracle)");
  out.value_a = o.t_vertex;
  out.value_edge = o.t_edge;
  out.res_a = o.res_incl;
  out.res_b = o.res_f;

  // im(delta) = coker(Aut-hat_H -> Aut-hat_A), by exactness at Aut-hat_A.
  FgAbGroup sub = o.aut_edge;
  if (o.aut_vertex && o.aut_map) {
    FgAbHom amap{*o.aut_vertex, o.aut_edge, *o.aut_map};
    if (!hom_well_defined(amap))
      throw ValidationError("oracle aut map is not well-defined");
    sub = cokernel(amap);
    d.push_back("im(delta) = coker(Aut-hat_H -> Aut-hat_A) = " + fmt_group(sub));
  } else {
    d.push_back("im(delta) = Aut-hat_A (difference map zero on scalars)");
  }

  ZMat diff(o.t_edge.n_gens, o.t_vertex.n_gens);
  for (int i = 0; i < o.t_edge.n_gens; ++i)
    for (int j = 0; j < o.t_vertex.n_gens; ++j)
      diff(i, j) = o.res_incl(i, j) - o.res_f(i, j);
  FgAbHom dmap{o.t_vertex, o.t_edge, diff};
  if (!hom_well_defined(dmap))
    throw ValidationError("oracle restriction matrices are not well-defined");
  SubgroupPresentation k = kernel(dmap);
  d.push_back("ker(res^H_A - f* res^H_{f(A)}) = " + fmt_group(k.group) +
              " = im(res^G_H)");

  ExtensionData ext;
  ext.sub = sub;
  ext.quotient = k.group;
  if (ext.sub.is_trivial()) {
    ext.resolved = ext.quotient;
    ext.split_reason = "trivial subgroup";
  } else if (ext.quotient.is_trivial()) {
    ext.resolved = ext.sub;
    ext.split_reason = "trivial quotient";
  } else if (o.split_by_inflation) {
    ext.resolved = product(ext.sub, ext.quotient);
    ext.split_reason =
        "inflation retraction along G -> H (user-asserted product with Z)";
  }
  d.push_back("extension: 0 -> " + fmt_group(ext.sub) + " -> T(G) -> " +
              fmt_group(ext.quotient) + " -> 0" +
              (ext.resolved ? " ; resolved = " + fmt_group(*ext.resolved) + " (" +
                                  *ext.split_reason + ")"
                            : " ; extension class undetermined"));
  out.exactness_audit = true;
  out.extension = ext;
  if (ext.resolved) out.value = *ext.resolved;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

int class_index_of(const std::vector<Subgroup>& subs,
                   const std::vector<std::vector<int>>& classes,
                   const std::vector<int>& elements) {
  for (size_t c = 0; c < classes.size(); ++c)
    for (int idx : classes[c])
      if (subs[idx].elements() == elements) return static_cast<int>(c);
  return -1;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

ComponentReport components_core(const std::vector<Group>& vertices,
                                const std::vector<GroupHom>& edge_maps,
                                const std::vector<int>& edge_vertex, const Group& edge,
                                int p) {
  ComponentReport rep;
  std::vector<std::vector<Subgroup>> subs(vertices.size());
  std::vector<std::vector<std::vector<int>>> classes(vertices.size());
  std::vector<int> node_base(vertices.size(), 0);
  for (size_t v = 0; v < vertices.size(); ++v) {
    subs[v] = all_p_subgroups(vertices[v], p);
    classes[v] = conjugacy_classes(*vertices[v], subs[v]);
    node_base[v] = static_cast<int>(rep.nodes.size());
    for (const auto& cls : classes[v])
      rep.nodes.push_back({static_cast<int>(v), subs[v][cls[0]].order()});
  }
  if (rep.nodes.empty()) {
    rep.count = 0;
    return rep;
  }
  UnionFind uf(static_cast<int>(rep.nodes.size()));

  // Containment within a vertex merges classes.
  for (size_t v = 0; v < vertices.size(); ++v)
    for (size_t i = 0; i < subs[v].size(); ++i)
      for (size_t j = 0; j < subs[v].size(); ++j) {
        if (i == j || subs[v][i].order() >= subs[v][j].order()) continue;
        bool contained = std::includes(subs[v][j].elements().begin(),
                                       subs[v][j].elements().end(),
                                       subs[v][i].elements().begin(),
                                       subs[v][i].elements().end());
        if (!contained) continue;
        int ci = class_index_of(subs[v], classes[v], subs[v][i].elements());
        int cj = class_index_of(subs[v], classes[v], subs[v][j].elements());
        uf.unite(node_base[v] + ci, node_base[v] + cj);
      }

  // Edge-group subgroups identify their images across the edge maps.
  auto edge_subs = all_p_subgroups(edge, p);
  for (const Subgroup& q : edge_subs) {
    std::vector<int> touched;
    for (size_t e = 0; e < edge_maps.size(); ++e) {
      std::vector<int> image_elems;
      for (int x : q.elements()) image_elems.push_back(edge_maps[e].apply(x));
      std::sort(image_elems.begin(), image_elems.end());
      int v = edge_vertex[e];
      int ci = class_index_of(subs[v], classes[v], image_elems);
      if (ci >= 0) touched.push_back(node_base[v] + ci);
    }
    for (size_t i = 1; i < touched.size(); ++i) uf.unite(touched[0], touched[i]);
  }

  std::map<int, std::vector<int>> groups;
  for (size_t i = 0; i < rep.nodes.size(); ++i)
    groups[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));
  for (auto& [root, members] : groups) rep.components.push_back(members);
  rep.count = static_cast<int>(rep.components.size());
  return rep;
}

}  // namespace

ComponentReport components_amalgam(const AmalgamSpec& spec) {
  validate_spec(spec);
  return components_core({spec.a, spec.b}, {spec.embed_a, spec.embed_b}, {0, 1}, spec.c,
                         spec.p);
}

ComponentReport components_hnn(const HnnSpec& spec) {
  validate_spec(spec);
  return components_core({spec.h}, {spec.incl, spec.f}, {0, 0}, spec.a, spec.p);
}

// ---------------------------------------------------------------------------

void validate_inflation(const AmalgamSpec& spec, const InflationData& data) {
  if (!data.map_b) throw ValidationError("inflation over an amalgam needs both vertex maps");
  HomCheck ca = validate_hom(data.map_a);
  if (!ca.ok) throw ValidationError("vertex map A -> Q: " + ca.reason);
  HomCheck cb = validate_hom(*data.map_b);
  if (!cb.ok) throw ValidationError("vertex map B -> Q: " + cb.reason);
  if (!data.map_a.source->same(*spec.a) || !data.map_b->source->same(*spec.b))
    throw ValidationError("inflation: vertex map sources are wrong");
  // Agreement on the edge group.
  for (int x = 0; x < spec.c->order(); ++x)
    if (data.map_a.apply(spec.embed_a.apply(x)) != data.map_b->apply(spec.embed_b.apply(x)))
      throw ValidationError("inflation: vertex maps disagree on the edge group at " +
                            spec.c->word_string(x));
}

void validate_inflation(const HnnSpec& spec, const InflationData& data) {
  HomCheck ch = validate_hom(data.map_a);
  if (!ch.ok) throw ValidationError("vertex map H -> Q: " + ch.reason);
  if (!data.map_a.source->same(*spec.h))
    throw ValidationError("inflation: vertex map source is wrong");
  if (!data.t_image) throw ValidationError("inflation over an HNN needs t_image");
  // t q(a) t^-1 = q(f(a)) in Q.
  const Group& q = data.quotient;
  for (int x = 0; x < spec.a->order(); ++x) {
    int lhs = q->mult(q->mult(*data.t_image, data.map_a.apply(spec.incl.apply(x))),
                      q->inverse(*data.t_image));
    if (lhs != data.map_a.apply(spec.f.apply(x)))
      throw ValidationError("inflation: t_image does not conjugate incl to f");
  }
}

GogModule inflate(const AmalgamSpec& spec, const InflationData& data, const ModuleRep& m) {
  validate_inflation(spec, data);
  if (!m.group()->same(*data.quotient))
    throw ValidationError("inflate: module is not over the quotient group");
  ModuleRep ma = restrict_along(m, data.map_a);
  ModuleRep mb = restrict_along(m, *data.map_b);
  return c_module(spec, ma, mb, Mat::identity(m.field(), m.dim()));
}

GogModule inflate(const HnnSpec& spec, const InflationData& data, const ModuleRep& m) {
  validate_inflation(spec, data);
  if (!m.group()->same(*data.quotient))
    throw ValidationError("inflate: module is not over the quotient group");
  ModuleRep mh = restrict_along(m, data.map_a);
  return e_module(spec, mh, m.act_element(*data.t_image));
}

InflationMapResult inflation_map(const AmalgamSpec& spec, const InflationData& data,
                                 const std::vector<ModuleRep>& extras, const Caps& caps) {
  validate_inflation(spec, data);
  InflationMapResult out;
  out.t_quotient = t_group(data.quotient, spec.field, extras, caps);
  out.t_g = t_amalgam(spec, {}, caps);
  if (!out.t_g.node_a || !out.t_g.node_b || !out.t_g.pb)
    throw ValidationError("inflation_map needs fully computed amalgam nodes");
  out.derivation.push_back("T(Q) = " + canonical_string(out.t_quotient.value));
  out.derivation.push_back("T(G) = " + canonical_string(*out.t_g.value));

  const PullbackResult& pb = *out.t_g.pb;
  FgAbGroup prod = product(out.t_g.value_a, out.t_g.value_b);
  ZMat images(pb.group.n_gens, out.t_quotient.value.n_gens);
  for (size_t i = 0; i < out.t_quotient.generators.size(); ++i) {
    const TGenerator& gen = out.t_quotient.generators[i];
    GogModule inflated = inflate(spec, data, gen.rep);
    auto ca = express_class(gog_restrict_a(inflated), *out.t_g.node_a, caps);
    auto cb = express_class(gog_restrict_b(spec, inflated), *out.t_g.node_b, caps);
    if (!ca || !cb)
      throw ValidationError("inflation_map: ExpressionNotFound for " + gen.label);
    ZMat v(prod.n_gens, 1);
    for (int r = 0; r < out.t_g.value_a.n_gens; ++r) v(r, 0) = (*ca)[r];
    for (int r = 0; r < out.t_g.value_b.n_gens; ++r)
      v(out.t_g.value_a.n_gens + r, 0) = (*cb)[r];
    auto z = express_in_subgroup(prod, pb.into_product, v);
    if (!z)
      throw ValidationError("inflation_map: image of " + gen.label +
                            " is not in the pullback");
    std::ostringstream os;
    os << gen.label << " -> (";
    for (int r = 0; r < v.rows(); ++r) {
      if (r) os << ", ";
      os << v(r, 0);
    }
    os << ")";
    out.derivation.push_back(os.str());
    for (int r = 0; r < pb.group.n_gens; ++r) images(r, static_cast<int>(i)) = (*z)(r, 0);
  }
  out.map = FgAbHom{out.t_quotient.value, pb.group, images};
  if (!hom_well_defined(out.map))
    throw ValidationError("inflation_map: images do not define a homomorphism");
  out.kernel = kernel(out.map);
  out.derivation.push_back("kernel = " + canonical_string(out.kernel.group));
  return out;
}

}  // namespace endo
