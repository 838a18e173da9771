#include "endotriv/fgab.hpp"

#include <algorithm>
#include <stdexcept>

namespace endo {

ZMat ZMat::identity(int n) {
  ZMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ZMat ZMat::transpose() const {
  ZMat t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ZMat operator*(const ZMat& a, const ZMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("ZMat shape mismatch in *");
  ZMat c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

ZMat hstack(const ZMat& a, const ZMat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("ZMat row mismatch in hstack");
  ZMat c(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

ZMat vstack(const ZMat& a, const ZMat& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("ZMat col mismatch in vstack");
  ZMat c(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

ZMat block_diag(const ZMat& a, const ZMat& b) {
  ZMat c(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

SnfResult snf(const ZMat& a0) {
  SnfResult r;
  ZMat a = a0;
  int m = a.rows(), n = a.cols();
  r.u = ZMat::identity(m);
  r.v = ZMat::identity(n);

  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
    for (int c = 0; c < m; ++c) std::swap(r.u(i, c), r.u(j, c));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < m; ++c) std::swap(a(c, i), a(c, j));
    for (int c = 0; c < n; ++c) std::swap(r.v(c, i), r.v(c, j));
  };
  auto row_sub = [&](int dst, int src, const BigInt& q) {  // row dst -= q * row src
    if (q == 0) return;
    for (int c = 0; c < n; ++c) a(dst, c) -= q * a(src, c);
    for (int c = 0; c < m; ++c) r.u(dst, c) -= q * r.u(src, c);
  };
  auto col_sub = [&](int dst, int src, const BigInt& q) {
    if (q == 0) return;
    for (int c = 0; c < m; ++c) a(c, dst) -= q * a(c, src);
    for (int c = 0; c < n; ++c) r.v(c, dst) -= q * r.v(c, src);
  };
  auto negate_row = [&](int i) {
    for (int c = 0; c < n; ++c) a(i, c) = -a(i, c);
    for (int c = 0; c < m; ++c) r.u(i, c) = -r.u(i, c);
  };

  int mn = std::min(m, n);
  for (int s = 0; s < mn; ++s) {
    while (true) {
      // Smallest nonzero entry of the lower-right block to (s, s).
      int pi = -1, pj = -1;
      BigInt best = 0;
      for (int i = s; i < m; ++i)
        for (int j = s; j < n; ++j) {
          if (a(i, j) == 0) continue;
          BigInt v = abs(a(i, j));
          if (pi < 0 || v < best) {
            best = v;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) goto done;  // block is zero
      swap_rows(s, pi);
      swap_cols(s, pj);

      bool clean = true;
      for (int i = s + 1; i < m; ++i) {
        if (a(i, s) == 0) continue;
        row_sub(i, s, a(i, s) / a(s, s));
        if (a(i, s) != 0) clean = false;
      }
      for (int j = s + 1; j < n; ++j) {
        if (a(s, j) == 0) continue;
        col_sub(j, s, a(s, j) / a(s, s));
        if (a(s, j) != 0) clean = false;
      }
      if (!clean) continue;  // smaller remainders became pivot candidates

      // Divisibility fixup: fold a bad entry into row s and restart.
      bool fixed = true;
      for (int i = s + 1; i < m && fixed; ++i)
        for (int j = s + 1; j < n && fixed; ++j)
          if (a(i, j) % a(s, s) != 0) {
            row_sub(s, i, -1);
            fixed = false;
          }
      if (fixed) break;
    }
  }
done:
  for (int s = 0; s < mn; ++s)
    if (a(s, s) < 0) negate_row(s);
  r.d = a;
  r.rank = 0;
  for (int s = 0; s < mn; ++s)
    if (a(s, s) != 0) ++r.rank;
  return r;
}

std::vector<BigInt> SnfResult::diagonal() const {
  std::vector<BigInt> out;
  int mn = std::min(d.rows(), d.cols());
  for (int i = 0; i < mn; ++i) out.push_back(d(i, i));
  return out;
}

ZMat z_kernel(const ZMat& a) {
  SnfResult s = snf(a);
  // a x = 0 iff, writing x = v y, d y = 0: the free coordinates of y are
  // those past the rank; kernel basis = those columns of v.
  int n = a.cols();
  ZMat k(n, n - s.rank);
  for (int j = s.rank; j < n; ++j)
    for (int i = 0; i < n; ++i) k(i, j - s.rank) = s.v(i, j);
  return k;
}

std::optional<ZMat> z_solve(const ZMat& a, const ZMat& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("z_solve row mismatch");
  SnfResult s = snf(a);
  ZMat ub = s.u * b;
  ZMat y(a.cols(), b.cols());
  int mn = std::min(a.rows(), a.cols());
  for (int col = 0; col < b.cols(); ++col) {
    for (int i = 0; i < a.rows(); ++i) {
      BigInt di = i < mn ? s.d(i, i) : BigInt(0);
      if (di != 0) {
        if (ub(i, col) % di != 0) return std::nullopt;
        y(i, col) = ub(i, col) / di;
      } else if (ub(i, col) != 0) {
        return std::nullopt;
      }
    }
  }
  return s.v * y;
}

BigInt z_det_abs(const ZMat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("z_det_abs needs square");
  SnfResult s = snf(a);
  BigInt det = 1;
  for (int i = 0; i < a.rows(); ++i) det *= s.d(i, i);
  return det;
}

// ---------------------------------------------------------------------------

FgAbGroup FgAbGroup::free(int n, std::vector<std::string> labels) {
  FgAbGroup g;
  g.n_gens = n;
  g.relations = ZMat(0, n);
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  g.gen_labels = std::move(labels);
  return g;
}

FgAbGroup FgAbGroup::cyclic(const BigInt& order, const std::string& label) {
  FgAbGroup g;
  g.n_gens = 1;
  g.relations = ZMat(1, 1);
  g.relations(0, 0) = order;
  g.gen_labels = {label};
  return g;
}

FgAbGroup FgAbGroup::trivial() {
  FgAbGroup g;
  g.n_gens = 0;
  g.relations = ZMat(0, 0);
  return g;
}

CanonicalForm canonical(const FgAbGroup& g) {
  SnfResult s = snf(g.relations);
  CanonicalForm c;
  c.free_rank = g.n_gens - s.rank;
  for (const BigInt& d : s.diagonal())
    if (d > 1) c.torsion.push_back(d);
  std::sort(c.torsion.begin(), c.torsion.end());
  return c;
}

std::string canonical_string(const FgAbGroup& g) {
  CanonicalForm c = canonical(g);
  if (c.free_rank == 0 && c.torsion.empty()) return "0";
  std::string out;
  auto append = [&](const std::string& piece) {
    if (!out.empty()) out += " ⊕ ";
    out += piece;
  };
  if (c.free_rank == 1) append("Z");
  else if (c.free_rank > 1) append("Z^" + std::to_string(c.free_rank));
  for (const BigInt& d : c.torsion) append("Z/" + d.str());
  return out;
}

bool FgAbGroup::is_trivial() const {
  CanonicalForm c = canonical(*this);
  return c.free_rank == 0 && c.torsion.empty();
}

bool FgAbGroup::finite() const { return canonical(*this).free_rank == 0; }

BigInt FgAbGroup::order() const {
  CanonicalForm c = canonical(*this);
  if (c.free_rank != 0) throw std::domain_error("group is infinite");
  BigInt n = 1;
  for (const BigInt& d : c.torsion) n *= d;
  return n;
}

bool in_subgroup(const FgAbGroup& g, const ZMat& gens, const ZMat& v) {
  return z_solve(hstack(gens, g.relations.transpose()), v).has_value();
}

std::optional<ZMat> express_in_subgroup(const FgAbGroup& g, const ZMat& gens,
                                        const ZMat& v) {
  auto sol = z_solve(hstack(gens, g.relations.transpose()), v);
  if (!sol) return std::nullopt;
  ZMat z(gens.cols(), v.cols());
  for (int i = 0; i < gens.cols(); ++i)
    for (int j = 0; j < v.cols(); ++j) z(i, j) = (*sol)(i, j);
  return z;
}

bool hom_well_defined(const FgAbHom& f) {
  if (f.images.rows() != f.target.n_gens || f.images.cols() != f.source.n_gens)
    return false;
  ZMat mapped = f.images * f.source.relations.transpose();
  for (int j = 0; j < mapped.cols(); ++j) {
    ZMat col(mapped.rows(), 1);
    for (int i = 0; i < mapped.rows(); ++i) col(i, 0) = mapped(i, j);
    if (!z_solve(f.target.relations.transpose(), col)) return false;
  }
  return true;
}

namespace {

bool same_presentation(const FgAbGroup& a, const FgAbGroup& b) {
  return a.n_gens == b.n_gens && a.relations == b.relations;
}

}  // namespace

bool hom_equal(const FgAbHom& f, const FgAbHom& g) {
  if (!same_presentation(f.source, g.source) || !same_presentation(f.target, g.target))
    return false;
  for (int j = 0; j < f.source.n_gens; ++j) {
    ZMat diff(f.target.n_gens, 1);
    for (int i = 0; i < f.target.n_gens; ++i) diff(i, 0) = f.images(i, j) - g.images(i, j);
    if (!z_solve(f.target.relations.transpose(), diff)) return false;
  }
  return true;
}

FgAbHom hom_compose(const FgAbHom& g, const FgAbHom& f) {
  if (!same_presentation(g.source, f.target))
    throw std::invalid_argument("hom_compose: middle groups differ");
  return {f.source, g.target, g.images * f.images};
}

SubgroupPresentation kernel(const FgAbHom& f) {
  // x with f(x) in the target relation lattice: project the kernel of
  // [images | target relations^T] onto the x block.
  ZMat big = hstack(f.images, f.target.relations.transpose());
  ZMat k = z_kernel(big);
  ZMat w(f.source.n_gens, k.cols());
  for (int i = 0; i < f.source.n_gens; ++i)
    for (int j = 0; j < k.cols(); ++j) w(i, j) = k(i, j);

  // Relations among the w-columns modulo the source relations.
  ZMat big2 = hstack(w, f.source.relations.transpose());
  ZMat k2 = z_kernel(big2);
  ZMat rel(k2.cols(), w.cols());
  for (int i = 0; i < k2.cols(); ++i)
    for (int j = 0; j < w.cols(); ++j) rel(i, j) = k2(j, i);

  SubgroupPresentation out;
  out.group.n_gens = w.cols();
  out.group.relations = rel;
  for (int i = 0; i < w.cols(); ++i)
    out.group.gen_labels.push_back("k" + std::to_string(i));
  out.inclusion = w;
  return out;
}

SubgroupPresentation image(const FgAbHom& f) {
  // Generated by the generator images; relations = preimages of the target
  // lattice.
  ZMat big = hstack(f.images, f.target.relations.transpose());
  ZMat k = z_kernel(big);
  ZMat rel(k.cols(), f.source.n_gens);
  for (int i = 0; i < k.cols(); ++i)
    for (int j = 0; j < f.source.n_gens; ++j) rel(i, j) = k(j, i);

  SubgroupPresentation out;
  out.group.n_gens = f.source.n_gens;
  out.group.relations = rel;
  for (int i = 0; i < f.source.n_gens; ++i)
    out.group.gen_labels.push_back("i" + std::to_string(i));
  out.inclusion = f.images;
  return out;
}

FgAbGroup cokernel(const FgAbHom& f) {
  FgAbGroup g;
  g.n_gens = f.target.n_gens;
  g.relations = vstack(f.target.relations, f.images.transpose());
  g.gen_labels = f.target.gen_labels;
  return g;
}

FgAbGroup product(const FgAbGroup& a, const FgAbGroup& b) {
  FgAbGroup g;
  g.n_gens = a.n_gens + b.n_gens;
  g.relations = block_diag(a.relations, b.relations);
  g.gen_labels = a.gen_labels;
  for (const auto& l : b.gen_labels) g.gen_labels.push_back(l);
  return g;
}

PullbackResult pullback(const FgAbHom& f, const FgAbHom& g) {
  if (!same_presentation(f.target, g.target))
    throw std::invalid_argument("pullback: targets differ");
  FgAbGroup ab = product(f.source, g.source);
  ZMat diff(f.target.n_gens, ab.n_gens);
  for (int i = 0; i < f.target.n_gens; ++i) {
    for (int j = 0; j < f.source.n_gens; ++j) diff(i, j) = f.images(i, j);
    for (int j = 0; j < g.source.n_gens; ++j)
      diff(i, f.source.n_gens + j) = -g.images(i, j);
  }
  FgAbHom difference{ab, f.target, diff};
  SubgroupPresentation k = kernel(difference);

  PullbackResult out;
  out.group = k.group;
  out.into_product = k.inclusion;
  ZMat wa(f.source.n_gens, k.inclusion.cols());
  ZMat wb(g.source.n_gens, k.inclusion.cols());
  for (int j = 0; j < k.inclusion.cols(); ++j) {
    for (int i = 0; i < f.source.n_gens; ++i) wa(i, j) = k.inclusion(i, j);
    for (int i = 0; i < g.source.n_gens; ++i) wb(i, j) = k.inclusion(f.source.n_gens + i, j);
  }
  out.to_a = {k.group, f.source, wa};
  out.to_b = {k.group, g.source, wb};
  return out;
}

bool exact_at(const FgAbHom& f, const FgAbHom& g) {
  if (!same_presentation(f.target, g.source)) return false;
  ZMat ker_gens = kernel(g).inclusion;
  // image(f) <= kernel(g)
  for (int j = 0; j < f.images.cols(); ++j) {
    ZMat col(f.images.rows(), 1);
    for (int i = 0; i < f.images.rows(); ++i) col(i, 0) = f.images(i, j);
    if (!in_subgroup(f.target, ker_gens, col)) return false;
  }
  // kernel(g) <= image(f)
  for (int j = 0; j < ker_gens.cols(); ++j) {
    ZMat col(ker_gens.rows(), 1);
    for (int i = 0; i < ker_gens.rows(); ++i) col(i, 0) = ker_gens(i, j);
    if (!in_subgroup(f.target, f.images, col)) return false;
  }
  return true;
}

FgAbGroup cyclic_units(int q) { return FgAbGroup::cyclic(q - 1, "λ"); }

std::vector<ZMat> enumerate_elements(const FgAbGroup& g) {
  if (!g.finite()) throw std::domain_error("enumerate_elements needs a finite group");
  // Coordinates w = u * v run over the boxes [0, d_i); representatives are
  // pulled back through u^{-1} obtained by solving u x = w.
  SnfResult s = snf(g.relations.transpose());  // columns = relation lattice
  std::vector<BigInt> box;
  int n = g.n_gens;
  for (int i = 0; i < n; ++i) {
    BigInt d = i < std::min(s.d.rows(), s.d.cols()) ? s.d(i, i) : BigInt(0);
    if (d == 0) throw std::domain_error("enumerate_elements: infinite direction");
    box.push_back(d);
  }
  std::vector<ZMat> out;
  std::vector<BigInt> w(n, 0);
  while (true) {
    ZMat wcol(n, 1);
    for (int i = 0; i < n; ++i) wcol(i, 0) = w[i];
    auto v = z_solve(s.u, wcol);
    if (!v) throw std::logic_error("unimodular solve failed");
    out.push_back(*v);
    int i = 0;
    for (; i < n; ++i) {
      w[i] += 1;
      if (w[i] < box[i]) break;
      w[i] = 0;
    }
    if (i == n) break;
    if (out.size() > 100000) throw std::domain_error("enumerate_elements: group too large");
  }
  return out;
}

}  // namespace endo
