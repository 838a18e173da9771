#include "endotriv/stable.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace endo {

namespace {

void require_p_group(const ModuleRep& m, const char* op) {
  if (!is_p_group(*m.group(), m.field()->p()))
    throw ValidationError(std::string(op) + " requires a p-group for the field characteristic");
}

}  // namespace

Mat norm_matrix(const ModuleRep& m) {
  std::vector<Mat> mats = m.element_matrices();
  Mat n = Mat::zero(m.field(), m.dim(), m.dim());
  for (const Mat& x : mats) n = n + x;
  return n;
}

int norm_rank(const ModuleRep& m) {
  require_p_group(m, "norm_rank");
  return rank_of(norm_matrix(m));
}

StripResult strip(const ModuleRep& m) {
  require_p_group(m, "strip");
  const Field& f = m.field();
  int go = m.group()->order();

  StripResult out;
  out.free_rank = 0;
  out.to_parts = Mat::identity(f, m.dim());
  out.from_parts = Mat::identity(f, m.dim());
  ModuleRep cur = m;

  // Peel free summands in norm-rank batches; one batch suffices in exact
  // arithmetic, the loop re-checks.
  while (true) {
    std::vector<Mat> elems = cur.element_matrices();
    Mat nmat = Mat::zero(f, cur.dim(), cur.dim());
    for (const Mat& x : elems) nmat = nmat + x;
    RrefResult nr = rref(nmat, false);
    int r = nr.rank;
    if (r == 0) break;

    // Standard basis vectors whose norm images are independent: the pivot
    // columns of the norm matrix.
    std::vector<int> picked(nr.pivots.begin(), nr.pivots.end());
    Mat v(f, cur.dim(), r);
    for (int i = 0; i < r; ++i) v(picked[i], i) = 1;
    Mat nv(f, cur.dim(), r);
    for (int i = 0; i < r; ++i)
      for (int row = 0; row < cur.dim(); ++row) nv(row, i) = nmat(row, picked[i]);

    // Functionals with f_i(N v_j) = delta_ij: rows of a left inverse of nv.
    Mat left_inv_t = solve_right(nv.transpose(), Mat::identity(f, r)).value();
    Mat funcs = left_inv_t.transpose();  // r x dim

    // Free submodule basis: columns (i, g) = g * v_i.
    Mat basis(f, cur.dim(), r * go);
    for (int i = 0; i < r; ++i)
      for (int g = 0; g < go; ++g) {
        Mat col = elems[g] * v.column(i);
        for (int row = 0; row < cur.dim(); ++row) basis(row, i * go + g) = col(row, 0);
      }
    // Equivariant map onto the free part: row (i, g) = f_i . rho(g^-1).
    Mat proj_hat(f, r * go, cur.dim());
    for (int i = 0; i < r; ++i)
      for (int g = 0; g < go; ++g) {
        Mat row = funcs.submatrix(i, 0, 1, cur.dim()) * elems[cur.group()->inverse(g)];
        for (int col = 0; col < cur.dim(); ++col) proj_hat(i * go + g, col) = row(0, col);
      }
    Mat unit = proj_hat * basis;  // invertible: identity modulo the radical
    Mat proj = inverse(unit) * proj_hat;

    Mat comp = kernel_basis(proj);  // complement submodule basis
    std::vector<Mat> action;
    for (int s = 0; s < cur.group()->num_generators(); ++s) {
      auto x = solve_right(comp, cur.action(s) * comp);
      if (!x) throw ValidationError("strip: complement is not action-closed");
      action.push_back(*x);
    }
    ModuleRep next =
        ModuleRep::make_unchecked(cur.group(), f, comp.cols(), std::move(action));

    // Coordinates: free part by proj, complement part by solving against the
    // combined basis.
    Mat full = hstack(basis, comp);
    Mat full_inv = inverse(full);
    Mat to_cur = full_inv;               // cur -> free ⊕ next coordinates
    Mat from_cur = full;                 // back

    // Compose with the accumulated witness; previously split free parts stay
    // in front.
    int prev_free_dim = out.free_rank * go;
    Mat to_block = block_diag(Mat::identity(f, prev_free_dim), to_cur);
    Mat from_block = block_diag(Mat::identity(f, prev_free_dim), from_cur);
    out.to_parts = to_block * out.to_parts;
    out.from_parts = out.from_parts * from_block;

    out.free_rank += r;
    cur = std::move(next);
  }

  out.cls.rep = std::move(cur);
  return out;
}

bool is_projective(const ModuleRep& m, int p) {
  Subgroup syl = sylow_p(m.group(), p);
  ModuleRep res = restrict_to(m, syl);
  return rank_of(norm_matrix(res)) * syl.order() == m.dim();
}

CoverResult minimal_cover(const ModuleRep& m) {
  require_p_group(m, "minimal_cover");
  const Field& f = m.field();
  int go = m.group()->order();

  // rad m = sum of (g - 1) m over the generators.
  Mat rad(f, m.dim(), 0);
  bool first = true;
  for (int s = 0; s < m.group()->num_generators(); ++s) {
    Mat gm1 = m.action(s) - Mat::identity(f, m.dim());
    rad = first ? gm1 : hstack(rad, gm1);
    first = false;
  }
  int rad_rank = first ? 0 : rank_of(rad);

  CoverResult out;
  out.rank = m.dim() - rad_rank;
  // Lift a basis of m/rad: standard basis vectors outside the radical span.
  Mat gens(f, m.dim(), 0);
  Mat space = first ? Mat(f, m.dim(), 0) : rad;
  for (int i = 0; i < m.dim() && gens.cols() < out.rank; ++i) {
    Mat ei(f, m.dim(), 1);
    ei(i, 0) = 1;
    if (space.cols() > 0 && solve_right(space, ei)) continue;
    gens = gens.cols() == 0 ? ei : hstack(gens, ei);
    space = space.cols() == 0 ? ei : hstack(space, ei);
  }
  out.generators = gens;

  std::vector<Mat> elems = m.element_matrices();
  out.map = Mat(f, m.dim(), out.rank * go);
  for (int i = 0; i < out.rank; ++i)
    for (int g = 0; g < go; ++g) {
      Mat col = elems[g] * gens.column(i);
      for (int row = 0; row < m.dim(); ++row) out.map(row, i * go + g) = col(row, 0);
    }
  return out;
}

namespace {

Mat regular_perm(const Group& g, const Field& f, int elem) {
  int n = g->order();
  Mat a(f, n, n);
  for (int x = 0; x < n; ++x) a(g->mult(elem, x), x) = 1;
  return a;
}

ModuleRep free_module(const Group& g, const Field& f, int rank) {
  std::vector<Mat> action;
  for (int s = 0; s < g->num_generators(); ++s)
    action.push_back(
        kron(Mat::identity(f, rank), regular_perm(g, f, g->generator_element(s))));
  return ModuleRep::make_unchecked(g, f, rank * g->order(), std::move(action));
}

struct KernelResult {
  ModuleRep mod;
  Mat inclusion;  // into kP^rank coordinates
};

KernelResult cover_kernel(const ModuleRep& m, const CoverResult& cover) {
  const Field& f = m.field();
  ModuleRep fr = free_module(m.group(), f, cover.rank);
  Mat k = kernel_basis(cover.map);
  std::vector<Mat> action;
  for (int s = 0; s < m.group()->num_generators(); ++s) {
    auto x = solve_right(k, fr.action(s) * k);
    if (!x) throw ValidationError("cover kernel is not action-closed");
    action.push_back(*x);
  }
  return {ModuleRep::make_unchecked(m.group(), f, k.cols(), std::move(action)), k};
}

ModuleRep omega1(const ModuleRep& m, int dim_cap) {
  CoverResult cover = minimal_cover(m);
  if (cover.rank * m.group()->order() > dim_cap)
    throw ValidationError("omega: term dimension exceeds cap " + std::to_string(dim_cap));
  KernelResult k = cover_kernel(m, cover);
  // The minimal syzygy of a module without free summands has none either.
  if (rank_of(norm_matrix(k.mod)) != 0)
    throw ValidationError("omega: minimal syzygy unexpectedly has free summands");
  return k.mod;
}

}  // namespace

StableClass omega(const ModuleRep& m, int r, int dim_cap) {
  require_p_group(m, "omega");
  StableClass cur = strip(m).cls;
  if (r == 0) return cur;
  int steps = r > 0 ? r : -r;
  for (int i = 0; i < steps; ++i) {
    if (cur.rep.dim() == 0) break;  // syzygies of the zero class stay zero
    if (r > 0)
      cur.rep = omega1(cur.rep, dim_cap);
    else
      cur.rep = dual_module(omega1(dual_module(cur.rep), dim_cap));
  }
  return cur;
}

IsoResult stable_iso(const StableClass& m, const StableClass& n, uint64_t seed,
                     int random_cap) {
  if (!m.rep.same_context(n.rep))
    throw ValidationError("stable_iso: group/field mismatch");
  IsoResult out;
  if (m.dim() != n.dim()) {
    out.verdict = IsoVerdict::NotIso;
    out.exhaustive = true;
    return out;
  }
  const Field& f = m.rep.field();
  if (m.dim() == 0) {
    out.verdict = IsoVerdict::Iso;
    out.iso = Mat::zero(f, 0, 0);
    out.exhaustive = true;
    return out;
  }
  HomSpace hs = hom_kG(m.rep, n.rep);
  out.hom_dim = hs.dim();
  if (hs.dim() == 0) {
    out.verdict = IsoVerdict::NotIso;
    out.exhaustive = true;
    return out;
  }

  int q = f->q();
  double log_combos = hs.dim() * std::log2(double(q));
  std::vector<uint8_t> coeffs(hs.dim(), 0);
  auto try_combo = [&]() -> bool {
    Mat cand = Mat::zero(f, n.dim(), m.dim());
    for (int i = 0; i < hs.dim(); ++i)
      if (coeffs[i]) cand = cand + scale(hs.basis[i], coeffs[i]);
    if (try_inverse(cand)) {
      out.iso = cand;
      return true;
    }
    return false;
  };

  if (log_combos <= 16.0) {
    out.exhaustive = true;
    long long total = 1;
    for (int i = 0; i < hs.dim(); ++i) total *= q;
    for (long long code = 1; code < total; ++code) {
      long long c = code;
      for (int i = 0; i < hs.dim(); ++i) {
        coeffs[i] = static_cast<uint8_t>(c % q);
        c /= q;
      }
      if (try_combo()) {
        out.verdict = IsoVerdict::Iso;
        return out;
      }
    }
    out.verdict = IsoVerdict::NotIso;
    return out;
  }

  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (uint64_t(m.dim()) + 1)));
  std::uniform_int_distribution<int> d(0, q - 1);
  for (int t = 0; t < random_cap; ++t) {
    for (int i = 0; i < hs.dim(); ++i) coeffs[i] = static_cast<uint8_t>(d(rng));
    if (std::all_of(coeffs.begin(), coeffs.end(), [](uint8_t c) { return c == 0; }))
      continue;
    if (try_combo()) {
      out.verdict = IsoVerdict::Iso;
      return out;
    }
  }
  out.verdict = IsoVerdict::Undetermined;
  return out;
}

bool is_endotrivial(const ModuleRep& m, int p) {
  auto reps = elementary_abelian_reps(m.group(), p);
  if (reps.empty()) return true;  // trivial stable category
  if (m.dim() == 0) return false;
  ModuleRep endos = tensor(m, dual_module(m));
  for (const Subgroup& e : reps) {
    StripResult s = strip(restrict_to(endos, e));
    if (s.cls.dim() != 1) return false;
  }
  return true;
}

CompleteResolution complete_resolution(const StableClass& m, int lo, int hi,
                                       int dim_cap) {
  require_p_group(m.rep, "complete_resolution");
  if (lo > 0 || hi < 0 || lo > hi)
    throw ValidationError("complete_resolution window must contain degree 0");
  const Group& g = m.rep.group();
  int go = g->order();

  CompleteResolution res;
  res.module = m.rep;
  res.lo = lo;
  res.hi = hi;

  // Positive side: minimal resolution of M; d_i = kernel inclusion composed
  // with the next cover map.
  std::vector<int> pos_ranks;
  std::vector<Mat> pos_bounds;  // d_i for i >= 1
  Mat eps;                      // cover map Q_0 -> M
  {
    ModuleRep cur = m.rep;
    Mat prev_incl;
    for (int i = 0; i <= hi; ++i) {
      CoverResult c = minimal_cover(cur);
      if (c.rank * go > dim_cap)
        throw ValidationError("complete_resolution: term dimension exceeds cap");
      pos_ranks.push_back(c.rank);
      if (i == 0)
        eps = c.map;
      else
        pos_bounds.push_back(prev_incl * c.map);
      if (i == hi) break;
      KernelResult k = cover_kernel(cur, c);
      prev_incl = k.inclusion;
      cur = k.mod;
    }
  }

  // Negative side: dual of the minimal resolution of M*. Standard free
  // modules are self-dual (inverse-transpose of a permutation matrix is the
  // matrix itself), so no basis fixups are needed.
  std::vector<int> neg_ranks;   // ranks of Q_{-1}, Q_{-2}, ...
  std::vector<Mat> neg_bounds;  // neg_bounds[j] = d_{-j} (so [0] is d_0)
  if (lo < 0) {
    ModuleRep cur = dual_module(m.rep);
    Mat prev_incl;
    for (int j = 0; j < -lo; ++j) {
      CoverResult c = minimal_cover(cur);
      if (c.rank * go > dim_cap)
        throw ValidationError("complete_resolution: term dimension exceeds cap");
      neg_ranks.push_back(c.rank);
      if (j == 0)
        neg_bounds.push_back(c.map.transpose() * eps);  // d_0 spliced through M
      else
        neg_bounds.push_back((prev_incl * c.map).transpose());
      if (j + 1 == -lo) break;
      KernelResult k = cover_kernel(cur, c);
      prev_incl = k.inclusion;
      cur = k.mod;
    }
  }

  for (int i = lo; i <= hi; ++i)
    res.ranks.push_back(i >= 0 ? pos_ranks[i] : neg_ranks[-i - 1]);
  for (int i = lo + 1; i <= hi; ++i) {
    if (i >= 1)
      res.boundaries.push_back(pos_bounds[i - 1]);
    else
      res.boundaries.push_back(neg_bounds[-i]);
  }
  return res;
}

namespace {

// Differential of Hom_kG(Q_*, N) at degree i: N^{r_i} -> N^{r_{i+1}},
// blocks evaluate the kP-entries of d_{i+1} on N.
Mat hom_differential(const CompleteResolution& res, const ModuleRep& n, int i) {
  const Field& f = n.field();
  const Group& g = res.module.group();
  int go = g->order();
  int ri = res.rank_at(i), rj = res.rank_at(i + 1);
  const Mat& d = res.boundary(i + 1);  // (ri*go) x (rj*go)
  std::vector<Mat> n_elems = n.element_matrices();
  int nn = n.dim();
  Mat out(f, rj * nn, ri * nn);
  for (int j = 0; j < rj; ++j)
    for (int l = 0; l < ri; ++l)
      for (int x = 0; x < go; ++x) {
        // kP-entry a_{lj}: coefficients read off the identity column of block j.
        uint8_t c = d(l * go + x, j * go + 0);
        if (!c) continue;
        const Mat& nx = n_elems[x];
        for (int a = 0; a < nn; ++a)
          for (int b = 0; b < nn; ++b) {
            uint8_t v = f->mul(c, nx(a, b));
            if (!v) continue;
            uint8_t& slot = out(j * nn + a, l * nn + b);
            slot = f->add(slot, v);
          }
      }
  return out;
}

}  // namespace

ExtHatResult ext_hat(const CompleteResolution& res, const ModuleRep& n, int i) {
  if (i - 1 < res.lo || i + 1 > res.hi)
    throw ValidationError("ext_hat: window does not cover [i-1, i+1]");
  if (!res.module.same_context(n))
    throw ValidationError("ext_hat: group/field mismatch");
  Mat delta_out = hom_differential(res, n, i);
  Mat delta_in = hom_differential(res, n, i - 1);
  ExtHatResult out;
  out.cocycles = kernel_basis(delta_out);
  out.dim = out.cocycles.cols() - rank_of(delta_in);
  return out;
}

ExtHatResult ext_hat(const StableClass& m, const ModuleRep& n, int i, int dim_cap) {
  CompleteResolution res =
      complete_resolution(m, std::min(i - 1, 0), std::max(i + 1, 0), dim_cap);
  return ext_hat(res, n, i);
}

}  // namespace endo
