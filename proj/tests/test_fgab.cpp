#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "endotriv/fgab.hpp"

using namespace endo;

namespace {

ZMat zmat(std::vector<std::vector<long long>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  ZMat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  return m;
}

FgAbGroup group_of(std::vector<std::vector<long long>> rel_rows, int n_gens) {
  FgAbGroup g = FgAbGroup::free(n_gens);
  ZMat rel(static_cast<int>(rel_rows.size()), n_gens);
  for (size_t i = 0; i < rel_rows.size(); ++i)
    for (int j = 0; j < n_gens; ++j) rel(static_cast<int>(i), j) = rel_rows[i][j];
  g.relations = rel;
  return g;
}

}  // namespace

TEST_CASE("snf examples") {
  auto s = snf(zmat({{2, 0}, {0, 3}}));
  CHECK(s.d(0, 0) == 1);
  CHECK(s.d(1, 1) == 6);

  auto id = snf(ZMat::identity(3));
  CHECK(id.d == ZMat::identity(3));
  CHECK(id.rank == 3);

  auto z = snf(ZMat(2, 3));
  CHECK(z.rank == 0);
}

TEST_CASE("snf properties on random matrices") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int t = 0; t < 120; ++t) {
    int m = 1 + t % 5, n = 1 + (t * 3) % 5;
    ZMat a(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = d(rng);
    SnfResult s = snf(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(abs(z_det_abs(s.u)) == 1);
    CHECK(abs(z_det_abs(s.v)) == 1);
    auto diag = s.diagonal();
    for (size_t i = 0; i + 1 < diag.size(); ++i) {
      CHECK(diag[i] >= 0);
      if (diag[i] != 0) CHECK(diag[i + 1] % diag[i] == 0);
    }
    for (int i = 0; i < s.d.rows(); ++i)
      for (int j = 0; j < s.d.cols(); ++j)
        if (i != j) CHECK(s.d(i, j) == 0);
    if (m == n) CHECK(z_det_abs(a) == z_det_abs(s.d));
  }
}

TEST_CASE("canonical forms") {
  CHECK(canonical(group_of({{2, 0}, {0, 2}}, 2)) == CanonicalForm{0, {2, 2}});
  CHECK(canonical(FgAbGroup::free(1)) == CanonicalForm{1, {}});
  CHECK(canonical(group_of({{2, -2}}, 2)) == CanonicalForm{1, {2}});
  CHECK(canonical_string(group_of({{2, 0}, {0, 2}}, 2)) == "Z/2 ⊕ Z/2");
  CHECK(canonical_string(FgAbGroup::trivial()) == "0");
  CHECK(canonical_string(group_of({{2, 0}, {0, 8}}, 2)) == "Z/2 ⊕ Z/8");
  CHECK(canonical_string(group_of({{6}}, 1)) == "Z/6");
  CHECK(canonical_string(FgAbGroup::free(2)) == "Z^2");
  CHECK(canonical_string(FgAbGroup::free(1)) == "Z");
}

TEST_CASE("kernel, image, cokernel") {
  // zero map Z/2 -> Z/2
  FgAbGroup z2 = FgAbGroup::cyclic(2, "a");
  FgAbHom zero{z2, z2, zmat({{0}})};
  CHECK(canonical(kernel(zero).group) == CanonicalForm{0, {2}});
  CHECK(canonical(image(zero).group) == CanonicalForm{0, {}});
  CHECK(canonical(cokernel(zero)) == CanonicalForm{0, {2}});

  // difference map Z/2 x Z/2 -> Z/2
  FgAbGroup z2z2 = product(z2, z2);
  FgAbHom diff{z2z2, z2, zmat({{1, -1}})};
  CHECK(hom_well_defined(diff));
  CHECK(canonical(kernel(diff).group) == CanonicalForm{0, {2}});

  // x2 : Z -> Z
  FgAbGroup z = FgAbGroup::free(1);
  FgAbHom twice{z, z, zmat({{2}})};
  CHECK(canonical(kernel(twice).group) == CanonicalForm{0, {}});
  CHECK(canonical(cokernel(twice)) == CanonicalForm{0, {2}});
}

TEST_CASE("order bookkeeping |A| = |ker| * |im|") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int t = 0; t < 40; ++t) {
    FgAbGroup a = group_of({{2, 0}, {0, 4}}, 2);
    FgAbGroup b = group_of({{8, 0}, {0, 2}}, 2);
    ZMat img(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) img(i, j) = d(rng);
    FgAbHom f{a, b, img};
    if (!hom_well_defined(f)) continue;
    CHECK(kernel(f).group.order() * image(f).group.order() == a.order());
  }
}

TEST_CASE("pullback examples") {
  FgAbGroup z2 = FgAbGroup::cyclic(2, "a");
  FgAbGroup zero = FgAbGroup::trivial();

  // pullback over the trivial group = product
  FgAbHom fa{z2, zero, ZMat(0, 1)};
  FgAbHom fb{z2, zero, ZMat(0, 1)};
  CHECK(canonical(pullback(fa, fb).group) == CanonicalForm{0, {2, 2}});

  // pullback of identities = diagonal
  FgAbHom id{z2, z2, zmat({{1}})};
  CHECK(canonical(pullback(id, id).group) == CanonicalForm{0, {2}});

  // iso against the zero group on the other side
  FgAbHom from_zero{zero, z2, ZMat(1, 0)};
  CHECK(canonical(pullback(id, from_zero).group) == CanonicalForm{0, {}});
}

TEST_CASE("pullback projections commute") {
  FgAbGroup z4 = FgAbGroup::cyclic(4, "a");
  FgAbGroup z2 = FgAbGroup::cyclic(2, "b");
  FgAbHom f{z4, z2, zmat({{1}})};
  FgAbHom g{z4, z2, zmat({{1}})};
  PullbackResult pb = pullback(f, g);
  CHECK(hom_equal(hom_compose(f, pb.to_a), hom_compose(g, pb.to_b)));
  CHECK(canonical(pb.group) == CanonicalForm{0, {2, 4}});  // {(a,b): a = b mod 2}
}

TEST_CASE("exactness checker") {
  // Z -x2-> Z -> Z/2 exact at the middle Z.
  FgAbGroup z = FgAbGroup::free(1);
  FgAbGroup z2 = FgAbGroup::cyclic(2, "c");
  FgAbHom twice{z, z, zmat({{2}})};
  FgAbHom proj{z, z2, zmat({{1}})};
  CHECK(exact_at(twice, proj));
  FgAbHom id{z, z, zmat({{1}})};
  CHECK(!exact_at(id, proj));
}

TEST_CASE("exactness agrees with brute-force enumeration on finite groups") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> d(-4, 4);
  int tested = 0;
  while (tested < 25) {
    FgAbGroup a = group_of({{4, 0}, {0, 4}}, 2);
    FgAbGroup b = group_of({{2, 0}, {0, 8}}, 2);
    FgAbGroup c = group_of({{4}}, 1);
    ZMat fi(2, 2), gi(1, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) fi(i, j) = d(rng);
    for (int j = 0; j < 2; ++j) gi(0, j) = d(rng);
    FgAbHom f{a, b, fi}, g{b, c, gi};
    if (!hom_well_defined(f) || !hom_well_defined(g)) continue;
    ++tested;

    // Brute force: image of f and kernel of g as element sets of b.
    auto belems = enumerate_elements(b);
    auto reduce = [&](const ZMat& v) {
      // canonical form of an element of b: match against enumerate output
      for (size_t i = 0; i < belems.size(); ++i) {
        ZMat diff(v.rows(), 1);
        for (int r = 0; r < v.rows(); ++r) diff(r, 0) = v(r, 0) - belems[i](r, 0);
        if (z_solve(b.relations.transpose(), diff)) return i;
      }
      throw std::logic_error("element not found");
    };
    std::set<size_t> img_set;
    for (const ZMat& x : enumerate_elements(a)) img_set.insert(reduce(fi * x));
    std::set<size_t> ker_set;
    for (size_t i = 0; i < belems.size(); ++i) {
      ZMat gx = gi * belems[i];
      if (z_solve(c.relations.transpose(), gx)) ker_set.insert(i);
    }
    CHECK(exact_at(f, g) == (img_set == ker_set));
  }
}

TEST_CASE("cyclic_units") {
  CHECK(cyclic_units(2).is_trivial());
  CHECK(canonical(cyclic_units(4)) == CanonicalForm{0, {3}});
  CHECK(canonical(cyclic_units(9)) == CanonicalForm{0, {8}});
}

TEST_CASE("membership and expression") {
  FgAbGroup z8 = FgAbGroup::cyclic(8, "g");
  ZMat gens = zmat({{2}});
  CHECK(in_subgroup(z8, gens, zmat({{6}})));
  CHECK(!in_subgroup(z8, gens, zmat({{3}})));
  auto e = express_in_subgroup(z8, gens, zmat({{6}}));
  REQUIRE(e.has_value());
  CHECK(((*e)(0, 0) * 2 - 6) % 8 == 0);
}
