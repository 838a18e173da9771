#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "endotriv/group.hpp"
#include "support.hpp"

using namespace endo;
using namespace endo::testing;

TEST_CASE("enumerate basic groups") {
  CHECK(quaternion8()->order() == 8);
  CHECK(cyclic(6)->order() == 6);
  CHECK(trivial_group()->order() == 1);
  CHECK(dihedral8()->order() == 8);
  CHECK(c3xc3()->order() == 9);
  CHECK(symmetric3()->order() == 6);
  CHECK(alternating4()->order() == 12);
}

TEST_CASE("enumeration is deterministic") {
  auto a = quaternion8();
  auto b = quaternion8();
  for (int i = 0; i < a->order(); ++i) {
    CHECK(a->element(i) == b->element(i));
    CHECK(a->word(i) == b->word(i));
  }
}

TEST_CASE("cap errors out") {
  Perm cycle(64);
  for (int i = 0; i < 64; ++i) cycle[i] = (i + 1) % 64;
  CHECK_THROWS_AS(FiniteGroup::enumerate({cycle}, {"g"}, "", 10), ValidationError);
}

TEST_CASE("express_word round-trips on every element") {
  for (const auto& g : {cyclic(4), cyclic(9), quaternion8(), dihedral8(), c3xc3(),
                        symmetric3(), alternating4()}) {
    for (int i = 0; i < g->order(); ++i) {
      CHECK(g->evaluate_word(g->word(i)) == i);
      auto parsed = g->parse_word(g->word_string(i));
      REQUIRE(parsed.has_value());
      CHECK(g->evaluate_word(*parsed) == i);
    }
  }
}

TEST_CASE("identity word is empty, generator word is its label") {
  auto g = cyclic(4);
  CHECK(g->word_string(0) == "");
  int gen = g->generator_element(0);
  CHECK(g->word_string(gen) == "g");
  // g^3 is reached as g' (inverse edge) in one step.
  int g3 = g->mult(g->mult(gen, gen), gen);
  CHECK(g->word(g3).size() == 1);
  CHECK(g->word_string(g3) == "g'");
}

TEST_CASE("sylow_p orders are exact p-parts") {
  std::vector<Group> corpus = {cyclic(2), cyclic(3), cyclic(4), cyclic(6), cyclic(8),
                               cyclic(9), quaternion8(), dihedral8(), c3xc3(),
                               symmetric3(), alternating4(), c12()};
  for (const auto& g : corpus)
    for (int p : {2, 3, 5}) {
      Subgroup s = sylow_p(g, p);
      CHECK(s.order() == p_part(g->order(), p));
      CHECK(g->order() % s.order() == 0);
    }
}

TEST_CASE("sylow examples") {
  CHECK(sylow_p(cyclic(6), 2).order() == 2);
  CHECK(sylow_p(quaternion8(), 2).order() == 8);
  CHECK(sylow_p(cyclic(6), 5).order() == 1);
}

TEST_CASE("elementary abelian classes: Q8 has only the center") {
  auto reps = elementary_abelian_reps(quaternion8(), 2);
  REQUIRE(reps.size() == 1);
  CHECK(reps[0].order() == 2);
  // The center: its non-identity element commutes with everything.
  int z = reps[0].elements()[1];
  auto g = quaternion8();
  for (int x = 0; x < g->order(); ++x) CHECK(g->mult(z, x) == g->mult(x, z));
}

TEST_CASE("elementary abelian classes: D8 has five") {
  auto g = dihedral8();
  auto reps = elementary_abelian_reps(g, 2);
  REQUIRE(reps.size() == 5);
  std::vector<int> orders;
  for (const auto& r : reps) orders.push_back(r.order());
  CHECK(orders == std::vector<int>{2, 2, 2, 4, 4});
}

TEST_CASE("elementary abelian classes: none at a prime not dividing |G|") {
  CHECK(elementary_abelian_reps(cyclic(3), 2).empty());
}

TEST_CASE("elementary abelian exhaustiveness audit for |G| <= 64") {
  for (const auto& g : {quaternion8(), dihedral8(), c3xc3(), symmetric3(),
                        alternating4(), cyclic(8), c12()}) {
    for (int p : {2, 3}) {
      auto all = all_elementary_abelian(g, p);
      // Every listed subgroup is elementary abelian of exponent p.
      for (const auto& s : all) {
        for (int a : s.elements())
          if (a != 0) CHECK(g->element_order(a) == p);
        for (int a : s.elements())
          for (int b : s.elements()) CHECK(g->mult(a, b) == g->mult(b, a));
        CHECK(g->order() % s.order() == 0);  // Lagrange
      }
      // Brute-force cross-check: every subset closure generated by commuting
      // order-p elements appears.
      std::set<std::vector<int>> listed;
      for (const auto& s : all) listed.insert(s.elements());
      for (int x = 1; x < g->order(); ++x) {
        if (g->element_order(x) != p) continue;
        CHECK(listed.count(Subgroup::generated_by(g, {x}).elements()) == 1);
        for (int y = x + 1; y < g->order(); ++y) {
          if (g->element_order(y) != p || g->mult(x, y) != g->mult(y, x)) continue;
          auto s = Subgroup::generated_by(g, {x, y});
          bool elem_ab = true;
          for (int a : s.elements())
            if (a != 0 && g->element_order(a) != p) elem_ab = false;
          if (elem_ab) CHECK(listed.count(s.elements()) == 1);
        }
      }
      // Class representatives pairwise not conjugate; conjugates cover all.
      auto reps = elementary_abelian_reps(g, p);
      for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j)
          CHECK(!conjugacy_of_subgroups(*g, reps[i], reps[j]).has_value());
      size_t covered = 0;
      for (const auto& s : all)
        for (const auto& r : reps)
          if (conjugacy_of_subgroups(*g, r, s)) {
            ++covered;
            break;
          }
      CHECK(covered == all.size());
    }
  }
}

TEST_CASE("conjugacy of subgroups in D8") {
  auto g = dihedral8();
  auto reps = elementary_abelian_reps(g, 2);
  // Identity conjugates a subgroup to itself.
  CHECK(conjugacy_of_subgroups(*g, reps[0], reps[0]) == 0);
  // The two V4s are not conjugate.
  CHECK(!conjugacy_of_subgroups(*g, reps[3], reps[4]).has_value());
  // Two non-central reflections <s> and <r^2 s> are conjugate via a rotation.
  int r = g->generator_element(0), s = g->generator_element(1);
  int r2s = g->mult(g->mult(r, r), s);
  auto h1 = Subgroup::generated_by(g, {s});
  auto h2 = Subgroup::generated_by(g, {r2s});
  auto c = conjugacy_of_subgroups(*g, h1, h2);
  REQUIRE(c.has_value());
  CHECK(*c != 0);
}

TEST_CASE("validate_embedding") {
  auto c2 = cyclic(2, "c");
  auto c4 = cyclic(4, "b");
  auto c6 = cyclic(6, "a");

  GroupHom id{c2, c2, {c2->generator_element(0)}};
  CHECK(validate_embedding(id).ok);

  // Involution to an element of order 4 is not a homomorphism.
  GroupHom bad{c2, c4, {c4->generator_element(0)}};
  auto chk = validate_embedding(bad);
  CHECK(!chk.ok);
  CHECK(chk.reason.find("NotHomomorphism") == 0);

  // Involution to the order-2 element of C6.
  int a = c6->generator_element(0);
  int a3 = c6->mult(c6->mult(a, a), a);
  GroupHom good{c2, c6, {a3}};
  CHECK(validate_embedding(good).ok);

  // Collapse map is a homomorphism but not injective.
  GroupHom collapse{c2, c6, {0}};
  CHECK(validate_hom(collapse).ok);
  CHECK(validate_embedding(collapse).reason == "NotInjective");
}

TEST_CASE("subgroup machinery") {
  auto g = dihedral8();
  auto p_subs = all_p_subgroups(g, 2);
  // D8: 1xC4, 4xC2 (reflections) + 1xC2 (center), 2xV4, D8 itself = 9 non-trivial.
  CHECK(p_subs.size() == 9);
  for (const auto& s : p_subs) {
    CHECK(g->order() % s.order() == 0);
    CHECK(s.group()->order() == s.order());
    for (int i = 0; i < s.group()->order(); ++i)
      CHECK(s.contains(s.to_parent(i)));
  }
}
