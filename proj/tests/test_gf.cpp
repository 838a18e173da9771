#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "endotriv/gf.hpp"

using namespace endo;

namespace {

Mat random_mat(const Field& F, int rows, int cols, std::mt19937_64& rng) {
  Mat m(F, rows, cols);
  std::uniform_int_distribution<int> d(0, F->q() - 1);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = static_cast<uint8_t>(d(rng));
  return m;
}

}  // namespace

TEST_CASE("fixed modulus table") {
  CHECK(FieldSpec::get(2, 2)->modulus() == std::vector<int>{1, 1, 1});
  CHECK(FieldSpec::get(2, 3)->modulus() == std::vector<int>{1, 1, 0, 1});
  CHECK(FieldSpec::get(3, 2)->modulus() == std::vector<int>{1, 0, 1});
  CHECK(FieldSpec::get(5, 2)->modulus() == std::vector<int>{1, 1, 1});
  CHECK(FieldSpec::get(3, 3)->modulus() == std::vector<int>{1, 2, 0, 1});
  CHECK(FieldSpec::get(7, 2)->modulus() == std::vector<int>{3, 1, 1});
}

TEST_CASE("field_mul examples") {
  auto F4 = FieldSpec::get(2, 2);
  uint8_t w = F4->encode({0, 1});
  uint8_t w2 = F4->mul(w, w);
  CHECK(F4->decode(w2) == std::vector<int>{1, 1});  // w^2 = w + 1
  CHECK(F4->mul(w, w2) == F4->one());               // w^3 = 1

  auto F3 = FieldSpec::get(3, 1);
  CHECK(F3->mul(2, 2) == 1);

  auto F2 = FieldSpec::get(2, 1);
  CHECK(F2->mul(1, 1) == 1);
}

TEST_CASE("field axioms by exhaustion for q <= 9") {
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    auto F = FieldSpec::get(p, e);
    int q = F->q();
    for (int a = 0; a < q; ++a) {
      CHECK(F->add(a, 0) == a);
      CHECK(F->mul(a, 1) == a);
      CHECK(F->add(a, F->neg(a)) == 0);
      if (a != 0) CHECK(F->mul(a, F->inv(a)) == 1);
      for (int b = 0; b < q; ++b) {
        CHECK(F->add(a, b) == F->add(b, a));
        CHECK(F->mul(a, b) == F->mul(b, a));
        for (int c = 0; c < q; ++c) {
          CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
          CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
          CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("rejects bad field specs") {
  CHECK_THROWS_AS(FieldSpec::get(4, 1), ValidationError);
  CHECK_THROWS_AS(FieldSpec::get(2, 8), ValidationError);
  CHECK_THROWS_AS(FieldSpec::get(11, 3), ValidationError);  // q > 128
}

TEST_CASE("rref examples") {
  auto F3 = FieldSpec::get(3, 1);
  Mat id = Mat::identity(F3, 3);
  auto r = rref(id);
  CHECK(r.rank == 3);
  CHECK(r.pivots == std::vector<int>{0, 1, 2});
  CHECK(r.rref == id);

  Mat ones(F3, 3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ones(i, j) = 1;
  CHECK(rref(ones).rank == 1);

  Mat z(F3, 2, 5);
  CHECK(rref(z).rank == 0);
}

TEST_CASE("rref transform property") {
  std::mt19937_64 rng(7);
  for (auto [p, e] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
    auto F = FieldSpec::get(p, e);
    for (int t = 0; t < 30; ++t) {
      Mat m = random_mat(F, 1 + t % 6, 1 + (t * 3) % 7, rng);
      auto r = rref(m);
      CHECK(r.transform * m == r.rref);
      CHECK(try_inverse(r.transform).has_value());
    }
  }
}

TEST_CASE("solve_right examples") {
  auto F2 = FieldSpec::get(2, 1);
  Mat id = Mat::identity(F2, 2);
  Mat b(F2, 2, 1);
  b(0, 0) = 1;
  auto x = solve_right(id, b);
  REQUIRE(x.has_value());
  CHECK(*x == b);

  Mat zero(F2, 2, 1);
  CHECK(!solve_right(Mat::zero(F2, 2, 2), b).has_value());

  Mat a(F2, 2, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  auto x2 = solve_right(a, Mat::zero(F2, 2, 1));
  REQUIRE(x2.has_value());
  CHECK(x2->is_zero());  // free variable pinned to 0
}

TEST_CASE("kernel_basis examples") {
  auto F3 = FieldSpec::get(3, 1);
  CHECK(kernel_basis(Mat::identity(F3, 4)).cols() == 0);

  Mat ones(F3, 3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ones(i, j) = 1;
  Mat k = kernel_basis(ones);
  CHECK(k.cols() == 2);
  CHECK((ones * k).is_zero());

  auto F2 = FieldSpec::get(2, 1);
  Mat row(F2, 1, 2);
  row(0, 0) = 1;
  row(0, 1) = 1;
  Mat kb = kernel_basis(row);
  REQUIRE(kb.cols() == 1);
  CHECK(kb(0, 0) == 1);
  CHECK(kb(1, 0) == 1);
}

TEST_CASE("kernel basis columns independent and killed") {
  std::mt19937_64 rng(11);
  auto F = FieldSpec::get(2, 2);
  for (int t = 0; t < 50; ++t) {
    Mat m = random_mat(F, 2 + t % 5, 2 + (t * 7) % 6, rng);
    Mat k = kernel_basis(m);
    CHECK((m * k).is_zero());
    CHECK(rank_of(k) == k.cols());
    CHECK(k.cols() == m.cols() - rank_of(m));
  }
}

TEST_CASE("rank equals rank of transpose on 200 random matrices") {
  std::mt19937_64 rng(3);
  std::vector<Field> fields = {FieldSpec::get(2, 1), FieldSpec::get(3, 1),
                               FieldSpec::get(2, 2), FieldSpec::get(5, 1)};
  for (int t = 0; t < 200; ++t) {
    const Field& F = fields[t % fields.size()];
    Mat m = random_mat(F, 1 + t % 7, 1 + (t * 5) % 8, rng);
    CHECK(rank_of(m) == rank_of(m.transpose()));
  }
}

TEST_CASE("kron examples and mixed product") {
  auto F3 = FieldSpec::get(3, 1);
  CHECK(kron(Mat::identity(F3, 2), Mat::identity(F3, 3)) == Mat::identity(F3, 6));

  std::mt19937_64 rng(5);
  Mat a = random_mat(F3, 2, 3, rng);
  Mat one(F3, 1, 1);
  one(0, 0) = 1;
  CHECK(kron(a, one) == a);

  Mat b = random_mat(F3, 4, 5, rng);
  Mat k = kron(a, b);
  CHECK(k.rows() == 8);
  CHECK(k.cols() == 15);

  for (int t = 0; t < 20; ++t) {
    Mat A = random_mat(F3, 2, 3, rng);
    Mat B = random_mat(F3, 3, 2, rng);
    Mat C = random_mat(F3, 3, 4, rng);
    Mat D = random_mat(F3, 2, 3, rng);
    CHECK(kron(A, B) * kron(C, D) == kron(A * C, B * D));
  }
}

TEST_CASE("inverse") {
  auto F5 = FieldSpec::get(5, 1);
  std::mt19937_64 rng(9);
  int found = 0;
  while (found < 10) {
    Mat m = random_mat(F5, 4, 4, rng);
    auto inv = try_inverse(m);
    if (!inv) continue;
    ++found;
    CHECK(*inv * m == Mat::identity(F5, 4));
    CHECK(m * *inv == Mat::identity(F5, 4));
  }
}
