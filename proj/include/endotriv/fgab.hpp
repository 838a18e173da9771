#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace endo {

using BigInt = boost::multiprecision::cpp_int;

// Dense integer matrix, arbitrary precision (SNF intermediates can grow).
class ZMat {
 public:
  ZMat() : rows_(0), cols_(0) {}
  ZMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
  static ZMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const BigInt& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
  BigInt& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  bool operator==(const ZMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  ZMat transpose() const;

 private:
  int rows_, cols_;
  std::vector<BigInt> a_;
};

ZMat operator*(const ZMat& a, const ZMat& b);
ZMat hstack(const ZMat& a, const ZMat& b);
ZMat vstack(const ZMat& a, const ZMat& b);
ZMat block_diag(const ZMat& a, const ZMat& b);

struct SnfResult {
  ZMat d;  // diagonal, non-negative, d1 | d2 | ...
  ZMat u;  // unimodular, d = u * a * v
  ZMat v;  // unimodular
  int rank = 0;
  std::vector<BigInt> diagonal() const;
};

SnfResult snf(const ZMat& a);

// Basis of the integer kernel lattice {x : a x = 0} as columns.
ZMat z_kernel(const ZMat& a);
// Particular integer solution of a x = b, if any.
std::optional<ZMat> z_solve(const ZMat& a, const ZMat& b);
BigInt z_det_abs(const ZMat& a);

// Finitely generated abelian group presented as Z^{n_gens} / row span of
// `relations`.
struct FgAbGroup {
  int n_gens = 0;
  ZMat relations;  // rows are relations
  std::vector<std::string> gen_labels;

  static FgAbGroup free(int n, std::vector<std::string> labels = {});
  static FgAbGroup cyclic(const BigInt& order, const std::string& label);
  static FgAbGroup trivial();

  bool is_trivial() const;
  bool finite() const;
  BigInt order() const;  // throws when infinite
};

struct CanonicalForm {
  int free_rank = 0;
  std::vector<BigInt> torsion;  // entries > 1, ascending divisibility
  bool operator==(const CanonicalForm& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};

CanonicalForm canonical(const FgAbGroup& g);
// "0", "Z/2", "Z ⊕ Z", "Z/2 ⊕ Z/4", ...
std::string canonical_string(const FgAbGroup& g);

// Is v (a column of coordinates) in the subgroup of g generated by the
// columns of gens (modulo g's relations)?
bool in_subgroup(const FgAbGroup& g, const ZMat& gens, const ZMat& v);
// Coordinates z with gens * z = v modulo relations, if any.
std::optional<ZMat> express_in_subgroup(const FgAbGroup& g, const ZMat& gens,
                                        const ZMat& v);

struct FgAbHom {
  FgAbGroup source;
  FgAbGroup target;
  ZMat images;  // columns = images of source generators, in target coordinates
};

// Well-definedness: every source relation maps into the target relation
// lattice.
bool hom_well_defined(const FgAbHom& f);
// Equality as maps (columns agree modulo target relations).
bool hom_equal(const FgAbHom& f, const FgAbHom& g);
FgAbHom hom_compose(const FgAbHom& g, const FgAbHom& f);  // g after f

struct SubgroupPresentation {
  FgAbGroup group;    // abstract presentation
  ZMat inclusion;     // columns = generator images in the ambient group
};

SubgroupPresentation kernel(const FgAbHom& f);
SubgroupPresentation image(const FgAbHom& f);
FgAbGroup cokernel(const FgAbHom& f);

FgAbGroup product(const FgAbGroup& a, const FgAbGroup& b);

struct PullbackResult {
  FgAbGroup group;   // {(a, b) : f(a) = g(b)}
  ZMat into_product; // columns = generators inside A x B coordinates
  FgAbHom to_a;
  FgAbHom to_b;
};

PullbackResult pullback(const FgAbHom& f, const FgAbHom& g);

// image(f) == kernel(g) inside g's source, by double inclusion.
bool exact_at(const FgAbHom& f, const FgAbHom& g);

// k^x for F_q: cyclic of order q - 1, generator labeled "λ" (lambda).
FgAbGroup cyclic_units(int q);

// All elements of a finite group as coordinate columns (test support and
// expression search), in deterministic mixed-radix order.
std::vector<ZMat> enumerate_elements(const FgAbGroup& g);

}  // namespace endo
