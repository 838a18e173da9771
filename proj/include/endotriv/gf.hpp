#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace endo {

// Raised for malformed user input (bad schema, bad field spec, invalid module
// data). CLI maps it to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A small finite field F_q, q = p^e <= 128, with a fixed modulus polynomial
// per (p, e) so serialized data is bit-exact across runs.
//
// Elements are codes 0..q-1; the base-p digits of a code are the coordinates
// of the element in the power basis 1, x, ..., x^{e-1} of F_p[x]/(modulus).
class FieldSpec {
 public:
  // Cached, validated constructor. Throws ValidationError for unsupported
  // (p, e).
  static std::shared_ptr<const FieldSpec> get(int p, int e);

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  // Monic, length e+1, low degree first.
  const std::vector<int>& modulus() const { return modulus_; }

  uint8_t zero() const { return 0; }
  uint8_t one() const { return 1; }
  uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q_ + b]; }
  uint8_t sub(uint8_t a, uint8_t b) const { return add_[a * q_ + neg_[b]]; }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q_ + b]; }
  uint8_t neg(uint8_t a) const { return neg_[a]; }
  uint8_t inv(uint8_t a) const;
  uint8_t pow(uint8_t a, long long n) const;

  // Image of an integer in the prime field.
  uint8_t from_int(long long n) const;
  uint8_t encode(const std::vector<int>& coeffs) const;
  std::vector<int> decode(uint8_t code) const;

  const uint8_t* add_data() const { return add_.data(); }
  const uint8_t* mul_data() const { return mul_.data(); }

  bool same(const FieldSpec& o) const {
    return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_;
  }
  std::string name() const;

 private:
  FieldSpec(int p, int e, std::vector<int> modulus);
  int p_, e_, q_;
  std::vector<int> modulus_;
  std::vector<uint8_t> add_, mul_, neg_, inv_;
};

using Field = std::shared_ptr<const FieldSpec>;

// Dense matrix over a FieldSpec, row major, entries stored as field codes.
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(Field f, int rows, int cols)
      : field_(std::move(f)), rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * cols, 0) {}

  static Mat identity(const Field& f, int n);
  static Mat zero(const Field& f, int rows, int cols) { return Mat(f, rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Field& field() const { return field_; }

  uint8_t operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  uint8_t& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const uint8_t* row(int i) const { return a_.data() + static_cast<size_t>(i) * cols_; }
  uint8_t* row(int i) { return a_.data() + static_cast<size_t>(i) * cols_; }

  bool is_zero() const;
  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat transpose() const;
  Mat submatrix(int r0, int c0, int nr, int nc) const;
  Mat column(int j) const { return submatrix(0, j, rows_, 1); }

 private:
  Field field_;
  int rows_, cols_;
  std::vector<uint8_t> a_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat scale(const Mat& a, uint8_t c);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);
// Block diagonal with a in the top-left corner.
Mat block_diag(const Mat& a, const Mat& b);

struct RrefResult {
  Mat rref;
  int rank = 0;
  std::vector<int> pivots;
  // transform * input == rref; identity-extended, always invertible.
  Mat transform;
};

RrefResult rref(const Mat& m, bool with_transform = true);
int rank_of(const Mat& m);
// X with a*X == b, free variables set to 0 in pivot order; nullopt when the
// system is inconsistent.
std::optional<Mat> solve_right(const Mat& a, const Mat& b);
// Columns form a basis of the right kernel, ordered by free-column index.
Mat kernel_basis(const Mat& m);
Mat kron(const Mat& a, const Mat& b);
std::optional<Mat> try_inverse(const Mat& m);
Mat inverse(const Mat& m);

}  // namespace endo
