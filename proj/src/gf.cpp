#include "endotriv/gf.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>

namespace endo {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using Poly = std::vector<int>;  // low degree first, coefficients in [0, p)

Poly poly_trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly poly_mul(const Poly& f, const Poly& g, int p) {
  if (f.empty() || g.empty()) return {};
  Poly h(f.size() + g.size() - 1, 0);
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < g.size(); ++j)
      h[i + j] = (h[i + j] + f[i] * g[j]) % p;
  return poly_trim(h);
}

// Remainder of f by monic g.
Poly poly_rem(Poly f, const Poly& g, int p) {
  f = poly_trim(f);
  int dg = static_cast<int>(g.size()) - 1;
  while (static_cast<int>(f.size()) - 1 >= dg) {
    int shift = static_cast<int>(f.size()) - 1 - dg;
    int c = f.back();
    for (int i = 0; i <= dg; ++i)
      f[shift + i] = ((f[shift + i] - c * g[i]) % p + p) % p;
    f = poly_trim(f);
    if (f.empty()) break;
  }
  return f;
}

bool poly_irreducible(const Poly& f, int p) {
  int deg = static_cast<int>(f.size()) - 1;
  if (deg <= 0) return false;
  if (deg == 1) return true;
  // No monic divisor of degree 1..deg/2.
  for (int d = 1; d <= deg / 2; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      long long c = code;
      for (int i = 0; i < d; ++i) {
        g[i] = static_cast<int>(c % p);
        c /= p;
      }
      g[d] = 1;
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

struct ModulusEntry {
  int p, e;
  std::vector<int> mod;
};

// Fixed per (p, e) so that serialized field elements mean the same thing in
// every run and every implementation of this format.
const ModulusEntry kModulusTable[] = {
    {2, 2, {1, 1, 1}},     // x^2 + x + 1
    {2, 3, {1, 1, 0, 1}},  // x^3 + x + 1
    {3, 2, {1, 0, 1}},     // x^2 + 1
    {5, 2, {1, 1, 1}},     // x^2 + x + 1
    {3, 3, {1, 2, 0, 1}},  // x^3 + 2x + 1
    {7, 2, {3, 1, 1}},     // x^2 + x + 3
};

std::vector<int> modulus_for(int p, int e) {
  for (const auto& entry : kModulusTable)
    if (entry.p == p && entry.e == e) return entry.mod;
  // Lexicographically smallest monic irreducible of degree e.
  long long count = 1;
  for (int i = 0; i < e; ++i) count *= p;
  for (long long code = 0; code < count; ++code) {
    Poly f(e + 1, 0);
    long long c = code;
    for (int i = 0; i < e; ++i) {
      f[i] = static_cast<int>(c % p);
      c /= p;
    }
    f[e] = 1;
    if (poly_irreducible(f, p)) return f;
  }
  throw ValidationError("no irreducible modulus found for p=" + std::to_string(p) +
                        " e=" + std::to_string(e));
}

}  // namespace

FieldSpec::FieldSpec(int p, int e, std::vector<int> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
  q_ = 1;
  for (int i = 0; i < e_; ++i) q_ *= p_;

  auto digits = [&](int code) {
    Poly d(e_, 0);
    for (int i = 0; i < e_; ++i) {
      d[i] = code % p_;
      code /= p_;
    }
    return d;
  };
  auto code_of = [&](const Poly& f) {
    int code = 0;
    for (int i = e_ - 1; i >= 0; --i)
      code = code * p_ + (i < static_cast<int>(f.size()) ? f[i] : 0);
    return code;
  };

  add_.assign(static_cast<size_t>(q_) * q_, 0);
  mul_.assign(static_cast<size_t>(q_) * q_, 0);
  neg_.assign(q_, 0);
  inv_.assign(q_, 0);
  for (int a = 0; a < q_; ++a) {
    Poly fa = digits(a);
    Poly na(e_, 0);
    for (int i = 0; i < e_; ++i) na[i] = (p_ - fa[i]) % p_;
    neg_[a] = static_cast<uint8_t>(code_of(na));
    for (int b = 0; b < q_; ++b) {
      Poly fb = digits(b);
      Poly s(e_, 0);
      for (int i = 0; i < e_; ++i) s[i] = (fa[i] + fb[i]) % p_;
      add_[static_cast<size_t>(a) * q_ + b] = static_cast<uint8_t>(code_of(s));
      Poly prod = poly_rem(poly_mul(poly_trim(fa), poly_trim(fb), p_), modulus_, p_);
      mul_[static_cast<size_t>(a) * q_ + b] = static_cast<uint8_t>(code_of(prod));
    }
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[static_cast<size_t>(a) * q_ + b] == 1) {
        inv_[a] = static_cast<uint8_t>(b);
        break;
      }
}

std::shared_ptr<const FieldSpec> FieldSpec::get(int p, int e) {
  if (!is_prime(p) || p > 97)
    throw ValidationError("field characteristic must be a prime <= 97, got " + std::to_string(p));
  if (e < 1 || e > 4)
    throw ValidationError("field extension degree must be in 1..4, got " + std::to_string(e));
  long long q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  if (q > 128)
    throw ValidationError("field size q = p^e must be <= 128, got " + std::to_string(q));

  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const FieldSpec>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, e);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<int> mod = modulus_for(p, e);
  if (!poly_irreducible(mod, p))
    throw ValidationError("modulus for F_" + std::to_string(q) + " is not irreducible");
  auto f = std::shared_ptr<const FieldSpec>(new FieldSpec(p, e, std::move(mod)));
  cache[key] = f;
  return f;
}

uint8_t FieldSpec::inv(uint8_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero in " + name());
  return inv_[a];
}

uint8_t FieldSpec::pow(uint8_t a, long long n) const {
  if (n < 0) {
    a = inv(a);
    n = -n;
  }
  uint8_t r = 1, base = a;
  while (n > 0) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

uint8_t FieldSpec::from_int(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return static_cast<uint8_t>(r);
}

uint8_t FieldSpec::encode(const std::vector<int>& coeffs) const {
  if (static_cast<int>(coeffs.size()) != e_)
    throw ValidationError("field element must have " + std::to_string(e_) +
                          " coefficients, got " + std::to_string(coeffs.size()));
  int code = 0;
  for (int i = e_ - 1; i >= 0; --i) {
    if (coeffs[i] < 0 || coeffs[i] >= p_)
      throw ValidationError("field element coefficient out of range [0, p)");
    code = code * p_ + coeffs[i];
  }
  return static_cast<uint8_t>(code);
}

std::vector<int> FieldSpec::decode(uint8_t code) const {
  std::vector<int> coeffs(e_, 0);
  int c = code;
  for (int i = 0; i < e_; ++i) {
    coeffs[i] = c % p_;
    c /= p_;
  }
  return coeffs;
}

std::string FieldSpec::name() const { return "F_" + std::to_string(q_); }

// ---------------------------------------------------------------------------

Mat Mat::identity(const Field& f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](uint8_t x) { return x == 0; });
}

Mat Mat::transpose() const {
  Mat t(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::submatrix(int r0, int c0, int nr, int nc) const {
  Mat s(field_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) s(i, j) = (*this)(r0 + i, c0 + j);
  return s;
}

namespace {
void check_same_field(const Mat& a, const Mat& b, const char* op) {
  if (!a.field() || !b.field() || !a.field()->same(*b.field()))
    throw ValidationError(std::string("matrix field mismatch in ") + op);
}
}  // namespace

Mat operator+(const Mat& a, const Mat& b) {
  check_same_field(a, b, "+");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("matrix shape mismatch in +");
  const FieldSpec& F = *a.field();
  Mat c(a.field(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = F.add(a(i, j), b(i, j));
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  check_same_field(a, b, "-");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("matrix shape mismatch in -");
  const FieldSpec& F = *a.field();
  Mat c(a.field(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = F.sub(a(i, j), b(i, j));
  return c;
}

Mat operator*(const Mat& a, const Mat& b) {
  check_same_field(a, b, "*");
  if (a.cols() != b.rows()) throw ValidationError("matrix shape mismatch in *");
  const FieldSpec& F = *a.field();
  const uint8_t* mt = F.mul_data();
  const uint8_t* at = F.add_data();
  const int q = F.q();
  Mat c(a.field(), a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    const uint8_t* arow = a.row(i);
    uint8_t* crow = c.row(i);
    for (int k = 0; k < a.cols(); ++k) {
      uint8_t av = arow[k];
      if (!av) continue;
      const uint8_t* mrow = mt + static_cast<size_t>(av) * q;
      const uint8_t* brow = b.row(k);
      for (int j = 0; j < b.cols(); ++j) {
        uint8_t prod = mrow[brow[j]];
        if (prod) crow[j] = at[static_cast<size_t>(crow[j]) * q + prod];
      }
    }
  }
  return c;
}

Mat scale(const Mat& a, uint8_t cv) {
  const FieldSpec& F = *a.field();
  Mat c(a.field(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = F.mul(a(i, j), cv);
  return c;
}

Mat hstack(const Mat& a, const Mat& b) {
  check_same_field(a, b, "hstack");
  if (a.rows() != b.rows()) throw ValidationError("row mismatch in hstack");
  Mat c(a.field(), a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

Mat vstack(const Mat& a, const Mat& b) {
  check_same_field(a, b, "vstack");
  if (a.cols() != b.cols()) throw ValidationError("col mismatch in vstack");
  Mat c(a.field(), a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
  return c;
}

Mat block_diag(const Mat& a, const Mat& b) {
  check_same_field(a, b, "block_diag");
  Mat c(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
  return c;
}

RrefResult rref(const Mat& m, bool with_transform) {
  const FieldSpec& F = *m.field();
  const uint8_t* mt = F.mul_data();
  const uint8_t* at = F.add_data();
  const int q = F.q();
  RrefResult res;
  res.rref = m;
  Mat& R = res.rref;
  if (with_transform) res.transform = Mat::identity(m.field(), m.rows());
  Mat& T = res.transform;

  auto axpy = [&](Mat& M, int dst, int src, uint8_t f) {
    const uint8_t* s = M.row(src);
    uint8_t* d = M.row(dst);
    const uint8_t* mrow = mt + static_cast<size_t>(f) * q;
    for (int j = 0; j < M.cols(); ++j) {
      uint8_t prod = mrow[s[j]];
      if (prod) d[j] = at[static_cast<size_t>(d[j]) * q + F.neg(prod)];
    }
  };
  auto scale_row = [&](Mat& M, int r, uint8_t f) {
    uint8_t* d = M.row(r);
    const uint8_t* mrow = mt + static_cast<size_t>(f) * q;
    for (int j = 0; j < M.cols(); ++j) d[j] = mrow[d[j]];
  };
  auto swap_rows = [&](Mat& M, int r1, int r2) {
    if (r1 == r2) return;
    for (int j = 0; j < M.cols(); ++j) std::swap(M(r1, j), M(r2, j));
  };

  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int pr = -1;
    for (int i = r; i < m.rows(); ++i)
      if (R(i, c)) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    swap_rows(R, r, pr);
    if (with_transform) swap_rows(T, r, pr);
    uint8_t s = F.inv(R(r, c));
    if (s != 1) {
      scale_row(R, r, s);
      if (with_transform) scale_row(T, r, s);
    }
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      uint8_t f = R(i, c);
      if (!f) continue;
      axpy(R, i, r, f);
      if (with_transform) axpy(T, i, r, f);
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

int rank_of(const Mat& m) { return rref(m, false).rank; }

std::optional<Mat> solve_right(const Mat& a, const Mat& b) {
  check_same_field(a, b, "solve_right");
  if (a.rows() != b.rows()) throw ValidationError("row mismatch in solve_right");
  RrefResult r = rref(hstack(a, b), false);
  for (int p : r.pivots)
    if (p >= a.cols()) return std::nullopt;
  Mat x(a.field(), a.cols(), b.cols());
  for (size_t k = 0; k < r.pivots.size(); ++k)
    for (int j = 0; j < b.cols(); ++j)
      x(r.pivots[k], j) = r.rref(static_cast<int>(k), a.cols() + j);
  return x;
}

Mat kernel_basis(const Mat& m) {
  RrefResult r = rref(m, false);
  std::vector<int> free_cols;
  {
    size_t pi = 0;
    for (int c = 0; c < m.cols(); ++c) {
      if (pi < r.pivots.size() && r.pivots[pi] == c)
        ++pi;
      else
        free_cols.push_back(c);
    }
  }
  const FieldSpec& F = *m.field();
  Mat k(m.field(), m.cols(), static_cast<int>(free_cols.size()));
  for (size_t j = 0; j < free_cols.size(); ++j) {
    int fc = free_cols[j];
    k(fc, static_cast<int>(j)) = 1;
    for (size_t i = 0; i < r.pivots.size(); ++i)
      k(r.pivots[i], static_cast<int>(j)) = F.neg(r.rref(static_cast<int>(i), fc));
  }
  return k;
}

Mat kron(const Mat& a, const Mat& b) {
  check_same_field(a, b, "kron");
  const FieldSpec& F = *a.field();
  Mat c(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      uint8_t av = a(i, j);
      if (!av) continue;
      for (int r = 0; r < b.rows(); ++r)
        for (int s = 0; s < b.cols(); ++s) {
          uint8_t bv = b(r, s);
          if (bv) c(i * b.rows() + r, j * b.cols() + s) = F.mul(av, bv);
        }
    }
  return c;
}

std::optional<Mat> try_inverse(const Mat& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  RrefResult r = rref(m, true);
  if (r.rank != m.rows()) return std::nullopt;
  return r.transform;
}

Mat inverse(const Mat& m) {
  auto inv = try_inverse(m);
  if (!inv) throw std::domain_error("matrix is not invertible");
  return *inv;
}

}  // namespace endo
