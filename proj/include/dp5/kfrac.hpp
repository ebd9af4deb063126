#pragma once

#include "dp5/ring.hpp"

namespace dp5 {

// Element of the field K as num/den with num in O_K and den a positive
// rational integer. Enough for the small exact linear algebra here; field
// inverses clear denominators through the conjugate.
struct KFrac {
  Elem<BigInt> num{BigInt(0), BigInt(0)};
  BigInt den{1};
};

class KField {
 public:
  explicit KField(const FieldSpec& F) : R_(F) {}

  const RingBig& ring() const { return R_; }

  KFrac from_elem(const Elem<BigInt>& e) const { return {e, BigInt(1)}; }
  KFrac from_int(i64 v) const { return {{BigInt(v), BigInt(0)}, BigInt(1)}; }
  KFrac zero() const { return from_int(0); }
  KFrac one() const { return from_int(1); }
  bool is_zero(const KFrac& a) const { return RingBig::is_zero(a.num); }

  KFrac reduce(KFrac a) const {
    if (is_zero(a)) return {{BigInt(0), BigInt(0)}, BigInt(1)};
    BigInt g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(a.num.x), abs(a.num.y)),
                                          a.den);
    if (g > 1) {
      a.num.x /= g;
      a.num.y /= g;
      a.den /= g;
    }
    return a;
  }

  KFrac add(const KFrac& a, const KFrac& b) const {
    KFrac r;
    r.num = R_.add(scale(a.num, b.den), scale(b.num, a.den));
    r.den = a.den * b.den;
    return reduce(r);
  }
  KFrac sub(const KFrac& a, const KFrac& b) const {
    KFrac r;
    r.num = R_.sub(scale(a.num, b.den), scale(b.num, a.den));
    r.den = a.den * b.den;
    return reduce(r);
  }
  KFrac mul(const KFrac& a, const KFrac& b) const {
    KFrac r{R_.mul(a.num, b.num), a.den * b.den};
    return reduce(r);
  }
  KFrac neg(const KFrac& a) const { return {R_.neg(a.num), a.den}; }

  KFrac div(const KFrac& a, const KFrac& b) const {
    if (is_zero(b)) throw std::domain_error("KFrac division by zero");
    KFrac r;
    if (R_.rational()) {
      r = {scale(a.num, b.den), a.den * b.num.x};
    } else {
      // a/b = a·conj(b)·den_b / (den_a·N(num_b)), N(num_b) > 0 here
      BigInt nb = R_.norm(b.num);
      r = {R_.mul(a.num, scale(R_.conj(b.num), b.den)), a.den * nb};
    }
    if (r.den < 0) {
      r.den = -r.den;
      r.num = R_.neg(r.num);
    }
    return reduce(r);
  }

  bool eq(const KFrac& a, const KFrac& b) const { return is_zero(sub(a, b)); }

  // true if a lies in O_K; writes the integral value
  bool integral(const KFrac& a, Elem<BigInt>& out) const {
    if (a.num.x % a.den != 0 || a.num.y % a.den != 0) return false;
    out = {a.num.x / a.den, a.num.y / a.den};
    return true;
  }

  // exact rational |N(a)| (norm of numerator over den², nonnegative)
  BigRat abs_norm(const KFrac& a) const {
    BigInt n = R_.norm(a.num);
    if (n < 0) n = -n;
    return BigRat(n, a.den * a.den);
  }

 private:
  static Elem<BigInt> scale(const Elem<BigInt>& e, const BigInt& k) { return {e.x * k, e.y * k}; }
  RingBig R_;
};

// Solve A·x = b for one solution over K, A given column-wise (rows × cols),
// via fraction-free-ish Gaussian elimination. Returns false if inconsistent.
// If multiple solutions exist, free variables are set to zero.
inline bool solve_linear_system(const KField& K, std::vector<std::vector<KFrac>> A,
                                std::vector<KFrac> b, std::vector<KFrac>& x) {
  std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  std::vector<int> pivot_col_of_row(rows, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && K.is_zero(A[pr][c])) ++pr;
    if (pr == rows) continue;
    std::swap(A[pr], A[r]);
    std::swap(b[pr], b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || K.is_zero(A[i][c])) continue;
      KFrac f = K.div(A[i][c], A[r][c]);
      for (std::size_t j = c; j < cols; ++j) A[i][j] = K.sub(A[i][j], K.mul(f, A[r][j]));
      b[i] = K.sub(b[i], K.mul(f, b[r]));
    }
    pivot_col_of_row[r] = (int)c;
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (!K.is_zero(b[i])) return false;
  x.assign(cols, K.zero());
  for (std::size_t i = 0; i < r; ++i) {
    int c = pivot_col_of_row[i];
    x[c] = K.div(b[i], A[i][c]);
  }
  return true;
}

// rank of the matrix over K
inline int matrix_rank(const KField& K, std::vector<std::vector<KFrac>> A) {
  std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pr = r;
    while (pr < rows && K.is_zero(A[pr][c])) ++pr;
    if (pr == rows) continue;
    std::swap(A[pr], A[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (K.is_zero(A[i][c])) continue;
      KFrac f = K.div(A[i][c], A[r][c]);
      for (std::size_t j = c; j < cols; ++j) A[i][j] = K.sub(A[i][j], K.mul(f, A[r][j]));
    }
    ++r;
  }
  return (int)r;
}

}  // namespace dp5
