#pragma once

#include <functional>
#include <numeric>
#include <type_traits>

#include "dp5/field.hpp"
#include "dp5/util.hpp"

namespace dp5 {

template <class I>
struct Elem {
  I x{}, y{};
  friend bool operator==(const Elem& a, const Elem& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }
  friend bool operator<(const Elem& a, const Elem& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

namespace detail {
template <class I>
inline constexpr bool kBuiltinInt = std::is_same_v<I, i64> || std::is_same_v<I, i128>;

template <class I>
inline I xadd(I a, I b) {
  if constexpr (kBuiltinInt<I>) {
    I r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("ring add");
    return r;
  } else return a + b;
}
template <class I>
inline I xsub(I a, I b) {
  if constexpr (kBuiltinInt<I>) {
    I r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("ring sub");
    return r;
  } else return a - b;
}
template <class I>
inline I xmul(I a, I b) {
  if constexpr (kBuiltinInt<I>) {
    I r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("ring mul");
    return r;
  } else return a * b;
}
}  // namespace detail

// Exact arithmetic in O_K for a supported field, templated on the integer
// backend: I is element storage, W a wider type for norms and intermediate
// products. RingT<long long, __int128> is the engine workhorse (operations
// overflow-checked); RingT<BigInt, BigInt> gives true arbitrary precision
// behind the same interface.
template <class I, class W>
struct RingT {
  using E = Elem<I>;
  FieldSpec F;

  explicit RingT(FieldSpec f) : F(std::move(f)) {}
  explicit RingT(const std::string& label) : F(make_field(label)) {}

  bool rational() const { return F.degree == 1; }

  static E make(I x, I y = I(0)) { return {std::move(x), std::move(y)}; }
  E from_int(i64 v) const { return {I(v), I(0)}; }
  E zero() const { return {I(0), I(0)}; }
  E one() const { return {I(1), I(0)}; }
  static bool is_zero(const E& a) { return a.x == 0 && a.y == 0; }

  E neg(const E& a) const { return {-a.x, -a.y}; }
  E add(const E& a, const E& b) const {
    return {detail::xadd(a.x, b.x), detail::xadd(a.y, b.y)};
  }
  E sub(const E& a, const E& b) const {
    return {detail::xsub(a.x, b.x), detail::xsub(a.y, b.y)};
  }
  E mul(const E& a, const E& b) const {
    using detail::xadd;
    using detail::xmul;
    using detail::xsub;
    if (rational()) return {xmul(a.x, b.x), I(0)};
    I yy = xmul(a.y, b.y);
    I xx = xmul(a.x, b.x);
    I cross = xadd(xmul(a.x, b.y), xmul(a.y, b.x));
    I xo = F.wm >= 0 ? xadd(xx, xmul(yy, I(F.wm))) : xsub(xx, xmul(yy, I(-F.wm)));
    I yo = F.wt ? xadd(cross, yy) : cross;
    return {xo, yo};
  }
  E mul_int(const E& a, i64 k) const { return {detail::xmul(a.x, I(k)), detail::xmul(a.y, I(k))}; }
  E conj(const E& a) const {
    if (rational()) return a;
    if (F.wt) return {detail::xadd(a.x, a.y), -a.y};
    return {a.x, -a.y};
  }

  // N(a) as the wide type; always the field norm (the element itself over Q).
  W norm(const E& a) const {
    if (rational()) return W(a.x);
    W x = W(a.x), y = W(a.y);
    W n = x * x + W(F.nc) * y * y;
    if (F.wt) n += x * y;
    return n;
  }
  W abs_norm(const E& a) const {
    W n = norm(a);
    return n < 0 ? -n : n;
  }

  bool is_unit(const E& a) const { return !is_zero(a) && abs_norm(a) == 1; }

  E unit(int k) const { return {I(F.units[k][0]), I(F.units[k][1])}; }

  // Canonical associate: the lexicographically greatest of {u·a : u in μ_K}.
  E canonical_assoc(const E& a) const {
    if (is_zero(a)) return a;
    E best = a;
    for (int k = 1; k < F.num_units; ++k) {
      E c = mul(a, unit(k));
      if (best < c) best = c;
    }
    return best;
  }
  bool is_canonical_assoc(const E& a) const { return a == canonical_assoc(a); }

  // Norm-Euclidean division: q minimizes N(a - qb) over a small neighborhood
  // of the rounded quotient; for the supported fields the minimum satisfies
  // N(r) < N(b).
  void divrem(const E& a, const E& b, E& q, E& r) const {
    if (is_zero(b)) throw std::domain_error("divrem: division by zero");
    if (rational()) {
      I q0 = a.x / b.x;
      q = {q0, I(0)};
      r = {a.x - q0 * b.x, I(0)};
      // shift remainder into (-|b|/2, |b|/2]
      I b2 = b.x < 0 ? -b.x : b.x;
      if (2 * r.x > b2) {
        q.x += (b.x > 0 ? 1 : -1);
        r.x -= b.x > 0 ? b.x : -b.x;
      } else if (2 * r.x <= -b2) {
        q.x -= (b.x > 0 ? 1 : -1);
        r.x += b.x > 0 ? b.x : -b.x;
      }
      return;
    }
    W nb = norm(b);
    if (nb == 1) {  // unit divisor: q = a·b^{-1}, r = 0
      for (int k = 0; k < F.num_units; ++k)
        if (mul(b, unit(k)) == one()) {
          q = mul(a, unit(k));
          r = zero();
          return;
        }
      throw std::logic_error("divrem: unit inverse not found");
    }
    E bc = conj(b);
    E num = mul(a, bc);
    auto nearest = [&](const I& p) -> I {
      // round(p / nb) (ties up) = floor((2p + nb) / (2 nb)), nb > 0
      if constexpr (std::is_same_v<I, i64>) {
        W t = 2 * W(p) + nb;
        W d = 2 * nb;
        W qq = t / d;
        if (t < 0 && t % d != 0) --qq;
        return (I)qq;
      } else {
        I t = 2 * p + I(nb);
        I d = 2 * I(nb);
        I qq = t / d;
        if (t < 0 && t % d != 0) --qq;
        return qq;
      }
    };
    I qx = nearest(num.x), qy = nearest(num.y);
    q = {qx, qy};
    r = sub(a, mul(q, b));
    W best = norm(r);
    if (best < nb) return;  // the rounded quotient already reduces
    for (i64 dx = -2; dx <= 2; ++dx)
      for (i64 dy = -2; dy <= 2; ++dy) {
        if (dx == 0 && dy == 0) continue;
        E cand = {detail::xadd(qx, I(dx)), detail::xadd(qy, I(dy))};
        E rr = sub(a, mul(cand, b));
        W nr = norm(rr);
        if (nr < best) {
          best = nr;
          q = cand;
          r = rr;
        }
      }
    if (!(best < nb)) throw std::logic_error("divrem: norm-Euclidean reduction failed");
  }

  E mod(const E& a, const E& m) const {
    E q, r;
    divrem(a, m, q, r);
    return r;
  }

  bool divides(const E& a, const E& b) const {
    // a | b
    if (is_zero(a)) return is_zero(b);
    E q, r;
    divrem(b, a, q, r);
    return is_zero(r);
  }
  E div_exact(const E& b, const E& a) const {
    E q, r;
    divrem(b, a, q, r);
    if (!is_zero(r)) throw std::domain_error("div_exact: not divisible");
    return q;
  }

  // gcd as canonical generator of aO_K + bO_K
  E gcd(const E& a, const E& b) const {
    if (is_zero(a) && is_zero(b)) throw std::domain_error("gcd(0,0)");
    if (rational()) {
      if constexpr (std::is_same_v<I, i64>) {
        return {std::gcd(a.x < 0 ? -a.x : a.x, b.x < 0 ? -b.x : b.x), I(0)};
      } else {
        I x = a.x < 0 ? I(-a.x) : a.x, y = b.x < 0 ? I(-b.x) : b.x;
        while (y != 0) {
          I t = x % y;
          x = y;
          y = t;
        }
        return {x, I(0)};
      }
    }
    E u = a, v = b;
    while (!is_zero(v)) {
      E q, r;
      divrem(u, v, q, r);
      u = v;
      v = r;
    }
    return canonical_assoc(u);
  }

  E gcd3(const E& a, const E& b, const E& c) const {
    if (is_zero(a) && is_zero(b)) {
      if (is_zero(c)) throw std::domain_error("gcd3(0,0,0)");
      return canonical_assoc(c);
    }
    E g = gcd(a, b);
    if (is_zero(c) || is_unit(g)) return g;
    return gcd(g, c);
  }

  bool coprime(const E& a, const E& b) const { return is_unit(gcd(a, b)); }

  // extended gcd: returns g (canonical) with u·a + v·b = g
  E egcd(const E& a, const E& b, E& u, E& v) const {
    E r0 = a, r1 = b;
    E s0 = one(), s1 = zero();
    E t0 = zero(), t1 = one();
    while (!is_zero(r1)) {
      E q, r;
      divrem(r0, r1, q, r);
      r0 = r1;
      r1 = r;
      E s2 = sub(s0, mul(q, s1));
      s0 = s1;
      s1 = s2;
      E t2 = sub(t0, mul(q, t1));
      t0 = t1;
      t1 = t2;
    }
    // normalize to the canonical associate
    E g = canonical_assoc(r0);
    for (int k = 0; k < F.num_units; ++k) {
      if (mul(r0, unit(k)) == g) {
        u = mul(s0, unit(k));
        v = mul(t0, unit(k));
        break;
      }
    }
    return g;
  }

  // inverse of a modulo m; requires gcd(a, m) to be a unit
  E inv_mod(const E& a, const E& m) const {
    E u, v;
    E g = egcd(a, m, u, v);
    if (!is_unit(g)) throw std::domain_error("inv_mod: not coprime");
    // u·a ≡ g (mod m); multiply by g^{-1} (a unit)
    for (int k = 0; k < F.num_units; ++k) {
      if (mul(g, unit(k)) == one()) return mod(mul(u, unit(k)), m);
    }
    throw std::logic_error("inv_mod: unit inverse not found");
  }

  // unit-normalized generator for display/dedup purposes
  E unit_normalize(const E& a) const {
    if (is_zero(a)) throw std::domain_error("unit_normalize: zero");
    return canonical_assoc(a);
  }

  std::complex<double> embed(const E& a) const {
    if (rational()) return {(double)a.x, 0.0};
    std::complex<double> w = F.omega_embedding();
    return std::complex<double>((double)a.x, 0.0) + (double)a.y * w;
  }

  std::string str(const E& a) const {
    auto one_str = [](const I& v) -> std::string {
      if constexpr (std::is_same_v<I, i64>) return std::to_string(v);
      else return v.str();
    };
    if (rational()) return one_str(a.x);
    return "(" + one_str(a.x) + "," + one_str(a.y) + ")";
  }
};

using Ring = RingT<i64, i128>;
using RingBig = RingT<BigInt, BigInt>;

// --- enumeration over norm balls and congruence classes ------------------

// Visit every nonzero e with |N(e)| <= max_norm. If canonical_only, one
// element per unit orbit (over Q: e > 0).
template <class I, class W, class F>
void for_each_in_ball(const RingT<I, W>& R, W max_norm, bool canonical_only, F&& fn) {
  using E = typename RingT<I, W>::E;
  if (max_norm < 1) return;
  if (R.rational()) {
    i64 M = (i64)max_norm;
    for (i64 x = 1; x <= M; ++x) {
      fn(E{I(x), I(0)});
      if (!canonical_only) fn(E{I(-x), I(0)});
    }
    return;
  }
  const i64 ad = -R.F.dnum;
  if (R.F.wt == 0) {
    // N = x² + |d| y²
    i64 ymax = (i64)isqrt128((i128)(max_norm / ad));
    for (i64 y = -ymax; y <= ymax; ++y) {
      W rem = max_norm - W(ad) * W(y) * W(y);
      if (rem < 0) continue;
      i64 xmax = (i64)isqrt128((i128)rem);
      for (i64 x = -xmax; x <= xmax; ++x) {
        if (x == 0 && y == 0) continue;
        E e{I(x), I(y)};
        if (canonical_only && !R.is_canonical_assoc(e)) continue;
        fn(e);
      }
    }
  } else {
    // 4N = (2x+y)² + |d| y²
    W M4 = 4 * max_norm;
    i64 ymax = (i64)isqrt128((i128)(M4 / ad));
    for (i64 y = -ymax; y <= ymax; ++y) {
      W rem = M4 - W(ad) * W(y) * W(y);
      if (rem < 0) continue;
      i64 s = (i64)isqrt128((i128)rem);  // |2x+y| <= s
      i64 xlo = ceil_div(-s - y, 2), xhi = floor_div(s - y, 2);
      for (i64 x = xlo; x <= xhi; ++x) {
        if (x == 0 && y == 0) continue;
        E e{I(x), I(y)};
        if (canonical_only && !R.is_canonical_assoc(e)) continue;
        fn(e);
      }
    }
  }
}

// Visit every nonzero e ≡ rep (mod m) with |N(e)| <= max_norm.
template <class I, class W, class F>
void for_each_congruent_in_ball(const RingT<I, W>& R, const Elem<I>& rep, const Elem<I>& m,
                                W max_norm, F&& fn) {
  using E = typename RingT<I, W>::E;
  if (max_norm < 1) return;
  if (R.rational()) {
    i64 mm = (i64)(m.x < 0 ? -m.x : m.x);
    i64 r = mod_floor((i64)rep.x, mm);
    i64 M = (i64)max_norm;
    for (i64 v = r - mm * ((r + M) / mm); v <= M; v += mm) {
      if (v != 0 && v >= -M) fn(E{I(v), I(0)});
    }
    return;
  }
  W nm = R.abs_norm(m);
  if (nm == 1) {  // unit modulus: every element is congruent
    for_each_in_ball(R, max_norm, false, fn);
    return;
  }
  E r0 = R.mod(rep, m);
  // |σ(w)| <= 1 + sqrt(max_norm/nm); box bound R2 >= ρ²
  W R2 = 2 * (1 + max_norm / nm) + 2;
  const i64 ad = -R.F.dnum;
  E mw = R.mul(m, E{I(0), I(1)});
  auto visit = [&](i64 s, i64 t) {
    E e = R.add(r0, R.add(R.mul_int(m, s), R.mul_int(mw, t)));
    if (RingT<I, W>::is_zero(e)) return;
    if (R.abs_norm(e) <= max_norm) fn(e);
  };
  if (R.F.wt == 0) {
    i64 tmax = (i64)isqrt128((i128)(R2 / ad)) + 1;
    i64 smax = (i64)isqrt128((i128)R2) + 1;
    for (i64 t = -tmax; t <= tmax; ++t)
      for (i64 s = -smax; s <= smax; ++s) visit(s, t);
  } else {
    i64 tmax = (i64)isqrt128((i128)(4 * R2 / ad)) + 1;
    i64 shalf = (i64)isqrt128((i128)R2) + 1;
    for (i64 t = -tmax; t <= tmax; ++t) {
      i64 c = -t / 2;
      for (i64 s = c - shalf - 1; s <= c + shalf + 1; ++s) visit(s, t);
    }
  }
}

}  // namespace dp5
