#pragma once

#include <functional>
#include <map>
#include <vector>

#include "dp5/ring.hpp"

namespace dp5 {

// Nonzero ideal of O_K, h_K = 1 throughout: canonical (unit-normalized)
// generator plus cached absolute norm.
template <class I, class W>
struct IdealT {
  Elem<I> gen;
  W nrm = 0;

  friend bool operator==(const IdealT& a, const IdealT& b) { return a.gen == b.gen; }
  friend bool operator!=(const IdealT& a, const IdealT& b) { return !(a == b); }
  friend bool operator<(const IdealT& a, const IdealT& b) {
    if (a.nrm != b.nrm) return a.nrm < b.nrm;
    return a.gen < b.gen;
  }
};

using Ideal = IdealT<i64, i128>;

template <class I, class W>
IdealT<I, W> make_ideal(const RingT<I, W>& R, const Elem<I>& g) {
  if (RingT<I, W>::is_zero(g)) throw std::domain_error("make_ideal: zero generator");
  Elem<I> c = R.canonical_assoc(g);
  return {c, R.abs_norm(c)};
}

template <class I, class W>
IdealT<I, W> unit_ideal(const RingT<I, W>& R) {
  return make_ideal(R, R.one());
}

template <class I, class W>
bool is_unit_ideal(const IdealT<I, W>& a) {
  return a.nrm == 1;
}

// a + b  (ideal gcd)
template <class I, class W>
IdealT<I, W> ideal_sum(const RingT<I, W>& R, const IdealT<I, W>& a, const IdealT<I, W>& b) {
  return make_ideal(R, R.gcd(a.gen, b.gen));
}

template <class I, class W>
IdealT<I, W> ideal_mul(const RingT<I, W>& R, const IdealT<I, W>& a, const IdealT<I, W>& b) {
  return make_ideal(R, R.mul(a.gen, b.gen));
}

// a ∩ b  (ideal lcm) = ab / (a+b)
template <class I, class W>
IdealT<I, W> ideal_intersect(const RingT<I, W>& R, const IdealT<I, W>& a, const IdealT<I, W>& b) {
  Elem<I> g = R.gcd(a.gen, b.gen);
  return make_ideal(R, R.mul(R.div_exact(a.gen, g), b.gen));
}

template <class I, class W>
bool ideal_divides(const RingT<I, W>& R, const IdealT<I, W>& a, const IdealT<I, W>& b) {
  // a | b  ⟺  b ⊆ a
  return R.divides(a.gen, b.gen);
}

template <class I, class W>
bool ideal_coprime(const RingT<I, W>& R, const IdealT<I, W>& a, const IdealT<I, W>& b) {
  return R.coprime(a.gen, b.gen);
}

// --- prime ideals ----------------------------------------------------------

enum class SplitType { Split, Inert, Ramified };

template <class I, class W>
struct PrimeIdealT {
  IdealT<I, W> ideal;
  i64 p = 0;  // rational prime below
  SplitType type = SplitType::Inert;
};

using PrimeIdeal = PrimeIdealT<i64, i128>;

inline std::vector<i64> rational_primes_up_to(i64 X) {
  std::vector<i64> ps;
  if (X < 2) return ps;
  std::vector<bool> sieve(X + 1, true);
  for (i64 p = 2; p <= X; ++p) {
    if (!sieve[p]) continue;
    ps.push_back(p);
    for (i64 q = p * p; q <= X; q += p) sieve[q] = false;
  }
  return ps;
}

inline i64 pow_mod(i64 b, i64 e, i64 m) {
  i128 r = 1, bb = mod_floor(b, m);
  while (e) {
    if (e & 1) r = r * bb % m;
    bb = bb * bb % m;
    e >>= 1;
  }
  return (i64)r;
}

// splitting of the rational prime p in K, via the Kronecker symbol of Δ_K
inline SplitType split_type(const FieldSpec& F, i64 p) {
  if (F.degree == 1) return SplitType::Split;  // unused over Q
  if (F.disc % p == 0) return SplitType::Ramified;
  if (p == 2) {
    // Δ odd here; 2 splits iff Δ ≡ 1 (mod 8)
    return mod_floor(F.disc, 8) == 1 ? SplitType::Split : SplitType::Inert;
  }
  i64 ls = pow_mod(mod_floor(F.disc, p), (p - 1) / 2, p);
  return ls == 1 ? SplitType::Split : SplitType::Inert;
}

// a generator of norm exactly n, by direct search on the norm form
template <class I, class W>
Elem<I> find_generator_of_norm(const RingT<I, W>& R, i64 n) {
  const i64 ad = -R.F.dnum;
  if (R.rational()) return R.from_int(n);
  if (R.F.wt == 0) {
    for (i64 y = 0; ad * y * y <= n; ++y) {
      i128 rem = (i128)n - (i128)ad * y * y;
      i128 x = isqrt128(rem);
      if (x * x == rem) return {I((i64)x), I(y)};
    }
  } else {
    for (i64 y = 0; ad * y * y <= 4 * n; ++y) {
      i128 rem = (i128)4 * n - (i128)ad * y * y;
      i128 s = isqrt128(rem);
      if (s * s == rem && (s - y) % 2 == 0) return {I((i64)((s - y) / 2)), I(y)};
    }
  }
  throw std::logic_error("find_generator_of_norm: no element of norm " + std::to_string(n));
}

// prime ideals above a rational prime p
template <class I, class W>
std::vector<PrimeIdealT<I, W>> primes_above(const RingT<I, W>& R, i64 p) {
  std::vector<PrimeIdealT<I, W>> out;
  if (R.rational()) {
    out.push_back({make_ideal(R, R.from_int(p)), p, SplitType::Split});
    return out;
  }
  SplitType st = split_type(R.F, p);
  if (st == SplitType::Ramified) {
    out.push_back({make_ideal(R, find_generator_of_norm(R, p)), p, st});
  } else if (st == SplitType::Split) {
    Elem<I> g = find_generator_of_norm(R, p);
    auto p1 = make_ideal(R, g), p2 = make_ideal(R, R.conj(g));
    if (p1 == p2) throw std::logic_error("primes_above: split primes collided");
    out.push_back({p1, p, st});
    out.push_back({p2, p, st});
  } else {
    out.push_back({make_ideal(R, R.from_int(p)), p, st});
  }
  return out;
}

// All prime ideals of norm ≤ X, each exactly once, ordered by (norm, generator).
template <class I, class W>
std::vector<PrimeIdealT<I, W>> primes_up_to(const RingT<I, W>& R, i64 X) {
  std::vector<PrimeIdealT<I, W>> out;
  if (X < 2) return out;
  for (i64 p : rational_primes_up_to(X)) {
    for (auto& pr : primes_above(R, p))
      if (pr.ideal.nrm <= (W)X) out.push_back(pr);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.ideal < b.ideal; });
  return out;
}

// norms of prime ideals ≤ X (with multiplicity), no generator search; feeds
// the Euler products at large X
inline std::vector<i64> prime_ideal_norms_up_to(const FieldSpec& F, i64 X) {
  std::vector<i64> out;
  for (i64 p : rational_primes_up_to(X)) {
    if (F.degree == 1) {
      out.push_back(p);
      continue;
    }
    SplitType st = split_type(F, p);
    if (st == SplitType::Ramified) out.push_back(p);
    else if (st == SplitType::Split) {
      out.push_back(p);
      out.push_back(p);
    } else if ((i128)p * p <= (i128)X) out.push_back(p * p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- factorization, Möbius, divisor enumeration ---------------------------

template <class I, class W>
struct IdealFactorT {
  IdealT<I, W> prime;
  int mult = 0;
};

// Factor a nonzero element's ideal into prime ideals (desk scale: |N| is
// factored by trial division).
template <class I, class W>
std::vector<IdealFactorT<I, W>> factor_ideal(const RingT<I, W>& R, const Elem<I>& a) {
  if (RingT<I, W>::is_zero(a)) throw std::domain_error("factor_ideal: zero");
  std::vector<IdealFactorT<I, W>> out;
  W n = R.abs_norm(a);
  Elem<I> rest = a;
  auto strip = [&](i64 p) {
    for (auto& pr : primes_above(R, p)) {
      int m = 0;
      while (R.divides(pr.ideal.gen, rest)) {
        rest = R.div_exact(rest, pr.ideal.gen);
        ++m;
      }
      if (m) out.push_back({pr.ideal, m});
    }
  };
  for (i64 p = 2; (i128)p * p <= (i128)n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    strip(p);
  }
  if (n > 1) strip((i64)n);
  std::sort(out.begin(), out.end(),
            [](const auto& a_, const auto& b_) { return a_.prime < b_.prime; });
  return out;
}

// Möbius function of an ideal
template <class I, class W>
int mobius(const RingT<I, W>& R, const IdealT<I, W>& a) {
  if (is_unit_ideal(a)) return 1;
  auto fs = factor_ideal(R, a.gen);
  int sign = 1;
  for (auto& f : fs) {
    if (f.mult > 1) return 0;
    sign = -sign;
  }
  return sign;
}

// all squarefree ideals of norm ≤ X, paired with μ; includes the unit ideal
template <class I, class W>
std::vector<std::pair<IdealT<I, W>, int>> squarefree_ideals_up_to(const RingT<I, W>& R, i64 X) {
  auto primes = primes_up_to(R, X);
  std::vector<std::pair<IdealT<I, W>, int>> out;
  std::function<void(std::size_t, IdealT<I, W>, int)> rec = [&](std::size_t i, IdealT<I, W> cur,
                                                                int mu) {
    out.push_back({cur, mu});
    for (std::size_t j = i; j < primes.size(); ++j) {
      if ((i128)cur.nrm * (i128)primes[j].ideal.nrm > (i128)X) continue;
      rec(j + 1, ideal_mul(R, cur, primes[j].ideal), -mu);
    }
  };
  rec(0, unit_ideal(R), 1);
  std::sort(out.begin(), out.end());
  return out;
}

// divisors of the ideal (a) with their Möbius values
template <class I, class W>
std::vector<std::pair<IdealT<I, W>, int>> divisors_with_mobius(const RingT<I, W>& R,
                                                               const Elem<I>& a,
                                                               bool squarefree_only) {
  auto fs = factor_ideal(R, a);
  std::vector<std::pair<IdealT<I, W>, int>> out;
  std::function<void(std::size_t, IdealT<I, W>, int)> rec = [&](std::size_t i, IdealT<I, W> cur,
                                                                int mu) {
    if (i == fs.size()) {
      out.push_back({cur, mu});
      return;
    }
    rec(i + 1, cur, mu);
    IdealT<I, W> acc = ideal_mul(R, cur, fs[i].prime);
    rec(i + 1, acc, -mu);
    if (!squarefree_only) {
      for (int e = 2; e <= fs[i].mult; ++e) {
        acc = ideal_mul(R, acc, fs[i].prime);
        rec(i + 1, acc, 0);
      }
    }
  };
  rec(0, unit_ideal(R), 1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dp5
