#pragma once

#include "dp5/ideal.hpp"
#include "dp5/rng.hpp"
#include "dp5/torsorform.hpp"

namespace dp5 {

// Point on the universal torsor: ten nonzero coordinates, indexed as in
// torsorform.hpp (a1..a4, a12, a13, a14, a23, a24, a34).
template <class I>
struct TorsorPointT {
  std::array<Elem<I>, 10> a{};

  friend bool operator==(const TorsorPointT& x, const TorsorPointT& y) { return x.a == y.a; }
  friend bool operator<(const TorsorPointT& x, const TorsorPointT& y) { return x.a < y.a; }
};

using TorsorPoint = TorsorPointT<i64>;

template <class I, class W>
bool all_coords_nonzero(const TorsorPointT<I>& T) {
  for (auto& e : T.a)
    if (RingT<I, W>::is_zero(e)) return false;
  return true;
}

// The five Plücker left-hand sides, exactly.
template <class I, class W>
std::array<Elem<I>, 5> plucker_residues(const RingT<I, W>& R, const TorsorPointT<I>& T) {
  auto at = [&](int c) { return T.a[c]; };
  auto P = [&](int u, int v, int w, int x, int y, int z) {
    return R.add(R.sub(R.mul(at(u), at(v)), R.mul(at(w), at(x))), R.mul(at(y), at(z)));
  };
  const int a1 = 0, a2 = 1, a3 = 2, a4 = 3;
  const int a12 = pair_coord(1, 2), a13 = pair_coord(1, 3), a14 = pair_coord(1, 4);
  const int a23 = pair_coord(2, 3), a24 = pair_coord(2, 4), a34 = pair_coord(3, 4);
  return {P(a4, a14, a3, a13, a2, a12), P(a4, a24, a3, a23, a1, a12),
          P(a4, a34, a2, a23, a1, a13), P(a3, a34, a2, a24, a1, a14),
          P(a12, a34, a13, a24, a23, a14)};
}

template <class I, class W>
bool plucker_ok(const RingT<I, W>& R, const TorsorPointT<I>& T) {
  for (auto& r : plucker_residues(R, T))
    if (!RingT<I, W>::is_zero(r)) return false;
  return true;
}

enum class CompleteStatus { Ok, CongruenceFailure, ZeroCoordinate };

// Dependent-coordinate completion: given a' and (a12, a23, a34) with the two
// congruences satisfied, the remaining coordinates are uniquely determined
// and integral (a14 needs gcd(a1,a4) = O_K).
template <class I, class W>
CompleteStatus complete_dependent(const RingT<I, W>& R, const std::array<Elem<I>, 4>& ap,
                                  const Elem<I>& a12, const Elem<I>& a23, const Elem<I>& a34,
                                  TorsorPointT<I>& out) {
  const auto &a1 = ap[0], &a2 = ap[1], &a3 = ap[2], &a4 = ap[3];
  Elem<I> a24, a13, a14, rem;
  Elem<I> t24 = R.sub(R.mul(a3, a23), R.mul(a1, a12));
  R.divrem(t24, a4, a24, rem);
  if (!RingT<I, W>::is_zero(rem)) return CompleteStatus::CongruenceFailure;
  Elem<I> t13 = R.sub(R.mul(a2, a23), R.mul(a4, a34));
  R.divrem(t13, a1, a13, rem);
  if (!RingT<I, W>::is_zero(rem)) return CompleteStatus::CongruenceFailure;
  // a14 = (a2 a3 a23 − a3 a4 a34 − a1 a2 a12) / (a1 a4); integral when
  // gcd(a1,a4)=O_K, as the numerator is divisible by both a1 and a4
  Elem<I> num = R.sub(R.mul(a3, R.mul(a2, a23)),
                      R.add(R.mul(a3, R.mul(a4, a34)), R.mul(a1, R.mul(a2, a12))));
  R.divrem(num, R.mul(a1, a4), a14, rem);
  if (!RingT<I, W>::is_zero(rem)) return CompleteStatus::CongruenceFailure;
  if (RingT<I, W>::is_zero(a13) || RingT<I, W>::is_zero(a14) || RingT<I, W>::is_zero(a24))
    return CompleteStatus::ZeroCoordinate;
  out.a[0] = a1;
  out.a[1] = a2;
  out.a[2] = a3;
  out.a[3] = a4;
  out.a[pair_coord(1, 2)] = a12;
  out.a[pair_coord(1, 3)] = a13;
  out.a[pair_coord(1, 4)] = a14;
  out.a[pair_coord(2, 3)] = a23;
  out.a[pair_coord(2, 4)] = a24;
  out.a[pair_coord(3, 4)] = a34;
  return CompleteStatus::Ok;
}

// The coprimality conditions of the torsor parameterization:
// (a_i,a_j), (a_i,a_{jk}) for i ∉ {j,k}, (a_{ij},a_{ik})  — 30 gcd tests.
template <class I, class W>
bool coprimality_check(const RingT<I, W>& R, const TorsorPointT<I>& T) {
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j)
      if (!R.coprime(T.a[i - 1], T.a[j - 1])) return false;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = j + 1; k <= 4; ++k) {
        if (j == i || k == i) continue;
        if (!R.coprime(T.a[i - 1], T.a[pair_coord(j, k)])) return false;
      }
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      for (int k = j + 1; k <= 4; ++k) {
        if (j == i || k == i) continue;
        if (!R.coprime(T.a[pair_coord(i, j)], T.a[pair_coord(i, k)])) return false;
      }
  return true;
}

// --- height on the torsor --------------------------------------------------

// Evaluator for max_P |P̃(a)|_v at the single archimedean place: the value is
// |N(P̃(a))| in both the rational and imaginary quadratic cases. Arithmetic
// runs in the wide ring so five-coordinate products cannot overflow at the
// guarded bounds.
template <class I, class W>
struct HeightEval {
  RingT<W, W> RW;
  std::vector<std::array<Elem<W>, 12>> forms;
  bool pm_one = true;                // every member is ± a single monomial
  std::array<bool, 12> used{};       // monomials appearing in any member

  HeightEval(const RingT<I, W>& R, const std::vector<TorsorForm>& lifts)
      : RW(RingT<W, W>(R.F)) {
    for (auto& L : lifts) {
      std::array<Elem<W>, 12> row;
      int nonzero = 0;
      bool unit_coef = true;
      for (int n = 0; n < 12; ++n) {
        row[n] = {W(L.c[n].x), W(L.c[n].y)};
        if (!(L.c[n].x == 0 && L.c[n].y == 0)) {
          used[n] = true;
          ++nonzero;
          if (!((L.c[n].x == 1 || L.c[n].x == -1) && L.c[n].y == 0)) unit_coef = false;
        }
      }
      if (nonzero != 1 || !unit_coef) pm_one = false;
      forms.push_back(row);
    }
  }

  std::array<Elem<W>, 12> monomials(const TorsorPointT<I>& T) const {
    std::array<Elem<W>, 12> m;
    for (int n = 0; n < 12; ++n) {
      auto& f = torsor_monomials()[n].factors;
      Elem<W> acc = {W(T.a[f[0]].x), W(T.a[f[0]].y)};
      for (int t = 1; t < 5; ++t) acc = RW.mul(acc, {W(T.a[f[t]].x), W(T.a[f[t]].y)});
      m[n] = acc;
    }
    return m;
  }

  // exact height max_P |N(P̃(a))|
  W height(const TorsorPointT<I>& T) const {
    auto m = monomials(T);
    W best = 0;
    if (pm_one) {
      for (int n = 0; n < 12; ++n)
        if (used[n]) best = std::max(best, RW.abs_norm(m[n]));
      return best;
    }
    for (auto& row : forms) {
      Elem<W> acc = RW.zero();
      for (int n = 0; n < 12; ++n) {
        if (row[n].x == 0 && row[n].y == 0) continue;
        acc = RW.add(acc, RW.mul(row[n], m[n]));
      }
      best = std::max(best, RW.abs_norm(acc));
    }
    return best;
  }

  bool height_leq(const TorsorPointT<I>& T, W B) const {
    if (pm_one) {
      // per-monomial early exit, no interleaving through the full table
      for (int n = 0; n < 12; ++n) {
        if (!used[n]) continue;
        auto& f = torsor_monomials()[n].factors;
        Elem<W> acc = {W(T.a[f[0]].x), W(T.a[f[0]].y)};
        for (int t = 1; t < 5; ++t) acc = RW.mul(acc, {W(T.a[f[t]].x), W(T.a[f[t]].y)});
        if (RW.abs_norm(acc) > B) return false;
      }
      return true;
    }
    auto m = monomials(T);
    for (auto& row : forms) {
      Elem<W> acc = RW.zero();
      for (int n = 0; n < 12; ++n) {
        if (row[n].x == 0 && row[n].y == 0) continue;
        acc = RW.add(acc, RW.mul(row[n], m[n]));
      }
      if (RW.abs_norm(acc) > B) return false;
    }
    return true;
  }
};

template <class I, class W>
W height_torsor(const RingT<I, W>& R, const std::vector<TorsorForm>& lifts,
                const TorsorPointT<I>& T) {
  HeightEval<I, W> he(R, lifts);
  return he.height(T);
}

// --- surface point <-> torsor point ---------------------------------------

template <class I>
struct SurfacePointT {
  std::array<Elem<I>, 3> y{};
  friend bool operator==(const SurfacePointT& a, const SurfacePointT& b) { return a.y == b.y; }
  friend bool operator<(const SurfacePointT& a, const SurfacePointT& b) { return a.y < b.y; }
};

using SurfacePoint = SurfacePointT<i64>;

// y in V: all coordinates nonzero and pairwise distinct
template <class I, class W>
bool in_V(const RingT<I, W>& R, const std::array<Elem<I>, 3>& y) {
  for (auto& v : y)
    if (RingT<I, W>::is_zero(v)) return false;
  return !(y[0] == y[1]) && !(y[0] == y[2]) && !(y[1] == y[2]);
}

// canonical projective representative: scale by the unit making y1 canonical
template <class I, class W>
SurfacePointT<I> normalize_surface(const RingT<I, W>& R, std::array<Elem<I>, 3> y) {
  Elem<I> c = R.canonical_assoc(y[0]);
  for (int k = 0; k < R.F.num_units; ++k) {
    if (R.mul(y[0], R.unit(k)) == c) {
      return SurfacePointT<I>{{c, R.mul(y[1], R.unit(k)), R.mul(y[2], R.unit(k))}};
    }
  }
  throw std::logic_error("normalize_surface");
}

template <class I, class W>
SurfacePointT<I> to_surface_point(const RingT<I, W>& R, const TorsorPointT<I>& T) {
  std::array<Elem<I>, 3> y = {
      R.mul(T.a[1], R.mul(T.a[2], T.a[pair_coord(2, 3)])),
      R.mul(T.a[0], R.mul(T.a[2], T.a[pair_coord(1, 3)])),
      R.mul(T.a[0], R.mul(T.a[1], T.a[pair_coord(1, 2)]))};
  Elem<I> g = R.gcd3(y[0], y[1], y[2]);
  if (!R.is_unit(g)) throw std::logic_error("to_surface_point: non-primitive image");
  return normalize_surface(R, y);
}

// Inverse map for primitive y in V(K): gcd extraction, then the remaining
// coordinates are exact quotients; lands on a coprime torsor solution.
template <class I, class W>
TorsorPointT<I> from_surface_point(const RingT<I, W>& R, const std::array<Elem<I>, 3>& yin) {
  if (!in_V(R, yin)) throw std::invalid_argument("from_surface_point: y on one of the six lines");
  Elem<I> g0 = R.gcd3(yin[0], yin[1], yin[2]);
  if (!R.is_unit(g0)) throw std::invalid_argument("from_surface_point: y not primitive");
  const Elem<I>&y1 = yin[0], &y2 = yin[1], &y3 = yin[2];
  Elem<I> d12 = R.sub(y1, y2), d13 = R.sub(y1, y3), d23 = R.sub(y2, y3);
  TorsorPointT<I> T;
  T.a[0] = R.gcd(y2, y3);
  T.a[1] = R.gcd(y1, y3);
  T.a[2] = R.gcd(y1, y2);
  T.a[3] = R.gcd(d12, d13);
  T.a[pair_coord(2, 3)] = R.div_exact(y1, R.mul(T.a[1], T.a[2]));
  T.a[pair_coord(1, 3)] = R.div_exact(y2, R.mul(T.a[0], T.a[2]));
  T.a[pair_coord(1, 2)] = R.div_exact(y3, R.mul(T.a[0], T.a[1]));
  T.a[pair_coord(2, 4)] = R.div_exact(d13, R.mul(T.a[1], T.a[3]));
  T.a[pair_coord(1, 4)] = R.div_exact(d23, R.mul(T.a[0], T.a[3]));
  T.a[pair_coord(3, 4)] = R.div_exact(d12, R.mul(T.a[2], T.a[3]));
  return T;
}

// --- Weyl symmetry ---------------------------------------------------------

template <class I, class W>
TorsorPointT<I> apply_s(const RingT<I, W>& R, const TorsorPointT<I>& T, int i) {
  auto& act = weyl_action(i);
  TorsorPointT<I> out;
  for (int c = 0; c < 10; ++c) {
    Elem<I> v = T.a[c];
    if (act.sign[c] < 0) v = R.neg(v);
    out.a[act.perm[c]] = v;
  }
  return out;
}

// n0 = |N(a1 a2 a3 a4)|, n_i = |N(a_i a_{jk} a_{jl} a_{kl})|
template <class W>
struct SymClassT {
  std::array<W, 5> n{};
  int m = 0;  // smallest argmin
};

using SymClass = SymClassT<i128>;

template <class I, class W>
SymClassT<W> sym_quantities(const RingT<I, W>& R, const TorsorPointT<I>& T) {
  SymClassT<W> s;
  std::array<W, 10> nrm;
  for (int c = 0; c < 10; ++c) nrm[c] = R.abs_norm(T.a[c]);
  s.n[0] = nrm[0] * nrm[1] * nrm[2] * nrm[3];
  for (int i = 1; i <= 4; ++i) {
    W v = nrm[i - 1];
    for (int j = 1; j <= 4; ++j)
      for (int k = j + 1; k <= 4; ++k)
        if (j != i && k != i) v *= nrm[pair_coord(j, k)];
    s.n[i] = v;
  }
  s.m = 0;
  for (int i = 1; i <= 4; ++i)
    if (s.n[i] < s.n[s.m]) s.m = i;
  return s;
}

// Dedup rule: point is counted in class m iff n0 ≤ n_j for all j and
// n0 < n_j for 1 ≤ j ≤ m (applied to the s_m-transformed point).
template <class W>
bool is_canonical(const SymClassT<W>& s, int m) {
  for (int j = 1; j <= 4; ++j) {
    if (s.n[0] > s.n[j]) return false;
    if (j <= m && s.n[0] == s.n[j]) return false;
  }
  return true;
}

// --- typical-size diagnostics (W statistics) -------------------------------

struct WStats {
  std::array<double, 6> ratio{};  // |N(a_ij)| / B_ij, pair order of coordinates 4..9
  double wmax = 0;                // max ratio^{1/d}
};

template <class I, class W>
WStats w_stats(const RingT<I, W>& R, const TorsorPointT<I>& T, W B) {
  WStats ws;
  double na = 1;
  for (int c = 0; c < 4; ++c) na *= (double)R.abs_norm(T.a[c]);
  double scale = std::cbrt((double)B * na);
  int idx = 0;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      double bij = scale / ((double)R.abs_norm(T.a[i - 1]) * (double)R.abs_norm(T.a[j - 1]));
      ws.ratio[idx] = (double)R.abs_norm(T.a[pair_coord(i, j)]) / bij;
      ws.wmax = std::max(ws.wmax, std::pow(ws.ratio[idx], 1.0 / R.F.degree));
      ++idx;
    }
  return ws;
}

// exact test:  W_max > Wint  ⟺  some |N(a_ij)|³ |N(a_i a_j)|³ > Wint^{3d} B |N(a')|
template <class I, class W>
bool wmax_exceeds(const RingT<I, W>& R, const TorsorPointT<I>& T, W B, i64 Wint) {
  W na = R.abs_norm(T.a[0]) * R.abs_norm(T.a[1]) * R.abs_norm(T.a[2]) * R.abs_norm(T.a[3]);
  W rhs_base = B * na;
  W wpow = 1;
  for (int t = 0; t < 3 * R.F.degree; ++t) wpow *= (W)Wint;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      W nij = R.abs_norm(T.a[pair_coord(i, j)]);
      W npair = R.abs_norm(T.a[i - 1]) * R.abs_norm(T.a[j - 1]);
      W lhs = nij * nij * nij * npair * npair * npair;
      if (lhs > wpow * rhs_base) return true;
    }
  return false;
}

// --- random coprime torsor solutions (for property tests and sign pinning) --

template <class I, class W>
std::optional<TorsorPointT<I>> try_random_solution(const RingT<I, W>& R, CounterRng& rng,
                                                   i64 coord_range) {
  auto rnd_elem = [&](i64 lo, i64 hi) -> Elem<I> {
    if (R.rational()) return {I(rng.next_in(lo, hi)), I(0)};
    return {I(rng.next_in(lo, hi)), I(rng.next_in(lo, hi))};
  };
  std::array<Elem<I>, 4> ap;
  for (auto& a : ap) a = rnd_elem(-coord_range, coord_range);
  for (auto& a : ap)
    if (RingT<I, W>::is_zero(a)) return std::nullopt;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!R.coprime(ap[i], ap[j])) return std::nullopt;
  Elem<I> a12 = rnd_elem(-coord_range, coord_range);
  if (RingT<I, W>::is_zero(a12)) return std::nullopt;
  // solve the two congruences by modular inverses, then randomize within the class
  Elem<I> a23 = R.add(R.mod(R.mul(R.inv_mod(ap[2], ap[3]), R.mul(ap[0], a12)), ap[3]),
                      R.mul(ap[3], rnd_elem(-3, 3)));
  if (RingT<I, W>::is_zero(a23)) return std::nullopt;
  Elem<I> a34 = R.add(R.mod(R.mul(R.inv_mod(ap[3], ap[0]), R.mul(ap[1], a23)), ap[0]),
                      R.mul(ap[0], rnd_elem(-3, 3)));
  if (RingT<I, W>::is_zero(a34)) return std::nullopt;
  TorsorPointT<I> T;
  if (complete_dependent(R, ap, a12, a23, a34, T) != CompleteStatus::Ok) return std::nullopt;
  return T;
}

template <class I, class W>
TorsorPointT<I> random_solution(const RingT<I, W>& R, CounterRng& rng, i64 coord_range = 9,
                                bool require_coprime = false) {
  for (int tries = 0; tries < 100000; ++tries) {
    auto T = try_random_solution(R, rng, coord_range);
    if (!T) continue;
    if (require_coprime && !coprimality_check(R, *T)) continue;
    return *T;
  }
  throw std::logic_error("random_solution: generation failed");
}

}  // namespace dp5
