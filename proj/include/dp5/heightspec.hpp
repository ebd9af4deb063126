#pragma once

#include "dp5/point.hpp"

namespace dp5 {

// A validated admissible height set 𝒫: the cubic members, their torsor
// lifts, the Weyl images 𝒫^(s) for s in {id, s1..s4} (as used by the five
// symmetry classes of the reduced engine), and the provable box constant.
struct HeightSpec {
  FieldSpec F;
  std::vector<CubicForm> members;
  std::array<std::vector<CubicForm>, 5> cls_members;
  std::array<std::vector<TorsorForm>, 5> cls_lifts;
  BigRat C_rat;       // C_𝒫: every torsor monomial value has |N| ≤ C_𝒫·B at height ≤ B
  i64 C_int = 1;      // ceil(C_rat)
  uint64_t hash = 0;

  const std::vector<TorsorForm>& lifts() const { return cls_lifts[0]; }
  int size() const { return (int)members.size(); }
};

namespace detail {

inline BigInt isqrt_ceil(const BigInt& n) {
  if (n <= 0) return 0;
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r < n) ++r;
  return r;
}

// upper bound for Σ_P |σ(c_P)| raised to the field degree
inline BigRat archimedean_bound(const KField& K, int degree, const std::vector<KFrac>& coeffs) {
  BigRat sum = 0;
  for (auto& c : coeffs) {
    if (K.is_zero(c)) continue;
    if (degree == 1) {
      BigInt n = c.num.x < 0 ? BigInt(-c.num.x) : c.num.x;
      sum += BigRat(n, c.den);
    } else {
      BigInt n = K.ring().norm(c.num);
      sum += BigRat(isqrt_ceil(n), c.den);
    }
  }
  return degree == 1 ? sum : sum * sum;
}

inline std::string coeff_signature(const FieldSpec& F, const std::vector<CubicForm>& forms) {
  std::string s = F.label + "|";
  for (auto& f : forms) {
    for (auto& c : f.c) {
      s += std::to_string(c.x);
      s += ',';
      s += std::to_string(c.y);
      s += ';';
    }
    s += '#';
  }
  return s;
}

inline bool proportional_to_base_point(const RingBig& R, const std::array<Elem<BigInt>, 3>& y) {
  const i64 pts[4][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  for (auto& p : pts) {
    bool prop = true;
    for (int i = 0; i < 3 && prop; ++i)
      for (int j = i + 1; j < 3 && prop; ++j) {
        // y_i p_j == y_j p_i
        Elem<BigInt> lhs = R.mul_int(y[i], p[j]), rhs = R.mul_int(y[j], p[i]);
        if (!(lhs == rhs)) prop = false;
      }
    if (prop) return true;
  }
  return false;
}

// check eq. (1.1) at one triple; returns false and fills `why` on failure
inline bool gcd_identity_at(const RingBig& R, const std::vector<CubicForm>& forms,
                            const std::array<Elem<BigInt>, 3>& y, std::string& why) {
  Elem<BigInt> lhs = R.zero();
  bool have = false;
  for (auto& f : forms) {
    Elem<BigInt> v = cubic_eval(R, f, y[0], y[1], y[2]);
    if (RingBig::is_zero(v)) continue;
    lhs = have ? R.gcd(lhs, v) : R.canonical_assoc(v);
    have = true;
  }
  if (!have) {
    why = "all members vanish at the sample";
    return false;
  }
  auto g = [&](const Elem<BigInt>& a, const Elem<BigInt>& b) {
    if (RingBig::is_zero(a) && RingBig::is_zero(b)) return R.zero();
    return R.gcd(a, b);
  };
  Elem<BigInt> g1 = g(y[1], y[2]);
  Elem<BigInt> g2 = g(y[0], y[2]);
  Elem<BigInt> g3 = g(y[0], y[1]);
  Elem<BigInt> g4 = g(R.sub(y[0], y[1]), R.sub(y[0], y[2]));
  Elem<BigInt> g0 = R.gcd3(y[0], y[1], y[2]);
  // lhs · g0 == g1 g2 g3 g4 as ideals
  Elem<BigInt> l = R.canonical_assoc(R.mul(lhs, g0));
  Elem<BigInt> r = R.canonical_assoc(R.mul(R.mul(g1, g2), R.mul(g3, g4)));
  if (l == r) return true;
  why = "gcd identity failed at y = (" + R.str(y[0]) + " : " + R.str(y[1]) + " : " +
        R.str(y[2]) + "), lhs*g0 = " + R.str(l) + ", rhs = " + R.str(r);
  return false;
}

inline std::vector<std::array<Elem<BigInt>, 3>> gcd_stress_list(const RingBig& R) {
  std::vector<std::array<Elem<BigInt>, 3>> out;
  auto E = [&](i64 v) { return R.from_int(v); };
  // (AB, AC, BC) with A,B,C pairwise coprime: pairwise gcds are A, B, C
  const i64 abc[][3] = {{2, 3, 5},    {4, 9, 25},     {8, 27, 125},
                        {31, 32, 33}, {999, 1000, 1001}, {512, 729, 625}};
  for (auto& t : abc) {
    out.push_back({E(t[0] * t[1]), E(t[0] * t[2]), E(t[1] * t[2])});
    out.push_back({E(-t[0] * t[1]), E(t[0] * t[2]), E(t[1] * t[2])});
  }
  // (M, M-D, M-2D) with gcd(M,D)=1: the fourth factor gcd is D
  const i64 md[][2] = {{10007, 999}, {9973, 1000}, {1000003, 997}, {524287, 512}};
  for (auto& t : md) out.push_back({E(t[0]), E(t[0] - t[1]), E(t[0] - 2 * t[1])});
  // the worked example (6:10:15): required gcd value 30
  out.push_back({E(6), E(10), E(15)});
  if (!R.rational()) {
    // a few samples with nontrivial second coordinates
    Elem<BigInt> w = {BigInt(1), BigInt(1)};
    for (auto& t : abc) {
      out.push_back({R.mul(E(t[0] * t[1]), w), E(t[0] * t[2]), E(t[1] * t[2])});
    }
  }
  return out;
}

}  // namespace detail

// Pin the lift sign table by the defining identity
// m_k(a) · a1a2a3a4 = descend(m_k)(a2a3a23, a1a3a13, a1a2a12) on random
// torsor solutions; a failure means the monomial/sign tables are wrong and
// aborts construction.
inline void verify_lift_defining_identity(const FieldSpec& F, int checks, uint64_t seed) {
  RingBig R{F};
  CounterRng rng(seed);
  HeightEval<BigInt, BigInt> he(R, [] {
    std::vector<TorsorForm> basis(12);
    for (int n = 0; n < 12; ++n) basis[n].c[n] = {1, 0};
    return basis;
  }());
  for (int t = 0; t < checks; ++t) {
    auto T = random_solution(R, rng, 9);
    Elem<BigInt> aprod = R.mul(R.mul(T.a[0], T.a[1]), R.mul(T.a[2], T.a[3]));
    std::array<Elem<BigInt>, 3> y = {
        R.mul(T.a[1], R.mul(T.a[2], T.a[pair_coord(2, 3)])),
        R.mul(T.a[0], R.mul(T.a[2], T.a[pair_coord(1, 3)])),
        R.mul(T.a[0], R.mul(T.a[1], T.a[pair_coord(1, 2)]))};
    auto mon = he.monomials(T);
    for (int n = 0; n < 12; ++n) {
      Elem<BigInt> lhs = R.mul(mon[n], aprod);
      Elem<BigInt> rhs = cubic_eval(R, monomial_descents()[n], y[0], y[1], y[2]);
      if (!(lhs == rhs))
        throw std::logic_error("defining identity failed for monomial " + std::to_string(n));
    }
  }
}

// Validate an admissible height set and build the full HeightSpec:
// O_K coefficients, vanishing at p1..p4, rank 6, the gcd identity (1.1) on
// `samples` pseudo-random triples plus an engineered stress list, integral
// torsor lifts, and the five Weyl images.
inline HeightSpec validate_admissible(const FieldSpec& F, const std::vector<CubicForm>& forms,
                                      int samples = 2000, uint64_t seed = 1) {
  if (forms.empty()) throw std::invalid_argument("validate_admissible: empty set");
  HeightSpec H;
  H.F = F;
  H.members = forms;

  for (std::size_t i = 0; i < forms.size(); ++i) {
    int bad = 0;
    if (!vanishes_at_base_points(F, forms[i], bad))
      throw std::invalid_argument("member " + std::to_string(i) + " does not vanish at p" +
                                  std::to_string(bad));
  }

  KField K{F};
  {
    std::vector<std::vector<KFrac>> M;
    for (auto& f : forms) M.push_back(cubic_to_kvec(K, f));
    int rank = matrix_rank(K, M);
    if (rank != 6)
      throw std::invalid_argument("height set spans rank " + std::to_string(rank) +
                                  " of the 6-dimensional anticanonical space");
  }

  // torsor lifts and Weyl images
  H.cls_members[0] = forms;
  for (auto& f : forms) H.cls_lifts[0].push_back(torsor_lift(F, f));
  for (int s = 1; s <= 4; ++s) {
    for (auto& L : H.cls_lifts[0]) {
      TorsorForm img = weyl_apply_form(s, L);
      H.cls_lifts[s].push_back(img);
      H.cls_members[s].push_back(descend(F, img));
    }
    for (std::size_t i = 0; i < H.cls_members[s].size(); ++i) {
      int bad = 0;
      if (!vanishes_at_base_points(F, H.cls_members[s][i], bad))
        throw std::logic_error("Weyl image s" + std::to_string(s) + " member " +
                               std::to_string(i) + " fails vanishing at p" + std::to_string(bad));
    }
    std::vector<std::vector<KFrac>> M;
    for (auto& f : H.cls_members[s]) M.push_back(cubic_to_kvec(K, f));
    if (matrix_rank(K, M) != 6)
      throw std::logic_error("Weyl image s" + std::to_string(s) + " lost full rank");
  }

  // gcd identity (1.1): sampled random triples plus the stress list, for the
  // primary set and (more lightly) every Weyl image
  {
    RingBig R{F};
    CounterRng rng(seed);
    auto stress = detail::gcd_stress_list(R);
    std::string why;
    for (int s = 0; s <= 4; ++s) {
      int n_samples = s == 0 ? samples : std::max(50, samples / 10);
      for (auto& y : stress)
        if (!detail::gcd_identity_at(R, H.cls_members[s], y, why))
          throw std::invalid_argument("class s" + std::to_string(s) + " stress: " + why);
      int done = 0;
      while (done < n_samples) {
        std::array<Elem<BigInt>, 3> y;
        bool zero = true;
        for (auto& v : y) {
          i64 range = F.is_rational() ? 999 : 99;
          v = {BigInt(rng.next_in(-range, range)),
               BigInt(F.is_rational() ? 0 : rng.next_in(-range, range))};
          if (!RingBig::is_zero(v)) zero = false;
        }
        if (zero || detail::proportional_to_base_point(R, y)) continue;
        if (RingBig::is_zero(y[0]) && RingBig::is_zero(y[1])) continue;
        if (!detail::gcd_identity_at(R, H.cls_members[s], y, why))
          throw std::invalid_argument("class s" + std::to_string(s) + ": " + why);
        ++done;
      }
    }
  }

  // C_𝒫: every torsor monomial as an exact linear combination of the lifted
  // members; C = max over monomials of the archimedean coefficient bound
  {
    std::vector<std::vector<KFrac>> A(10, std::vector<KFrac>(forms.size()));
    for (std::size_t j = 0; j < forms.size(); ++j) {
      auto col = cubic_to_kvec(K, forms[j]);
      for (int r = 0; r < 10; ++r) A[r][j] = col[r];
    }
    BigRat best = 0;
    for (int n = 0; n < 12; ++n) {
      std::vector<KFrac> d = cubic_to_kvec(K, monomial_descents()[n]);
      BigRat b = -1;
      // a representation by a single member is always preferable
      for (std::size_t j = 0; j < forms.size() && b < 0; ++j) {
        KFrac coef = K.zero();
        bool ok = true;
        for (int r = 0; r < 10 && ok; ++r) {
          if (K.is_zero(A[r][j])) {
            ok = K.is_zero(d[r]);
            continue;
          }
          KFrac q = K.div(d[r], A[r][j]);
          if (K.is_zero(coef)) coef = q;
          else ok = K.eq(coef, q);
        }
        if (ok && !K.is_zero(coef)) b = detail::archimedean_bound(K, F.degree, {coef});
      }
      if (b < 0) {
        std::vector<KFrac> x;
        if (!solve_linear_system(K, A, d, x))
          throw std::logic_error("C bound: monomial outside span");
        b = detail::archimedean_bound(K, F.degree, x);
      }
      if (b > best) best = b;
    }
    H.C_rat = best;
    BigInt c = boost::multiprecision::numerator(best) / boost::multiprecision::denominator(best);
    if (BigRat(c) < best) ++c;
    if (c < 1) c = 1;
    if (c > 1000000) throw std::invalid_argument("C bound unreasonably large");
    H.C_int = (i64)c;
  }

  verify_lift_defining_identity(F, 100, seed + 17);
  H.hash = fnv1a(detail::coeff_signature(F, forms));
  return H;
}

// 𝒫 ↦ 𝒫^(s): rebuild and revalidate from the s-image of the lifts.
inline HeightSpec weyl_height_spec(const HeightSpec& H, int s, int samples = 500) {
  if (s < 0 || s > 4) throw std::invalid_argument("weyl_height_spec: s in {0,..,4}");
  if (s == 0) return H;
  return validate_admissible(H.F, H.cls_members[s], samples, 7);
}

inline HeightSpec make_weil_spec(const FieldSpec& F, int samples = 2000) {
  return validate_admissible(F, weil_height_set(), samples);
}
inline HeightSpec make_symmetric_spec(const FieldSpec& F, int samples = 2000) {
  return validate_admissible(F, symmetric_height_set(), samples);
}

}  // namespace dp5
