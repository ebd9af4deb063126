#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "dp5/cubic.hpp"

namespace dp5 {

// Torsor coordinate indexing: 0..3 = a_1..a_4, then the six a_{ij}.
inline constexpr int kCoordA1 = 0, kCoordA2 = 1, kCoordA3 = 2, kCoordA4 = 3;
inline int pair_coord(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == 1) return 3 + j - 1;        // (1,2)=4 (1,3)=5 (1,4)=6
  if (i == 2) return 5 + j - 1;        // (2,3)=7 (2,4)=8
  if (i == 3) return 9;                // (3,4)=9
  throw std::logic_error("pair_coord");
}
inline const char* coord_name(int c) {
  static const char* names[10] = {"a1",  "a2",  "a3",  "a4",  "a12",
                                  "a13", "a14", "a23", "a24", "a34"};
  return names[c];
}

// The twelve monomials a_{ij} a_j a_{jk} a_k a_{kl} of anticanonical degree,
// one per undirected Hamiltonian path i-j-k-l on {1,2,3,4} (orientation fixed
// by j < k), in lexicographic path order. This order is the wire format.
struct TorsorMonomial {
  std::array<int, 4> path{};     // (i,j,k,l)
  std::array<int, 5> factors{};  // coordinate indices
};

inline const std::array<TorsorMonomial, 12>& torsor_monomials() {
  static const std::array<TorsorMonomial, 12> table = [] {
    std::array<TorsorMonomial, 12> t{};
    std::array<int, 4> p = {1, 2, 3, 4};
    std::vector<std::array<int, 4>> paths;
    std::sort(p.begin(), p.end());
    do {
      if (p[1] < p[2]) paths.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::sort(paths.begin(), paths.end());
    if (paths.size() != 12) throw std::logic_error("torsor monomial count");
    for (std::size_t n = 0; n < 12; ++n) {
      auto [i, j, k, l] = paths[n];
      t[n].path = paths[n];
      t[n].factors = {pair_coord(i, j), j - 1, pair_coord(j, k), k - 1, pair_coord(k, l)};
    }
    return t;
  }();
  return table;
}

inline int monomial_index_of_path(int i, int j, int k, int l) {
  if (j > k) {
    std::swap(i, l);
    std::swap(j, k);
  }
  auto& tab = torsor_monomials();
  for (int n = 0; n < 12; ++n)
    if (tab[n].path == std::array<int, 4>{i, j, k, l}) return n;
  throw std::logic_error("monomial_index_of_path");
}

// Form of anticanonical multidegree 3ℓ0 − ℓ1 − ℓ2 − ℓ3 − ℓ4 in the
// 12-monomial basis.
struct TorsorForm {
  std::array<Elem<i64>, 12> c{};

  friend bool operator==(const TorsorForm& a, const TorsorForm& b) { return a.c == b.c; }
  static std::array<int, 5> multidegree() { return {3, -1, -1, -1, -1}; }
};

// substitution (3.6): a_i = 1 and
// (a12,a13,a14,a23,a24,a34) = (Y3, Y2, Y2−Y3, Y1, Y1−Y3, Y1−Y2)
inline const std::array<LinForm, 10>& descent_substitution() {
  static const std::array<LinForm, 10> sub = [] {
    std::array<LinForm, 10> s{};
    s[pair_coord(1, 2)] = yvar(3);
    s[pair_coord(1, 3)] = yvar(2);
    s[pair_coord(1, 4)] = ydiff(2, 3);
    s[pair_coord(2, 3)] = yvar(1);
    s[pair_coord(2, 4)] = ydiff(1, 3);
    s[pair_coord(3, 4)] = ydiff(1, 2);
    return s;
  }();
  return sub;
}

// cubic obtained from one monomial under the substitution above
inline const std::array<CubicForm, 12>& monomial_descents() {
  static const std::array<CubicForm, 12> ds = [] {
    std::array<CubicForm, 12> d{};
    auto& sub = descent_substitution();
    for (int n = 0; n < 12; ++n) {
      auto& f = torsor_monomials()[n].factors;
      // the two single-index factors substitute to 1
      d[n] = product_of_linear(sub[f[0]], sub[f[2]], sub[f[4]]);
    }
    return d;
  }();
  return ds;
}

// descend: left inverse of the lift, computed coefficient-wise over O_K
inline CubicForm descend(const FieldSpec& F, const TorsorForm& T) {
  RingBig R{F};
  std::array<Elem<BigInt>, 10> acc{};
  for (auto& a : acc) a = R.zero();
  for (int n = 0; n < 12; ++n) {
    if (T.c[n].x == 0 && T.c[n].y == 0) continue;
    Elem<BigInt> coef = {BigInt(T.c[n].x), BigInt(T.c[n].y)};
    auto& d = monomial_descents()[n];
    for (int i = 0; i < 10; ++i) {
      if (d.c[i].x == 0 && d.c[i].y == 0) continue;
      acc[i] = R.add(acc[i], R.mul(coef, {BigInt(d.c[i].x), BigInt(d.c[i].y)}));
    }
  }
  CubicForm out;
  for (int i = 0; i < 10; ++i) {
    if (acc[i].x > std::numeric_limits<i64>::max() || acc[i].x < std::numeric_limits<i64>::min() ||
        acc[i].y > std::numeric_limits<i64>::max() || acc[i].y < std::numeric_limits<i64>::min())
      throw std::overflow_error("descend: coefficient too large");
    out.c[i] = {(i64)acc[i].x, (i64)acc[i].y};
  }
  return out;
}

// lift table: P̃_σ = sign · monomial, and likewise Q̃_σ
struct LiftEntry {
  int monomial = -1;
  int sign = 0;
};

inline const std::array<LiftEntry, 6>& p_sigma_lift_table() {
  static const std::array<LiftEntry, 6> tab = [] {
    std::array<LiftEntry, 6> t{};
    for (int s = 0; s < 6; ++s) {
      CubicForm P = p_sigma(kS3[s]);
      for (int n = 0; n < 12; ++n) {
        if (monomial_descents()[n] == P) t[s] = {n, 1};
        else if (monomial_descents()[n] == cubic_neg(P)) t[s] = {n, -1};
      }
      if (t[s].monomial < 0) throw std::logic_error("p_sigma lift not found");
    }
    return t;
  }();
  return tab;
}

inline const std::array<LiftEntry, 6>& q_sigma_lift_table() {
  static const std::array<LiftEntry, 6> tab = [] {
    std::array<LiftEntry, 6> t{};
    for (int s = 0; s < 6; ++s) {
      CubicForm Q = q_sigma(kS3[s]);
      for (int n = 0; n < 12; ++n) {
        if (monomial_descents()[n] == Q) t[s] = {n, 1};
        else if (monomial_descents()[n] == cubic_neg(Q)) t[s] = {n, -1};
      }
      if (t[s].monomial < 0) throw std::logic_error("q_sigma lift not found");
    }
    return t;
  }();
  return tab;
}

// cubic form -> KFrac coefficient vector
inline std::vector<KFrac> cubic_to_kvec(const KField& K, const CubicForm& f) {
  std::vector<KFrac> v(10);
  for (int i = 0; i < 10; ++i) v[i] = K.from_elem({BigInt(f.c[i].x), BigInt(f.c[i].y)});
  return v;
}

// Express P in the P_σ basis (unique when it exists), then map the basis to
// signed monomials. Throws if P is outside the anticanonical space or the
// combination is not integral.
inline TorsorForm torsor_lift(const FieldSpec& F, const CubicForm& P) {
  KField K{F};
  // columns: the six P_σ; rows: 10 cubic coefficients
  std::vector<std::vector<KFrac>> A(10, std::vector<KFrac>(6));
  for (int s = 0; s < 6; ++s) {
    auto col = cubic_to_kvec(K, p_sigma(kS3[s]));
    for (int r = 0; r < 10; ++r) A[r][s] = col[r];
  }
  std::vector<KFrac> b = cubic_to_kvec(K, P), lam;
  if (!solve_linear_system(K, A, b, lam))
    throw std::invalid_argument("torsor_lift: form is not in the anticanonical span");
  TorsorForm T;
  auto& tab = p_sigma_lift_table();
  for (int s = 0; s < 6; ++s) {
    Elem<BigInt> l;
    if (!K.integral(lam[s], l))
      throw std::invalid_argument("torsor_lift: non-integral coordinates in the P_sigma basis");
    Elem<BigInt> signed_l = tab[s].sign > 0 ? l : Elem<BigInt>{-l.x, -l.y};
    if (signed_l.x > std::numeric_limits<i64>::max() || signed_l.x < std::numeric_limits<i64>::min())
      throw std::overflow_error("torsor_lift: coefficient too large");
    T.c[tab[s].monomial] = {(i64)signed_l.x, (i64)signed_l.y};
  }
  return T;
}

// --- Weyl involutions ------------------------------------------------------

// s_i fixes a_i and a_{ij}, exchanges a_{jk} ↔ a_l, and flips the sign of
// a_1 (i=1), a_12 (i=2), a_34 (i=3), a_4 (i=4).
struct WeylAction {
  std::array<int, 10> perm{};
  std::array<int, 10> sign{};
};

inline const WeylAction& weyl_action(int i /* 0 = id, 1..4 = s_i */) {
  static const std::array<WeylAction, 5> acts = [] {
    std::array<WeylAction, 5> as{};
    for (int i = 0; i <= 4; ++i) {
      auto& a = as[i];
      for (int c = 0; c < 10; ++c) {
        a.perm[c] = c;
        a.sign[c] = 1;
      }
      if (i == 0) continue;
      std::array<int, 3> rest{};
      int idx = 0;
      for (int v = 1; v <= 4; ++v)
        if (v != i) rest[idx++] = v;
      // swap a_{jk} <-> a_l for {j,k,l} = rest
      for (int t = 0; t < 3; ++t) {
        int l = rest[t], j = rest[(t + 1) % 3], k = rest[(t + 2) % 3];
        int pc = pair_coord(j, k), lc = l - 1;
        a.perm[pc] = lc;
        a.perm[lc] = pc;
      }
      int flip = i == 1 ? kCoordA1 : i == 2 ? pair_coord(1, 2) : i == 3 ? pair_coord(3, 4) : kCoordA4;
      a.sign[flip] = -1;
    }
    return as;
  }();
  return acts[i];
}

// induced signed permutation of the 12 monomials: m_k(s(x)) = sign · m_{img}(x)
struct MonomialAction {
  std::array<int, 12> img{};
  std::array<int, 12> sign{};
};

inline const MonomialAction& weyl_monomial_action(int i) {
  static const std::array<MonomialAction, 5> acts = [] {
    std::array<MonomialAction, 5> out{};
    for (int i = 0; i <= 4; ++i) {
      auto& act = weyl_action(i);
      for (int n = 0; n < 12; ++n) {
        std::array<int, 5> f = torsor_monomials()[n].factors;
        int sg = 1;
        for (auto& c : f) {
          sg *= act.sign[c];
          c = act.perm[c];
        }
        std::sort(f.begin(), f.end());
        int found = -1;
        for (int m = 0; m < 12; ++m) {
          std::array<int, 5> g = torsor_monomials()[m].factors;
          std::sort(g.begin(), g.end());
          if (g == f) {
            found = m;
            break;
          }
        }
        if (found < 0) throw std::logic_error("weyl: monomial image is not a monomial");
        out[i].img[n] = found;
        out[i].sign[n] = sg;
      }
    }
    return out;
  }();
  return acts[i];
}

// P̃^{(s)}(x) = P̃(s(x))
inline TorsorForm weyl_apply_form(int i, const TorsorForm& T) {
  auto& ma = weyl_monomial_action(i);
  TorsorForm out;
  for (int n = 0; n < 12; ++n) {
    if (T.c[n].x == 0 && T.c[n].y == 0) continue;
    auto v = T.c[n];
    if (ma.sign[n] < 0) v = {-v.x, -v.y};
    out.c[ma.img[n]] = v;
  }
  return out;
}

}  // namespace dp5
