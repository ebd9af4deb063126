#pragma once

#include <array>

#include "dp5/kfrac.hpp"
#include "dp5/ring.hpp"

namespace dp5 {

// Degree-3 monomials in Y1,Y2,Y3, exponent tuples in descending
// lexicographic order. This order is the wire format for height-spec files.
inline constexpr std::array<std::array<int, 3>, 10> kCubicExponents = {{{3, 0, 0},
                                                                        {2, 1, 0},
                                                                        {2, 0, 1},
                                                                        {1, 2, 0},
                                                                        {1, 1, 1},
                                                                        {1, 0, 2},
                                                                        {0, 3, 0},
                                                                        {0, 2, 1},
                                                                        {0, 1, 2},
                                                                        {0, 0, 3}}};

// Cubic form with O_K coefficients in the fixed monomial order.
struct CubicForm {
  std::array<Elem<i64>, 10> c{};

  friend bool operator==(const CubicForm& a, const CubicForm& b) { return a.c == b.c; }
};

inline CubicForm cubic_neg(const CubicForm& f) {
  CubicForm r;
  for (int i = 0; i < 10; ++i) r.c[i] = {-f.c[i].x, -f.c[i].y};
  return r;
}

// evaluate with ring arithmetic; W must hold values of size ~|y|³
template <class I, class W>
Elem<I> cubic_eval(const RingT<I, W>& R, const CubicForm& f, const Elem<I>& y1, const Elem<I>& y2,
                   const Elem<I>& y3) {
  Elem<I> acc = R.zero();
  std::array<Elem<I>, 4> p1, p2, p3;
  p1[0] = p2[0] = p3[0] = R.one();
  for (int k = 1; k <= 3; ++k) {
    p1[k] = R.mul(p1[k - 1], y1);
    p2[k] = R.mul(p2[k - 1], y2);
    p3[k] = R.mul(p3[k - 1], y3);
  }
  for (int i = 0; i < 10; ++i) {
    if (f.c[i].x == 0 && f.c[i].y == 0) continue;
    Elem<I> coef = R.make(I(f.c[i].x), I(f.c[i].y));
    auto& e = kCubicExponents[i];
    acc = R.add(acc, R.mul(coef, R.mul(p1[e[0]], R.mul(p2[e[1]], p3[e[2]]))));
  }
  return acc;
}

// integer linear form  c1·Y1 + c2·Y2 + c3·Y3
struct LinForm {
  std::array<i64, 3> c{};
};

inline CubicForm product_of_linear(const LinForm& a, const LinForm& b, const LinForm& d) {
  CubicForm f;
  auto idx = [&](int e1, int e2, int e3) {
    for (int i = 0; i < 10; ++i)
      if (kCubicExponents[i][0] == e1 && kCubicExponents[i][1] == e2 &&
          kCubicExponents[i][2] == e3)
        return i;
    throw std::logic_error("bad exponent");
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        i64 v = a.c[i] * b.c[j] * d.c[k];
        if (!v) continue;
        int e[3] = {0, 0, 0};
        e[i]++;
        e[j]++;
        e[k]++;
        f.c[idx(e[0], e[1], e[2])].x += v;
      }
  return f;
}

// the permutations of {1,2,3} in a fixed order: image triples (σ(1),σ(2),σ(3))
inline constexpr std::array<std::array<int, 3>, 6> kS3 = {{{1, 2, 3},
                                                           {2, 1, 3},
                                                           {3, 2, 1},
                                                           {1, 3, 2},
                                                           {2, 3, 1},
                                                           {3, 1, 2}}};

inline LinForm yvar(int i) {
  LinForm l;
  l.c[i - 1] = 1;
  return l;
}
inline LinForm ydiff(int i, int j) {
  LinForm l;
  l.c[i - 1] = 1;
  l.c[j - 1] = -1;
  return l;
}

// P_σ = Y_{σ1} Y_{σ2} (Y_{σ1} − Y_{σ3})
inline CubicForm p_sigma(const std::array<int, 3>& s) {
  return product_of_linear(yvar(s[0]), yvar(s[1]), ydiff(s[0], s[2]));
}
// Q_σ = Y_{σ2} (Y_{σ1} − Y_{σ2}) (Y_{σ1} − Y_{σ3})
inline CubicForm q_sigma(const std::array<int, 3>& s) {
  return product_of_linear(yvar(s[1]), ydiff(s[0], s[1]), ydiff(s[0], s[2]));
}

inline std::vector<CubicForm> weil_height_set() {
  std::vector<CubicForm> v;
  for (auto& s : kS3) v.push_back(p_sigma(s));
  return v;
}
inline std::vector<CubicForm> symmetric_height_set() {
  std::vector<CubicForm> v;
  for (auto& s : kS3) v.push_back(p_sigma(s));
  for (auto& s : kS3) v.push_back(q_sigma(s));
  return v;
}

// vanishing at the four blown-up points
inline bool vanishes_at_base_points(const FieldSpec& F, const CubicForm& f, int& bad_point) {
  RingBig R{F};
  const i64 pts[4][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  for (int k = 0; k < 4; ++k) {
    auto v = cubic_eval(R, f, R.from_int(pts[k][0]), R.from_int(pts[k][1]),
                        R.from_int(pts[k][2]));
    if (!RingBig::is_zero(v)) {
      bad_point = k + 1;
      return false;
    }
  }
  bad_point = 0;
  return true;
}

// apply a coordinate permutation of (Y1,Y2,Y3) to a cubic form
inline CubicForm permute_cubic(const CubicForm& f, const std::array<int, 3>& s) {
  CubicForm r;
  for (int i = 0; i < 10; ++i) {
    if (f.c[i].x == 0 && f.c[i].y == 0) continue;
    auto& e = kCubicExponents[i];
    int ne[3] = {0, 0, 0};
    // Y_j -> Y_{s(j)}
    ne[s[0] - 1] += e[0];
    ne[s[1] - 1] += e[1];
    ne[s[2] - 1] += e[2];
    for (int j = 0; j < 10; ++j)
      if (kCubicExponents[j][0] == ne[0] && kCubicExponents[j][1] == ne[1] &&
          kCubicExponents[j][2] == ne[2]) {
        r.c[j] = f.c[i];
        break;
      }
  }
  return r;
}

}  // namespace dp5
