#pragma once

#include "dp5/ideal.hpp"

namespace dp5 {

// Local density at a finite place of residue size q:
// ω_q = (1 − 1/q)^5 (1 + 5/q + 1/q²), as an exact rational.
inline BigRat euler_factor(i64 q) {
  if (q < 2) throw std::invalid_argument("euler_factor: q >= 2");
  BigRat x = BigRat(1, q);
  BigRat a = 1 - x;
  BigRat a5 = a * a * a * a * a;
  return a5 * (1 + 5 * x + x * x);
}

// expansion of the factor in x = 1/q: 1 − 14x² + 35x³ − 35x⁴ + 14x⁵ − x⁷
inline const std::array<i64, 8>& euler_factor_expansion() {
  static const std::array<i64, 8> c = {1, 0, -14, 35, -35, 14, 0, -1};
  return c;
}

// Number of points of the split quintic del Pezzo surface over F_q, by
// enumeration of P²(F_q) in normalized coordinates with the four blow-ups
// (each rational center is replaced by a P¹: net +q).
inline i64 fp_point_count(i64 q) {
  i64 plane = 0;
  for (i64 a = 0; a < q; ++a)
    for (i64 b = 0; b < q; ++b) ++plane;  // (1 : a : b)
  for (i64 c = 0; c < q; ++c) ++plane;    // (0 : 1 : c)
  ++plane;                                // (0 : 0 : 1)
  const int blown_up_rational_points = 4;  // p1..p4 are defined over any F_q
  return plane + blown_up_rational_points * q;
}

struct EulerProduct {
  double value = 1;
  double lo = 1, hi = 1;  // rigorous enclosure including the truncation tail
  i64 pmax = 0;
  long long factors = 0;
};

// ∏_{Np ≤ pmax} ω_Np with a tail interval. The tail uses |log ω_q| ≤ 15/q²
// for q ≥ 7 (from the expansion above) and at most d = [K:Q] prime ideals of
// any given norm, so |log tail| ≤ 15 d / pmax.
inline EulerProduct euler_product(const FieldSpec& F, i64 pmax) {
  if (pmax < 2) throw std::invalid_argument("euler_product: pmax >= 2");
  EulerProduct out;
  out.pmax = pmax;
  long double prod = 1;
  for (i64 q : prime_ideal_norms_up_to(F, pmax)) {
    long double x = 1.0L / q;
    long double a = 1 - x;
    prod *= a * a * a * a * a * (1 + 5 * x + x * x);
    ++out.factors;
  }
  out.value = (double)prod;
  long double logtail = 15.0L * F.degree / pmax;
  // rounding slack: a few ulps per factor
  long double fperr = 8e-19L * out.factors + 1e-17L;
  out.lo = (double)(prod * std::exp(-(double)(logtail + fperr)));
  out.hi = (double)(prod * std::exp((double)(logtail + fperr)));
  return out;
}

// θ₁ of the final summation step: the same Euler product as the theorem's
// finite part (shared implementation, asserted at the call site in tests).
inline EulerProduct theta1(const FieldSpec& F, i64 pmax) { return euler_product(F, pmax); }

}  // namespace dp5
