#pragma once

#include <map>

#include "dp5/engines.hpp"
#include "dp5/eulerprod.hpp"

namespace dp5 {

// θ0(a') = 1 iff the four ideals are pairwise coprime.
template <class I, class W>
int theta0(const RingT<I, W>& R, const std::array<Elem<I>, 4>& ap) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!R.coprime(ap[i], ap[j])) return 0;
  return 1;
}

struct ThetaValue {
  double value = 1;
  double lo = 1, hi = 1;  // enclosure including the truncation tail
  i64 pmax = 0;
};

// θ(a') = ∏_{p | a1a2a3a4} (1−1/Np)(1−1/Np²) · ∏_{p ∤ a1a2a3a4} (1−4/Np²+3/Np³),
// the second product truncated at pmax with |log ω| ≤ 6/q² per factor (q ≥ 3),
// so the tail is at most 6 d / pmax.
template <class I, class W>
ThetaValue theta_euler(const RingT<I, W>& R, const std::array<Elem<I>, 4>& ap, i64 pmax = 100000) {
  if (!theta0(R, ap)) throw std::invalid_argument("theta_euler: theta0 = 0");
  // distinct prime ideals dividing a1 a2 a3 a4 (pairwise coprime by θ0)
  std::vector<IdealT<I, W>> prime_divisors;
  for (auto& a : ap)
    for (auto& f : factor_ideal(R, a)) {
      bool seen = false;
      for (auto& p : prime_divisors) seen = seen || p == f.prime;
      if (!seen) prime_divisors.push_back(f.prime);
    }
  long double prod = 1;
  for (auto& p : prime_divisors) {
    long double x = 1.0L / (long double)(i128)p.nrm;
    prod *= (1 - x) * (1 - x * x);
  }
  // second product over primes of norm ≤ pmax not dividing the product; split
  // primes of equal norm are handled by multiplicity bookkeeping
  std::map<i64, int> div_count;
  for (auto& p : prime_divisors)
    if ((i128)p.nrm <= (i128)pmax) div_count[(i64)(i128)p.nrm]++;
  long long nf = 0;
  for (i64 q : prime_ideal_norms_up_to(R.F, pmax)) {
    auto it = div_count.find(q);
    if (it != div_count.end() && it->second > 0) {
      --it->second;
      continue;
    }
    long double x = 1.0L / q;
    prod *= 1 - 4 * x * x + 3 * x * x * x;
    ++nf;
  }
  ThetaValue out;
  out.pmax = pmax;
  out.value = (double)prod;
  long double logtail = 6.0L * R.F.degree / pmax;
  long double fperr = 8e-19L * nf + 1e-17L;
  out.lo = (double)(prod * std::exp(-(double)(logtail + fperr)));
  out.hi = (double)(prod * std::exp((double)(logtail + fperr)));
  return out;
}

// rigorous bound for |θ(a', T1) − θ(a')|, used by the acceptance suite:
// Rankin at exponent 1/2 over each of the four d-slots plus the exact e-tails
template <class I, class W>
double theta_truncation_bound(const RingT<I, W>& R, const std::array<Elem<I>, 4>& ap, i64 T1) {
  // S_K = ∏_p (1 + 3q⁻² + 4q⁻³ + q^{-3/2} + 7 q^{-5/2}), cut at 10^6 with a
  // generous remainder allowance
  long double SK = 1;
  for (i64 q : prime_ideal_norms_up_to(R.F, 1000000)) {
    long double x = 1.0L / q;
    SK *= 1 + 3 * x * x + 4 * x * x * x + std::pow((double)x, 1.5) + 7 * std::pow((double)x, 2.5);
  }
  SK *= std::exp(4.0 * R.F.degree / std::sqrt(1e6));
  // Ē_i = Σ_{e|a_i} 1/Ne and the exact truncated tails of E_i
  long double Ebar = 1, Etail_total = 0, Dbar = SK;
  for (auto& a : ap) {
    long double e = 0, etail = 0;
    for (auto& [div, mu] : divisors_with_mobius(R, a, true)) {
      long double inv = 1.0L / (long double)(i128)div.nrm;
      e += inv;
      if ((i128)div.nrm > (i128)T1) etail += inv;
    }
    Ebar *= e;
    Etail_total += etail;
  }
  long double bound = (4.0L * SK / std::sqrt((long double)T1)) * Ebar + Dbar * Etail_total * Ebar;
  return (double)bound;
}

// The truncated double sum θ(a', T1): Σ over squarefree d-tuples with
// d_i + a_j = O_K (i ≠ j) and e-tuples with e_i | a_i, all norms ≤ T1, of
// μ(d,e) / N( (d1∩d2∩(d3+d4)) (d2∩d3∩d4) (d1∩d3∩d4) e1 e2 e3 e4 ).
// The e-part factors out exactly; the d-part is summed directly with a
// (gcd, lcm)-keyed cache over the (d3, d4) pairs.
template <class I, class W>
class ThetaTruncated {
 public:
  ThetaTruncated(const RingT<I, W>& R, const std::array<Elem<I>, 4>& ap, i64 T1)
      : R_(R), T1_(T1) {
    for (int i = 0; i < 4; ++i) {
      Elem<I> prod = R_.one();
      for (int j = 0; j < 4; ++j)
        if (j != i) prod = R_.mul(prod, ap[j]);
      coprime_to_[i] = prod;  // d_i must be coprime to all a_j, j ≠ i
      a_[i] = ap[i];
    }
    all_sf_ = squarefree_ideals_up_to(R_, T1);
    for (int i = 0; i < 4; ++i)
      for (auto& [d, mu] : all_sf_)
        if (R_.coprime(d.gen, coprime_to_[i])) slots_[i].push_back({d, mu});
  }

  // exact rational value (desk-scale T1)
  BigRat exact() const {
    if (T1_ > 120) throw std::invalid_argument("theta exact: T1 too large for exact rationals");
    BigRat dsum = 0;
    for (auto& [d3, mu3] : slots_[2])
      for (auto& [d4, mu4] : slots_[3]) {
        Elem<I> g = R_.gcd(d3.gen, d4.gen);
        Elem<I> l = R_.div_exact(R_.mul(d3.gen, d4.gen), g);
        BigRat inner = 0;
        for (auto& [d1, mu1] : slots_[0])
          for (auto& [d2, mu2] : slots_[1]) {
            W n = term_denominator(d1.gen, d2.gen, g, l);
            inner += BigRat(mu1 * mu2, (long long)(i128)n);
          }
        dsum += BigRat(mu3 * mu4) * inner;
      }
    BigRat esum = 1;
    for (int i = 0; i < 4; ++i) {
      BigRat e = 0;
      for (auto& [div, mu] : divisors_with_mobius(R_, a_[i], true))
        if ((i128)div.nrm <= (i128)T1_) e += BigRat(mu, (long long)(i128)div.nrm);
      esum *= e;
    }
    return dsum * esum;
  }

  // compensated floating-point value for larger T1
  double fast() const {
    struct Key {
      Elem<I> g, l;
      bool operator<(const Key& o) const { return g != o.g ? g < o.g : l < o.l; }
    };
    std::map<Key, double> cache;
    double dsum = 0, comp = 0;
    auto add = [&](double v) {  // Kahan
      double y = v - comp;
      double t = dsum + y;
      comp = (t - dsum) - y;
      dsum = t;
    };
    for (auto& [d3, mu3] : slots_[2])
      for (auto& [d4, mu4] : slots_[3]) {
        Elem<I> g = R_.gcd(d3.gen, d4.gen);
        Elem<I> l = R_.div_exact(R_.mul(d3.gen, d4.gen), g);
        Key key{R_.canonical_assoc(g), R_.canonical_assoc(l)};
        auto it = cache.find(key);
        double inner;
        if (it != cache.end()) inner = it->second;
        else {
          double s = 0, c2 = 0;
          for (auto& [d1, mu1] : slots_[0])
            for (auto& [d2, mu2] : slots_[1]) {
              W n = term_denominator(d1.gen, d2.gen, key.g, key.l);
              double v = (double)(mu1 * mu2) / (double)(i128)n;
              double y = v - c2;
              double t = s + y;
              c2 = (t - s) - y;
              s = t;
            }
          cache.emplace(key, s);
          inner = s;
        }
        add((double)(mu3 * mu4) * inner);
      }
    double esum = 1;
    for (int i = 0; i < 4; ++i) {
      double e = 0;
      for (auto& [div, mu] : divisors_with_mobius(R_, a_[i], true))
        if ((i128)div.nrm <= (i128)T1_) e += (double)mu / (double)(i128)div.nrm;
      esum *= e;
    }
    return dsum * esum;
  }

 private:
  // N( lcm(d1,d2,g) · lcm(d2,l) · lcm(d1,l) )
  W term_denominator(const Elem<I>& d1, const Elem<I>& d2, const Elem<I>& g,
                     const Elem<I>& l) const {
    auto lcm2 = [&](const Elem<I>& x, const Elem<I>& y) {
      return R_.div_exact(R_.mul(x, y), R_.gcd(x, y));
    };
    Elem<I> b12 = lcm2(lcm2(d1, d2), g);
    Elem<I> b23 = lcm2(d2, l);
    Elem<I> b34 = lcm2(d1, l);
    return R_.abs_norm(b12) * R_.abs_norm(b23) * R_.abs_norm(b34);
  }

  const RingT<I, W>& R_;
  i64 T1_;
  std::array<Elem<I>, 4> a_, coprime_to_;
  std::vector<std::pair<IdealT<I, W>, int>> all_sf_;
  std::array<std::vector<std::pair<IdealT<I, W>, int>>, 4> slots_;
};

template <class I, class W>
BigRat theta_bruteforce(const RingT<I, W>& R, const std::array<Elem<I>, 4>& ap, i64 T1) {
  return ThetaTruncated<I, W>(R, ap, T1).exact();
}

// --- Möbius inversion identity, both sides by direct enumeration ------------

struct MobiusCheckResult {
  bool equal = false;
  long long lhs = 0;
  long long rhs = 0;
  long long terms = 0;
  long long completions = 0;
};

namespace detail {

// enumerate all a'' completions (torsor solutions, all coordinates nonzero)
// of height ≤ B for fixed a', calling fn on each
template <class I, class W, class F>
void for_each_completion(const RingT<I, W>& R, const HeightSpec& H,
                         const std::array<Elem<I>, 4>& ap, i64 B, F&& fn) {
  APContext<I, W> C;
  C.ap = ap;
  for (int i = 0; i < 4; ++i) C.n[i] = R.abs_norm(ap[i]);
  C.inv3_mod_a4 = R.inv_mod(ap[2], ap[3]);
  C.inv4_mod_a1 = R.inv_mod(ap[3], ap[0]);
  HeightEval<I, W> he(R, H.lifts());
  W Y = (W)H.C_int * (W)B;
  inner_triple_loop(
      R, C, Y, B, he, false, [](const TorsorPointT<I>&) { return true; },
      [&](const TorsorPointT<I>& T) { fn(T); });
}

}  // namespace detail

// Verify |A| = Σ_{d,e} μ(d,e) |{a'' : torsor eqs, height ≤ B, f_ij | a_ij}|
// where the left side carries the full coprimality conditions and
// f_ij = (d_i ∩ d_j) e_k e_l; both sides by direct enumeration. The d,e sums
// truncate naturally once an f_ij norm exceeds the coordinate boxes.
// Requires θ0(a') = 1.
template <class I, class W>
MobiusCheckResult mobius_identity_check(const RingT<I, W>& R, const HeightSpec& H,
                                        const std::array<Elem<I>, 4>& ap, i64 B) {
  if (!theta0(R, ap)) throw std::invalid_argument("mobius_identity_check: theta0 = 0");
  MobiusCheckResult res;

  // all torsor completions once; remember the six a_ij of each
  std::vector<std::array<Elem<I>, 6>> pts;
  detail::for_each_completion(R, H, ap, B, [&](const TorsorPointT<I>& T) {
    std::array<Elem<I>, 6> row;
    int idx = 0;
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) row[idx++] = T.a[pair_coord(i, j)];
    pts.push_back(row);
    if (coprimality_check(R, T)) ++res.lhs;  // a'-pair conditions hold: θ0 = 1
  });
  res.completions = (long long)pts.size();

  // per-pair norm caps for the f_ij (coordinate boxes)
  std::array<W, 4> n;
  for (int i = 0; i < 4; ++i) n[i] = R.abs_norm(ap[i]);
  W Y = (W)H.C_int * (W)B;
  std::array<std::array<W, 4>, 4> M{};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      int rest[2], idx = 0;
      for (int t = 0; t < 4; ++t)
        if (t != i && t != j) rest[idx++] = t;
      M[i][j] = Y / detail::max_pair_excluding(n, rest[0] + 1, rest[1] + 1);
    }

  auto lcm2 = [&](const Elem<I>& x, const Elem<I>& y) {
    return R.div_exact(R.mul(x, y), R.gcd(x, y));
  };

  std::array<std::vector<std::pair<IdealT<I, W>, int>>, 4> dslots;
  {
    W dmax = std::max({M[0][1], M[0][2], M[0][3], M[1][2], M[1][3], M[2][3]});
    auto all_sf = squarefree_ideals_up_to(R, (i64)dmax);
    for (int i = 0; i < 4; ++i) {
      Elem<I> others = R.one();
      for (int j = 0; j < 4; ++j)
        if (j != i) others = R.mul(others, ap[j]);
      for (auto& [d, mu] : all_sf)
        if (R.coprime(d.gen, others)) dslots[i].push_back({d, mu});
    }
  }
  std::array<std::vector<std::pair<IdealT<I, W>, int>>, 4> eslots;
  for (int i = 0; i < 4; ++i)
    for (auto& [d, mu] : divisors_with_mobius(R, ap[i], true)) eslots[i].push_back({d, mu});

  long long rhs = 0;
  for (auto& [d1, mu1] : dslots[0]) {
    for (auto& [d2, mu2] : dslots[1]) {
      Elem<I> l12 = lcm2(d1.gen, d2.gen);
      if (R.abs_norm(l12) > M[0][1]) continue;
      for (auto& [d3, mu3] : dslots[2]) {
        Elem<I> l13 = lcm2(d1.gen, d3.gen);
        if (R.abs_norm(l13) > M[0][2]) continue;
        Elem<I> l23 = lcm2(d2.gen, d3.gen);
        if (R.abs_norm(l23) > M[1][2]) continue;
        for (auto& [d4, mu4] : dslots[3]) {
          Elem<I> l14 = lcm2(d1.gen, d4.gen);
          if (R.abs_norm(l14) > M[0][3]) continue;
          Elem<I> l24 = lcm2(d2.gen, d4.gen);
          if (R.abs_norm(l24) > M[1][3]) continue;
          Elem<I> l34 = lcm2(d3.gen, d4.gen);
          if (R.abs_norm(l34) > M[2][3]) continue;
          const Elem<I>* lcms[6] = {&l12, &l13, &l14, &l23, &l24, &l34};
          for (auto& [e1, emu1] : eslots[0])
            for (auto& [e2, emu2] : eslots[1])
              for (auto& [e3, emu3] : eslots[2])
                for (auto& [e4, emu4] : eslots[3]) {
                  const Elem<I>* es[4] = {&e1.gen, &e2.gen, &e3.gen, &e4.gen};
                  std::array<Elem<I>, 6> f;
                  bool feasible = true;
                  int idx = 0;
                  for (int i = 0; i < 4 && feasible; ++i)
                    for (int j = i + 1; j < 4; ++j) {
                      int rest[2], ri = 0;
                      for (int t = 0; t < 4; ++t)
                        if (t != i && t != j) rest[ri++] = t;
                      f[idx] = R.mul(*lcms[idx], R.mul(*es[rest[0]], *es[rest[1]]));
                      if (R.abs_norm(f[idx]) > M[i][j]) {
                        feasible = false;
                        break;
                      }
                      ++idx;
                    }
                  if (!feasible) continue;
                  int mu = mu1 * mu2 * mu3 * mu4 * emu1 * emu2 * emu3 * emu4;
                  long long cnt = 0;
                  for (auto& row : pts) {
                    bool all = true;
                    for (int t = 0; t < 6 && all; ++t) all = R.divides(f[t], row[t]);
                    if (all) ++cnt;
                  }
                  rhs += mu * cnt;
                  ++res.terms;
                }
        }
      }
    }
  }
  res.rhs = rhs;
  res.equal = res.lhs == rhs;
  return res;
}

}  // namespace dp5
