#pragma once

#include <chrono>
#include <mutex>

#include "dp5/heights_json.hpp"

namespace dp5 {

struct CountResult {
  std::string field;
  uint64_t heights_hash = 0;
  i64 B = 0;
  long long N = 0;   // exact point count
  i128 raw = 0;      // solutions before division by |μ_K|^5
  std::array<long long, 5> per_class{};
  std::string engine;
  double seconds = 0;
};

// Per-coordinate provable norm bounds for the three independent coordinates,
// given a'. Each comes from a torsor monomial containing the coordinate and
// two single-index coordinates (all omitted factors have norm ≥ 1), so every
// solution of height ≤ B satisfies them.
struct BoxBounds {
  i128 M12 = 0, M23 = 0, M34 = 0;
  i64 C = 1;
};

namespace detail {

// max over N(a_i a_j) for pairs {i,j} (1-based) excluding {x,y}
template <class W>
W max_pair_excluding(const std::array<W, 4>& n, int x, int y) {
  W best = 0;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      if (i == x && j == y) continue;
      W prod = n[i - 1] * n[j - 1];
      if (prod > best) best = prod;
    }
  return best;
}

// floor(x^(1/k)) for small k; arguments fit i128 at the guarded bounds
inline i128 iroot(i128 x, int k) {
  if (x < 0) throw std::domain_error("iroot");
  if (x < 2 || k == 1) return x;
  i128 r = (i128)std::pow((long double)x, 1.0L / k) + 1;
  auto pw_gt = [&](i128 v, i128 lim) {  // v^k > lim, overflow-safe
    i128 p = 1;
    for (int t = 0; t < k; ++t) {
      if (v > 0 && p > lim / v) return true;
      p *= v;
    }
    return p > lim;
  };
  while (r > 0 && pw_gt(r, x)) --r;
  while (!pw_gt(r + 1, x)) ++r;
  return r;
}

}  // namespace detail

template <class I, class W>
BoxBounds box_bounds(const RingT<I, W>& R, const HeightSpec& H, const std::array<Elem<I>, 4>& ap,
                     i64 B) {
  std::array<W, 4> n;
  for (int i = 0; i < 4; ++i) {
    if (RingT<I, W>::is_zero(ap[i])) throw std::invalid_argument("box_bounds: zero coordinate");
    n[i] = R.abs_norm(ap[i]);
  }
  W Y = (W)H.C_int * (W)B;
  BoxBounds bb;
  bb.C = H.C_int;
  bb.M12 = Y / detail::max_pair_excluding(n, 3, 4);
  bb.M23 = Y / detail::max_pair_excluding(n, 1, 4);
  bb.M34 = Y / detail::max_pair_excluding(n, 1, 2);
  return bb;
}

// --- direct projective-plane oracle ----------------------------------------

enum class DirectMode { ProvableBox, Adaptive };

namespace detail {

// Rational fast path: primitive descending triples y1 > y2 > y3 (one per
// projective point), height from the member values alone:
// H = max |P(y)| / gcd_P P(y).
template <class Visitor>
long long direct_count_shell_q(const std::vector<CubicForm>& members, i64 B, i64 lo, i64 hi,
                               Visitor&& visit) {
  const int nf = (int)members.size();
  std::vector<std::array<i128, 10>> mono_coeff(nf);
  for (int f = 0; f < nf; ++f)
    for (int i = 0; i < 10; ++i) mono_coeff[f][i] = members[f].c[i].x;
  long long cnt = 0;
  std::vector<std::array<i128, 4>> horner(nf);  // per-form cubic in y3
  for (i64 y1 = -hi + 2; y1 <= hi; ++y1) {
    if (y1 == 0) continue;
    i128 a1 = y1 < 0 ? -y1 : y1;
    for (i64 y2 = -hi; y2 < y1; ++y2) {
      if (y2 == 0) continue;
      i128 a2 = y2 < 0 ? -y2 : y2;
      i64 g12 = std::gcd(y1 < 0 ? -y1 : y1, y2 < 0 ? -y2 : y2);
      i64 d12 = y1 - y2;
      i128 ad12 = d12 < 0 ? -d12 : d12;
      // coefficients of each member as a cubic in t = y3
      for (int f = 0; f < nf; ++f) {
        auto& h = horner[f];
        h = {0, 0, 0, 0};
        for (int i = 0; i < 10; ++i) {
          i128 c = mono_coeff[f][i];
          if (!c) continue;
          auto& e = kCubicExponents[i];
          i128 v = c;
          for (int t = 0; t < e[0]; ++t) v *= y1;
          for (int t = 0; t < e[1]; ++t) v *= y2;
          h[e[2]] += v;
        }
      }
      for (i64 y3 = -hi; y3 < y2; ++y3) {
        if (y3 == 0) continue;
        i128 a3 = y3 < 0 ? -y3 : y3;
        if (a1 <= (i128)lo && a2 <= (i128)lo && a3 <= (i128)lo) continue;
        // structural height prefilter: gcd of values ≤ |y3|·|y1−y2|
        i128 gcap = (i128)B * a3 * ad12;
        i128 maxv = 0;
        bool reject = false;
        for (int f = 0; f < nf && !reject; ++f) {
          auto& h = horner[f];
          i128 v = ((h[3] * y3 + h[2]) * y3 + h[1]) * y3 + h[0];
          if (v < 0) v = -v;
          if (v > gcap) reject = true;
          if (v > maxv) maxv = v;
        }
        if (reject) continue;
        if (std::gcd((i64)g12, y3 < 0 ? -y3 : y3) != 1) continue;  // not primitive
        // exact gcd of the member values
        i128 g = 0;
        for (int f = 0; f < nf; ++f) {
          auto& h = horner[f];
          i128 v = ((h[3] * y3 + h[2]) * y3 + h[1]) * y3 + h[0];
          if (v == 0) continue;
          g = gcd128(g, v);
          if (g == 1) break;
        }
        if (g == 0) continue;  // base point; off the lines this cannot happen
        if (maxv > (i128)B * g) continue;
        if (maxv % g != 0) throw std::logic_error("direct: height not integral");
        ++cnt;
        visit(std::array<Elem<i64>, 3>{Elem<i64>{y1, 0}, Elem<i64>{y2, 0}, Elem<i64>{y3, 0}},
              maxv / g);
      }
    }
  }
  return cnt;
}

}  // namespace detail

// Count primitive y ∈ V(K) with H(y) ≤ B by box enumeration. The height is
// computed from first principles (member values and their gcd), using
// nothing from the torsor parameterization. Slow and simple; the oracle the
// torsor engines are checked against.
template <class I, class W, class Visitor>
CountResult count_direct(const RingT<I, W>& R, const HeightSpec& H, i64 B, DirectMode mode,
                         Visitor&& visit) {
  auto t0 = std::chrono::steady_clock::now();
  const RingT<W, W> RW{R.F};
  std::vector<std::array<Elem<W>, 10>> wide_members;
  for (auto& f : H.members) {
    std::array<Elem<W>, 10> row;
    for (int i = 0; i < 10; ++i) row[i] = {W(f.c[i].x), W(f.c[i].y)};
    wide_members.push_back(row);
  }

  // generic shell counter (used for the quadratic fields)
  auto count_shell_generic = [&](W lo, W hi) -> long long {
    long long cnt = 0;
    auto handle = [&](const Elem<I>& y1, const Elem<I>& y2, const Elem<I>& y3, W maxnrm) {
      if (maxnrm <= lo) return;
      if (y1 == y2 || y1 == y3 || y2 == y3) return;
      Elem<I> g12 = R.gcd(y1, y2);
      if (!R.is_unit(g12) && !R.is_unit(R.gcd(g12, y3))) return;
      std::array<Elem<W>, 4> p1, p2, p3;
      p1[0] = p2[0] = p3[0] = RW.one();
      Elem<W> w1{W(y1.x), W(y1.y)}, w2{W(y2.x), W(y2.y)}, w3{W(y3.x), W(y3.y)};
      for (int k = 1; k <= 3; ++k) {
        p1[k] = RW.mul(p1[k - 1], w1);
        p2[k] = RW.mul(p2[k - 1], w2);
        p3[k] = RW.mul(p3[k - 1], w3);
      }
      W gcap = (W)B * RW.abs_norm(w3) * RW.abs_norm(RW.sub(w1, w2));
      W maxv = 0;
      std::vector<Elem<W>> vals;
      vals.reserve(wide_members.size());
      for (auto& f : wide_members) {
        Elem<W> acc = RW.zero();
        for (int i = 0; i < 10; ++i) {
          if (f[i].x == 0 && f[i].y == 0) continue;
          auto& e = kCubicExponents[i];
          acc = RW.add(acc, RW.mul(f[i], RW.mul(p1[e[0]], RW.mul(p2[e[1]], p3[e[2]]))));
        }
        vals.push_back(acc);
        W an = RW.abs_norm(acc);
        if (an > gcap) return;  // height certainly > B
        maxv = std::max(maxv, an);
      }
      Elem<W> g = RW.zero();
      bool have = false;
      for (auto& v : vals) {
        if (RingT<W, W>::is_zero(v)) continue;
        g = have ? RW.gcd(g, v) : RW.canonical_assoc(v);
        have = true;
        if (RW.is_unit(g)) break;
      }
      if (!have) return;
      W ng = RW.abs_norm(g);
      if (maxv > (W)B * ng) return;
      if (maxv % ng != 0) throw std::logic_error("count_direct: height not integral");
      ++cnt;
      visit(std::array<Elem<I>, 3>{y1, y2, y3}, maxv / ng);
    };
    for_each_in_ball(R, hi, true, [&](const Elem<I>& y1) {
      W n1 = R.abs_norm(y1);
      for_each_in_ball(R, hi, false, [&](const Elem<I>& y2) {
        W n2 = std::max(n1, R.abs_norm(y2));
        for_each_in_ball(R, hi, false, [&](const Elem<I>& y3) {
          handle(y1, y2, y3, std::max(n2, R.abs_norm(y3)));
        });
      });
    });
    return cnt;
  };

  auto count_shell = [&](W lo, W hi) -> long long {
    if (R.rational())
      return detail::direct_count_shell_q(H.members, B, (i64)lo, (i64)hi,
                                          [&](const std::array<Elem<i64>, 3>& y, i128 h) {
                                            if constexpr (std::is_same_v<I, i64>)
                                              visit(std::array<Elem<I>, 3>{y[0], y[1], y[2]},
                                                    (W)h);
                                          });
    return count_shell_generic(lo, hi);
  };

  CountResult res;
  res.field = R.F.label;
  res.heights_hash = H.hash;
  res.B = B;
  res.engine = mode == DirectMode::ProvableBox ? "direct" : "direct-adaptive";

  W cap = R.rational() ? (W)4000000 : (W)40000;
  if (mode == DirectMode::ProvableBox) {
    W M = (W)H.C_int * (W)B;
    if (M > cap)
      throw std::invalid_argument("count_direct: B too large for the provable box at desk scale");
    res.N = count_shell(0, M);
  } else {
    W M = std::max<W>(16, B);
    long long total = count_shell(0, std::min(M, (W)H.C_int * (W)B));
    int stable = 0;
    while (stable < 2 && M < (W)H.C_int * (W)B) {
      W M2 = std::min(2 * M, (W)H.C_int * (W)B);
      if (M2 > cap) throw std::invalid_argument("count_direct: adaptive box exceeds desk scale");
      long long add = count_shell(M, M2);
      M = M2;
      total += add;
      stable = add == 0 ? stable + 1 : 0;
    }
    res.N = total;
  }
  i128 mu5 = 1;
  for (int t = 0; t < 5; ++t) mu5 *= R.F.num_units;
  res.raw = (i128)res.N * mu5;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

template <class I, class W>
CountResult count_direct(const RingT<I, W>& R, const HeightSpec& H, i64 B,
                         DirectMode mode = DirectMode::ProvableBox) {
  return count_direct(R, H, B, mode, [](auto&&...) {});
}

// --- shared inner loop over the independent coordinates ---------------------

namespace detail {

template <class I, class W>
struct APContext {
  std::array<Elem<I>, 4> ap;
  std::array<W, 4> n;
  Elem<I> inv3_mod_a4, inv4_mod_a1;
};

// Enumerate all (a12, a23, a34) for fixed a' satisfying the two congruence
// conditions and the provable monomial bounds; complete the point; hand every
// torsor solution of height ≤ B satisfying the coprimality conditions to
// sink. `pre` runs after completion and before the height/coprimality work.
template <class I, class W, class Pre, class Sink>
void inner_triple_loop(const RingT<I, W>& R, const APContext<I, W>& C, W Y, i64 B,
                       const HeightEval<I, W>& he, bool restrict_a12, Pre&& pre, Sink&& sink) {
  const auto& n = C.n;
  const auto& ap = C.ap;
  W m12 = W(Y / max_pair_excluding(n, 3, 4));
  if (m12 < 1) return;
  W base23 = W(Y / max_pair_excluding(n, 1, 4));
  W base34 = W(Y / max_pair_excluding(n, 1, 2));
  for_each_in_ball(R, m12, restrict_a12, [&](const Elem<I>& a12) {
    W n12 = R.abs_norm(a12);
    W m23 = std::min({base23, W(Y / W(n12 * n[1] * n[2])), W(Y / W(n12 * n[0] * n[1]))});
    if (m23 < 1) return;
    Elem<I> rep23 = R.mod(R.mul(C.inv3_mod_a4, R.mul(ap[0], a12)), ap[3]);
    for_each_congruent_in_ball(R, rep23, ap[3], m23, [&](const Elem<I>& a23) {
      W n23 = R.abs_norm(a23);
      W m34 = std::min({base34, W(Y / W(n23 * n[2] * n[3])), W(Y / W(n12 * n[0] * n[3])),
                        W(Y / W(n12 * n[1] * n[3])), W(Y / W(n12 * n[0] * n[2])),
                        W(Y / W(n12 * n23 * n[1] * n[2]))});
      if (m34 < 1) return;
      Elem<I> rep34 = R.mod(R.mul(C.inv4_mod_a1, R.mul(ap[1], a23)), ap[0]);
      for_each_congruent_in_ball(R, rep34, ap[0], m34, [&](const Elem<I>& a34) {
        TorsorPointT<I> T;
        if (complete_dependent(R, ap, a12, a23, a34, T) != CompleteStatus::Ok) return;
        if (!pre(T)) return;
        if (!he.height_leq(T, (W)B)) return;
        if (!coprimality_check(R, T)) return;
        sink(T);
      });
    });
  });
}

template <class I, class W>
bool pairwise_coprime_upto(const RingT<I, W>& R, const std::array<Elem<I>, 4>& ap, int upto) {
  for (int i = 0; i < upto; ++i)
    if (!R.coprime(ap[i], ap[upto])) return false;
  return true;
}

}  // namespace detail

// --- naive torsor engine ----------------------------------------------------

// Literal enumeration over full unit orbits: every tuple satisfying the
// torsor equations, coprimality, and height ≤ B is generated and counted;
// the raw total must be divisible by |μ_K|^5.
template <class I, class W, class Visitor>
CountResult count_torsor_naive(const RingT<I, W>& R, const HeightSpec& H, i64 B, Visitor&& visit) {
  auto t0 = std::chrono::steady_clock::now();
  W Y = (W)H.C_int * (W)B;
  if (Y > (R.rational() ? (W)1 << 24 : (W)1 << 20))
    throw std::invalid_argument("count_torsor_naive: beyond the desk-scale budget");
  HeightEval<I, W> he(R, H.lifts());
  i128 raw = 0;
  detail::APContext<I, W> C;
  auto always = [](const TorsorPointT<I>&) { return true; };
  for_each_in_ball(R, Y, false, [&](const Elem<I>& a1) {
    C.ap[0] = a1;
    C.n[0] = R.abs_norm(a1);
    for_each_in_ball(R, W(Y / C.n[0]), false, [&](const Elem<I>& a2) {
      C.ap[1] = a2;
      C.n[1] = R.abs_norm(a2);
      if (!detail::pairwise_coprime_upto(R, C.ap, 1)) return;
      for_each_in_ball(R, W(Y / std::max(C.n[0], C.n[1])), false, [&](const Elem<I>& a3) {
        C.ap[2] = a3;
        C.n[2] = R.abs_norm(a3);
        if (!detail::pairwise_coprime_upto(R, C.ap, 2)) return;
        for_each_in_ball(R, W(Y / std::max({C.n[0], C.n[1], C.n[2]})), false,
                         [&](const Elem<I>& a4) {
          C.ap[3] = a4;
          C.n[3] = R.abs_norm(a4);
          if (!detail::pairwise_coprime_upto(R, C.ap, 3)) return;
          C.inv3_mod_a4 = R.inv_mod(C.ap[2], C.ap[3]);
          C.inv4_mod_a1 = R.inv_mod(C.ap[3], C.ap[0]);
          detail::inner_triple_loop(R, C, Y, B, he, false, always, [&](const TorsorPointT<I>& T) {
            ++raw;
            visit(T);
          });
        });
      });
    });
  });
  CountResult res;
  res.field = R.F.label;
  res.heights_hash = H.hash;
  res.B = B;
  res.engine = "naive";
  res.raw = raw;
  i128 mu5 = 1;
  for (int t = 0; t < 5; ++t) mu5 *= R.F.num_units;
  if (raw % mu5 != 0)
    throw std::logic_error("count_torsor_naive: raw count not divisible by |mu|^5");
  res.N = (long long)(raw / mu5);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

template <class I, class W>
CountResult count_torsor_naive(const RingT<I, W>& R, const HeightSpec& H, i64 B) {
  return count_torsor_naive(R, H, B, [](auto&&...) {});
}

// --- symmetry-reduced torsor engine ------------------------------------------

// For each class m: count solutions of the s_m-transformed problem (height
// set 𝒫^(s_m)) satisfying the canonical-class conditions n0 ≤ n_j (all j),
// n0 < n_j (1 ≤ j ≤ m). Unit normalization fixes a1..a4 and a12 to canonical
// associates, so each (O_K^×)^5 orbit is counted exactly once. The a' space
// carries the provable restrictions implied by the symmetry conditions:
//   N(a_i a_j a_k)^4 ≤ (C B)^3   and   N(a1 a2 a3 a4)^5 ≤ (C B)^4.
// Work is split into `shards` disjoint a'-classes merged by summation;
// results are independent of the shard count and of scheduling.
template <class I, class W, class Visitor>
CountResult count_torsor_reduced(const RingT<I, W>& R, const HeightSpec& H, i64 B, int shards,
                                 Visitor&& visit) {
  auto t0 = std::chrono::steady_clock::now();
  if (shards < 1) shards = 1;
  W Y = (W)H.C_int * (W)B;
  if (Y > (R.rational() ? (W)1 << 25 : (W)1 << 20))
    throw std::invalid_argument("count_torsor_reduced: beyond the desk-scale budget");
  constexpr bool collecting = !std::is_same_v<std::decay_t<Visitor>, std::nullptr_t>;

  W Y3 = Y * Y * Y;
  const W triple_cap = detail::iroot(Y3, 4);        // N(ai aj ak) ≤ (CB)^(3/4)
  const W quint_cap = detail::iroot(Y3 * Y, 5);     // N(a') ≤ (CB)^(4/5)

  std::array<std::vector<long long>, 5> class_shard_counts;
  for (auto& v : class_shard_counts) v.assign(shards, 0);
  std::array<std::vector<std::vector<TorsorPointT<I>>>, 5> class_shard_points;
  if constexpr (collecting)
    for (auto& v : class_shard_points) v.resize(shards);

  for (int m = 0; m <= 4; ++m) {
    HeightEval<I, W> he(R, H.cls_lifts[m]);
    auto run_shard = [&](int shard) {
      long long cnt = 0;
      detail::APContext<I, W> C;
      long long ap_index = 0;
      for_each_in_ball(R, triple_cap, true, [&](const Elem<I>& a1) {
        C.ap[0] = a1;
        C.n[0] = R.abs_norm(a1);
        for_each_in_ball(R, std::min(W(Y / C.n[0]), W(triple_cap / C.n[0])), true,
                         [&](const Elem<I>& a2) {
          C.ap[1] = a2;
          C.n[1] = R.abs_norm(a2);
          if (!detail::pairwise_coprime_upto(R, C.ap, 1)) return;
          W n12 = C.n[0] * C.n[1];
          for_each_in_ball(R, std::min(W(Y / std::max(C.n[0], C.n[1])), W(triple_cap / n12)),
                           true, [&](const Elem<I>& a3) {
            C.ap[2] = a3;
            C.n[2] = R.abs_norm(a3);
            if (!detail::pairwise_coprime_upto(R, C.ap, 2)) return;
            W t123 = n12 * C.n[2];
            W cap4 = std::min({W(Y / std::max({C.n[0], C.n[1], C.n[2]})), W(quint_cap / t123),
                               W(triple_cap / n12), W(triple_cap / W(C.n[0] * C.n[2])),
                               W(triple_cap / W(C.n[1] * C.n[2]))});
            for_each_in_ball(R, cap4, true, [&](const Elem<I>& a4) {
              C.ap[3] = a4;
              C.n[3] = R.abs_norm(a4);
              if (ap_index++ % shards != shard) return;
              if (!detail::pairwise_coprime_upto(R, C.ap, 3)) return;
              C.inv3_mod_a4 = R.inv_mod(C.ap[2], C.ap[3]);
              C.inv4_mod_a1 = R.inv_mod(C.ap[3], C.ap[0]);
              detail::inner_triple_loop(
                  R, C, Y, B, he, true,
                  [&](const TorsorPointT<I>& T) { return is_canonical(sym_quantities(R, T), m); },
                  [&](const TorsorPointT<I>& T) {
                    ++cnt;
                    if constexpr (collecting) class_shard_points[m][shard].push_back(T);
                  });
            });
          });
        });
      });
      class_shard_counts[m][shard] = cnt;
    };
    unsigned nworkers = std::min<unsigned>(worker_count(), (unsigned)shards);
    if (nworkers <= 1) {
      for (int s = 0; s < shards; ++s) run_shard(s);
    } else {
      std::vector<std::thread> pool;
      std::atomic<int> next_shard{0};
      for (unsigned wkr = 0; wkr < nworkers; ++wkr)
        pool.emplace_back([&] {
          while (true) {
            int s = next_shard.fetch_add(1);
            if (s >= shards) return;
            run_shard(s);
          }
        });
      for (auto& th : pool) th.join();
    }
  }

  CountResult res;
  res.field = R.F.label;
  res.heights_hash = H.hash;
  res.B = B;
  res.engine = "reduced";
  long long total = 0;
  for (int m = 0; m <= 4; ++m) {
    long long c = 0;
    for (auto v : class_shard_counts[m]) c += v;
    res.per_class[m] = c;
    total += c;
  }
  res.N = total;
  i128 mu5 = 1;
  for (int t = 0; t < 5; ++t) mu5 *= R.F.num_units;
  res.raw = (i128)total * mu5;
  if constexpr (collecting) {
    for (int m = 0; m <= 4; ++m)
      for (auto& vec : class_shard_points[m])
        for (auto& T : vec) visit(m, T);
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

template <class I, class W>
CountResult count_torsor_reduced(const RingT<I, W>& R, const HeightSpec& H, i64 B,
                                 int shards = 1) {
  return count_torsor_reduced(R, H, B, shards, nullptr);
}

// --- W-truncation decay diagnostics -----------------------------------------

struct WTailRow {
  i64 W = 1;
  long long exceed = 0;
  double fraction = 0;
};

// fraction of counted points with W_max > W, per W in the grid
template <class I, class W>
std::vector<WTailRow> w_tail_fraction(const RingT<I, W>& R, const HeightSpec& H, i64 B,
                                      const std::vector<i64>& grid, long long* total_out = nullptr,
                                      int shards = 1) {
  std::vector<WTailRow> rows;
  for (i64 w : grid) rows.push_back({w, 0, 0});
  long long total = 0;
  count_torsor_reduced(R, H, B, shards, [&](int, const TorsorPointT<I>& T) {
    ++total;
    for (auto& row : rows)
      if (wmax_exceeds(R, T, (W)B, row.W)) ++row.exceed;
  });
  for (auto& row : rows) row.fraction = total ? (double)row.exceed / (double)total : 0.0;
  if (total_out) *total_out = total;
  return rows;
}

}  // namespace dp5
