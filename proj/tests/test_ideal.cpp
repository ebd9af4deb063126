#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "dp5/ideal.hpp"
#include "dp5/rng.hpp"

using namespace dp5;

TEST_CASE("primes over Q") {
  Ring R{make_field("Q")};
  auto ps = primes_up_to(R, 10);
  std::vector<i64> norms;
  for (auto& p : ps) norms.push_back((i64)p.ideal.nrm);
  CHECK(norms == std::vector<i64>{2, 3, 5, 7});
}

TEST_CASE("splitting in Z[i]") {
  Ring R{make_field("Q(i)")};
  auto ps = primes_up_to(R, 5);
  // 2 ramified (norm 2), 5 splits (two primes of norm 5); 3 inert (norm 9 > 5)
  std::multiset<i64> norms;
  for (auto& p : ps) norms.insert((i64)p.ideal.nrm);
  CHECK(norms == std::multiset<i64>{2, 5, 5});
  auto ps9 = primes_up_to(R, 9);
  bool has_inert3 = false;
  for (auto& p : ps9) has_inert3 = has_inert3 || (p.p == 3 && p.ideal.nrm == 9);
  CHECK(has_inert3);
}

TEST_CASE("product of norms above p equals p^d for unramified p") {
  for (auto id : all_field_ids()) {
    Ring R{make_field(id)};
    for (i64 p : rational_primes_up_to(1000)) {
      if (R.F.degree == 2 && R.F.disc % p == 0) continue;
      i128 prod = 1;
      for (auto& pr : primes_above(R, p)) prod *= pr.ideal.nrm;
      i128 want = 1;
      for (int t = 0; t < R.F.degree; ++t) want *= p;
      CHECK(prod == want);
    }
  }
}

TEST_CASE("prime_ideal_norms_up_to agrees with generator search") {
  for (auto id : all_field_ids()) {
    Ring R{make_field(id)};
    auto fast = prime_ideal_norms_up_to(R.F, 500);
    auto slow = primes_up_to(R, 500);
    std::multiset<i64> a(fast.begin(), fast.end()), b;
    for (auto& p : slow) b.insert((i64)p.ideal.nrm);
    CHECK(a == b);
  }
}

TEST_CASE("ideal arithmetic: sum, product, intersection") {
  Ring R{make_field("Q")};
  auto A = make_ideal(R, R.from_int(12)), B = make_ideal(R, R.from_int(18));
  CHECK(ideal_sum(R, A, B).nrm == 6);
  CHECK(ideal_mul(R, A, B).nrm == 216);
  CHECK(ideal_intersect(R, A, B).nrm == 36);
  CHECK(ideal_divides(R, make_ideal(R, R.from_int(6)), A));
  CHECK(!ideal_divides(R, make_ideal(R, R.from_int(5)), A));

  // N(ab) = N(a)N(b) on random pairs in every field
  for (auto id : all_field_ids()) {
    Ring RR{make_field(id)};
    CounterRng rng(3 + (int)id);
    int done = 0;
    while (done < 500) {
      Elem<i64> a{rng.next_in(-30, 30), RR.rational() ? 0 : rng.next_in(-30, 30)};
      Elem<i64> b{rng.next_in(-30, 30), RR.rational() ? 0 : rng.next_in(-30, 30)};
      if (Ring::is_zero(a) || Ring::is_zero(b)) continue;
      auto Ia = make_ideal(RR, a), Ib = make_ideal(RR, b);
      CHECK(ideal_mul(RR, Ia, Ib).nrm == Ia.nrm * Ib.nrm);
      ++done;
    }
  }
}

TEST_CASE("factorization and Möbius") {
  for (auto id : all_field_ids()) {
    Ring R{make_field(id)};
    CounterRng rng(11 + (int)id);
    int done = 0;
    while (done < 300) {
      Elem<i64> a{rng.next_in(-200, 200), R.rational() ? 0 : rng.next_in(-40, 40)};
      if (Ring::is_zero(a) || R.is_unit(a)) continue;
      auto fs = factor_ideal(R, a);
      Elem<i64> prod = R.one();
      i128 nprod = 1;
      for (auto& f : fs) {
        for (int e = 0; e < f.mult; ++e) {
          prod = R.mul(prod, f.prime.gen);
          nprod *= f.prime.nrm;
        }
      }
      CHECK(R.canonical_assoc(prod) == R.canonical_assoc(a));
      CHECK(nprod == R.abs_norm(a));
      ++done;
    }
    // Möbius: squarefree products of distinct primes
    auto sf = squarefree_ideals_up_to(R, 60);
    for (auto& [ideal, mu] : sf) {
      CHECK(mu == mobius(R, ideal));
      CHECK(mu != 0);
    }
  }
}

TEST_CASE("squarefree ideal enumeration is complete and duplicate-free") {
  Ring R{make_field("Q")};
  auto sf = squarefree_ideals_up_to(R, 50);
  std::vector<i64> norms;
  for (auto& [ideal, mu] : sf) norms.push_back((i64)ideal.nrm);
  std::sort(norms.begin(), norms.end());
  std::vector<i64> want;
  for (i64 n = 1; n <= 50; ++n) {
    bool sfree = true;
    for (i64 d = 2; d * d <= n; ++d)
      if (n % (d * d) == 0) sfree = false;
    if (sfree) want.push_back(n);
  }
  CHECK(norms == want);
}

TEST_CASE("divisors_with_mobius") {
  Ring R{make_field("Q")};
  auto divs = divisors_with_mobius(R, R.from_int(12), false);
  std::map<i64, int> got;
  for (auto& [ideal, mu] : divs) got[(i64)ideal.nrm] = mu;
  CHECK(got == std::map<i64, int>{{1, 1}, {2, -1}, {3, -1}, {4, 0}, {6, 1}, {12, 0}});
  auto sf = divisors_with_mobius(R, R.from_int(12), true);
  CHECK(sf.size() == 4);
}
