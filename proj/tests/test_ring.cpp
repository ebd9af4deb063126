#include <catch2/catch_amalgamated.hpp>

#include "dp5/ring.hpp"
#include "dp5/rng.hpp"

using namespace dp5;

TEST_CASE("field invariants") {
  auto q = make_field("Q");
  CHECK(q.r1 == 1);
  CHECK(q.r2 == 0);
  CHECK(q.disc == 1);
  CHECK(q.num_units == 2);
  CHECK(q.rho == Catch::Approx(1.0));

  auto qi = make_field("Q(i)");
  CHECK(qi.r2 == 1);
  CHECK(qi.disc == -4);
  CHECK(qi.num_units == 4);
  CHECK(qi.rho == Catch::Approx(0.785398).margin(1e-6));

  auto q3 = make_field("Q(sqrt-3)");
  CHECK(q3.num_units == 6);
  CHECK(q3.disc == -3);

  CHECK_THROWS_AS(make_field("Q(sqrt-5)"), std::invalid_argument);

  // analytic class number formula reproduces the stored residue
  for (auto id : all_field_ids()) {
    auto F = make_field(id);
    double again =
        rho_from_invariants(F.r1, F.r2, F.regulator, F.class_number, F.num_units, F.disc);
    CHECK(std::abs(again - F.rho) < 1e-12);
  }
}

TEST_CASE("units actually are units and mu_K is a group") {
  for (auto id : all_field_ids()) {
    Ring R{make_field(id)};
    for (int k = 0; k < R.F.num_units; ++k) {
      CHECK(R.abs_norm(R.unit(k)) == 1);
      // closed under multiplication
      for (int l = 0; l < R.F.num_units; ++l) {
        auto p = R.mul(R.unit(k), R.unit(l));
        bool found = false;
        for (int t = 0; t < R.F.num_units; ++t) found = found || p == R.unit(t);
        CHECK(found);
      }
    }
  }
}

TEST_CASE("gcd over Q") {
  Ring R{make_field("Q")};
  CHECK(R.gcd(R.from_int(6), R.from_int(10)) == R.from_int(2));
  CHECK(R.gcd(R.from_int(-7), R.from_int(0)) == R.from_int(7));
  CHECK(R.unit_normalize(R.from_int(-7)) == R.from_int(7));
  CHECK_THROWS_AS(R.gcd(R.zero(), R.zero()), std::domain_error);
}

TEST_CASE("gcd over Q(i): 1+i divides 2") {
  Ring R{make_field("Q(i)")};
  auto g = R.gcd(R.make(1, 1), R.from_int(2));
  // associate of 1+i
  CHECK(R.abs_norm(g) == 2);
  CHECK(g == R.canonical_assoc(R.make(1, 1)));
}

TEST_CASE("unit_normalize idempotent; orbit size = |mu|") {
  Ring R{make_field("Q(i)")};
  auto a = R.mul(R.make(0, -1), R.make(2, 1));  // -i(2+i)
  CHECK(R.unit_normalize(R.unit_normalize(a)) == R.unit_normalize(a));

  Ring R3{make_field("Q(sqrt-3)")};
  auto b = R3.make(2, 1);
  std::vector<Elem<i64>> orbit;
  for (int k = 0; k < R3.F.num_units; ++k) {
    auto c = R3.mul(b, R3.unit(k));
    bool dup = false;
    for (auto& e : orbit) dup = dup || e == c;
    CHECK(!dup);
    orbit.push_back(c);
  }
  CHECK(orbit.size() == 6);
}

template <class I, class W>
static void norm_divrem_roundtrip() {
  for (auto id : all_field_ids()) {
    RingT<I, W> R{make_field(id)};
    CounterRng rng(42 + (int)id);
    int checked = 0;
    for (int t = 0; t < 10000; ++t) {
      Elem<I> a{I(rng.next_in(-50, 50)), I(R.rational() ? 0 : rng.next_in(-50, 50))};
      Elem<I> b{I(rng.next_in(-50, 50)), I(R.rational() ? 0 : rng.next_in(-50, 50))};
      if (RingT<I, W>::is_zero(a) || RingT<I, W>::is_zero(b)) continue;
      CHECK(R.norm(R.mul(a, b)) == R.norm(a) * R.norm(b));
      Elem<I> q, r;
      R.divrem(a, b, q, r);
      CHECK(R.add(R.mul(q, b), r) == a);
      CHECK(R.abs_norm(r) < R.abs_norm(b));
      ++checked;
    }
    CHECK(checked > 9000);
  }
}

TEST_CASE("norm multiplicativity and divrem, int64 backend") { norm_divrem_roundtrip<i64, i128>(); }
TEST_CASE("norm multiplicativity and divrem, bigint backend") {
  norm_divrem_roundtrip<BigInt, BigInt>();
}

TEST_CASE("gcd divides both inputs; any common divisor divides the gcd") {
  for (auto id : all_field_ids()) {
    Ring R{make_field(id)};
    CounterRng rng(7 + 13 * (int)id);
    int done = 0;
    while (done < 10000) {
      Elem<i64> d{rng.next_in(-9, 9), R.rational() ? 0 : rng.next_in(-9, 9)};
      Elem<i64> a{rng.next_in(-40, 40), R.rational() ? 0 : rng.next_in(-40, 40)};
      Elem<i64> b{rng.next_in(-40, 40), R.rational() ? 0 : rng.next_in(-40, 40)};
      if (Ring::is_zero(d) || Ring::is_zero(a) || Ring::is_zero(b)) continue;
      auto da = R.mul(d, a), db = R.mul(d, b);
      auto g = R.gcd(da, db);
      CHECK(R.divides(g, da));
      CHECK(R.divides(g, db));
      CHECK(R.divides(d, g));  // common divisor divides gcd
      CHECK(R.is_canonical_assoc(g));
      ++done;
    }
  }
}

TEST_CASE("egcd and inv_mod") {
  for (auto id : all_field_ids()) {
    Ring R{make_field(id)};
    CounterRng rng(99 + (int)id);
    int done = 0;
    while (done < 2000) {
      Elem<i64> a{rng.next_in(-30, 30), R.rational() ? 0 : rng.next_in(-30, 30)};
      Elem<i64> m{rng.next_in(-30, 30), R.rational() ? 0 : rng.next_in(-30, 30)};
      if (Ring::is_zero(a) || Ring::is_zero(m)) continue;
      Elem<i64> u, v;
      auto g = R.egcd(a, m, u, v);
      CHECK(R.add(R.mul(u, a), R.mul(v, m)) == g);
      if (R.is_unit(g)) {
        auto inv = R.inv_mod(a, m);
        CHECK(R.divides(m, R.sub(R.mul(inv, a), R.one())));
      }
      ++done;
    }
  }
}

TEST_CASE("ball enumeration: counts and canonical filtering") {
  Ring R{make_field("Q(i)")};
  // norms ≤ 5 over Z[i]: per norm 1,2,4,5: 4,4,4,8 elements
  int all = 0, canon = 0;
  for_each_in_ball(R, (i128)5, false, [&](const Elem<i64>&) { ++all; });
  for_each_in_ball(R, (i128)5, true, [&](const Elem<i64>&) { ++canon; });
  CHECK(all == 20);
  CHECK(all == canon * 4);

  Ring RQ{make_field("Q")};
  int pos = 0;
  for_each_in_ball(RQ, (i128)10, true, [&](const Elem<i64>& e) {
    CHECK(e.x > 0);
    ++pos;
  });
  CHECK(pos == 10);
}

TEST_CASE("congruence enumeration matches a filtered ball scan") {
  for (auto id : all_field_ids()) {
    Ring R{make_field(id)};
    CounterRng rng(5 + (int)id);
    for (int t = 0; t < 40; ++t) {
      Elem<i64> m{rng.next_in(-6, 6), R.rational() ? 0 : rng.next_in(-6, 6)};
      if (Ring::is_zero(m)) continue;
      Elem<i64> rep{rng.next_in(-10, 10), R.rational() ? 0 : rng.next_in(-10, 10)};
      i128 M = 200;
      std::vector<Elem<i64>> got, want;
      for_each_congruent_in_ball(R, rep, m, M, [&](const Elem<i64>& e) { got.push_back(e); });
      for_each_in_ball(R, M, false, [&](const Elem<i64>& e) {
        if (R.divides(m, R.sub(e, rep))) want.push_back(e);
      });
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      CHECK(got == want);
    }
  }
}
