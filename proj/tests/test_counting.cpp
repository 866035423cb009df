#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>
#include <tuple>

#include "mixsum/counting.hpp"

using namespace mixsum;

namespace {

u64 oracle_N(i64 d, i64 q) {
  u64 c = 0;
  for (i64 a = 0; a < q; ++a)
    for (i64 b = 0; b < q; ++b)
      if (pos_mod(a * b - d, q) == 0) ++c;
  return c;
}

u64 oracle_NSP(i64 S, i64 P, i64 T) {
  u64 c = 0;
  for (i64 a = -T; a <= T; ++a)
    for (i64 b = -T; b <= T; ++b)
      for (i64 cc = -T; cc <= T; ++cc)
        if (a * b + 2 * cc * S == S * S - 4 * P) ++c;
  return c;
}

u64 oracle_N4(const std::vector<i64>& I, i64 k, i64 r) {
  std::vector<i64> J;
  for (i64 m : I)
    if (pos_mod(k + m, r) != 0) J.push_back(m);
  u64 c = 0;
  for (i64 m1 : J)
    for (i64 m2 : J)
      for (i64 n1 : J)
        for (i64 n2 : J)
          if (pos_mod((k + m1) * (k + m2) - (k + n1) * (k + n2), r) == 0) ++c;
  return c;
}

std::vector<i64> range(i64 lo, i64 hi) {
  std::vector<i64> v;
  for (i64 m = lo; m <= hi; ++m) v.push_back(m);
  return v;
}

constexpr double zeta2 = 1.6449340668482264;
constexpr double zeta3 = 1.2020569031595943;

}  // namespace

TEST_CASE("products mod q") {
  CHECK(count_N(1, 5).count == 4);
  CHECK(count_N(0, 4).count == 8);
  CHECK(count_N(2, 4).count == 4);
  for (i64 q = 1; q <= 300; q += (q < 60 ? 1 : 7))
    for (i64 d : std::vector<i64>{0, 1, 2, 6, -4, q - 1, 36}) {
      const u64 want = oracle_N(d, q);
      REQUIRE(count_N(d, q).count == want);
      REQUIRE(count_N_brute(d, q) == want);
      REQUIRE(static_cast<double>(want) <= static_cast<double>(divisor_count(checked_gcd(d, q))) * q);
    }
  for (auto [q1, q2] : {std::pair<i64, i64>{4, 9}, {5, 12}, {7, 16}, {8, 25}})
    for (i64 d : {0, 1, 4, 12})
      CHECK(count_N(d, q1 * q2).count == count_N(d, q1).count * count_N(d, q2).count);
  CHECK(count_N(3, 7).ratio <= 1.0);
}

TEST_CASE("surface counts") {
  CHECK(count_NSP(0, 0, 2).count == 45);
  for (i64 T : {1, 2, 4, 6})
    for (i64 S = -T; S <= T; ++S)
      for (i64 P : std::vector<i64>{-T * T, -3, -1, 0, 1, 2, 5, T * T}) {
        const u64 want = oracle_NSP(S, P, T);
        REQUIRE(count_NSP(S, P, T).count == want);
        REQUIRE(count_NSP_brute(S, P, T) == want);
      }
  const CountReport r = count_NSP(1, 0, 1);
  CHECK(r.params_string() == "S=1;P=0;T=1");
  CHECK(r.count == oracle_NSP(1, 0, 1));
  CHECK(count_NSP(0, 0, 10).bound == doctest::Approx(100.0));
}

TEST_CASE("injection onto the surface") {
  const DiophantineTuple a = injection_phi(1, 1, 1, 1);
  CHECK(std::tie(a.a, a.b, a.c) == std::make_tuple(0, 0, 2));
  const DiophantineTuple b = injection_phi(2, 3, 1, 6);
  CHECK(std::tie(b.a, b.b, b.c) == std::make_tuple(-6, -4, 5));
  CHECK(b.S == -2);
  CHECK(b.P == 0);
  std::set<std::tuple<i64, i64, i64, i64>> seen;
  for (i64 m1 = -5; m1 <= 5; ++m1)
    for (i64 m2 = -5; m2 <= 5; ++m2)
      for (i64 n1 = -5; n1 <= 5; ++n1)
        for (i64 n2 = -5; n2 <= 5; ++n2) {
          const DiophantineTuple t = injection_phi(m1, m2, n1, n2);
          REQUIRE(t.on_surface());
          REQUIRE(seen.emplace(t.a, t.b, t.c, t.S).second);
        }
}

TEST_CASE("quadruple congruence count") {
  CHECK(count_N4(-4, 4, 41, 101).count == 193);
  CHECK(oracle_N4(range(-4, 4), 41, 101) == 193);
  std::mt19937_64 rng(11);
  for (int it = 0; it < 40; ++it) {
    const i64 r = std::vector<i64>{7, 11, 101, 1009}[it % 4];
    const i64 len = 1 + static_cast<i64>(rng() % 40);
    const i64 lo = static_cast<i64>(rng() % 60) - 30;
    const i64 k = static_cast<i64>(rng() % r);
    const std::vector<i64> I = range(lo, lo + len - 1);
    const u64 want = oracle_N4(I, k, r);
    REQUIRE(count_N4(I, k, static_cast<u64>(r)).count == want);
    REQUIRE(count_N4_brute(I, k, static_cast<u64>(r)) == want);
    REQUIRE(want >= n4_diagonal(I, k, static_cast<u64>(r)));
  }
  // k + m = 0 mod r drops out
  CHECK(count_N4(range(0, 0), 0, 7).count == 0);
}

TEST_CASE("pigeonhole counts") {
  for (auto [N, M, k, r] : {std::tuple<i64, i64, i64, u64>{5, 10, 3, 101}, {20, 30, 41, 101}, {50, 100, 4145, 10007}})
    for (double c : {1.0 / 3.0, 1.0}) {
      u64 want = 0;
      for (i64 S = 1; S <= N; ++S)
        for (i64 P = -M; P <= M; ++P)
          if (pos_mod(k * S - P, static_cast<i64>(r)) == 0) ++want;
      const PigeonholeReport p = pigeonhole_count(N, M, k, r, c);
      CHECK(p.report.count == want);
      CHECK(pigeonhole_brute(N, M, k, r) == want);
      CHECK(p.in_regime);
      CHECK(p.report.bound == doctest::Approx(N / std::pow(std::log(2.0 + double(r) / M), 1.0 / c)));
    }
  CHECK_FALSE(pigeonhole_count(1, 200, 3, 101, 1.0).in_regime);
  CHECK(pigeonhole_count(1, 1, 3, 101, 1.0).in_regime);

  // theta = sqrt 2 - 1 at r = 100003
  const u64 r = 100003;
  const long double th = std::sqrt(2.0L) - 1.0L;
  const i64 k = static_cast<i64>(std::floor(th * r));
  const double tp = static_cast<double>(th - static_cast<long double>(k) / r);
  const PigeonholeReport p = pigeonhole_count(300, 1000, k, r, 1.0 / 3.0, tp);
  REQUIRE(p.pair.has_value());
  const PigeonholePair& w = *p.pair;
  CHECK(pos_mod(k * w.q - w.d, static_cast<i64>(r)) == 0);
  CHECK(w.a * static_cast<i64>(r) == k * w.q - w.d);
  CHECK(w.error == doctest::Approx(static_cast<double>(std::fabs(w.q * th - w.a))).epsilon(1e-9));
  CHECK(w.error <= w.limit);
  CHECK(w.limit == doctest::Approx(3000.0 / r));
}

TEST_CASE("clean counting harness") {
  for (auto [T, r, k] : {std::tuple<i64, u64, i64>{1, 7, 3}, {3, 7, 3}, {4, 11, 5}, {5, 101, 41}}) {
    u64 total = 0, zero = 0;
    for (i64 S = -T; S <= T; ++S)
      for (i64 P = -T * T; P <= T * T; ++P)
        if (pos_mod(k * S - P, static_cast<i64>(r)) == 0) {
          const u64 n = oracle_NSP(S, P, T);
          total += n;
          if (S == 0) zero += n;
        }
    const CleanCountReport h = clean_counting_harness(T, r, k);
    CHECK(h.total.count == total);
    CHECK(h.s_zero.count == zero);
    CHECK(clean_counting_brute(T, r, k) == total);
    MESSAGE("clean ratio T=" << T << " r=" << r << ": " << h.total.ratio);
  }
}

TEST_CASE("fourth moment count sits inside the surface count") {
  const i64 L = 4;
  for (auto [r, k] : {std::pair<u64, i64>{101, 41}, {1009, 417}, {11, 3}}) {
    const u64 n4 = count_N4(-L, L, k, r).count;
    const CleanCountReport h = clean_counting_harness(4 * L, r, k);
    CHECK(n4 <= h.total.count);
  }
}

TEST_CASE("hyperbola congruence counts") {
  for (auto [u, v, S, T, P] : {std::tuple<i64, i64, i64, i64, i64>{1, 2, 10, 10, 0}, {10, 10, 10, 10, 3}, {3, 5, 5, 40, -2},
                               {2, 2, 7, 50, 11}}) {
    u64 want = 0;
    for (i64 a = -T; a <= T; ++a)
      for (i64 b = -T; b <= T; ++b)
        if (pos_mod(a - u, S) == 0 && pos_mod(b - v, S) == 0 && std::llabs(a * b + 4 * P) <= T * S) ++want;
    const CountReport c = hyperbola_congruence_count(u, v, S, T, P);
    CHECK(c.count == want);
    CHECK(c.bound == doctest::Approx(double(T) / S * std::log(2.0 + double(T) / S)));
  }
  CHECK(hyperbola_congruence_count(1, 2, 10, 10, 0).count <= 9);
  CHECK(hyperbola_congruence_count(1, 1, 3, 20, 1000000).count == 0);
}

TEST_CASE("dyadic tail") {
  const DyadicTail d0 = dyadic_tail(0, 100000);
  CHECK(d0.lower <= zeta2 + 1e-12);
  CHECK(d0.upper >= zeta2 - 1e-12);
  CHECK(d0.upper - d0.lower < 1e-8);
  const DyadicTail d1 = dyadic_tail(1, 100000);
  CHECK(d1.lower <= 1 + zeta2 + zeta3 + 1e-12);
  CHECK(d1.upper >= 1 + zeta2 + zeta3 - 1e-12);
  const double want10 = 21 + (zeta2 - 1) + 10 * (zeta3 - 1);
  const DyadicTail d10 = dyadic_tail(10, 100000);
  CHECK(d10.lower <= want10 + 1e-12);
  CHECK(d10.upper >= want10 - 1e-12);
  CHECK(want10 == doctest::Approx(23.6655).epsilon(1e-5));
  // negative s: sum_{j >= 1} j/(j+2)^3
  long double neg = 0;
  for (long j = 1; j <= 20000000; ++j) neg += static_cast<long double>(j) / std::pow(j + 2.0L, 3);
  neg += 1.0L / 20000000;  // tail ~ 1/N
  const DyadicTail dn = dyadic_tail(-2, 100000);
  CHECK(dn.lower <= static_cast<double>(neg) + 1e-7);
  CHECK(dn.upper >= static_cast<double>(neg) - 1e-7);
  for (i64 s : {0, 1, 2, 5, 10, 100, 1000})
    CHECK(dyadic_tail(s, 100000 + s).ratio <= 4.0);
}
