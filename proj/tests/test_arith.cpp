#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <stdexcept>

#include "mixsum/arith.hpp"

using namespace mixsum;

namespace {

bool trial_division(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 gcd_ref(u64 a, u64 b) { return b == 0 ? a : gcd_ref(b, a % b); }

}  // namespace

TEST_CASE("is_prime examples") {
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK(is_prime(10007));
}

TEST_CASE("is_prime agrees with trial division below 200000") {
  for (u64 n = 0; n < 200000; ++n) REQUIRE(is_prime(n) == trial_division(n));
}

TEST_CASE("is_prime on large inputs") {
  CHECK(is_prime(1000000007ULL));
  CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  CHECK_FALSE(is_prime(3215031751ULL));      // strong pseudoprime to bases 2,3,5,7
  CHECK_FALSE(is_prime(18446744073709551615ULL));
  CHECK_FALSE(is_prime(1000000007ULL * 998244353ULL));
}

TEST_CASE("primitive roots") {
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(101) == 2);
  CHECK(primitive_root(2) == 1);
  CHECK_THROWS_AS(primitive_root(100), std::invalid_argument);
  // smallest: no smaller g generates
  for (u64 r : {3ULL, 5ULL, 7ULL, 23ULL, 41ULL, 191ULL, 1009ULL}) {
    const u64 g = primitive_root(r);
    for (u64 h = 2; h < g; ++h) {
      u64 v = 1, ord = 0;
      do {
        v = v * h % r;
        ++ord;
      } while (v != 1);
      CHECK(ord < r - 1);
    }
  }
}

TEST_CASE("index table laws") {
  for (u64 r : {3ULL, 7ULL, 101ULL, 1009ULL}) {
    const PrimeModulus pm(r);
    CHECK(pm.index(1) == 0);
    CHECK(pm.index(static_cast<i64>(pm.generator())) == 1);
    std::mt19937_64 rng(r);
    for (int i = 0; i < 2000; ++i) {
      const i64 u = static_cast<i64>(rng() % (r - 1) + 1);
      const i64 v = static_cast<i64>(rng() % (r - 1) + 1);
      const u64 lhs = pm.index(u * v % static_cast<i64>(r));
      const u64 rhs = (pm.index(u) + pm.index(v)) % (r - 1);
      REQUIRE(lhs == rhs);
      REQUIRE(pm.power(pm.index(u)) == static_cast<u64>(u));
    }
    // negative and unreduced arguments
    CHECK(pm.index(-1) == pm.index(static_cast<i64>(r) - 1));
    CHECK(pm.index(static_cast<i64>(r) + 1) == 0);
  }
}

TEST_CASE("index table rejects a non-generator") {
  CHECK_THROWS_AS(build_index_table(7, 2), std::invalid_argument);  // 2 has order 3 mod 7
  CHECK_NOTHROW(build_index_table(7, 3));
}

TEST_CASE("multiplicative functions against brute force") {
  for (i64 n = 1; n <= 2000; ++n) {
    i64 tau = 0, phi = 0;
    for (i64 d = 1; d <= n; ++d) {
      if (n % d == 0) ++tau;
      if (gcd_ref(static_cast<u64>(d), static_cast<u64>(n)) == 1) ++phi;
    }
    // mu from the squarefree test and prime count
    int mu = 1;
    i64 m = n;
    for (i64 p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      m /= p;
      if (m % p == 0) {
        mu = 0;
        break;
      }
      mu = -mu;
    }
    if (mu != 0 && m > 1) mu = -mu;
    REQUIRE(divisor_count(n) == tau);
    REQUIRE(totient(n) == phi);
    REQUIRE(mobius(n) == mu);
    REQUIRE(arith_fn(ArithFn::mobius, n) == mu);
  }
}

TEST_CASE("checked_gcd") {
  CHECK(checked_gcd(12, -18) == 6);
  CHECK(checked_gcd(0, 5) == 5);
  CHECK_THROWS_AS(checked_gcd(0, 0), std::domain_error);
}

TEST_CASE("floor_div and pos_mod") {
  CHECK(floor_div(-7, 2) == -4);
  CHECK(floor_div(7, -2) == -4);
  CHECK(floor_div(-8, 2) == -4);
  CHECK(pos_mod(-1, 5) == 4);
  CHECK(pos_mod(10, 5) == 0);
}

TEST_CASE("mul_mod and pow_mod near 2^64") {
  const u64 m = 18446744073709551557ULL;
  CHECK(mul_mod(m - 1, m - 1, m) == 1);
  CHECK(pow_mod(2, m - 1, m) == 1);  // Fermat
}
