#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "mixsum/shortsum.hpp"
#include "mixsum/sums.hpp"

using namespace mixsum;

namespace {

// sum over m1 m2 = n1 n2 in [1,x]^4 of e((m1+m2-n1-n2) theta), long double phases
struct Brute {
  std::complex<long double> all = 0;
  u64 count = 0;
};

Brute brute_products(i64 x, long double th) {
  Brute b;
  for (i64 m1 = 1; m1 <= x; ++m1)
    for (i64 m2 = 1; m2 <= x; ++m2)
      for (i64 n1 = 1; n1 <= x; ++n1) {
        const i64 p = m1 * m2;
        if (p % n1 != 0) continue;
        const i64 n2 = p / n1;
        if (n2 > x) continue;
        ++b.count;
        b.all += std::polar(1.0L, 2.0L * M_PIl * (m1 + m2 - n1 - n2) * th);
      }
  return b;
}

}  // namespace

TEST_CASE("small off-diagonal values") {
  const Theta t = Theta::parse("sqrt:2");
  CHECK(diagonal_count(1) == 1);
  CHECK(diagonal_count(10) == 190);
  CHECK(offdiag_sum(2, t) == cplx(0.0, 0.0));
  CHECK(offdiag_sum_parametrized(2, t) == cplx(0.0, 0.0));
  const double want = 4.0 * std::cos(2.0 * M_PI * (std::sqrt(2.0) - 1.0));
  CHECK(offdiag_sum(4, t).real() == doctest::Approx(want).epsilon(1e-13));
  CHECK(offdiag_sum_parametrized(4, t).real() == doctest::Approx(want).epsilon(1e-13));
  CHECK(std::fabs(offdiag_sum(4, t).imag()) < 1e-13);
  CHECK(fejer(5, Theta::parse("rat:0/1"), 3) == doctest::Approx(25.0));
  CHECK(fejer(2, Theta::parse("rat:1/2"), 1) == doctest::Approx(0.0));
}

TEST_CASE("off-diagonal sum against product enumeration") {
  for (const char* spec : {"sqrt:2", "const:phi", "const:pi"}) {
    const Theta t = Theta::parse(spec);
    const long double th = static_cast<long double>(t.value());
    for (i64 x : {3, 7, 12, 25, 40, 60}) {
      const Brute b = brute_products(x, th);
      const u64 diag = diagonal_count(x);
      const cplx fast = offdiag_sum(x, t);
      // diagonal terms have phase 0
      const std::complex<long double> off = b.all - static_cast<long double>(diag);
      REQUIRE(std::fabs(fast.real() - static_cast<double>(off.real())) < 1e-9 * x * x);
      REQUIRE(std::fabs(fast.imag() - static_cast<double>(off.imag())) < 1e-9 * x * x);
      REQUIRE(std::abs(offdiag_sum_parametrized(x, t) - fast) < 1e-9 * x * x);
    }
  }
}

TEST_CASE("brute and parametrized tables agree") {
  for (const char* spec : {"sqrt:2", "const:phi", "rat:0/1"}) {
    const Theta t = Theta::parse(spec);
    const OffdiagTable bt = offdiag_brute_table(300, t);
    const OffdiagTable pt = offdiag_param_table(300, t);
    REQUIRE(bt.value.size() == 301);
    for (i64 x = 0; x <= 300; ++x) {
      REQUIRE(bt.count[x] == pt.count[x]);
      REQUIRE(std::abs(bt.value[x] - pt.value[x]) < 1e-9 * std::max<i64>(1, x * x));
    }
    if (std::string(spec) == "rat:0/1")
      for (i64 x = 0; x <= 300; x += 17) CHECK(bt.value[x].real() == doctest::Approx(double(bt.count[x])));
    for (i64 x : {50, 173, 300}) CHECK(std::abs(offdiag_sum(x, t) - pt.value[x]) < 1e-9 * x * x);
  }
  // total count of m1 m2 = n1 n2 splits into diagonal and off-diagonal
  const OffdiagTable z = offdiag_param_table(40, Theta::parse("rat:0/1"));
  CHECK(z.count[40] + diagonal_count(40) == brute_products(40, 0.0L).count);
}

TEST_CASE("case 1 inner sum") {
  const Theta t = Theta::parse("sqrt:2");
  for (auto [g, h, x] : {std::tuple<i64, i64, i64>{1, 2, 50}, {3, 1, 200}, {5, 7, 1000}}) {
    const Case1Inner c = case1_inner(g, h, x, t);
    CHECK(std::abs(c.difference - cplx(1.0, 0.0)) < 1e-9);
  }
  const Case1Inner z = case1_inner(2, 3, 90, Theta::parse("rat:0/1"));
  const i64 Y = 90 / 3;
  i64 coprime = 0;
  for (i64 a = 1; a <= Y; ++a)
    for (i64 b = 1; b <= Y; ++b)
      if (a != b && std::gcd(a, b) == 1) ++coprime;
  CHECK(z.direct.real() == doctest::Approx(double(coprime)));
  const Case1Inner one = case1_inner(2, 5, 100, t, 1);
  std::complex<long double> s = 0;
  const long double th = std::sqrt(2.0L) - 1.0L;
  for (i64 k = 1; k <= 100 / 5; ++k) s += std::polar(1.0L, 2.0L * M_PIl * (-3) * k * th);
  CHECK(one.mobius.real() == doctest::Approx(static_cast<double>(std::norm(s))).epsilon(1e-10));
}

TEST_CASE("case decomposition") {
  const Theta t = Theta::parse("sqrt:2");
  for (i64 x : {16, 64, 256}) {
    const CaseDecomposition d = case_decomposition(x, t);
    CHECK(d.root == static_cast<i64>(std::sqrt(double(x))));
    CHECK(std::abs(d.combined - (d.S1 + d.S2 - d.S3)) < 1e-9 * x * x);
    CHECK(d.relative_error < 1e-9);
    CHECK(std::abs(d.offdiag - offdiag_sum(x, t)) < 1e-9 * x * x);
    CHECK(std::abs(d.S1_in_L + d.S1_out_L - d.S1) < 1e-9 * x * x);
    CHECK(std::abs(d.S2_in_L + d.S2_out_L - d.S2) < 1e-9 * x * x);
    CHECK(static_cast<double>(d.g_eq_h) <= 2.0 * std::pow(double(x), 1.5));
  }
}

TEST_CASE("off-diagonal share decreases") {
  const Theta t = Theta::parse("sqrt:2");
  double prev = INFINITY;
  for (i64 x : {100, 1000, 10000}) {
    const double ratio = std::abs(offdiag_sum(x, t)) / (double(x) * x);
    MESSAGE("x=" << x << " |offdiag|/x^2=" << ratio);
    CHECK(ratio < prev);
    prev = ratio;
  }
}

TEST_CASE("short fourth moment equals diagonal plus off-diagonal") {
  const Theta t = Theta::parse("sqrt:2");
  for (auto [r, x] : {std::pair<u64, i64>{1009, 31}, {10007, 90}}) {
    const CharacterFamily fam(r);
    const double m4 = power_moment(family_sums(fam, double(x), t, WeightFunction::flat()), 4.0);
    const double want = double(diagonal_count(x)) + offdiag_sum(x, t).real();
    CHECK(std::fabs(m4 - want) / want < 1e-9);
  }
}
