#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <complex>
#include <vector>

#include "mixsum/sums.hpp"

using namespace mixsum;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

// ind(n) by walking powers of the generator, once per modulus.
std::vector<u64> walk_index(u64 r, u64 g) {
  std::vector<u64> ind(r, 0);
  u64 v = 1;
  for (u64 e = 0; e + 1 < r; ++e) {
    ind[v] = e;
    v = v * g % r;
  }
  return ind;
}

double bump(double t) { return t > 0.0 && t < 1.0 ? std::exp(-1.0 / (t * (1.0 - t))) : 0.0; }

// S(chi_j) with long double phases: e(j ind(n)/(r-1) + n theta).
std::vector<cplx> oracle_family(u64 r, u64 g, double x, long double theta, bool flat) {
  const std::vector<u64> ind = walk_index(r, g);
  std::vector<cplx> out(r - 1);
  for (u64 j = 0; j + 1 < r; ++j) {
    std::complex<long double> acc = 0.0L;
    for (i64 n = 1; n <= static_cast<i64>(std::floor(x)); ++n) {
      if (n % static_cast<i64>(r) == 0) continue;
      const double wv = flat ? 1.0 : bump(static_cast<double>(n) / x);
      if (wv == 0.0) continue;
      long double ph = static_cast<long double>(j * ind[n % r] % (r - 1)) / (r - 1) + n * theta;
      ph -= std::floor(ph);
      acc += static_cast<long double>(wv) * std::polar(1.0L, 2.0L * M_PIl * ph);
    }
    out[j] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return out;
}

}  // namespace

TEST_CASE("weights") {
  const WeightFunction b = WeightFunction::bump();
  CHECK(b(0.0) == 0.0);
  CHECK(b(1.0) == 0.0);
  CHECK(b(-0.5) == 0.0);
  CHECK(b(0.5) == doctest::Approx(std::exp(-4.0)).epsilon(1e-15));
  CHECK(b.sup() == doctest::Approx(std::exp(-4.0)));
  const WeightFunction f = WeightFunction::flat();
  CHECK(f(0.75) == 1.0);
  CHECK(f(1.0) == 1.0);
  CHECK(f(0.0) == 0.0);
  CHECK(f(1.5) == 0.0);
  CHECK_FALSE(f.smooth());
  CHECK(b.smooth());
  // composite Simpson on 20000 panels
  const int n = 20000;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double v = bump(t) * bump(t);
    s += (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2)) * v;
  }
  s /= 3.0 * n;
  CHECK(b.l2_norm_squared() == doctest::Approx(s).epsilon(1e-10));
  const WeightFunction p = WeightFunction::sampled({0.0, 1.0, 0.0});
  CHECK(p(0.25) == doctest::Approx(0.5));
  CHECK(p.l2_norm_squared() == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS(WeightFunction::sampled({0.0, 0.0}));
  CHECK_THROWS(WeightFunction::parse("tent"));
}

TEST_CASE("direct sums") {
  const CharacterFamily fam5(5);
  const Theta zero = Theta::parse("rat:0/1");
  CHECK(mixed_sum_direct(Character(fam5, 2), 0.5, zero, WeightFunction::flat()) == cplx(0.0, 0.0));
  CHECK(std::abs(mixed_sum_direct(Character(fam5, 2), 4.0, zero, WeightFunction::flat())) < 1e-15);

  const CharacterFamily fam(101);
  const Theta t = Theta::parse("sqrt:2");
  const cplx got = mixed_sum_direct(Character(fam, 0), 10.0, t, WeightFunction::flat());
  const big th = boost::multiprecision::sqrt(big(2)) - 1;
  big re = 0, im = 0;
  for (int n = 1; n <= 10; ++n) {
    const big a = 2 * boost::math::constants::pi<big>() * n * th;
    re += cos(a);
    im += sin(a);
  }
  CHECK(std::fabs(got.real() - static_cast<double>(re)) < 1e-14);
  CHECK(std::fabs(got.imag() - static_cast<double>(im)) < 1e-14);
}

TEST_CASE("family transform matches direct evaluation") {
  const Theta t = Theta::parse("sqrt:2");
  const long double th = std::sqrt(2.0L) - 1.0L;
  const WeightFunction w = WeightFunction::bump();
  for (u64 r : {7ULL, 101ULL, 1009ULL}) {
    const CharacterFamily fam(r);
    for (double x : {std::floor(r / 4.0), std::floor(r / 2.0), static_cast<double>(r)}) {
      const FamilySums fs = family_sums(fam, x, t, w);
      const std::vector<cplx> want = oracle_family(r, fam.modulus().generator(), x, th, false);
      const FamilySums direct = family_sums(fam, x, t, w, FamilyMethod::direct);
      for (std::size_t j = 0; j < want.size(); ++j) {
        REQUIRE(std::abs(fs.values[j] - want[j]) <= 1e-8 * std::sqrt(x));
        REQUIRE(std::abs(direct.values[j] - want[j]) <= 1e-8 * std::sqrt(x));
      }
      CHECK(std::abs(fs.values[0] - mixed_sum_direct(Character(fam, 0), x, t, w)) < 1e-12);
    }
  }
}

TEST_CASE("family transform edge cases") {
  const CharacterFamily fam(101);
  const Theta t = Theta::parse("sqrt:2");
  const FamilySums z = family_sums(fam, 0.0, t, WeightFunction::bump());
  for (const cplx& v : z.values) CHECK(v == cplx(0.0, 0.0));
  const FamilySums big_x = family_sums(fam, 300.0, t, WeightFunction::bump());
  CHECK_FALSE(big_x.warnings.empty());
}

TEST_CASE("second moment is exact") {
  const Theta t = Theta::parse("sqrt:2");
  const WeightFunction w = WeightFunction::bump();
  for (auto [r, x] : {std::pair<u64, double>{101, 60}, {101, 101}, {1009, 500}, {10007, 9000}, {10007, 10007}}) {
    const CharacterFamily fam(r);
    const MomentReport m = moments(family_sums(fam, x, t, w), w);
    double ref = 0.0;
    for (i64 n = 1; n <= std::min<i64>(static_cast<i64>(x), static_cast<i64>(r) - 1); ++n)
      ref += bump(static_cast<double>(n) / x) * bump(static_cast<double>(n) / x);
    CHECK(std::fabs(m.second - ref) / ref < 1e-10);
    CHECK(m.second_relative_error < 1e-10);
    CHECK(m.cauchy_schwarz);
    CHECK(m.holder);
  }
  const FamilySums fs = family_sums(CharacterFamily(101), 60, t, w);
  CHECK(power_moment(fs, 0.0) == 1.0);
}

TEST_CASE("moment inequalities over a grid") {
  for (const char* spec : {"sqrt:2", "const:pi", "rat:1/3"})
    for (u64 r : {7ULL, 101ULL, 1009ULL}) {
      const CharacterFamily fam(r);
      for (double x : {std::ceil(r / 4.0), std::ceil(r / 2.0), static_cast<double>(r)})
        for (const WeightFunction& w : {WeightFunction::bump(), WeightFunction::flat()}) {
          const MomentReport m = moments(family_sums(fam, x, Theta::parse(spec), w), w);
          REQUIRE(m.cauchy_schwarz);
          REQUIRE(m.holder);
          REQUIRE(m.first * m.first <= m.second * (1 + 1e-12));
        }
    }
}

TEST_CASE("flat fourth moment equals the congruence sum") {
  const Theta t = Theta::parse("sqrt:2");
  const long double th = std::sqrt(2.0L) - 1.0L;
  for (auto [r, x] : {std::pair<u64, i64>{101, 10}, {1009, 31}}) {
    const CharacterFamily fam(r);
    const double fourth = power_moment(family_sums(fam, static_cast<double>(x), t, WeightFunction::flat()), 4.0);
    long double acc = 0.0L;
    for (i64 m1 = 1; m1 <= x; ++m1)
      for (i64 m2 = 1; m2 <= x; ++m2)
        for (i64 n1 = 1; n1 <= x; ++n1)
          for (i64 n2 = 1; n2 <= x; ++n2)
            if ((m1 * m2 - n1 * n2) % static_cast<i64>(r) == 0)
              acc += std::cos(2.0L * M_PIl * (m1 + m2 - n1 - n2) * th);
    CHECK(std::fabs(fourth - static_cast<double>(acc)) < 1e-6);
  }
}

TEST_CASE("geometric sums") {
  const GeometricSum half = geometric_sum(2, 0.5);
  CHECK(std::abs(half.direct) < 1e-15);
  CHECK(std::abs(half.closed) < 1e-15);
  const GeometricSum integer = geometric_sum(17, 3.0);
  CHECK(integer.direct == cplx(17.0, 0.0));
  CHECK_FALSE(integer.closed_form_used);
  const GeometricSum g = geometric_sum(100, std::sqrt(2.0) - 1.0);
  CHECK(g.closed_form_used);
  CHECK(g.agreement < 1e-10);
  CHECK(g.ratio <= 1.0 + 1e-12);
  for (int y = 0; y < 200; y += 13)
    for (double a : {0.001, 0.1, 0.37, 0.5, 0.9999}) {
      const GeometricSum s = geometric_sum(y, a);
      REQUIRE(s.agreement < 1e-10);
      REQUIRE(s.ratio <= 1.0 + 1e-9);
    }
  CHECK(geometric_sum(0, 0.3).direct == cplx(0.0, 0.0));
}

TEST_CASE("distribution probe") {
  const CharacterFamily fam(10007);
  const DistributionProbe p = distribution_probe(family_sums(fam, 5000, Theta::parse("sqrt:2"), WeightFunction::bump()));
  CHECK(p.mean_sq == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::isfinite(p.mean_abs));
  CHECK(p.mean_abs <= 1.0);
  CHECK(p.ks_exponential >= 0.0);
  CHECK(p.ks_exponential <= 1.0);
  MESSAGE("E|Z| at r=10007, x=5000: " << p.mean_abs << " (complex Gaussian: " << DistributionProbe::reference_abs << ")");
}

TEST_CASE("compensated sum") {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) s.add(1e-16);
  s.add(-1.0);
  CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-6));
}
