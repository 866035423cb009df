#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "mixsum/dual.hpp"
#include "mixsum/sums.hpp"

using namespace mixsum;

namespace {

long double bump(long double t) { return t > 0 && t < 1 ? std::exp(-1.0L / (t * (1.0L - t))) : 0.0L; }

// composite Simpson on [0, x] with n panels
std::complex<long double> simpson_hat(double x, long double xi, int n) {
  std::complex<long double> s = 0;
  const long double h = static_cast<long double>(x) / n;
  for (int i = 0; i <= n; ++i) {
    const long double t = i * h;
    const long double c = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    s += c * bump(t / x) * std::polar(1.0L, 2.0L * M_PIl * xi * t);
  }
  return s * h / 3.0L;
}

const long double bump_integral = std::real(simpson_hat(1.0, 0.0L, 20000));

}  // namespace

TEST_CASE("dyadic split covers the window once") {
  const DualSetup s = make_dual_setup(101, 60.0, Theta::parse("sqrt:2"), 0.1, 5);
  CHECK(s.k == 41);
  CHECK(s.T(0) == doctest::Approx(2.0 + 101.0 / 60.0));
  CHECK(s.T(3) == doctest::Approx(8 * (2.0 + 101.0 / 60.0)));
  CHECK(s.W(0) == 1.0);
  CHECK(s.W(10) == doctest::Approx(0.5));
  std::set<i64> seen;
  for (int j = 0; j <= s.levels; ++j)
    for (i64 m : s.members(j)) {
      CHECK(s.level_of(m) == j);
      CHECK(seen.insert(m).second);
    }
  const i64 top = static_cast<i64>(std::floor(s.T(s.levels)));
  CHECK(seen.size() == static_cast<std::size_t>(2 * top + 1));
  CHECK(s.level_of(top + 1) == -1);
  CHECK(s.excluded(-41));
  CHECK(s.excluded(60));
  CHECK_FALSE(s.excluded(0));
  double w = 0;
  for (int j = 0; j <= s.levels; ++j) w += s.W(j);
  CHECK(s.W_total_truncated() == doctest::Approx(w * w * w));
  CHECK(s.W_total() > s.W_total_truncated());
  CHECK_THROWS(make_dual_setup(101, 0.0, Theta::parse("sqrt:2")));
}

TEST_CASE("archimedean transform") {
  const WeightFunction w = WeightFunction::bump();
  const DualSetup rat = make_dual_setup(101, 60.0, Theta::parse("rat:41/101"));
  CHECK(rat.theta_prime == 0.0);
  const cplx zero = f_infty_hat(0, rat, w);
  CHECK(zero.real() == doctest::Approx(60.0 * static_cast<double>(bump_integral)).epsilon(1e-10));
  CHECK(std::fabs(zero.imag()) < 1e-12);
  for (i64 m = 1; m < 40; ++m) CHECK(std::abs(f_infty_hat(-m, rat, w) - std::conj(f_infty_hat(m, rat, w))) < 1e-12);

  for (const char* spec : {"sqrt:2", "const:pi"})
    for (auto [r, x] : {std::pair<u64, double>{101, 60}, {1009, 1009}}) {
      const DualSetup s = make_dual_setup(r, x, Theta::parse(spec));
      for (i64 m : {-7, -1, 0, 1, 2, 5, 13}) {
        const std::complex<long double> want = simpson_hat(x, s.theta_prime - static_cast<long double>(m) / r, 40000);
        const cplx trap = f_infty_hat(m, s, w, Quadrature::trapezoid);
        const cplx gk = f_infty_hat(m, s, w, Quadrature::gauss_kronrod);
        REQUIRE(std::abs(trap - cplx(want.real(), want.imag())) < 1e-10 * x);
        REQUIRE(std::abs(gk - cplx(want.real(), want.imag())) < 1e-10 * x);
        REQUIRE(std::abs(trap - gk) < 1e-11 * x);
      }
      const std::vector<cplx> spec_v = f_infty_spectrum(s, w, 20);
      REQUIRE(spec_v.size() == 41);
      CHECK(std::abs(spec_v[20 + 3] - f_infty_hat(3, s, w)) < 1e-12 * x);
    }
}

TEST_CASE("poisson residual") {
  const WeightFunction w = WeightFunction::bump();
  const Theta t = Theta::parse("sqrt:2");
  for (auto [r, x] : {std::pair<u64, double>{7, 5}, {101, 60}, {101, 101}}) {
    const CharacterFamily fam(r);
    const DualSetup s = make_dual_setup(r, x, t);
    std::vector<u64> labels(r - 1);
    for (u64 j = 0; j + 1 < r; ++j) labels[j] = j;
    for (const PoissonResidual& p : poisson_residuals(fam, s, w, labels, default_truncation(s))) {
      REQUIRE(p.residual <= 1e-6 * std::sqrt(x));
      REQUIRE(std::abs(p.lhs - mixed_sum_direct(Character(fam, p.label), x, t, w)) < 1e-12);
    }
  }
  const CharacterFamily fam(1009);
  const DualSetup s = make_dual_setup(1009, 500.0, t);
  std::mt19937_64 rng(7);
  std::vector<u64> labels;
  for (int i = 0; i < 20; ++i) labels.push_back(rng() % 1008);
  for (const PoissonResidual& p : poisson_residuals(fam, s, w, labels, default_truncation(s)))
    CHECK(p.residual <= 1e-6 * std::sqrt(500.0));
}

TEST_CASE("poisson residual shrinks with the truncation") {
  const CharacterFamily fam(101);
  const DualSetup s = make_dual_setup(101, 60.0, Theta::parse("sqrt:2"));
  const Character chi(fam, 1);
  double prev = INFINITY;
  for (i64 M : {8, 16, 32, 64, 128, 236}) {
    const double res = poisson_residual(chi, s, WeightFunction::bump(), M).residual;
    CHECK(res <= std::max(prev, 1e-13));
    prev = res;
  }
  CHECK(prev < 1e-12);
  CHECK_THROWS_AS(poisson_residual(chi, s, WeightFunction::flat(), 236), std::invalid_argument);
  CHECK_THROWS_AS(poisson_residual(chi, s, WeightFunction::bump(), 1), std::invalid_argument);
}

TEST_CASE("fourier envelope constants") {
  const WeightFunction w = WeightFunction::bump();
  const DualSetup s = make_dual_setup(101, 60.0, Theta::parse("sqrt:2"));
  std::vector<i64> ms;
  for (i64 m = -500; m <= 500; ++m) ms.push_back(m);
  const FourierEnvelope e0 = fourier_envelope_scan(s, w, 0.0, ms);
  CHECK(e0.sup_ratio <= static_cast<double>(bump_integral) * (1 + 1e-9));
  CHECK(fourier_envelope_scan(s, w, 3.0, ms).sup_ratio <= 0.05);
  // higher A only holds until the transform hits rounding level
  std::vector<i64> near;
  for (i64 m = -30; m <= 30; ++m) near.push_back(m);
  const FourierEnvelope e6 = fourier_envelope_scan(s, w, 6.0, near);
  MESSAGE("A=6 sup ratio on |m|<=30: " << e6.sup_ratio);
  CHECK(std::isfinite(e6.sup_ratio));
  CHECK(fourier_envelope(s, 1, 2.0) == doctest::Approx(60.0));
}

TEST_CASE("principal tail") {
  const CharacterFamily fam(101);
  const DualSetup s = make_dual_setup(101, 60.0, Theta::parse("sqrt:2"));
  const PrincipalTail tail = principal_tail(s, WeightFunction::bump(), 2.0);
  CHECK(tail.terms > 0);
  CHECK(tail.dominant_share > 0.9);
  CHECK(tail.envelope == doctest::Approx(std::pow(60.0, -1.0) / 100.0));
  MESSAGE("principal tail ratio at A=2: " << tail.ratio);
  CHECK(tail_contribution(Character(fam, 3), tail) == cplx(0.0, 0.0));
  CHECK(tail_contribution(Character(fam, 0), tail) == tail.value);
}

TEST_CASE("fourth moment assembly") {
  const CharacterFamily fam(101);
  const Theta t = Theta::parse("sqrt:2");
  const WeightFunction w = WeightFunction::bump();
  const M4Assembly a = dyadic_m4_assembly(fam, 60.0, t, w, 0.1, 2.0);
  CHECK(a.bound_rigorous);
  CHECK(a.bound_total >= a.routed_fourth);
  CHECK(a.routed_fourth == doctest::Approx(a.measured_fourth).epsilon(1e-6));
  CHECK(a.final_envelope == doctest::Approx(final_envelope(60.0, 101.0)));
  const M4Assembly b = dyadic_m4_assembly(fam, 101.0, t, w, 0.1, 6.0);
  CHECK(b.bound_total >= b.routed_fourth);
  CHECK(final_envelope(10.0, 10.0) == doctest::Approx(900.0));
  CHECK(level_series(1.0) == doctest::Approx(2.0));
}

TEST_CASE("dyadic parameter validation") {
  CHECK_NOTHROW(validate_dyadic(0.1, 2.0));
  CHECK_NOTHROW(validate_dyadic(0.1, 1.1));
  CHECK_THROWS_WITH_AS(validate_dyadic(2.0, 1.0), doctest::Contains("3*delta+4 < 4*A"), std::invalid_argument);
  CHECK_THROWS_AS(validate_dyadic(0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(validate_dyadic(-0.1, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(validate_dyadic(0.1, 1.0), std::invalid_argument);
}
