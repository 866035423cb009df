#include "mixsum/interval.hpp"

#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace mixsum {

BigInterval::BigInterval(mpfr_prec_t precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

BigInterval::BigInterval(const BigInterval& other) : BigInterval(other.precision()) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

BigInterval::BigInterval(BigInterval&& other) noexcept : BigInterval(other.precision()) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

BigInterval& BigInterval::operator=(const BigInterval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

BigInterval& BigInterval::operator=(BigInterval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

BigInterval::~BigInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

BigInterval BigInterval::from_integer(std::int64_t v, mpfr_prec_t precision) {
  BigInterval out(precision);
  mpfr_set_si(out.lo_, v, MPFR_RNDD);
  mpfr_set_si(out.hi_, v, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::from_double(double v, mpfr_prec_t precision) {
  BigInterval out(precision);
  mpfr_set_d(out.lo_, v, MPFR_RNDD);
  mpfr_set_d(out.hi_, v, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::from_rational(std::int64_t num, std::int64_t den, mpfr_prec_t precision) {
  if (den == 0) throw std::domain_error("BigInterval::from_rational: zero denominator");
  return from_integer(num, precision) / den;
}

BigInterval BigInterval::sqrt_of(std::uint64_t d, mpfr_prec_t precision) {
  BigInterval out(precision);
  mpfr_set_ui(out.lo_, d, MPFR_RNDD);
  mpfr_set_ui(out.hi_, d, MPFR_RNDU);
  mpfr_sqrt(out.lo_, out.lo_, MPFR_RNDD);
  mpfr_sqrt(out.hi_, out.hi_, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::pi(mpfr_prec_t precision) {
  BigInterval out(precision);
  mpfr_const_pi(out.lo_, MPFR_RNDD);
  mpfr_const_pi(out.hi_, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::e(mpfr_prec_t precision) {
  BigInterval one = from_integer(1, precision);
  return one.exp();
}

BigInterval BigInterval::operator+(const BigInterval& o) const {
  BigInterval out(precision());
  mpfr_add(out.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, hi_, o.hi_, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::operator-(const BigInterval& o) const {
  BigInterval out(precision());
  mpfr_sub(out.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, hi_, o.lo_, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::operator*(const BigInterval& o) const {
  BigInterval out(precision());
  mpfr_t t;
  mpfr_init2(t, precision());
  const mpfr_t* a[2] = {&lo_, &hi_};
  const mpfr_t* b[2] = {&o.lo_, &o.hi_};
  bool first = true;
  for (auto x : a) {
    for (auto y : b) {
      mpfr_mul(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
      mpfr_mul(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return out;
}

BigInterval BigInterval::operator+(std::int64_t v) const {
  return *this + from_integer(v, precision());
}

BigInterval BigInterval::operator-(std::int64_t v) const {
  return *this - from_integer(v, precision());
}

BigInterval BigInterval::operator*(std::int64_t v) const {
  BigInterval out(precision());
  if (v >= 0) {
    mpfr_mul_si(out.lo_, lo_, v, MPFR_RNDD);
    mpfr_mul_si(out.hi_, hi_, v, MPFR_RNDU);
  } else {
    mpfr_mul_si(out.lo_, hi_, v, MPFR_RNDD);
    mpfr_mul_si(out.hi_, lo_, v, MPFR_RNDU);
  }
  return out;
}

BigInterval BigInterval::operator/(std::int64_t v) const {
  if (v == 0) throw std::domain_error("BigInterval: division by zero");
  BigInterval out(precision());
  if (v > 0) {
    mpfr_div_si(out.lo_, lo_, v, MPFR_RNDD);
    mpfr_div_si(out.hi_, hi_, v, MPFR_RNDU);
  } else {
    mpfr_div_si(out.lo_, hi_, v, MPFR_RNDD);
    mpfr_div_si(out.hi_, lo_, v, MPFR_RNDU);
  }
  return out;
}

BigInterval BigInterval::operator-() const {
  BigInterval out(precision());
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::reciprocal() const {
  if (mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0) {
    throw PrecisionError("BigInterval::reciprocal: interval contains zero");
  }
  BigInterval out(precision());
  mpfr_ui_div(out.lo_, 1, hi_, MPFR_RNDD);
  mpfr_ui_div(out.hi_, 1, lo_, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::exp() const {
  BigInterval out(precision());
  mpfr_exp(out.lo_, lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, hi_, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::log() const {
  if (mpfr_sgn(lo_) <= 0) throw std::domain_error("BigInterval::log: nonpositive argument");
  BigInterval out(precision());
  mpfr_log(out.lo_, lo_, MPFR_RNDD);
  mpfr_log(out.hi_, hi_, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::sqrt() const {
  if (mpfr_sgn(lo_) < 0) throw std::domain_error("BigInterval::sqrt: negative argument");
  BigInterval out(precision());
  mpfr_sqrt(out.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(out.hi_, hi_, MPFR_RNDU);
  return out;
}

BigInterval BigInterval::cbrt() const {
  BigInterval out(precision());
  mpfr_cbrt(out.lo_, lo_, MPFR_RNDD);
  mpfr_cbrt(out.hi_, hi_, MPFR_RNDU);
  return out;
}

std::optional<std::int64_t> BigInterval::floor() const {
  mpfr_t a, b;
  mpfr_init2(a, precision());
  mpfr_init2(b, precision());
  mpfr_floor(a, lo_);
  mpfr_floor(b, hi_);
  std::optional<std::int64_t> out;
  if (mpfr_equal_p(a, b)) out = mpfr_get_si(a, MPFR_RNDN);
  mpfr_clear(a);
  mpfr_clear(b);
  return out;
}

BigInterval BigInterval::dist_nearest_int() const {
  // mid and radius, both rounded so that [mid - rad, mid + rad] covers [lo, hi]
  const mpfr_prec_t p = precision();
  mpfr_t mid, rad, n, d;
  mpfr_inits2(p + 2, mid, rad, n, d, static_cast<mpfr_ptr>(nullptr));
  mpfr_add(mid, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
  mpfr_sub(rad, hi_, mid, MPFR_RNDU);
  mpfr_sub(d, mid, lo_, MPFR_RNDU);
  if (mpfr_greater_p(d, rad)) mpfr_set(rad, d, MPFR_RNDU);
  mpfr_rint(n, mid, MPFR_RNDN);
  mpfr_sub(d, mid, n, MPFR_RNDN);  // exact: |d| <= 1/2 and mid has p+2 bits
  mpfr_abs(d, d, MPFR_RNDN);
  BigInterval out(p);
  mpfr_sub(out.lo_, d, rad, MPFR_RNDD);
  if (mpfr_sgn(out.lo_) < 0) mpfr_set_zero(out.lo_, 1);
  mpfr_add(out.hi_, d, rad, MPFR_RNDU);
  mpfr_t half;
  mpfr_init2(half, p);
  mpfr_set_d(half, 0.5, MPFR_RNDN);
  if (mpfr_greater_p(out.hi_, half)) mpfr_set(out.hi_, half, MPFR_RNDU);
  mpfr_clear(half);
  mpfr_clears(mid, rad, n, d, static_cast<mpfr_ptr>(nullptr));
  return out;
}

double BigInterval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double BigInterval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double BigInterval::mid() const {
  mpfr_t m;
  mpfr_init2(m, precision() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  const double v = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return v;
}

double BigInterval::width() const {
  mpfr_t w;
  mpfr_init2(w, precision());
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  const double v = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return v;
}

bool BigInterval::width_at_most_pow2(long neg_exponent) const {
  mpfr_t w, bound;
  mpfr_init2(w, precision());
  mpfr_init2(bound, 8);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  mpfr_set_ui_2exp(bound, 1, -neg_exponent, MPFR_RNDN);
  const bool ok = mpfr_lessequal_p(w, bound);
  mpfr_clear(w);
  mpfr_clear(bound);
  return ok;
}

bool BigInterval::contains(double v) const {
  return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0;
}

Certainty BigInterval::compare(const BigInterval& other) const {
  if (mpfr_less_p(hi_, other.lo_)) return Certainty::below;
  if (mpfr_greater_p(lo_, other.hi_)) return Certainty::above;
  return Certainty::indeterminate;
}

std::string BigInterval::to_string(int digits) const {
  auto fmt = [digits](const mpfr_t& v, mpfr_rnd_t rnd) {
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*R*g", digits, rnd, v);
    return std::string(buf.data());
  };
  return "[" + fmt(lo_, MPFR_RNDD) + ", " + fmt(hi_, MPFR_RNDU) + "]";
}

}  // namespace mixsum
