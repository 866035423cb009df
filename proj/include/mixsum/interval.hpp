#pragma once

#include <mpfr.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace mixsum {

// Raised when an enclosure is too wide to decide a floor, a comparison or a
// continued-fraction quotient.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Certainty { below, above, indeterminate };

// Closed real interval [lo, hi] with MPFR endpoints. Every operation rounds
// the lower endpoint down and the upper endpoint up, so the true value stays
// enclosed.
class BigInterval {
 public:
  explicit BigInterval(mpfr_prec_t precision = 320);
  BigInterval(const BigInterval& other);
  BigInterval(BigInterval&& other) noexcept;
  BigInterval& operator=(const BigInterval& other);
  BigInterval& operator=(BigInterval&& other) noexcept;
  ~BigInterval();

  static BigInterval from_integer(std::int64_t v, mpfr_prec_t precision);
  static BigInterval from_double(double v, mpfr_prec_t precision);
  static BigInterval from_rational(std::int64_t num, std::int64_t den, mpfr_prec_t precision);
  static BigInterval sqrt_of(std::uint64_t d, mpfr_prec_t precision);
  static BigInterval pi(mpfr_prec_t precision);
  static BigInterval e(mpfr_prec_t precision);

  mpfr_prec_t precision() const { return mpfr_get_prec(lo_); }

  BigInterval operator+(const BigInterval& o) const;
  BigInterval operator-(const BigInterval& o) const;
  BigInterval operator*(const BigInterval& o) const;
  BigInterval operator+(std::int64_t v) const;
  BigInterval operator-(std::int64_t v) const;
  BigInterval operator*(std::int64_t v) const;
  BigInterval operator/(std::int64_t v) const;
  BigInterval operator-() const;
  // 1/x; throws PrecisionError when the interval contains 0.
  BigInterval reciprocal() const;

  // Monotone elementary functions.
  BigInterval exp() const;
  BigInterval log() const;
  BigInterval sqrt() const;
  BigInterval cbrt() const;

  // Certified floor; nullopt when an integer lies inside (lo, hi].
  std::optional<std::int64_t> floor() const;
  // Enclosure of min_n |x - n| (1-Lipschitz, so mid/radius propagate).
  BigInterval dist_nearest_int() const;

  double lower() const;  // rounded down
  double upper() const;  // rounded up
  double mid() const;    // nearest
  double width() const;  // rounded up
  // True when hi - lo <= 2^(-bits) exactly.
  bool width_at_most_pow2(long neg_exponent) const;

  bool contains(double v) const;
  // Position of this interval relative to other.
  Certainty compare(const BigInterval& other) const;

  std::string to_string(int digits = 30) const;

  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace mixsum
