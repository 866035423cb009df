#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixsum/arith.hpp"
#include "mixsum/interval.hpp"

namespace mixsum {

enum class ThetaKind { quadratic, constant, rational };

// (p + sqrt(d)) / q with d > 0 not a square, q != 0 and q | d - p^2.
struct QuadraticSurd {
  i64 p = 0;
  i64 d = 2;
  i64 q = 1;
};

// An angle theta, stored reduced mod 1. Quadratic irrationals keep their exact
// surd, rationals their exact fraction, and every kind carries an MPFR
// enclosure of the reduced value whose width is far below 2^-B.
class Theta {
 public:
  static constexpr int default_bits = 256;

  // Accepts "sqrt:D", "quad:P,D,Q" for (P+sqrt D)/Q, "const:pi", "const:e",
  // "const:phi" (golden ratio) and "rat:A/Q".
  static Theta parse(std::string_view spec, int bits = default_bits);
  static Theta quadratic(i64 p, i64 d, i64 q, int bits = default_bits);
  static Theta rational(i64 num, i64 den, int bits = default_bits);
  static Theta pi(int bits = default_bits);
  static Theta euler(int bits = default_bits);

  ThetaKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  int bits() const { return bits_; }
  mpfr_prec_t working_precision() const { return bits_ + 64; }
  // floor of the value before reduction.
  i64 integer_part() const { return integer_part_; }

  // Enclosure of theta mod 1, in [0, 1).
  const BigInterval& reduced() const { return reduced_; }
  double value() const { return value_; }
  // Enclosure of q * (theta mod 1).
  BigInterval multiple(i64 q) const;

  // frac(n theta) mapped to [-1/2, 1/2); exact for rationals, otherwise from
  // a 128-bit fixed-point image of theta (error <= |n| 2^-127).
  double phase(i64 n) const;
  std::complex<double> e(i64 n) const;

  const std::optional<QuadraticSurd>& surd() const { return surd_; }  // reduced
  std::optional<std::pair<i64, i64>> fraction() const;                // reduced

 private:
  Theta() = default;
  void finish(const BigInterval& unreduced);

  ThetaKind kind_ = ThetaKind::constant;
  std::string label_;
  int bits_ = default_bits;
  i64 integer_part_ = 0;
  BigInterval reduced_{64};
  double value_ = 0.0;
  unsigned __int128 fixed_ = 0;
  std::optional<QuadraticSurd> surd_;
  i64 num_ = 0;
  i64 den_ = 1;
};

struct ContinuedFraction {
  std::vector<i64> quotients;  // [a0; a1, a2, ...] of the unreduced value
  std::vector<i64> p;          // convergent numerators (unreduced value)
  std::vector<i64> q;          // convergent denominators
  // complete[i] ~ x_{i+1} = [a_{i+1}; a_{i+2}, ...] of the reduced value,
  // used for delta_i = q_i theta - p_i = (-1)^i / (x_{i+1} q_i + q_{i-1}).
  std::vector<double> complete;
  bool terminated = false;  // rational expansion finished
  bool exhausted = false;   // enclosure could not certify the next quotient
  bool overflow = false;    // convergents left the 64-bit range
};

ContinuedFraction continued_fraction(const Theta& theta, int depth);

// Certified enclosure of ||q theta||.
BigInterval dist_nearest_int(const Theta& theta, i64 q);

// ||q theta|| via the Ostrowski expansion q = sum b_i q_i over convergent
// denominators, summing b_i delta_i in double precision.
double dist_nearest_int_ostrowski(const ContinuedFraction& cf, i64 q);

// Upsilon of the pigeonhole lemma: either C exp(-q^c) or C / q^2.
struct DiophantineProfile {
  enum class Kind { stretched_exponential, inverse_square };
  Kind kind = Kind::stretched_exponential;
  double constant = 1.0;
  double exponent = 0.25;

  double operator()(double q) const;
};

enum class Verdict { pass, fail, indeterminate };
const char* to_string(Verdict v);

struct ConditionReport {
  Verdict verdict = Verdict::pass;
  double constant = 0.0;
  double exponent = 0.25;
  i64 range = 0;
  i64 first_failure = 0;  // 0 when no q failed
  i64 worst_q = 0;        // argmin of ||q theta|| / exp(-q^c)
  double worst_ratio = 0.0;
  std::vector<i64> indeterminate;
};

// Checks ||q theta|| >= C exp(-q^c) for 1 <= q <= Q with interval comparisons.
ConditionReport check_condition(const Theta& theta, double constant, i64 range, double exponent = 0.25);

struct CurlyLSet {
  double x = 0.0;
  double eps = 0.0;
  i64 k_max = 0;
  i64 l_max = 0;
  std::vector<i64> members;    // sorted
  std::vector<i64> witnesses;  // k with ||k l theta|| <= x^{-1/3}
  std::vector<i64> indeterminate;
  std::optional<i64> min_gap;  // between distinct members

  bool contains(i64 l) const;
};

// Exhaustive scan over |l| <= sqrt(x), k <= (log x)^{1+eps}.
CurlyLSet curly_L(const Theta& theta, double x, double eps = 0.1);

struct ModularReduction {
  u64 r = 0;
  i64 k = 0;              // floor(r theta)
  BigInterval theta_prime;  // theta - k/r in [0, 1/r)
  double theta_prime_value = 0.0;
};

// Throws PrecisionError when r theta cannot be separated from an integer.
ModularReduction reduce_mod_r(const Theta& theta, u64 r);

}  // namespace mixsum
