#include "mixsum/diophantine.hpp"

#include <gmp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mixsum/characters.hpp"

namespace mixsum {

namespace {

i64 isqrt(i64 n) {
  auto s = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

// floor((p + sqrt d) / q) for non-square d.
i64 surd_floor(const QuadraticSurd& s) {
  const i64 root = isqrt(s.d);
  if (s.q > 0) return floor_div(s.p + root, s.q);
  return -floor_div(s.p + root, -s.q) - 1;
}

double surd_value(const QuadraticSurd& s) {
  return (static_cast<double>(s.p) + std::sqrt(static_cast<double>(s.d))) / static_cast<double>(s.q);
}

i64 parse_int(std::string_view text) {
  i64 v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("theta: cannot parse integer '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

unsigned __int128 to_fixed_point(const BigInterval& v) {
  // floor(lo * 2^128); v lies in [0, 1)
  mpfr_t t;
  mpfr_init2(t, v.precision() + 8);
  mpfr_mul_2ui(t, v.lo(), 128, MPFR_RNDD);
  if (mpfr_sgn(t) < 0) mpfr_set_zero(t, 1);
  mpz_t z;
  mpz_init(z);
  mpfr_get_z(z, t, MPFR_RNDD);
  std::uint64_t limbs[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(limbs, &count, -1, sizeof(std::uint64_t), 0, 0, z);
  mpz_clear(z);
  mpfr_clear(t);
  return (static_cast<unsigned __int128>(limbs[1]) << 64) | limbs[0];
}

}  // namespace

Theta Theta::quadratic(i64 p, i64 d, i64 q, int bits) {
  if (d <= 0) throw std::invalid_argument("theta: quadratic surd needs d > 0");
  if (q == 0) throw std::invalid_argument("theta: quadratic surd needs q != 0");
  const i64 root = isqrt(d);
  if (root * root == d) throw std::invalid_argument("theta: d is a perfect square, use rat:");
  if ((d - p * p) % q != 0) {
    const i64 aq = q < 0 ? -q : q;
    p *= aq;
    d *= q * q;
    q *= aq;
  }
  Theta t;
  t.kind_ = ThetaKind::quadratic;
  t.bits_ = bits;
  t.label_ = "quad:" + std::to_string(p) + "," + std::to_string(d) + "," + std::to_string(q);
  QuadraticSurd s{p, d, q};
  const i64 a0 = surd_floor(s);
  s.p -= a0 * s.q;
  t.integer_part_ = a0;
  t.surd_ = s;
  const mpfr_prec_t prec = t.working_precision();
  BigInterval red = (BigInterval::sqrt_of(static_cast<u64>(s.d), prec) + s.p) / s.q;
  t.finish(red);
  return t;
}

Theta Theta::rational(i64 num, i64 den, int bits) {
  if (den == 0) throw std::invalid_argument("theta: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i64 g = std::gcd(num, den);
  num /= g;
  den /= g;
  Theta t;
  t.kind_ = ThetaKind::rational;
  t.bits_ = bits;
  t.label_ = "rat:" + std::to_string(num) + "/" + std::to_string(den);
  t.integer_part_ = floor_div(num, den);
  t.num_ = pos_mod(num, den);
  t.den_ = den;
  t.finish(BigInterval::from_rational(t.num_, t.den_, t.working_precision()));
  return t;
}

Theta Theta::pi(int bits) {
  Theta t;
  t.kind_ = ThetaKind::constant;
  t.bits_ = bits;
  t.label_ = "const:pi";
  t.integer_part_ = 3;
  t.finish(BigInterval::pi(t.working_precision()) - 3);
  return t;
}

Theta Theta::euler(int bits) {
  Theta t;
  t.kind_ = ThetaKind::constant;
  t.bits_ = bits;
  t.label_ = "const:e";
  t.integer_part_ = 2;
  t.finish(BigInterval::e(t.working_precision()) - 2);
  return t;
}

Theta Theta::parse(std::string_view spec, int bits) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("theta: expected kind:value, got '" + std::string(spec) + "'");
  }
  const auto kind = spec.substr(0, colon);
  const auto body = spec.substr(colon + 1);
  Theta t;
  if (kind == "sqrt") {
    t = quadratic(0, parse_int(body), 1, bits);
  } else if (kind == "quad") {
    auto parts = split(body, ',');
    if (parts.size() != 3) throw std::invalid_argument("theta: quad:P,D,Q needs three integers");
    t = quadratic(parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2]), bits);
  } else if (kind == "rat") {
    auto parts = split(body, '/');
    if (parts.size() != 2) throw std::invalid_argument("theta: rat:A/Q expected");
    t = rational(parse_int(parts[0]), parse_int(parts[1]), bits);
  } else if (kind == "const") {
    if (body == "pi") {
      t = pi(bits);
    } else if (body == "e") {
      t = euler(bits);
    } else if (body == "phi") {
      t = quadratic(1, 5, 2, bits);
    } else {
      throw std::invalid_argument("theta: unknown constant '" + std::string(body) + "'");
    }
  } else {
    throw std::invalid_argument("theta: unknown kind '" + std::string(kind) + "'");
  }
  t.label_ = std::string(spec);
  return t;
}

void Theta::finish(const BigInterval& reduced) {
  reduced_ = reduced;
  if (reduced_.lower() < 0.0 || reduced_.upper() > 1.0) {
    throw std::logic_error("theta: reduction mod 1 failed");
  }
  value_ = reduced_.mid();
  fixed_ = to_fixed_point(reduced_);
}

BigInterval Theta::multiple(i64 q) const {
  if (kind_ == ThetaKind::rational) {
    const auto n = static_cast<__int128>(q) * num_;
    const auto m = static_cast<i64>(n % den_);
    const auto whole = static_cast<i64>(n / den_);
    return BigInterval::from_rational(m, den_, working_precision()) + whole;
  }
  return reduced_ * q;
}

double Theta::phase(i64 n) const {
  if (kind_ == ThetaKind::rational) {
    const i64 res = static_cast<i64>(static_cast<__int128>(pos_mod(n, den_)) * num_ % den_);
    double f = static_cast<double>(res) / static_cast<double>(den_);
    return f >= 0.5 ? f - 1.0 : f;
  }
  const auto prod = static_cast<unsigned __int128>(static_cast<__int128>(n)) * fixed_;
  const auto top = static_cast<std::int64_t>(static_cast<std::uint64_t>(prod >> 64));
  return std::ldexp(static_cast<double>(top), -64);
}

std::complex<double> Theta::e(i64 n) const { return expi_turns(phase(n)); }

std::optional<std::pair<i64, i64>> Theta::fraction() const {
  if (kind_ != ThetaKind::rational) return std::nullopt;
  return std::make_pair(num_, den_);
}

ContinuedFraction continued_fraction(const Theta& theta, int depth) {
  if (depth < 1) throw std::invalid_argument("continued_fraction: depth must be >= 1");
  ContinuedFraction cf;
  std::vector<i64> reduced_quotients{0};
  std::vector<double> complete;

  if (const auto& s = theta.surd()) {
    // x_1 = 1 / theta = (-p + sqrt d) / ((d - p^2) / q)
    QuadraticSurd x{-s->p, s->d, (s->d - s->p * s->p) / s->q};
    for (int i = 1; i <= depth; ++i) {
      complete.push_back(surd_value(x));
      if (i == depth) break;
      const i64 a = surd_floor(x);
      reduced_quotients.push_back(a);
      const i64 np = a * x.q - x.p;
      const i64 nq = (x.d - np * np) / x.q;
      x = {np, x.d, nq};
    }
  } else if (auto frac = theta.fraction()) {
    i64 n = frac->second;  // x_1 = den / num
    i64 d = frac->first;
    for (int i = 1; i <= depth; ++i) {
      if (d == 0) {
        cf.terminated = true;
        complete.push_back(std::numeric_limits<double>::infinity());
        break;
      }
      complete.push_back(static_cast<double>(n) / static_cast<double>(d));
      if (i == depth) break;
      const i64 a = n / d;
      reduced_quotients.push_back(a);
      const i64 rem = n - a * d;
      n = d;
      d = rem;
    }
  } else {
    try {
      BigInterval x = theta.reduced().reciprocal();
      for (int i = 1; i <= depth; ++i) {
        complete.push_back(x.mid());
        if (i == depth) break;
        const auto a = x.floor();
        if (!a) {
          cf.exhausted = true;
          break;
        }
        reduced_quotients.push_back(*a);
        x = (x - *a).reciprocal();
      }
    } catch (const PrecisionError&) {
      cf.exhausted = true;
    }
  }

  cf.quotients = reduced_quotients;
  cf.quotients[0] = theta.integer_part();
  cf.complete = complete;
  __int128 p_prev = 1, q_prev = 0, p_cur = cf.quotients[0], q_cur = 1;
  constexpr __int128 limit = std::numeric_limits<i64>::max();
  cf.p.push_back(static_cast<i64>(p_cur));
  cf.q.push_back(1);
  for (std::size_t i = 1; i < cf.quotients.size(); ++i) {
    const __int128 a = cf.quotients[i];
    const __int128 p_next = a * p_cur + p_prev;
    const __int128 q_next = a * q_cur + q_prev;
    if (p_next > limit || q_next > limit || p_next < -limit) {
      cf.overflow = true;
      cf.quotients.resize(i);
      cf.complete.resize(std::min(cf.complete.size(), i));
      break;
    }
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    cf.p.push_back(static_cast<i64>(p_cur));
    cf.q.push_back(static_cast<i64>(q_cur));
  }
  return cf;
}

BigInterval dist_nearest_int(const Theta& theta, i64 q) {
  if (q < 0) throw std::invalid_argument("dist_nearest_int: q must be >= 0");
  if (q == 0) return BigInterval(theta.working_precision());
  return theta.multiple(q).dist_nearest_int();
}

double dist_nearest_int_ostrowski(const ContinuedFraction& cf, i64 q) {
  if (q < 0) throw std::invalid_argument("dist_nearest_int_ostrowski: q must be >= 0");
  const std::size_t n = std::min(cf.q.size(), cf.complete.size());
  if (n == 0) throw std::invalid_argument("dist_nearest_int_ostrowski: empty expansion");
  if (!cf.terminated && q >= cf.q[n - 1] * 4) {
    throw std::invalid_argument("dist_nearest_int_ostrowski: expansion too short for q");
  }
  long double sum = 0.0L;
  i64 rest = q;
  for (std::size_t i = n; i-- > 0 && rest > 0;) {
    const i64 b = rest / cf.q[i];
    if (b == 0) continue;
    rest -= b * cf.q[i];
    const long double q_prev = i == 0 ? 0.0L : static_cast<long double>(cf.q[i - 1]);
    const long double denom = static_cast<long double>(cf.complete[i]) * cf.q[i] + q_prev;
    const long double delta = (i % 2 == 0 ? 1.0L : -1.0L) / denom;
    sum += static_cast<long double>(b) * delta;
  }
  return static_cast<double>(std::fabs(sum - std::nearbyint(sum)));
}

double DiophantineProfile::operator()(double q) const {
  switch (kind) {
    case Kind::stretched_exponential: return constant * std::exp(-std::pow(q, exponent));
    case Kind::inverse_square: return constant / (q * q);
  }
  return 0.0;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

ConditionReport check_condition(const Theta& theta, double constant, i64 range, double exponent) {
  if (range < 1) throw std::invalid_argument("check_condition: Q must be >= 1");
  if (!(constant > 0.0)) throw std::invalid_argument("check_condition: C must be positive");
  ConditionReport rep;
  rep.constant = constant;
  rep.exponent = exponent;
  rep.range = range;
  rep.worst_ratio = std::numeric_limits<double>::infinity();
  const mpfr_prec_t prec = theta.working_precision();
  const BigInterval c = BigInterval::from_double(constant, prec);
  const BigInterval expo = BigInterval::from_double(exponent, prec);
  for (i64 q = 1; q <= range; ++q) {
    const BigInterval dist = dist_nearest_int(theta, q);
    const BigInterval power = (BigInterval::from_integer(q, prec).log() * expo).exp();
    const BigInterval threshold = c * (-power).exp();
    const double ratio = dist.mid() * std::exp(power.mid());
    if (ratio < rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_q = q;
    }
    switch (dist.compare(threshold)) {
      case Certainty::above: break;
      case Certainty::below:
        if (rep.first_failure == 0) rep.first_failure = q;
        break;
      case Certainty::indeterminate: rep.indeterminate.push_back(q); break;
    }
  }
  if (rep.first_failure != 0) {
    rep.verdict = Verdict::fail;
  } else if (!rep.indeterminate.empty()) {
    rep.verdict = Verdict::indeterminate;
  }
  return rep;
}

bool CurlyLSet::contains(i64 l) const { return std::binary_search(members.begin(), members.end(), l); }

CurlyLSet curly_L(const Theta& theta, double x, double eps) {
  if (!(x >= 16.0)) throw std::invalid_argument("curly_L: x must be >= 16");
  if (!(eps > 0.0)) throw std::invalid_argument("curly_L: eps must be positive");
  CurlyLSet set;
  set.x = x;
  set.eps = eps;
  set.k_max = static_cast<i64>(std::floor(std::pow(std::log(x), 1.0 + eps)));
  set.l_max = static_cast<i64>(std::floor(std::sqrt(x)));
  const mpfr_prec_t prec = theta.working_precision();
  const BigInterval threshold = BigInterval::from_double(x, prec).cbrt().reciprocal();
  for (i64 l = -set.l_max; l <= set.l_max; ++l) {
    if (l == 0) {
      set.members.push_back(0);
      set.witnesses.push_back(1);
      continue;
    }
    bool undecided = false;
    i64 witness = 0;
    for (i64 k = 1; k <= set.k_max; ++k) {
      const auto c = dist_nearest_int(theta, k * (l < 0 ? -l : l)).compare(threshold);
      if (c == Certainty::below) {
        witness = k;
        break;
      }
      if (c == Certainty::indeterminate) undecided = true;
    }
    if (witness != 0) {
      set.members.push_back(l);
      set.witnesses.push_back(witness);
    } else if (undecided) {
      set.indeterminate.push_back(l);
    }
  }
  for (std::size_t i = 1; i < set.members.size(); ++i) {
    const i64 gap = set.members[i] - set.members[i - 1];
    if (!set.min_gap || gap < *set.min_gap) set.min_gap = gap;
  }
  return set;
}

ModularReduction reduce_mod_r(const Theta& theta, u64 r) {
  if (r == 0) throw std::invalid_argument("reduce_mod_r: r must be positive");
  ModularReduction red;
  red.r = r;
  const auto rr = static_cast<i64>(r);
  const mpfr_prec_t prec = theta.working_precision();
  if (auto frac = theta.fraction()) {
    const auto [num, den] = *frac;
    const auto scaled = static_cast<__int128>(num) * rr;
    red.k = static_cast<i64>(scaled / den);
    const auto rem = static_cast<i64>(scaled - static_cast<__int128>(red.k) * den);
    red.theta_prime = BigInterval::from_rational(rem, den, prec) / rr;
  } else {
    const BigInterval y = theta.reduced() * rr;
    const auto k = y.floor();
    if (!k) throw PrecisionError("reduce_mod_r: r*theta too close to an integer at this precision");
    red.k = *k;
    red.theta_prime = (y - *k) / rr;
  }
  red.theta_prime_value = red.theta_prime.mid();
  return red;
}

}  // namespace mixsum
