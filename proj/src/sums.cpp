#include "mixsum/sums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mixsum/dft.hpp"
#include "mixsum/parallel.hpp"

namespace mixsum {

void CompensatedSum::add(double v) {
  const double t = sum_ + v;
  if (std::fabs(sum_) >= std::fabs(v)) {
    comp_ += (sum_ - t) + v;
  } else {
    comp_ += (v - t) + sum_;
  }
  sum_ = t;
}

cplx mixed_sum_direct(const Character& chi, double x, const Theta& theta, const WeightFunction& w) {
  if (x < 0) throw std::invalid_argument("mixed_sum_direct: x must be >= 0");
  const auto n_max = static_cast<i64>(std::floor(x));
  cplx acc{0.0, 0.0};
  for (i64 n = 1; n <= n_max; ++n) {
    const double wn = w(static_cast<double>(n) / x);
    if (wn == 0.0) continue;
    const cplx c = chi(n);
    if (c == cplx{0.0, 0.0}) continue;
    acc += c * theta.e(n) * wn;
  }
  return acc;
}

FamilySums family_sums(const CharacterFamily& family, double x, const Theta& theta, const WeightFunction& w,
                       FamilyMethod method) {
  if (x < 0) throw std::invalid_argument("family_sums: x must be >= 0");
  FamilySums fs;
  fs.r = family.prime();
  fs.x = x;
  fs.theta = theta.label();
  fs.weight = w.name();
  fs.method = method;
  const u64 order = family.size();
  if (x > static_cast<double>(fs.r)) {
    fs.warnings.push_back("x exceeds r; outside the x <= r regime");
  }
  fs.values.assign(order, cplx{0.0, 0.0});
  const auto n_max = static_cast<i64>(std::floor(x));
  if (n_max < 1) return fs;

  if (method == FamilyMethod::direct) {
    parallel_for(order, [&](std::size_t j) {
      fs.values[j] = mixed_sum_direct(Character(family, j), x, theta, w);
    });
    return fs;
  }

  std::vector<cplx> buckets(order, cplx{0.0, 0.0});
  const auto r = static_cast<i64>(fs.r);
  for (i64 n = 1; n <= n_max; ++n) {
    if (n % r == 0) continue;
    const double wn = w(static_cast<double>(n) / x);
    if (wn == 0.0) continue;
    buckets[family.modulus().index(n)] += theta.e(n) * wn;
  }
  fs.values = dft(buckets, +1);
  return fs;
}

double power_moment(const FamilySums& fs, double p) {
  if (fs.values.empty()) return 0.0;
  if (p == 0.0) return 1.0;
  CompensatedSum acc;
  for (const auto& s : fs.values) acc.add(std::pow(std::abs(s), p));
  return acc.value() / static_cast<double>(fs.values.size());
}

MomentReport moments(const FamilySums& fs, const WeightFunction& w) {
  MomentReport m;
  CompensatedSum s1, s2, s4;
  for (const auto& s : fs.values) {
    const double a2 = std::norm(s);
    s1.add(std::sqrt(a2));
    s2.add(a2);
    s4.add(a2 * a2);
  }
  const auto count = static_cast<double>(fs.values.size());
  m.first = s1.value() / count;
  m.second = s2.value() / count;
  m.fourth = s4.value() / count;
  if (fs.x > 0) {
    m.first_over_sqrt_x = m.first / std::sqrt(fs.x);
    m.second_over_x = m.second / fs.x;
    m.fourth_over_x2 = m.fourth / (fs.x * fs.x);
  }
  m.first_over_sqrt_second = m.second > 0 ? m.first / std::sqrt(m.second) : 0.0;

  CompensatedSum ref;
  const auto n_max = static_cast<i64>(std::min(std::floor(fs.x), static_cast<double>(fs.r - 1)));
  for (i64 n = 1; n <= n_max; ++n) {
    const double v = w(static_cast<double>(n) / fs.x);
    ref.add(v * v);
  }
  m.second_reference = ref.value();
  m.second_relative_error =
      m.second_reference > 0 ? std::fabs(m.second - m.second_reference) / m.second_reference : std::fabs(m.second);

  constexpr double slack = 1e-12;
  m.cauchy_schwarz = m.first * m.first <= m.second * (1 + slack);
  m.holder = m.second <= std::cbrt(m.first * m.first * m.fourth) * (1 + slack) || m.second == 0.0;
  return m;
}

GeometricSum geometric_sum(i64 y, double alpha) {
  if (y < 0) throw std::invalid_argument("geometric_sum: y must be >= 0");
  GeometricSum g;
  const double a = alpha - std::nearbyint(alpha);
  for (i64 n = 1; n <= y; ++n) g.direct += expi_turns(static_cast<double>(n) * a);
  if (a == 0.0) {
    g.closed = {static_cast<double>(y), 0.0};
    g.bound = static_cast<double>(y);
  } else {
    const double ya = std::fmod(static_cast<double>(y) * a, 1.0);
    g.closed = expi_turns(a) * (1.0 - expi_turns(ya)) / (1.0 - expi_turns(a));
    g.closed_form_used = true;
    g.bound = std::min(static_cast<double>(y), 1.0 / (2.0 * std::fabs(a)));
  }
  g.agreement = std::abs(g.direct - g.closed);
  g.ratio = g.bound > 0 ? std::abs(g.direct) / g.bound : 0.0;
  return g;
}

DistributionProbe distribution_probe(const FamilySums& fs) {
  DistributionProbe p;
  const auto count = static_cast<double>(fs.values.size());
  CompensatedSum second;
  for (const auto& s : fs.values) second.add(std::norm(s));
  const double scale = std::sqrt(second.value() / count);
  if (!(scale > 0)) throw std::invalid_argument("distribution_probe: all sums vanish");
  std::vector<double> sq;
  sq.reserve(fs.values.size());
  CompensatedSum a1, a2, a4, re, im, re2, im2;
  for (const auto& s : fs.values) {
    const cplx z = s / scale;
    const double n = std::norm(z);
    a1.add(std::sqrt(n));
    a2.add(n);
    a4.add(n * n);
    re.add(z.real());
    im.add(z.imag());
    const cplx z2 = z * z;
    re2.add(z2.real());
    im2.add(z2.imag());
    sq.push_back(n);
  }
  p.mean_abs = a1.value() / count;
  p.mean_sq = a2.value() / count;
  p.mean_fourth = a4.value() / count;
  p.mean = {re.value() / count, im.value() / count};
  p.mean_square = {re2.value() / count, im2.value() / count};
  std::sort(sq.begin(), sq.end());
  double d = 0.0;
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const double cdf = 1.0 - std::exp(-sq[i]);
    d = std::max({d, cdf - static_cast<double>(i) / count, static_cast<double>(i + 1) / count - cdf});
  }
  p.ks_exponential = d;
  return p;
}

}  // namespace mixsum
