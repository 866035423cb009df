#include "mixsum/shortsum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mixsum/parallel.hpp"
#include "mixsum/sums.hpp"

namespace mixsum {

namespace {

i64 isqrt(i64 x) {
  i64 s = static_cast<i64>(std::sqrt(static_cast<double>(x)));
  while (s * s > x) --s;
  while ((s + 1) * (s + 1) <= x) ++s;
  return s;
}

cplx sum_slots(const std::vector<cplx>& v) {
  CompensatedSum re, im;
  for (const cplx& z : v) {
    re.add(z.real());
    im.add(z.imag());
  }
  return {re.value(), im.value()};
}

}  // namespace

u64 diagonal_count(i64 x) {
  if (x < 0) return 0;
  const u64 n = static_cast<u64>(x);
  return 2 * n * n - n;
}

double fejer(i64 Y, const Theta& theta, i64 j) {
  if (Y <= 0) return 0.0;
  const double a = theta.phase(j);
  if (a == 0.0) return static_cast<double>(Y) * static_cast<double>(Y);
  const double s = std::sin(M_PI * a);
  const double t = std::sin(M_PI * theta.phase(j * Y));
  return (t * t) / (s * s);
}

cplx offdiag_sum(i64 x, const Theta& theta) {
  if (x < 2) return 0.0;
  // pairs (a,b) with max(a,b) = m and the other entry j < m coprime to m,
  // counted twice for the two orders; a - b = +-(m - j).
  std::vector<cplx> slot(static_cast<std::size_t>(x + 1), 0.0);
  parallel_for(slot.size(), [&](std::size_t i) {
    const i64 m = static_cast<i64>(i);
    if (m < 2) return;
    const i64 Y = x / m;
    CompensatedSum acc;
    for (i64 j = 1; j < m; ++j) {
      if (std::gcd(m, j) != 1) continue;
      acc.add(fejer(Y, theta, m - j) - static_cast<double>(Y));
    }
    slot[i] = 2.0 * acc.value();
  });
  return sum_slots(slot);
}

cplx offdiag_sum_parametrized(i64 x, const Theta& theta) {
  if (x < 2) return 0.0;
  std::vector<cplx> slot(static_cast<std::size_t>(x + 1), 0.0);
  parallel_for(slot.size(), [&](std::size_t i) {
    const i64 g = static_cast<i64>(i);
    if (g < 1) return;
    CompensatedSum re, im;
    for (i64 h = 1; h <= x; ++h) {
      if (h == g) continue;
      const i64 lim = x / std::max(g, h);
      for (i64 a = 1; a <= lim; ++a)
        for (i64 b = 1; b <= lim; ++b) {
          if (a == b || std::gcd(a, b) != 1) continue;
          const cplx z = theta.e((g - h) * (a - b));
          re.add(z.real());
          im.add(z.imag());
        }
    }
    slot[i] = cplx(re.value(), im.value());
  });
  return sum_slots(slot);
}

namespace {

OffdiagTable prefix(std::vector<cplx> value, std::vector<u64> count) {
  for (std::size_t i = 1; i < value.size(); ++i) {
    value[i] += value[i - 1];
    count[i] += count[i - 1];
  }
  return {std::move(value), std::move(count)};
}

}  // namespace

OffdiagTable offdiag_brute_table(i64 X, const Theta& theta) {
  const std::size_t n = static_cast<std::size_t>(std::max<i64>(X, 0) + 1);
  std::vector<cplx> value(n, 0.0);
  std::vector<u64> count(n, 0);
  for (i64 m1 = 1; m1 <= X; ++m1)
    for (i64 m2 = 1; m2 <= X; ++m2) {
      const i64 prod = m1 * m2;
      for (i64 n1 = 1; n1 <= X; ++n1) {
        if (prod % n1 != 0) continue;
        const i64 n2 = prod / n1;
        if (n2 > X) continue;
        if ((m1 == n1 && m2 == n2) || (m1 == n2 && m2 == n1)) continue;
        const std::size_t top = static_cast<std::size_t>(std::max({m1, m2, n1, n2}));
        value[top] += theta.e(m1 + m2 - n1 - n2);
        ++count[top];
      }
    }
  return prefix(std::move(value), std::move(count));
}

OffdiagTable offdiag_param_table(i64 X, const Theta& theta) {
  const std::size_t n = static_cast<std::size_t>(std::max<i64>(X, 0) + 1);
  std::vector<cplx> value(n, 0.0);
  std::vector<u64> count(n, 0);
  for (i64 a = 1; a <= X; ++a)
    for (i64 b = 1; b <= X; ++b) {
      if (a == b || std::gcd(a, b) != 1) continue;
      const i64 M = std::max(a, b);
      const i64 lim = X / M;
      for (i64 g = 1; g <= lim; ++g)
        for (i64 h = 1; h <= lim; ++h) {
          if (g == h) continue;
          const std::size_t key = static_cast<std::size_t>(M * std::max(g, h));
          value[key] += theta.e((g - h) * (a - b));
          ++count[key];
        }
    }
  return prefix(std::move(value), std::move(count));
}

Case1Inner case1_inner(i64 g, i64 h, i64 x, const Theta& theta, i64 k_limit) {
  if (g < 1 || h < 1 || g == h) throw std::invalid_argument("case1_inner needs distinct g, h >= 1");
  const i64 G = std::max(g, h);
  if (G * G > x) throw std::invalid_argument("case1_inner needs max(g,h) <= sqrt(x)");
  const i64 Y = x / G;
  Case1Inner out;
  const i64 kmax = k_limit > 0 ? std::min(k_limit, Y) : Y;
  CompensatedSum mob;
  for (i64 k = 1; k <= kmax; ++k) {
    const int mu = mobius(k);
    if (mu == 0) continue;
    mob.add(mu * fejer(Y / k, theta, k * (g - h)));
  }
  out.mobius = mob.value();
  if (k_limit <= 0) {
    CompensatedSum re, im;
    for (i64 a = 1; a <= Y; ++a)
      for (i64 b = 1; b <= Y; ++b) {
        if (a == b || std::gcd(a, b) != 1) continue;
        const cplx z = theta.e((g - h) * (a - b));
        re.add(z.real());
        im.add(z.imag());
      }
    out.direct = cplx(re.value(), im.value());
  }
  out.difference = out.mobius - out.direct;
  return out;
}

CaseDecomposition case_decomposition(i64 x, const Theta& theta, double eps) {
  if (x < 16) throw std::invalid_argument("case_decomposition needs x >= 16");
  CaseDecomposition out;
  out.x = x;
  const i64 s = isqrt(x);
  out.root = s;
  const CurlyLSet L = curly_L(theta, static_cast<double>(x), eps);

  CompensatedSum s1_in, s1_out;
  for (i64 g = 1; g <= s; ++g)
    for (i64 h = 1; h <= s; ++h) {
      if (g == h) continue;
      const double v = case1_inner(g, h, x, theta).mobius.real() - 1.0;
      (L.contains(g - h) ? s1_in : s1_out).add(v);
    }
  CompensatedSum s2_in, s2_out, s3;
  u64 geh = 0;
  for (i64 a = 1; a <= s; ++a)
    for (i64 b = 1; b <= s; ++b) {
      if (a == b || std::gcd(a, b) != 1) continue;
      const i64 Y = x / std::max(a, b);
      const double v = fejer(Y, theta, a - b) - static_cast<double>(Y);
      (L.contains(a - b) ? s2_in : s2_out).add(v);
      s3.add(fejer(s, theta, a - b) - static_cast<double>(s));
      geh += static_cast<u64>(Y);
    }
  out.S1_in_L = s1_in.value();
  out.S1_out_L = s1_out.value();
  out.S2_in_L = s2_in.value();
  out.S2_out_L = s2_out.value();
  out.S1 = out.S1_in_L + out.S1_out_L;
  out.S2 = out.S2_in_L + out.S2_out_L;
  out.S3 = s3.value();
  out.combined = out.S1 + out.S2 - out.S3;
  out.offdiag = offdiag_sum(x, theta);
  const double scale = std::max(1.0, std::abs(out.offdiag));
  out.relative_error = std::abs(out.combined - out.offdiag) / scale;
  out.g_eq_h = geh;
  out.g_eq_h_over_x32 = static_cast<double>(geh) / std::pow(static_cast<double>(x), 1.5);
  out.ratio_to_x2 = std::abs(out.offdiag) / (static_cast<double>(x) * static_cast<double>(x));
  return out;
}

}  // namespace mixsum
