#include "mixsum/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "mixsum/parallel.hpp"

namespace mixsum {

namespace {

i64 inverse_mod(i64 a, i64 m) {
  i64 old_r = pos_mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const i64 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw std::logic_error("inverse_mod: not a unit");
  return pos_mod(old_s, m);
}

// Integers b in [lo, hi] with b = b0 mod m.
i64 count_in_class(i64 lo, i64 hi, i64 b0, i64 m) {
  if (lo > hi) return 0;
  return floor_div(hi - b0, m) - floor_div(lo - 1 - b0, m);
}

i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

i64 box_of(i64 T, double box) {
  if (T < 1) throw std::invalid_argument("T must be >= 1");
  if (!(box > 0.0)) throw std::invalid_argument("box constant must be > 0");
  return static_cast<i64>(std::floor(box * static_cast<double>(T) + 1e-9));
}

void finish(CountReport& rep) { rep.ratio = rep.bound > 0.0 ? static_cast<double>(rep.count) / rep.bound : 0.0; }

std::string num(double v) {
  if (v == std::floor(v) && std::fabs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  std::string s = std::to_string(v);
  return s;
}

}  // namespace

std::string CountReport::params_string() const {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

CountReport count_N(i64 d, i64 q) {
  if (q < 1) throw std::invalid_argument("count_N needs q >= 1");
  CountReport rep;
  rep.kind = "N";
  rep.params = {{"d", std::to_string(d)}, {"q", std::to_string(q)}};
  const i64 dr = pos_mod(d, q);
  u64 total = 0;
  for (i64 a = 0; a < q; ++a) {
    const i64 g = std::gcd(a, q);
    if (dr % g == 0) total += static_cast<u64>(g);
  }
  rep.count = total;
  rep.bound = static_cast<double>(divisor_count(std::gcd(dr, q))) * static_cast<double>(q);
  finish(rep);
  return rep;
}

u64 count_N_brute(i64 d, i64 q) {
  if (q < 1) throw std::invalid_argument("count_N needs q >= 1");
  const i64 dr = pos_mod(d, q);
  u64 total = 0;
  for (i64 a = 0; a < q; ++a)
    for (i64 b = 0; b < q; ++b)
      if ((a * b) % q == dr) ++total;
  return total;
}

CountReport count_NSP(i64 S, i64 P, i64 T, double box) {
  const i64 B = box_of(T, box);
  CountReport rep;
  rep.kind = "NSP";
  rep.params = {{"S", std::to_string(S)}, {"P", std::to_string(P)}, {"T", std::to_string(T)}};
  if (box != 1.0) rep.params.emplace_back("box", num(box));
  const double Td = static_cast<double>(T);
  if (S == 0) {
    // ab = -4P, c free
    const i64 target = -4 * P;
    u64 pairs = 0;
    if (target == 0) {
      pairs = static_cast<u64>(2 * (2 * B + 1) - 1);
    } else {
      for (i64 a = -B; a <= B; ++a) {
        if (a == 0 || target % a != 0) continue;
        const i64 b = target / a;
        if (std::llabs(b) <= B) ++pairs;
      }
    }
    rep.count = pairs * static_cast<u64>(2 * B + 1);
    rep.bound = P == 0 ? Td * Td : Td * std::pow(std::fabs(static_cast<double>(P)), 0.05);
    rep.flags.push_back("S=0 stratum");
    finish(rep);
    return rep;
  }
  const i64 absS = std::llabs(S);
  const i64 L = 2 * absS;
  const i64 R = S * S - 4 * P;
  const i64 Rr = pos_mod(R, L);
  const i64 reach = 2 * absS * B;  // |R - ab| <= 2|S| B
  u64 total = 0;
  for (i64 a = -B; a <= B; ++a) {
    const i64 ar = pos_mod(a, L);
    const i64 g = std::gcd(ar, L);
    if (Rr % g != 0) continue;
    const i64 Lp = L / g;
    const i64 b0 = Lp == 1 ? 0 : pos_mod((Rr / g) % Lp * inverse_mod(ar / g, Lp), Lp);
    i64 lo = -B, hi = B;
    if (a == 0) {
      if (std::llabs(R) > reach) continue;
    } else if (a > 0) {
      lo = std::max(lo, ceil_div(R - reach, a));
      hi = std::min(hi, floor_div(R + reach, a));
    } else {
      lo = std::max(lo, ceil_div(R + reach, a));
      hi = std::min(hi, floor_div(R - reach, a));
    }
    total += static_cast<u64>(count_in_class(lo, hi, b0, Lp));
  }
  rep.count = total;
  const double ts = Td / static_cast<double>(absS);
  rep.bound = ts * std::log(2.0 + ts) * static_cast<double>(count_N(-4 * P, absS).count);
  finish(rep);
  return rep;
}

u64 count_NSP_brute(i64 S, i64 P, i64 T, double box) {
  const i64 B = box_of(T, box);
  const i64 R = S * S - 4 * P;
  u64 total = 0;
  for (i64 a = -B; a <= B; ++a)
    for (i64 b = -B; b <= B; ++b)
      for (i64 c = -B; c <= B; ++c)
        if (a * b + 2 * c * S == R) ++total;
  return total;
}

bool DiophantineTuple::on_surface() const { return a * b + 2 * c * S == S * S - 4 * P; }

DiophantineTuple injection_phi(i64 m1, i64 m2, i64 n1, i64 n2) {
  DiophantineTuple t;
  t.S = m1 + m2 - n1 - n2;
  t.P = n1 * n2 - m1 * m2;
  t.a = n1 - n2 + m1 - m2;
  t.b = n1 - n2 - m1 + m2;
  t.c = m1 + m2;
  return t;
}

namespace {

std::vector<u64> kept_residues(const std::vector<i64>& I, i64 k, u64 r) {
  std::vector<u64> v;
  v.reserve(I.size());
  for (i64 m : I) {
    const i64 u = pos_mod(k + m, static_cast<i64>(r));
    if (u != 0) v.push_back(static_cast<u64>(u));
  }
  return v;
}

}  // namespace

CountReport count_N4(const std::vector<i64>& I, i64 k, u64 r) {
  if (!is_prime(r)) throw std::invalid_argument("count_N4 needs a prime modulus");
  const std::vector<u64> v = kept_residues(I, k, r);
  std::vector<u64> bucket(r, 0);
  for (u64 a : v)
    for (u64 b : v) ++bucket[mul_mod(a, b, r)];
  CountReport rep;
  rep.kind = "N4";
  i64 top = 0;
  for (i64 m : I) top = std::max<i64>(top, std::llabs(m));
  rep.params = {{"k", std::to_string(k)}, {"r", std::to_string(r)}, {"size", std::to_string(v.size())},
                {"T", std::to_string(top)}};
  u64 total = 0;
  for (u64 s : bucket) total += s * s;
  rep.count = total;
  const double T = static_cast<double>(top);
  rep.bound = T * T + T * T * T * T / static_cast<double>(r);
  finish(rep);
  return rep;
}

CountReport count_N4(i64 lo, i64 hi, i64 k, u64 r) {
  std::vector<i64> I;
  for (i64 m = lo; m <= hi; ++m) I.push_back(m);
  return count_N4(I, k, r);
}

u64 count_N4_brute(const std::vector<i64>& I, i64 k, u64 r) {
  const std::vector<u64> v = kept_residues(I, k, r);
  u64 total = 0;
  for (u64 a : v)
    for (u64 b : v)
      for (u64 c : v)
        for (u64 d : v)
          if (mul_mod(a, b, r) == mul_mod(c, d, r)) ++total;
  return total;
}

u64 n4_diagonal(const std::vector<i64>& I, i64 k, u64 r) {
  const u64 n = kept_residues(I, k, r).size();
  return 2 * n * n - n;
}

PigeonholeReport pigeonhole_count(i64 N, i64 M, i64 k, u64 r, double c, std::optional<double> theta_prime) {
  if (N < 1 || M < 0) throw std::invalid_argument("pigeonhole_count needs N >= 1 and M >= 0");
  if (!(c > 0.0)) throw std::invalid_argument("pigeonhole_count needs c > 0");
  const i64 rr = static_cast<i64>(r);
  PigeonholeReport out;
  CountReport& rep = out.report;
  rep.kind = "pigeonhole";
  rep.params = {{"N", std::to_string(N)}, {"M", std::to_string(M)}, {"k", std::to_string(k)},
                {"r", std::to_string(r)}, {"c", num(c)}};
  out.in_regime = rr > M && M >= N && N >= 1;
  if (!out.in_regime) rep.flags.push_back("out of regime");
  if (M >= rr) rep.flags.push_back("M >= r: every S counted");
  std::vector<std::pair<i64, i64>> hits;  // (S, P) in ascending S then P
  u64 total = 0;
  for (i64 S = 1; S <= N; ++S) {
    const i64 res = pos_mod(static_cast<i64>(mul_mod(pos_mod(k, rr), static_cast<u64>(S), r)), rr);
    const i64 first = res - rr * floor_div(res + M, rr);  // smallest P >= -M in the class
    for (i64 P = first; P <= M; P += rr) {
      ++total;
      if (hits.size() < 4096) hits.emplace_back(S, P);
    }
  }
  rep.count = total;
  rep.bound = static_cast<double>(N) / std::pow(std::log(2.0 + static_cast<double>(r) / std::max<i64>(M, 1)), 1.0 / c);
  finish(rep);

  if (!hits.empty()) {
    PigeonholePair pair;
    if (hits.size() == 1) {
      pair.q = hits[0].first;
      pair.d = hits[0].second;
    } else {
      i64 best = -1;
      for (std::size_t i = 1; i < hits.size(); ++i) {
        const i64 gap = hits[i].first - hits[i - 1].first;
        if (gap >= 1 && (best < 0 || gap < best)) {
          best = gap;
          pair.q = gap;
          pair.d = hits[i].second - hits[i - 1].second;
        }
      }
      if (best < 0) {  // every hit shares one S
        pair.q = hits[0].first;
        pair.d = hits[0].second;
      }
    }
    pair.a = (k * pair.q - pair.d) / rr;
    pair.limit = 3.0 * static_cast<double>(M) / static_cast<double>(r);
    if (theta_prime)
      pair.error = std::fabs(static_cast<double>(pair.q) * *theta_prime +
                             static_cast<double>(pair.d) / static_cast<double>(r));
    out.pair = pair;
  }
  return out;
}

u64 pigeonhole_brute(i64 N, i64 M, i64 k, u64 r) {
  const i64 rr = static_cast<i64>(r);
  u64 total = 0;
  for (i64 S = 1; S <= N; ++S)
    for (i64 P = -M; P <= M; ++P)
      if (pos_mod(k * S - P, rr) == 0) ++total;
  return total;
}

CleanCountReport clean_counting_harness(i64 T, u64 r, i64 k, double box, double eps) {
  const i64 rr = static_cast<i64>(r);
  const i64 pmax = static_cast<i64>(std::floor(box * static_cast<double>(T) * static_cast<double>(T) + 1e-9));
  const std::size_t n = static_cast<std::size_t>(2 * T + 1);
  std::vector<u64> per_s(n, 0), pairs_s(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const i64 S = static_cast<i64>(i) - T;
    const i64 res = pos_mod(static_cast<i64>(mul_mod(pos_mod(k, rr), static_cast<u64>(pos_mod(S, rr)), r)), rr);
    const i64 first = res - rr * floor_div(res + pmax, rr);
    for (i64 P = first; P <= pmax; P += rr) {
      per_s[i] += count_NSP(S, P, T, box).count;
      ++pairs_s[i];
    }
  });
  CleanCountReport out;
  out.eps = eps;
  const double Td = static_cast<double>(T), rd = static_cast<double>(r);
  CountReport& tot = out.total;
  tot.kind = "clean";
  tot.params = {{"T", std::to_string(T)}, {"r", std::to_string(r)}, {"k", std::to_string(k)}};
  if (box != 1.0) tot.params.emplace_back("box", num(box));
  for (std::size_t i = 0; i < n; ++i) {
    tot.count += per_s[i];
    out.pairs += pairs_s[i];
  }
  tot.bound = Td * Td + Td * Td * Td * Td / rd;
  finish(tot);
  CountReport& z = out.s_zero;
  z.kind = "clean_S0";
  z.params = tot.params;
  z.params.emplace_back("eps", num(eps));
  z.count = per_s[static_cast<std::size_t>(T)];
  z.bound = Td * Td + (Td * Td / rd) * std::pow(Td, 1.0 + 2.0 * eps);
  finish(z);
  return out;
}

u64 clean_counting_brute(i64 T, u64 r, i64 k, double box) {
  const i64 rr = static_cast<i64>(r);
  const i64 pmax = static_cast<i64>(std::floor(box * static_cast<double>(T) * static_cast<double>(T) + 1e-9));
  u64 total = 0;
  for (i64 S = -T; S <= T; ++S)
    for (i64 P = -pmax; P <= pmax; ++P)
      if (pos_mod(k * S - P, rr) == 0) total += count_NSP_brute(S, P, T, box);
  return total;
}

CountReport hyperbola_congruence_count(i64 u, i64 v, i64 S, i64 T, i64 P) {
  if (!(1 <= u && u <= S && 1 <= v && v <= S && S <= T))
    throw std::invalid_argument("hyperbola_congruence_count needs 1 <= u,v <= S <= T");
  CountReport rep;
  rep.kind = "hyperbola";
  rep.params = {{"u", std::to_string(u)}, {"v", std::to_string(v)}, {"S", std::to_string(S)},
                {"T", std::to_string(T)}, {"P", std::to_string(P)}};
  const i64 lim = T * S;
  u64 total = 0;
  const i64 a0 = u - S * floor_div(u + T, S);
  const i64 b0 = v - S * floor_div(v + T, S);
  for (i64 a = a0; a <= T; a += S) {
    if (a < -T) continue;
    for (i64 b = b0; b <= T; b += S) {
      if (b < -T) continue;
      if (std::llabs(a * b + 4 * P) <= lim) ++total;
    }
  }
  rep.count = total;
  const double ts = static_cast<double>(T) / static_cast<double>(S);
  rep.bound = ts * std::log(2.0 + ts);
  finish(rep);
  return rep;
}

DyadicTail dyadic_tail(i64 s, i64 j_max) {
  const i64 start = std::max<i64>(1, s);
  if (j_max < start + 10) throw std::invalid_argument("dyadic_tail needs J_max >= max(1,s) + 10");
  DyadicTail out;
  out.s = static_cast<double>(s);
  out.j_max = j_max;
  // ascending magnitude is the reverse of j order for large j; sum from the top
  double partial = 0.0;
  for (i64 j = j_max; j >= start; --j) {
    const double den = static_cast<double>(std::max<i64>(1, j - s));
    partial += static_cast<double>(j) / (den * den * den);
  }
  out.partial = partial;
  // tail: sum_{u > U} (u + s)/u^3 with U = j_max - s >= 10; u = j - s
  const double U = static_cast<double>(j_max - s);
  const double sd = static_cast<double>(s);
  const double lo2 = 1.0 / (U + 1.0), hi2 = 1.0 / U;
  const double lo3 = 1.0 / (2.0 * (U + 1.0) * (U + 1.0)), hi3 = 1.0 / (2.0 * U * U);
  out.lower = partial + lo2 + (s >= 0 ? sd * lo3 : sd * hi3);
  out.upper = partial + hi2 + (s >= 0 ? sd * hi3 : sd * lo3);
  out.ratio = out.upper / std::max(1.0, sd);
  return out;
}

}  // namespace mixsum
