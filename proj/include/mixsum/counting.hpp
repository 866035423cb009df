#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mixsum/arith.hpp"

namespace mixsum {

// An exact count with the matching bound and count/bound.
struct CountReport {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> params;
  u64 count = 0;
  double bound = 0.0;
  double ratio = 0.0;
  std::vector<std::string> flags;

  // "S=1;P=0;T=1"
  std::string params_string() const;
};

// #{(a,b) mod q : ab = d mod q}; bound tau(gcd(d,q)) q.
CountReport count_N(i64 d, i64 q);
u64 count_N_brute(i64 d, i64 q);

// #{|a|,|b|,|c| <= box T : ab + 2cS = S^2 - 4P}. For S != 0 the bound is
// (T/|S|) log(2 + T/|S|) N(-4P, |S|); S = 0 counts ab = -4P with c free,
// against T^2 (P = 0) or T |P|^0.05.
CountReport count_NSP(i64 S, i64 P, i64 T, double box = 1.0);
u64 count_NSP_brute(i64 S, i64 P, i64 T, double box = 1.0);

struct DiophantineTuple {
  i64 S = 0;  // m1 + m2 - n1 - n2
  i64 P = 0;  // n1 n2 - m1 m2
  i64 a = 0;
  i64 b = 0;
  i64 c = 0;

  bool on_surface() const;  // ab + 2cS = S^2 - 4P
};

// (n1-n2+m1-m2, n1-n2-m1+m2, m1+m2)
DiophantineTuple injection_phi(i64 m1, i64 m2, i64 n1, i64 n2);

// Quadruples from {m in I : m != -k mod r}^4 with
// (k+m1)(k+m2) = (k+n1)(k+n2) mod r, by bucketing pairs on the product.
// Bound column: T^2 + T^4/r with T = max |m|.
CountReport count_N4(const std::vector<i64>& I, i64 k, u64 r);
CountReport count_N4(i64 lo, i64 hi, i64 k, u64 r);
u64 count_N4_brute(const std::vector<i64>& I, i64 k, u64 r);
// 2|I'|^2 - |I'|, the solutions with {m1,m2} = {n1,n2}.
u64 n4_diagonal(const std::vector<i64>& I, i64 k, u64 r);

struct PigeonholePair {
  i64 q = 0;  // S gap (or S itself)
  i64 d = 0;  // P gap (or P itself)
  i64 a = 0;  // (kq - d)/r
  double error = 0.0;  // |q theta - a| = |q theta' + d/r|
  double limit = 0.0;  // 3M/r
};

struct PigeonholeReport {
  CountReport report;
  bool in_regime = true;  // r > M >= N >= 1
  std::optional<PigeonholePair> pair;
};

// #{(S,P) in [1,N] x [-M,M] : kS = P mod r}; bound N/(log(2 + r/M))^{1/c}.
// theta_prime (theta - k/r) fills in the approximation error of the pair.
PigeonholeReport pigeonhole_count(i64 N, i64 M, i64 k, u64 r, double c, std::optional<double> theta_prime = {});
u64 pigeonhole_brute(i64 N, i64 M, i64 k, u64 r);

struct CleanCountReport {
  CountReport total;     // against T^2 + T^4/r
  CountReport s_zero;    // S = 0 stratum against T^2 + (T^2/r) T^{1+2 eps}
  u64 pairs = 0;         // admissible (S,P)
  double eps = 0.05;
};

// Sum of N_{S,P}(T) over |S| <= T, |P| <= box T^2 with kS = P mod r.
CleanCountReport clean_counting_harness(i64 T, u64 r, i64 k, double box = 1.0, double eps = 0.05);
u64 clean_counting_brute(i64 T, u64 r, i64 k, double box = 1.0);

// #{|a|,|b| <= T : a = u, b = v mod S, |ab + 4P| <= TS}; bound (T/S) log(2 + T/S).
CountReport hyperbola_congruence_count(i64 u, i64 v, i64 S, i64 T, i64 P);

struct DyadicTail {
  double s = 0.0;
  i64 j_max = 0;
  double partial = 0.0;
  double lower = 0.0;  // partial + lower tail bound
  double upper = 0.0;  // partial + upper tail bound
  double ratio = 0.0;  // upper / max(1, s)
};

// sum_{j >= max(1,s)} j / max(1, j-s)^3 for integer s (negative allowed).
DyadicTail dyadic_tail(i64 s, i64 j_max);

}  // namespace mixsum
