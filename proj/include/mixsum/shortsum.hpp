#pragma once

#include <complex>
#include <vector>

#include "mixsum/characters.hpp"
#include "mixsum/diophantine.hpp"

namespace mixsum {

// Quadruples in [1,x]^4 with m1 m2 = n1 n2 are m1 = ga, m2 = hb, n1 = gb,
// n2 = ha with (a,b) = 1. The diagonal {m1,m2} = {n1,n2} is a = b or g = h.
struct FactorQuadruple {
  i64 g = 1, h = 1, a = 1, b = 1;
  i64 m1() const { return g * a; }
  i64 m2() const { return h * b; }
  i64 n1() const { return g * b; }
  i64 n2() const { return h * a; }
};

// 2x^2 - x
u64 diagonal_count(i64 x);

// |sum_{g <= Y} e(g j theta)|^2, from sin^2(pi Y j theta) / sin^2(pi j theta).
double fejer(i64 Y, const Theta& theta, i64 j);

// Sum over g != h, a != b, (a,b) = 1, max(a,b) max(g,h) <= x of
// e((g-h)(a-b) theta), with the (g,h) sum done in closed form.
cplx offdiag_sum(i64 x, const Theta& theta);
// Same sum, term by term in lexicographic (g,h,a,b) order.
cplx offdiag_sum_parametrized(i64 x, const Theta& theta);

// Entry x holds the off-diagonal value and count at that x, for x = 0..X.
struct OffdiagTable {
  std::vector<cplx> value;
  std::vector<u64> count;
};
// Direct enumeration of m1 m2 = n1 n2, bucketed by the largest entry.
OffdiagTable offdiag_brute_table(i64 X, const Theta& theta);
// Enumeration of (g,h,a,b), bucketed by max(a,b) max(g,h).
OffdiagTable offdiag_param_table(i64 X, const Theta& theta);

struct Case1Inner {
  cplx mobius;      // sum_k mu(k) |sum_{s <= x/(k max(g,h))} e(k(g-h) s theta)|^2
  cplx direct;      // sum over coprime a != b <= x/max(g,h)
  cplx difference;  // mobius - direct, the a = b = 1 term
};

// k_limit > 0 truncates the Mobius sum (the direct sum is then left empty).
Case1Inner case1_inner(i64 g, i64 h, i64 x, const Theta& theta, i64 k_limit = 0);

struct CaseDecomposition {
  i64 x = 0;
  i64 root = 0;  // floor(sqrt x)
  cplx S1;       // max(g,h) <= sqrt x
  cplx S2;       // max(a,b) <= sqrt x
  cplx S3;       // both
  cplx combined; // S1 + S2 - S3
  cplx offdiag;
  double relative_error = 0.0;
  // split by membership of g-h (Case 1) or a-b (Case 2) in the set L
  cplx S1_in_L, S1_out_L, S2_in_L, S2_out_L;
  u64 g_eq_h = 0;  // #{g = h, coprime a != b <= sqrt x, g max(a,b) <= x}
  double g_eq_h_over_x32 = 0.0;
  double ratio_to_x2 = 0.0;  // |offdiag| / x^2
};

CaseDecomposition case_decomposition(i64 x, const Theta& theta, double eps = 0.1);

}  // namespace mixsum
