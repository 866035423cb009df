#pragma once

#include <complex>
#include <vector>

#include "mixsum/characters.hpp"
#include "mixsum/diophantine.hpp"
#include "mixsum/weight.hpp"

namespace mixsum {

// theta = k/r + theta' with k = floor(r theta), and the dyadic split of the
// dual variable m: I_0 = [-T_0, T_0], I_j = {T_{j-1} < |m| <= T_j},
// T_j = 2^j (2 + r/x), W_j = 2^{-j delta}.
struct DualSetup {
  u64 r = 0;
  double x = 0.0;
  Theta theta;
  i64 k = 0;
  double theta_prime = 0.0;
  double delta = 0.1;
  int levels = 6;  // J

  double base() const { return 2.0 + static_cast<double>(r) / x; }
  double T(int j) const;
  double W(int j) const;
  // (sum_{j >= 0} W_j)^3
  double W_total() const;
  // (sum_{j <= J} W_j)^3
  double W_total_truncated() const;
  // Level of m, or -1 when |m| > T_J.
  int level_of(i64 m) const;
  // Integers of I_j in ascending order.
  std::vector<i64> members(int j) const;
  bool excluded(i64 m) const;  // m = -k mod r
};

DualSetup make_dual_setup(u64 r, double x, const Theta& theta, double delta = 0.1, int levels = 6);

enum class Quadrature { automatic, trapezoid, gauss_kronrod };

// int_R w(t/x) e((theta' - m/r) t) dt.
// trapezoid: periodic trapezoidal rule on [0, x]; w(s) e(xi s) extends to a
// smooth 1-periodic function when w is the bump, so the rule converges
// spectrally. gauss_kronrod: adaptive G-K on each oscillation period.
cplx f_infty_hat(i64 m, const DualSetup& setup, const WeightFunction& w, Quadrature method = Quadrature::automatic);

// Values for m = -m_max..m_max, entry m + m_max.
std::vector<cplx> f_infty_spectrum(const DualSetup& setup, const WeightFunction& w, i64 m_max,
                                   Quadrature method = Quadrature::automatic);

// ceil(100 (2 + r/x))
i64 default_truncation(const DualSetup& setup);

struct FourierEnvelope {
  double A = 0.0;
  double sup_ratio = 0.0;  // sup |f_hat| / (x (1 + x max(|m|-1,0)/r)^{-A})
  i64 argmax = 0;
  std::size_t samples = 0;
};

double fourier_envelope(const DualSetup& setup, i64 m, double A);
FourierEnvelope fourier_envelope_scan(const DualSetup& setup, const WeightFunction& w, double A,
                                      const std::vector<i64>& ms);

struct PoissonResidual {
  u64 label = 0;
  cplx lhs;
  cplx rhs;
  double residual = 0.0;
  i64 m_max = 0;
};

// |sum_n chi(n) e(n theta) w(n/x) - sum_{|m| <= M} f_hat_{r,chi}(m/r) f_hat_inf(m/r)|.
// Rejects non-smooth weights. The dual sum runs in ascending |m|.
PoissonResidual poisson_residual(const Character& chi, const DualSetup& setup, const WeightFunction& w, i64 m_max);
std::vector<PoissonResidual> poisson_residuals(const CharacterFamily& family, const DualSetup& setup,
                                               const WeightFunction& w, const std::vector<u64>& labels,
                                               i64 m_max);

struct PrincipalTail {
  cplx value;               // principal character: (r-1)/r sum_{m = -k mod r} f_hat_inf(m/r)
  double abs_value = 0.0;
  double envelope = 0.0;    // x^{1-A}/(r-1)
  double ratio = 0.0;       // abs_value / envelope
  double dominant_share = 0.0;  // |term at m = -k| / sum |terms|
  std::size_t terms = 0;
};

// Sum over m = -k mod r with |m| <= reach * r.
PrincipalTail principal_tail(const DualSetup& setup, const WeightFunction& w, double A, i64 reach = 10);
// The tail for an arbitrary character: zero unless chi is principal.
cplx tail_contribution(const Character& chi, const PrincipalTail& tail);

// Throws std::invalid_argument unless delta > 0, A > 1 and 3 delta + 4 < 4A.
void validate_dyadic(double delta, double A);

struct DyadicLevel {
  int j = 0;
  double T = 0.0;
  double W = 0.0;
  std::size_t size = 0;     // |I_j| after removing m = -k mod r
  double n4 = 0.0;          // N4(I_j), exact or T^2 + T^4/r surrogate
  bool n4_exact = false;
  double n4_over_surrogate = 0.0;
  double f_max = 0.0;       // max |f_hat_inf| on I_j
  double bound_term = 0.0;  // W_j^{-3} f_max^4 N4 / r^2
  double shape_term = 0.0;  // (x^4/r^2) 2^{3j delta} / (1 + (T_j x/r)^{4A} 1_{j>=1}) (T^2 + T^4/r)
};

struct M4Assembly {
  double delta = 0.0;
  double A = 0.0;
  std::vector<DyadicLevel> levels;
  double tail_fourth = 0.0;     // E|principal tail within |m| <= T_J|^4
  double bound_total = 0.0;     // 8 E|tail|^4 + 8 (sum W_j)^3 sum_j bound_term
  bool bound_rigorous = true;   // false when a level used the surrogate count
  double routed_fourth = -1.0;  // E|sum_{|m| <= T_J} ...|^4, when computed
  double measured_fourth = 0.0; // E|S|^4 from the family sums
  double shape_total = 0.0;     // (x^{1-A})^4 + sum_j shape_term
  double final_envelope = 0.0;  // x^2 (1 + 2x/r)^2
  double measured_over_shape = 0.0;
  double measured_over_final = 0.0;
};

struct AssemblyOptions {
  int levels = 6;
  std::size_t exact_limit = 2000;
  bool routed = true;
};

M4Assembly dyadic_m4_assembly(const CharacterFamily& family, double x, const Theta& theta, const WeightFunction& w,
                              double delta, double A, const AssemblyOptions& opts = {});

// x^2 (1 + 2x/r)^2
double final_envelope(double x, double r);
// sum_{j >= 0} 2^{-j rate}
double level_series(double rate);

}  // namespace mixsum
