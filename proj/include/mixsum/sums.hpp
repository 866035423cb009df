#pragma once

#include <complex>
#include <string>
#include <vector>

#include "mixsum/characters.hpp"
#include "mixsum/diophantine.hpp"
#include "mixsum/weight.hpp"

namespace mixsum {

// sum_{1 <= n <= x} chi(n) e(n theta) w(n/x), summed in ascending n.
cplx mixed_sum_direct(const Character& chi, double x, const Theta& theta, const WeightFunction& w);

enum class FamilyMethod { direct, dft };

// S(chi_j) for every character j = 0..r-2 at fixed (r, x, theta, w).
struct FamilySums {
  u64 r = 0;
  double x = 0.0;
  std::string theta;
  std::string weight;
  FamilyMethod method = FamilyMethod::dft;
  std::vector<cplx> values;
  std::vector<std::string> warnings;
};

// The dft path buckets A_t = sum_{ind(n) = t} e(n theta) w(n/x) and applies a
// length-(r-1) transform; the direct path evaluates every character separately.
FamilySums family_sums(const CharacterFamily& family, double x, const Theta& theta, const WeightFunction& w,
                       FamilyMethod method = FamilyMethod::dft);

struct MomentReport {
  double first = 0.0;   // E|S|
  double second = 0.0;  // E|S|^2
  double fourth = 0.0;  // E|S|^4
  double first_over_sqrt_x = 0.0;
  double second_over_x = 0.0;
  double fourth_over_x2 = 0.0;
  double first_over_sqrt_second = 0.0;
  // sum_{n <= min(x, r-1)} w(n/x)^2, the exact value of E|S|^2 when x < r+1
  double second_reference = 0.0;
  double second_relative_error = 0.0;
  bool cauchy_schwarz = true;  // (E|S|)^2 <= E|S|^2
  bool holder = true;          // E|S|^2 <= (E|S|)^{2/3} (E|S|^4)^{1/3}
};

// Averages over all r-1 characters, principal included.
MomentReport moments(const FamilySums& fs, const WeightFunction& w);
double power_moment(const FamilySums& fs, double p);

struct GeometricSum {
  cplx direct;
  cplx closed;  // e(a)(1 - e(y a)) / (1 - e(a)); equals direct when ||a|| = 0
  bool closed_form_used = false;
  double agreement = 0.0;  // |direct - closed|
  double bound = 0.0;      // min(y, 1/(2||a||))
  double ratio = 0.0;      // |sum| / bound
};

// alpha in turns.
GeometricSum geometric_sum(i64 y, double alpha);

struct DistributionProbe {
  double mean_abs = 0.0;     // E|Z|, reference sqrt(pi)/2
  double mean_sq = 0.0;      // E|Z|^2, identically 1
  double mean_fourth = 0.0;  // E|Z|^4, reference 2
  cplx mean;                 // E Z
  cplx mean_square;          // E Z^2
  double ks_exponential = 0.0;  // KS distance of |Z|^2 against Exp(1)
  static constexpr double reference_abs = 0.88622692545275801364;
  static constexpr double reference_fourth = 2.0;
};

// Z = S / sqrt(E|S|^2) over the family.
DistributionProbe distribution_probe(const FamilySums& fs);

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace mixsum
