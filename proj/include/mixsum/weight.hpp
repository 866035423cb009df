#pragma once

#include <memory>
#include <string>
#include <vector>

namespace mixsum {

// The cutoff w, supported in [0, 1].
//   bump:    exp(-1/(t(1-t))) on (0,1), smooth on R
//   flat:    1 on (0,1]
//   sampled: piecewise-linear through values at t = i/N, i = 0..N
class WeightFunction {
 public:
  enum class Kind { bump, flat, sampled };

  static WeightFunction bump();
  static WeightFunction flat();
  static WeightFunction sampled(std::vector<double> values);
  // "bump" or "flat".
  static WeightFunction parse(const std::string& name);

  double operator()(double t) const;

  Kind kind() const { return kind_; }
  std::string name() const;
  bool smooth() const { return kind_ == Kind::bump; }

  // Integrals over [0,1], computed once by adaptive Gauss-Kronrod.
  double l2_norm_squared() const { return l2_; }
  double integral() const { return l1_; }
  double sup() const { return sup_; }

 private:
  explicit WeightFunction(Kind kind, std::vector<double> samples = {});

  Kind kind_;
  std::shared_ptr<const std::vector<double>> samples_;
  double l2_ = 0.0;
  double l1_ = 0.0;
  double sup_ = 0.0;
};

}  // namespace mixsum
