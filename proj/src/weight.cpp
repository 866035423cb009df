#include "mixsum/weight.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace mixsum {

namespace {

double bump_value(double t) {
  if (!(t > 0.0 && t < 1.0)) return 0.0;
  return std::exp(-1.0 / (t * (1.0 - t)));
}

template <class F>
double integrate_unit(F f) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const double v = gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 20, 1e-14, &error);
  if (error > 1e-12 * std::max(1.0, std::fabs(v))) {
    throw std::runtime_error("WeightFunction: quadrature did not reach 1e-12");
  }
  return v;
}

}  // namespace

WeightFunction::WeightFunction(Kind kind, std::vector<double> samples)
    : kind_(kind), samples_(std::make_shared<const std::vector<double>>(std::move(samples))) {
  switch (kind_) {
    case Kind::bump:
      l2_ = integrate_unit([](double t) { return bump_value(t) * bump_value(t); });
      l1_ = integrate_unit([](double t) { return bump_value(t); });
      sup_ = std::exp(-4.0);
      break;
    case Kind::flat:
      l2_ = 1.0;
      l1_ = 1.0;
      sup_ = 1.0;
      break;
    case Kind::sampled: {
      const auto& v = *samples_;
      const double h = 1.0 / static_cast<double>(v.size() - 1);
      // exact integrals of the piecewise-linear interpolant
      for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        l1_ += 0.5 * h * (v[i] + v[i + 1]);
        l2_ += h * (v[i] * v[i] + v[i] * v[i + 1] + v[i + 1] * v[i + 1]) / 3.0;
      }
      for (double s : v) sup_ = std::max(sup_, std::fabs(s));
      break;
    }
  }
  if (!(l2_ > 0.0)) throw std::invalid_argument("WeightFunction: integral of w^2 must be positive");
}

WeightFunction WeightFunction::bump() { return WeightFunction(Kind::bump); }
WeightFunction WeightFunction::flat() { return WeightFunction(Kind::flat); }

WeightFunction WeightFunction::sampled(std::vector<double> values) {
  if (values.size() < 2) throw std::invalid_argument("WeightFunction: need at least two samples");
  return WeightFunction(Kind::sampled, std::move(values));
}

WeightFunction WeightFunction::parse(const std::string& name) {
  if (name == "bump") return bump();
  if (name == "flat") return flat();
  throw std::invalid_argument("unknown weight '" + name + "' (expected bump or flat)");
}

double WeightFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::bump: return bump_value(t);
    case Kind::flat: return (t > 0.0 && t <= 1.0) ? 1.0 : 0.0;
    case Kind::sampled: {
      if (!(t >= 0.0 && t <= 1.0)) return 0.0;
      const auto& v = *samples_;
      const double pos = t * static_cast<double>(v.size() - 1);
      const auto i = std::min(static_cast<std::size_t>(pos), v.size() - 2);
      const double frac = pos - static_cast<double>(i);
      return v[i] + frac * (v[i + 1] - v[i]);
    }
  }
  return 0.0;
}

std::string WeightFunction::name() const {
  switch (kind_) {
    case Kind::bump: return "bump";
    case Kind::flat: return "flat";
    case Kind::sampled: return "sampled";
  }
  return "?";
}

}  // namespace mixsum
