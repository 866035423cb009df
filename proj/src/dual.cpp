#include "mixsum/dual.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mixsum/counting.hpp"
#include "mixsum/dft.hpp"
#include "mixsum/parallel.hpp"
#include "mixsum/sums.hpp"

namespace mixsum {

double DualSetup::T(int j) const { return std::ldexp(base(), j); }

double DualSetup::W(int j) const { return std::exp2(-j * delta); }

double level_series(double rate) { return 1.0 / (1.0 - std::exp2(-rate)); }

double DualSetup::W_total() const { return std::pow(level_series(delta), 3); }

double DualSetup::W_total_truncated() const {
  double s = 0.0;
  for (int j = 0; j <= levels; ++j) s += W(j);
  return s * s * s;
}

int DualSetup::level_of(i64 m) const {
  const double a = std::fabs(static_cast<double>(m));
  if (a <= base()) return 0;
  for (int j = 1; j <= levels; ++j)
    if (a <= T(j)) return j;
  return -1;
}

std::vector<i64> DualSetup::members(int j) const {
  std::vector<i64> out;
  if (j < 0 || j > levels) return out;
  const i64 hi = static_cast<i64>(std::floor(T(j)));
  if (j == 0) {
    for (i64 m = -hi; m <= hi; ++m) out.push_back(m);
    return out;
  }
  const i64 lo = static_cast<i64>(std::floor(T(j - 1)));  // |m| > T_{j-1}
  for (i64 m = -hi; m <= -lo - 1; ++m) out.push_back(m);
  for (i64 m = lo + 1; m <= hi; ++m) out.push_back(m);
  return out;
}

bool DualSetup::excluded(i64 m) const {
  return pos_mod(k + m, static_cast<i64>(r)) == 0;
}

DualSetup make_dual_setup(u64 r, double x, const Theta& theta, double delta, int levels) {
  if (!(x > 0.0)) throw std::invalid_argument("dual setup needs x > 0");
  if (!(delta > 0.0)) throw std::invalid_argument("dual setup needs delta > 0");
  if (levels < 0) throw std::invalid_argument("dual setup needs J >= 0");
  const ModularReduction red = reduce_mod_r(theta, r);
  DualSetup s{.r = r,
              .x = x,
              .theta = theta,
              .k = red.k,
              .theta_prime = red.theta_prime_value,
              .delta = delta,
              .levels = levels};
  return s;
}

namespace {

// xi = x (theta' - m/r), the frequency in turns over s in [0, 1].
double frequency(const DualSetup& s, i64 m) {
  return s.x * (s.theta_prime - static_cast<double>(m) / static_cast<double>(s.r));
}

std::size_t trapezoid_points(double max_xi) {
  return 2 * static_cast<std::size_t>(std::ceil(std::fabs(max_xi))) + 512;
}

std::vector<double> samples(const WeightFunction& w, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = w(static_cast<double>(i) / static_cast<double>(n));
  return v;
}

cplx trapezoid(const std::vector<double>& ws, double xi, double x) {
  const std::size_t n = ws.size();
  const double dn = static_cast<double>(n);
  CompensatedSum re, im;
  for (std::size_t i = 1; i < n; ++i) {
    if (ws[i] == 0.0) continue;
    double t = xi * static_cast<double>(i) / dn;
    t -= std::nearbyint(t);
    const cplx z = ws[i] * expi_turns(t);
    re.add(z.real());
    im.add(z.imag());
  }
  return cplx(re.value(), im.value()) * (x / dn);
}

cplx gauss_kronrod(const WeightFunction& w, double xi, double x) {
  using boost::math::quadrature::gauss_kronrod;
  const double a = std::fabs(xi);
  const std::size_t pieces = std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(a)));
  double re = 0.0, im = 0.0, err = 0.0;
  for (std::size_t p = 0; p < pieces; ++p) {
    const double lo = static_cast<double>(p) / static_cast<double>(pieces);
    const double hi = static_cast<double>(p + 1) / static_cast<double>(pieces);
    double e1 = 0.0, e2 = 0.0;
    re += gauss_kronrod<double, 31>::integrate(
        [&](double s) { return w(s) * std::cos(2.0 * M_PI * xi * s); }, lo, hi, 10, 1e-11, &e1);
    im += gauss_kronrod<double, 31>::integrate(
        [&](double s) { return w(s) * std::sin(2.0 * M_PI * xi * s); }, lo, hi, 10, 1e-11, &e2);
    err += e1 + e2;
  }
  if (err * x > 1e-8 * x)
    throw std::runtime_error("f_infty_hat: quadrature did not converge (error estimate " + std::to_string(err * x) +
                             ")");
  return cplx(re, im) * x;
}

bool use_trapezoid(const WeightFunction& w, Quadrature method) {
  if (method == Quadrature::trapezoid) {
    if (!w.smooth()) throw std::invalid_argument("trapezoid rule needs a smooth periodic weight");
    return true;
  }
  return method == Quadrature::automatic && w.smooth();
}

}  // namespace

cplx f_infty_hat(i64 m, const DualSetup& setup, const WeightFunction& w, Quadrature method) {
  const double xi = frequency(setup, m);
  if (use_trapezoid(w, method)) return trapezoid(samples(w, trapezoid_points(xi)), xi, setup.x);
  return gauss_kronrod(w, xi, setup.x);
}

std::vector<cplx> f_infty_spectrum(const DualSetup& setup, const WeightFunction& w, i64 m_max, Quadrature method) {
  if (m_max < 0) throw std::invalid_argument("m_max must be >= 0");
  std::vector<cplx> out(static_cast<std::size_t>(2 * m_max + 1));
  if (use_trapezoid(w, method)) {
    const double top = std::max(std::fabs(frequency(setup, -m_max)), std::fabs(frequency(setup, m_max)));
    const std::vector<double> ws = samples(w, trapezoid_points(top));
    parallel_for(out.size(), [&](std::size_t i) {
      out[i] = trapezoid(ws, frequency(setup, static_cast<i64>(i) - m_max), setup.x);
    });
  } else {
    parallel_for(out.size(), [&](std::size_t i) {
      out[i] = gauss_kronrod(w, frequency(setup, static_cast<i64>(i) - m_max), setup.x);
    });
  }
  return out;
}

i64 default_truncation(const DualSetup& setup) { return static_cast<i64>(std::ceil(100.0 * setup.base())); }

double fourier_envelope(const DualSetup& setup, i64 m, double A) {
  const double am = static_cast<double>(std::max<i64>(std::llabs(m) - 1, 0));
  return setup.x * std::pow(1.0 + setup.x * am / static_cast<double>(setup.r), -A);
}

FourierEnvelope fourier_envelope_scan(const DualSetup& setup, const WeightFunction& w, double A,
                                      const std::vector<i64>& ms) {
  FourierEnvelope out;
  out.A = A;
  out.samples = ms.size();
  if (ms.empty()) return out;
  i64 top = 0;
  for (i64 m : ms) top = std::max<i64>(top, std::llabs(m));
  std::vector<double> ratio(ms.size());
  if (w.smooth()) {
    const double xi = std::max(std::fabs(frequency(setup, -top)), std::fabs(frequency(setup, top)));
    const std::vector<double> ws = samples(w, trapezoid_points(xi));
    parallel_for(ms.size(), [&](std::size_t i) {
      ratio[i] = std::abs(trapezoid(ws, frequency(setup, ms[i]), setup.x)) / fourier_envelope(setup, ms[i], A);
    });
  } else {
    parallel_for(ms.size(), [&](std::size_t i) {
      ratio[i] = std::abs(gauss_kronrod(w, frequency(setup, ms[i]), setup.x)) / fourier_envelope(setup, ms[i], A);
    });
  }
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (ratio[i] > out.sup_ratio) {
      out.sup_ratio = ratio[i];
      out.argmax = ms[i];
    }
  }
  return out;
}

namespace {

PoissonResidual residual_from_spectrum(const Character& chi, const DualSetup& setup, const WeightFunction& w,
                                       i64 m_max, const std::vector<cplx>& spec) {
  const u64 r = setup.r;
  std::vector<cplx> table;
  if (static_cast<u64>(2 * m_max + 1) >= r) table = dual_coefficient_table(chi);
  auto coef = [&](i64 m) {
    if (!table.empty()) return table[static_cast<std::size_t>(pos_mod(setup.k + m, static_cast<i64>(r)))];
    return dual_coefficient(chi, m, setup.k);
  };
  cplx rhs = coef(0) * spec[static_cast<std::size_t>(m_max)];
  for (i64 a = 1; a <= m_max; ++a) {
    rhs += coef(a) * spec[static_cast<std::size_t>(m_max + a)];
    rhs += coef(-a) * spec[static_cast<std::size_t>(m_max - a)];
  }
  PoissonResidual out;
  out.label = chi.label();
  out.lhs = mixed_sum_direct(chi, setup.x, setup.theta, w);
  out.rhs = rhs;
  out.residual = std::abs(out.lhs - rhs);
  out.m_max = m_max;
  return out;
}

void require_smooth(const WeightFunction& w) {
  if (!w.smooth())
    throw std::invalid_argument("poisson_residual needs a smooth weight; '" + w.name() + "' is not smooth");
}

}  // namespace

PoissonResidual poisson_residual(const Character& chi, const DualSetup& setup, const WeightFunction& w, i64 m_max) {
  require_smooth(w);
  if (static_cast<double>(m_max) < static_cast<double>(setup.r) / setup.x)
    throw std::invalid_argument("poisson_residual needs M_max >= r/x");
  return residual_from_spectrum(chi, setup, w, m_max, f_infty_spectrum(setup, w, m_max));
}

std::vector<PoissonResidual> poisson_residuals(const CharacterFamily& family, const DualSetup& setup,
                                               const WeightFunction& w, const std::vector<u64>& labels,
                                               i64 m_max) {
  require_smooth(w);
  if (static_cast<double>(m_max) < static_cast<double>(setup.r) / setup.x)
    throw std::invalid_argument("poisson_residual needs M_max >= r/x");
  const std::vector<cplx> spec = f_infty_spectrum(setup, w, m_max);
  std::vector<PoissonResidual> out(labels.size());
  parallel_for(labels.size(), [&](std::size_t i) {
    out[i] = residual_from_spectrum(Character(family, labels[i]), setup, w, m_max, spec);
  });
  return out;
}

PrincipalTail principal_tail(const DualSetup& setup, const WeightFunction& w, double A, i64 reach) {
  if (!(A > 1.0)) throw std::invalid_argument("principal_tail needs A > 1");
  const i64 r = static_cast<i64>(setup.r);
  const i64 limit = reach * r;
  const i64 spec_max = limit;
  const std::vector<cplx> spec = f_infty_spectrum(setup, w, spec_max);
  // m = -k mod r, ordered by |m|
  std::vector<i64> ms;
  for (i64 m = -limit; m <= limit; ++m)
    if (setup.excluded(m)) ms.push_back(m);
  std::stable_sort(ms.begin(), ms.end(), [](i64 a, i64 b) { return std::llabs(a) < std::llabs(b); });
  PrincipalTail out;
  cplx sum = 0.0;
  double abs_sum = 0.0, lead = 0.0;
  for (i64 m : ms) {
    const cplx f = spec[static_cast<std::size_t>(m + spec_max)];
    sum += f;
    abs_sum += std::abs(f);
    if (m == -setup.k) lead = std::abs(f);
  }
  out.terms = ms.size();
  out.value = sum * (static_cast<double>(r - 1) / static_cast<double>(r));
  out.abs_value = std::abs(out.value);
  out.envelope = std::pow(setup.x, 1.0 - A) / static_cast<double>(r - 1);
  out.ratio = out.abs_value / out.envelope;
  out.dominant_share = abs_sum > 0.0 ? lead / abs_sum : 1.0;
  return out;
}

cplx tail_contribution(const Character& chi, const PrincipalTail& tail) {
  return chi.is_principal() ? tail.value : cplx(0.0, 0.0);
}

void validate_dyadic(double delta, double A) {
  if (!(3.0 * delta + 4.0 < 4.0 * A))
    throw std::invalid_argument("convergence condition 3*delta+4 < 4*A fails for delta=" + std::to_string(delta) +
                                ", A=" + std::to_string(A));
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  if (!(A > 1.0)) throw std::invalid_argument("A must be > 1");
}

double final_envelope(double x, double r) {
  const double f = 1.0 + 2.0 * x / r;
  return x * x * f * f;
}

M4Assembly dyadic_m4_assembly(const CharacterFamily& family, double x, const Theta& theta, const WeightFunction& w,
                              double delta, double A, const AssemblyOptions& opts) {
  validate_dyadic(delta, A);
  const DualSetup setup = make_dual_setup(family.prime(), x, theta, delta, opts.levels);
  const u64 r = setup.r;
  const double rd = static_cast<double>(r);
  const i64 top = static_cast<i64>(std::floor(setup.T(opts.levels)));
  const std::vector<cplx> spec = f_infty_spectrum(setup, w, top);
  auto F = [&](i64 m) { return spec[static_cast<std::size_t>(m + top)]; };

  M4Assembly out;
  out.delta = delta;
  out.A = A;
  double level_sum = 0.0;
  for (int j = 0; j <= opts.levels; ++j) {
    DyadicLevel lv;
    lv.j = j;
    lv.T = setup.T(j);
    lv.W = setup.W(j);
    std::vector<i64> kept;
    for (i64 m : setup.members(j))
      if (!setup.excluded(m)) kept.push_back(m);
    lv.size = kept.size();
    for (i64 m : kept) lv.f_max = std::max(lv.f_max, std::abs(F(m)));
    const double surrogate = lv.T * lv.T + std::pow(lv.T, 4) / rd;
    if (kept.size() <= opts.exact_limit) {
      lv.n4 = static_cast<double>(count_N4(kept, setup.k, r).count);
      lv.n4_exact = true;
    } else {
      lv.n4 = surrogate;
      out.bound_rigorous = false;
    }
    lv.n4_over_surrogate = lv.n4 / surrogate;
    lv.bound_term = std::pow(lv.W, -3) * std::pow(lv.f_max, 4) * lv.n4 / (rd * rd);
    const double damp = j >= 1 ? std::pow(lv.T * x / rd, 4.0 * A) : 0.0;
    lv.shape_term = std::pow(x, 4) / (rd * rd) * std::exp2(3.0 * j * delta) / (1.0 + damp) * surrogate;
    level_sum += lv.bound_term;
    out.shape_total += lv.shape_term;
    out.levels.push_back(lv);
  }

  cplx tail = 0.0;
  for (i64 m = -top; m <= top; ++m)
    if (setup.excluded(m)) tail += F(m);
  tail *= (rd - 1.0) / rd;
  out.tail_fourth = std::pow(std::abs(tail), 4) / (rd - 1.0);
  out.bound_total = 8.0 * out.tail_fourth + 8.0 * setup.W_total_truncated() * level_sum;
  out.shape_total += std::pow(x, 4.0 * (1.0 - A));
  out.final_envelope = final_envelope(x, rd);

  const FamilySums fs = family_sums(family, x, theta, w, FamilyMethod::dft);
  out.measured_fourth = power_moment(fs, 4.0);
  out.measured_over_shape = out.measured_fourth / out.shape_total;
  out.measured_over_final = out.measured_fourth / out.final_envelope;

  if (opts.routed) {
    // sum_m conj(chi_j(k+m)) F(m) for every j at once: bucket by ind(k+m),
    // then one transform; dual coefficients are conj(chi(u)) tau(chi)/r.
    const u64 n = family.size();
    const PrimeModulus& pm = family.modulus();
    std::vector<cplx> bucket(n, 0.0), roots(n);
    for (i64 m = -top; m <= top; ++m)
      if (!setup.excluded(m)) bucket[pm.index(setup.k + m)] += F(m);
    for (u64 t = 0; t < n; ++t) roots[t] = family.additive_root(pm.power(t));
    const std::vector<cplx> twisted = dft(bucket, -1);
    const std::vector<cplx> tau = dft(roots, +1);
    double acc = 0.0;
    for (u64 j = 0; j < n; ++j) {
      cplx v = tau[j] / rd * twisted[j];
      if (j == 0) v += tail;
      acc += std::pow(std::abs(v), 4);
    }
    out.routed_fourth = acc / static_cast<double>(n);
  }
  return out;
}

}  // namespace mixsum
