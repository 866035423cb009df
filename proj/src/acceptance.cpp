#include "mixsum/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace mixsum {

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
  json data = json::object();
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string fmt(double v, int prec = 4) {
  std::ostringstream s;
  s.precision(prec);
  s << v;
  return s.str();
}

Outcome second_moment() {
  Outcome o;
  const Theta theta = Theta::parse("sqrt:2");
  const WeightFunction w = WeightFunction::bump();
  double worst = 0.0;
  for (auto [r, x] : {std::pair<u64, double>{101, 60}, {1009, 500}, {10007, 9000}}) {
    const CharacterFamily fam(r);
    const MomentReport m = moments(family_sums(fam, x, theta, w), w);
    worst = std::max(worst, m.second_relative_error);
    o.data[std::to_string(r)] = m.second_relative_error;
  }
  o.passed = worst < limits::second_moment_rel;
  o.detail = "max relative error " + fmt(worst) + " (limit " + fmt(limits::second_moment_rel) + ")";
  return o;
}

Outcome poisson() {
  Outcome o;
  const Theta theta = Theta::parse("sqrt:2");
  const WeightFunction w = WeightFunction::bump();
  double worst = 0.0;
  std::size_t checked = 0;
  auto run = [&](u64 r, double x, std::vector<u64> labels) {
    const CharacterFamily fam(r);
    const DualSetup setup = make_dual_setup(r, x, theta);
    const auto res = poisson_residuals(fam, setup, w, labels, default_truncation(setup));
    double local = 0.0;
    for (const auto& p : res) local = std::max(local, p.residual / std::sqrt(x));
    worst = std::max(worst, local);
    checked += res.size();
    o.data[std::to_string(r)] = json{{"max_residual_over_sqrt_x", local}, {"characters", res.size()},
                                     {"m_max", default_truncation(setup)}};
  };
  std::vector<u64> all(100);
  for (u64 j = 0; j < 100; ++j) all[j] = j;
  run(101, 60, all);
  std::mt19937_64 rng(20240101);
  std::set<u64> pick;
  while (pick.size() < 20) pick.insert(rng() % 1008);
  run(1009, 500, std::vector<u64>(pick.begin(), pick.end()));
  o.passed = worst <= limits::poisson_per_sqrt_x;
  o.detail = std::to_string(checked) + " characters, max residual/sqrt(x) " + fmt(worst);
  return o;
}

Outcome bridge() {
  Outcome o;
  const Theta theta = Theta::parse("sqrt:2");
  const WeightFunction w = WeightFunction::flat();
  const u64 r = 10007;
  const i64 x = 90;
  const CharacterFamily fam(r);
  const double fourth = power_moment(family_sums(fam, static_cast<double>(x), theta, w), 4.0);
  const double diag = static_cast<double>(diagonal_count(x));
  const cplx off = offdiag_sum(x, theta);
  const double err = std::fabs(fourth - diag - off.real()) + std::fabs(off.imag());
  o.passed = err <= limits::bridge_abs;
  o.data = json{{"fourth", fourth}, {"diagonal", diag}, {"offdiag", off.real()}, {"abs_error", err}};
  o.detail = "E|S|^4 = " + fmt(fourth, 12) + ", diagonal + offdiag = " + fmt(diag + off.real(), 12) + ", error " +
             fmt(err);
  return o;
}

Outcome injection() {
  Outcome o;
  std::set<std::tuple<i64, i64, i64, i64, i64>> seen;
  u64 surface = 0, collisions = 0, total = 0;
  for (i64 m1 = -12; m1 <= 12; ++m1)
    for (i64 m2 = -12; m2 <= 12; ++m2)
      for (i64 n1 = -12; n1 <= 12; ++n1)
        for (i64 n2 = -12; n2 <= 12; ++n2) {
          const DiophantineTuple t = injection_phi(m1, m2, n1, n2);
          ++total;
          if (!t.on_surface()) ++surface;
          if (!seen.emplace(t.S, t.P, t.a, t.b, t.c).second) ++collisions;
        }
  o.passed = surface == 0 && collisions == 0;
  o.data = json{{"quadruples", total}, {"surface_violations", surface}, {"fiber_collisions", collisions}};
  o.detail = std::to_string(total) + " quadruples, " + std::to_string(surface) + " off-surface, " +
             std::to_string(collisions) + " collisions";
  return o;
}

Outcome point_counting() {
  Outcome o;
  u64 mismatches = 0, bound_fail = 0, crt_fail = 0, cases = 0;
  std::vector<std::vector<u64>> table(301);
  for (i64 q = 1; q <= 300; ++q) {
    std::vector<u64> brute(static_cast<std::size_t>(q), 0);
    for (i64 a = 0; a < q; ++a)
      for (i64 b = 0; b < q; ++b) ++brute[static_cast<std::size_t>((a * b) % q)];
    table[q].resize(static_cast<std::size_t>(q));
    for (i64 d = 0; d < q; ++d) {
      const CountReport c = count_N(d, q);
      table[q][d] = c.count;
      ++cases;
      if (c.count != brute[static_cast<std::size_t>(d)]) ++mismatches;
      if (static_cast<double>(c.count) > c.bound) ++bound_fail;
    }
  }
  u64 crt_cases = 0;
  for (i64 q1 = 2; q1 <= 300; ++q1)
    for (i64 q2 = q1 + 1; q1 * q2 <= 300; ++q2) {
      if (std::gcd(q1, q2) != 1) continue;
      for (i64 d = 0; d < q1 * q2; ++d) {
        ++crt_cases;
        if (table[q1 * q2][d] != table[q1][d % q1] * table[q2][d % q2]) ++crt_fail;
      }
    }
  o.passed = mismatches == 0 && bound_fail == 0 && crt_fail == 0;
  o.data = json{{"cases", cases}, {"mismatches", mismatches}, {"bound_failures", bound_fail},
                {"crt_cases", crt_cases}, {"crt_failures", crt_fail}};
  o.detail = std::to_string(cases) + " (d,q) pairs: " + std::to_string(mismatches) + " mismatches, " +
             std::to_string(bound_fail) + " bound failures; " + std::to_string(crt_cases) + " CRT cases, " +
             std::to_string(crt_fail) + " failures";
  return o;
}

Outcome pigeonhole() {
  Outcome o;
  const Theta theta = Theta::parse("sqrt:2");
  double worst = 0.0;
  bool witness_ok = true;
  std::vector<std::string> notes;
  for (u64 r : {1009ULL, 10007ULL, 100003ULL}) {
    const i64 M = static_cast<i64>(r / 100);
    const i64 N = M / 2;
    const ModularReduction red = reduce_mod_r(theta, r);
    const PigeonholeReport rep = pigeonhole_count(N, M, red.k, r, limits::pigeonhole_c, red.theta_prime_value);
    const double ratio = rep.report.ratio;
    worst = std::max(worst, ratio);
    json entry{{"k", red.k}, {"N", N}, {"M", M}, {"count", rep.report.count}, {"bound", rep.report.bound},
               {"ratio", ratio}};
    if (rep.pair) {
      const bool ok = rep.pair->error <= rep.pair->limit;
      witness_ok = witness_ok && ok;
      entry["witness"] = json{{"q", rep.pair->q}, {"d", rep.pair->d}, {"a", rep.pair->a},
                              {"error", rep.pair->error}, {"limit", rep.pair->limit}};
      notes.push_back("r=" + std::to_string(r) + " q=" + std::to_string(rep.pair->q) + " error " +
                      fmt(rep.pair->error) + " <= " + fmt(rep.pair->limit));
    } else {
      entry["witness"] = nullptr;
      notes.push_back("r=" + std::to_string(r) + " no witness");
    }
    o.data[std::to_string(r)] = entry;
  }
  o.passed = worst <= limits::pigeonhole_K && witness_ok;
  o.detail = "max count/bound " + fmt(worst) + " (K = " + fmt(limits::pigeonhole_K) + "), witnesses " +
             (witness_ok ? "ok" : "FAIL") + " (" + join(notes, ", ") + ")";
  return o;
}

Outcome clean_counting() {
  Outcome o;
  const Theta theta = Theta::parse("sqrt:2");
  const std::vector<i64> Ts{50, 100, 200};
  const std::vector<u64> rs{1009, 10007, 100003};
  std::map<std::pair<std::size_t, std::size_t>, double> ratio;
  double worst = 0.0;
  for (std::size_t b = 0; b < rs.size(); ++b) {
    const i64 k = reduce_mod_r(theta, rs[b]).k;
    for (std::size_t a = 0; a < Ts.size(); ++a) {
      const CleanCountReport rep = clean_counting_harness(Ts[a], rs[b], k);
      ratio[{a, b}] = rep.total.ratio;
      worst = std::max(worst, rep.total.ratio);
      o.data["T=" + std::to_string(Ts[a]) + ",r=" + std::to_string(rs[b])] =
          json{{"count", rep.total.count}, {"bound", rep.total.bound}, {"ratio", rep.total.ratio}};
    }
  }
  double growth = 0.0;
  for (std::size_t a = 0; a < Ts.size(); ++a)
    for (std::size_t b = 0; b < rs.size(); ++b) {
      if (a + 1 < Ts.size()) growth = std::max(growth, ratio[{a + 1, b}] / ratio[{a, b}]);
      if (b + 1 < rs.size()) growth = std::max(growth, ratio[{a, b + 1}] / ratio[{a, b}]);
    }
  o.passed = worst <= limits::clean_K && growth <= limits::clean_growth;
  o.data["max_ratio"] = worst;
  o.data["max_adjacent_growth"] = growth;
  o.detail = "max ratio " + fmt(worst) + " (K = " + fmt(limits::clean_K) + "), max adjacent growth " + fmt(growth) +
             " (limit " + fmt(limits::clean_growth) + ")";
  return o;
}

Outcome ratio_stability() {
  Outcome o;
  const Theta theta = Theta::parse("sqrt:2");
  const Theta third = Theta::parse("rat:1/3");
  const WeightFunction w = WeightFunction::bump();
  double lo = 1.0, hi = 0.0;
  bool contrast = true;
  for (u64 r : {1009ULL, 10007ULL, 100003ULL}) {
    const CharacterFamily fam(r);
    const double rd = static_cast<double>(r);
    const double x06 = std::ceil(std::pow(rd, 0.6));
    const std::vector<double> xs{x06, 2.0 * std::ceil(std::sqrt(rd)), std::ceil(rd / 2.0), rd};
    json row = json::object();
    for (double x : xs) {
      const double v = moments(family_sums(fam, x, theta, w), w).first_over_sqrt_second;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      row[format_double(x)] = v;
    }
    const double c_small = moments(family_sums(fam, x06, third, w), w).first_over_sqrt_second;
    const double c_large = moments(family_sums(fam, rd, third, w), w).first_over_sqrt_second;
    contrast = contrast && c_large < c_small;
    o.data[std::to_string(r)] = json{{"sqrt2", row}, {"third_small_x", c_small}, {"third_x_eq_r", c_large}};
  }
  o.passed = lo >= limits::ratio_low && hi <= limits::ratio_high && contrast;
  o.detail = "ratio range [" + fmt(lo) + ", " + fmt(hi) + "], theta=1/3 contrast " +
             (contrast ? "decreasing" : "NOT decreasing");
  return o;
}

Outcome shortsum_checks() {
  Outcome o;
  const Theta theta = Theta::parse("sqrt:2");
  double worst = 0.0;
  for (i64 x : {16, 64, 256}) {
    const CaseDecomposition d = case_decomposition(x, theta);
    worst = std::max(worst, d.relative_error);
    o.data["x=" + std::to_string(x)] = d.relative_error;
  }
  const OffdiagTable brute = offdiag_brute_table(300, theta);
  const OffdiagTable param = offdiag_param_table(300, theta);
  u64 count_mismatch = 0;
  double value_err = 0.0;
  for (std::size_t x = 0; x <= 300; ++x) {
    if (brute.count[x] != param.count[x]) ++count_mismatch;
    const double scale = std::max<double>(1.0, static_cast<double>(brute.count[x]));
    value_err = std::max(value_err, std::abs(brute.value[x] - param.value[x]) / scale);
  }
  o.passed = worst <= limits::shortsum_rel && count_mismatch == 0 && value_err <= limits::shortsum_rel;
  o.data["count_mismatches"] = count_mismatch;
  o.data["max_value_error"] = value_err;
  o.detail = "inclusion-exclusion max rel error " + fmt(worst) + "; x<=300: " + std::to_string(count_mismatch) +
             " count mismatches, max value error " + fmt(value_err);
  return o;
}

Outcome dyadic() {
  Outcome o;
  const DyadicTail z = dyadic_tail(0, 100000);
  const double zeta2 = M_PI * M_PI / 6.0;
  const bool z_ok = z.lower <= zeta2 && zeta2 <= z.upper && z.upper - z.lower <= limits::zeta2_abs &&
                    std::fabs(0.5 * (z.lower + z.upper) - zeta2) <= limits::zeta2_abs;
  double worst = 0.0;
  i64 argmax = 0;
  for (i64 s = -5; s <= 50; ++s) {
    const DyadicTail d = dyadic_tail(s, 100000);
    if (d.ratio > worst) {
      worst = d.ratio;
      argmax = s;
    }
  }
  o.passed = z_ok && worst <= limits::dyadic_ratio;
  o.data = json{{"D0_lower", z.lower}, {"D0_upper", z.upper}, {"max_ratio", worst}, {"argmax_s", argmax}};
  o.detail = "D(0) in [" + fmt(z.lower, 10) + ", " + fmt(z.upper, 10) + "], max D(s)/max(1,s) " + fmt(worst) +
             " at s=" + std::to_string(argmax);
  return o;
}

struct Entry {
  const char* name;
  double limit;
  Outcome (*fn)();
};

const Entry entries[criterion_count] = {
    {"second-moment exactness", 5.0, second_moment},
    {"poisson identity", 30.0, poisson},
    {"fourth-moment congruence bridge", 10.0, bridge},
    {"injection", 5.0, injection},
    {"point counting", 20.0, point_counting},
    {"pigeonhole", 5.0, pigeonhole},
    {"clean-counting harness", 120.0, clean_counting},
    {"ratio stability", 180.0, ratio_stability},
    {"short-sum decomposition", 60.0, shortsum_checks},
    {"dyadic numerics", 1.0, dyadic},
};

}  // namespace

CriterionResult run_criterion(int id) {
  CriterionResult res;
  res.id = id;
  if (id < 1 || id > criterion_count) {
    res.name = "unknown";
    res.detail = "no criterion " + std::to_string(id);
    return res;
  }
  const Entry& e = entries[id - 1];
  res.name = e.name;
  res.time_limit = e.limit;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Outcome o = e.fn();
    res.passed = o.passed;
    res.detail = o.detail;
    res.data = std::move(o.data);
  } catch (const std::exception& ex) {
    res.passed = false;
    res.detail = std::string("exception: ") + ex.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (res.seconds > res.time_limit) {
    res.passed = false;
    res.detail += "; runtime " + fmt(res.seconds) + " s over the " + fmt(res.time_limit) + " s limit";
  }
  return res;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  if (ids.empty()) {
    for (int i = 1; i <= criterion_count; ++i) out.push_back(run_criterion(i));
  } else {
    for (int i : ids) out.push_back(run_criterion(i));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.passed ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name << ": " << r.detail << " (" << fmt(r.seconds, 3)
    << " s)";
  return s.str();
}

}  // namespace mixsum
