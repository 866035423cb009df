#include "mixsum/characters.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mixsum {

cplx expi_turns(double t) {
  t -= std::nearbyint(t);
  const double a = 2.0 * std::numbers::pi * t;
  return {std::cos(a), std::sin(a)};
}

namespace {

std::vector<cplx> roots_of_unity(u64 n) {
  std::vector<cplx> roots(n);
  for (u64 t = 0; t < n; ++t) {
    // Reduce to (-n/2, n/2] before dividing so the angle is as small as possible.
    const double s = (2 * t > n) ? -static_cast<double>(n - t) : static_cast<double>(t);
    roots[t] = expi_turns(s / static_cast<double>(n));
  }
  return roots;
}

}  // namespace

CharacterFamily::CharacterFamily(u64 r)
    : modulus_(r), unit_roots_(roots_of_unity(r - 1)), additive_roots_(roots_of_unity(r)) {}

cplx CharacterFamily::value(u64 label, i64 n) const {
  const u64 r = prime();
  const auto u = static_cast<u64>(pos_mod(n, static_cast<i64>(r)));
  if (u == 0) return {0.0, 0.0};
  const u64 ind = modulus_.index_table()[u - 1];
  return unit_roots_[mul_mod(label, ind, r - 1)];
}

Character::Character(const CharacterFamily& family, u64 label) : family_(&family), label_(label) {
  if (label >= family.size()) throw std::out_of_range("Character: label out of range");
}

cplx character_value(const Character& chi, i64 n) { return chi(n); }

GaussData gauss_sum(const Character& chi) {
  const auto& fam = chi.family();
  const u64 r = fam.prime();
  cplx tau{0.0, 0.0};
  for (u64 t = 1; t < r; ++t) tau += chi(static_cast<i64>(t)) * fam.additive_root(t);
  return {chi.label(), tau, tau / std::sqrt(static_cast<double>(r))};
}

namespace {

cplx dual_coefficient_residue(const Character& chi, u64 u) {
  const auto& fam = chi.family();
  const u64 r = fam.prime();
  if (u == 0) {
    return chi.is_principal() ? cplx{static_cast<double>(r - 1) / static_cast<double>(r), 0.0} : cplx{0.0, 0.0};
  }
  cplx acc{0.0, 0.0};
  u64 phase = u;  // u*t mod r, advanced incrementally
  for (u64 t = 1; t < r; ++t) {
    acc += chi(static_cast<i64>(t)) * fam.additive_root(phase);
    phase += u;
    if (phase >= r) phase -= r;
  }
  return acc / static_cast<double>(r);
}

}  // namespace

cplx dual_coefficient(const Character& chi, i64 m, i64 k) {
  const auto r = static_cast<i64>(chi.prime());
  return dual_coefficient_residue(chi, static_cast<u64>(pos_mod(pos_mod(k, r) + pos_mod(m, r), r)));
}

std::vector<cplx> dual_coefficient_table(const Character& chi) {
  const u64 r = chi.prime();
  std::vector<cplx> table(r);
  for (u64 u = 0; u < r; ++u) table[u] = dual_coefficient_residue(chi, u);
  return table;
}

}  // namespace mixsum
