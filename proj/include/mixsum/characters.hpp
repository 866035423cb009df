#pragma once

#include <complex>
#include <vector>

#include "mixsum/arith.hpp"

namespace mixsum {

using cplx = std::complex<double>;

// e(t) = exp(2 pi i t), with t given in turns.
cplx expi_turns(double t);

// The r-1 Dirichlet characters modulo a prime r, labelled by j in [0, r-2]
// via chi_j(n) = e(j ind(n) / (r-1)). Roots of unity of order r-1 and r are
// tabulated once, so every character value is a table lookup.
class CharacterFamily {
 public:
  explicit CharacterFamily(u64 r);

  const PrimeModulus& modulus() const { return modulus_; }
  u64 prime() const { return modulus_.prime(); }
  u64 size() const { return modulus_.order(); }

  cplx value(u64 label, i64 n) const;
  // e(t/(r-1)) and e(t/r) for t already reduced.
  const cplx& unit_root(u64 t) const { return unit_roots_[t]; }
  const cplx& additive_root(u64 t) const { return additive_roots_[t]; }

 private:
  PrimeModulus modulus_;
  std::vector<cplx> unit_roots_;
  std::vector<cplx> additive_roots_;
};

// A single character; holds a non-owning pointer to its family, which must
// outlive it.
class Character {
 public:
  Character(const CharacterFamily& family, u64 label);

  const CharacterFamily& family() const { return *family_; }
  u64 label() const { return label_; }
  u64 prime() const { return family_->prime(); }
  bool is_principal() const { return label_ == 0; }

  cplx operator()(i64 n) const { return family_->value(label_, n); }

 private:
  const CharacterFamily* family_;
  u64 label_;
};

struct GaussData {
  u64 label = 0;
  cplx value;       // tau(chi) = sum_t chi(t) e(t/r)
  cplx normalized;  // C(chi) = tau(chi) / sqrt(r)
};

cplx character_value(const Character& chi, i64 n);

// Direct O(r) summation.
GaussData gauss_sum(const Character& chi);

// (1/r) sum_{t mod r} chi(t) e((k+m) t / r). The complete sum at k+m = 0 mod r
// is returned exactly: (r-1)/r for the principal character, 0 otherwise.
cplx dual_coefficient(const Character& chi, i64 m, i64 k);

// All dual coefficients of chi, indexed by u = (k+m) mod r. O(r^2).
std::vector<cplx> dual_coefficient_table(const Character& chi);

}  // namespace mixsum
