#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace mixsum {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);

// Deterministic for the whole 64-bit range (fixed Miller-Rabin witness set).
bool is_prime(u64 n);

// Prime factorization by trial division; intended for n up to ~1e12.
std::vector<std::pair<u64, int>> factorize(u64 n);

// Multiplicative order of g modulo prime r.
u64 multiplicative_order(u64 g, u64 r);

// Smallest g >= 1 of order r-1. Throws std::invalid_argument for non-prime r.
u64 primitive_root(u64 r);

// Dense discrete-log table: entry t-1 holds ind(t), g^ind(t) = t mod r.
// Throws std::invalid_argument unless g generates (Z/rZ)^x.
std::vector<u32> build_index_table(u64 r, u64 g);

enum class ArithFn { mobius, divisor_count, totient };

int mobius(i64 n);
i64 divisor_count(i64 n);
i64 totient(i64 n);
// gcd(0,0) is rejected; the result is always nonnegative.
i64 checked_gcd(i64 a, i64 b);
i64 arith_fn(ArithFn kind, i64 n);

// Floor division and nonnegative remainder for signed operands.
constexpr i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
constexpr i64 pos_mod(i64 a, i64 m) {
  i64 v = a % m;
  return v < 0 ? v + m : v;
}

// A prime r together with its canonical generator and index table.
// Immutable after construction; safe to share between threads.
class PrimeModulus {
 public:
  explicit PrimeModulus(u64 r);

  u64 prime() const { return r_; }
  u64 generator() const { return g_; }
  // Number of characters, r-1.
  u64 order() const { return r_ - 1; }

  // ind(t) for t coprime to r (t is reduced mod r first).
  u32 index(i64 t) const;
  // g^e mod r.
  u64 power(u64 e) const { return powers_[e % (r_ - 1)]; }

  std::span<const u32> index_table() const { return ind_; }

 private:
  u64 r_;
  u64 g_;
  std::vector<u32> ind_;
  std::vector<u64> powers_;
};

}  // namespace mixsum
