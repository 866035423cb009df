#include "mixsum/arith.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace mixsum {

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : small) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : small) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::pair<u64, int>> factorize(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

u64 multiplicative_order(u64 g, u64 r) {
  if (g % r == 0) throw std::invalid_argument("multiplicative_order: g is not a unit");
  u64 order = r - 1;
  for (auto [p, e] : factorize(r - 1)) {
    for (int i = 0; i < e; ++i) {
      if (pow_mod(g, order / p, r) == 1) {
        order /= p;
      } else {
        break;
      }
    }
  }
  return order;
}

u64 primitive_root(u64 r) {
  if (!is_prime(r)) {
    throw std::invalid_argument("primitive_root: " + std::to_string(r) + " is not prime");
  }
  if (r == 2) return 1;
  const auto factors = factorize(r - 1);
  for (u64 g = 2; g < r; ++g) {
    bool generates = true;
    for (auto [p, e] : factors) {
      if (pow_mod(g, (r - 1) / p, r) == 1) {
        generates = false;
        break;
      }
    }
    if (generates) return g;
  }
  throw std::logic_error("primitive_root: no generator found");
}

std::vector<u32> build_index_table(u64 r, u64 g) {
  if (!is_prime(r)) throw std::invalid_argument("build_index_table: modulus is not prime");
  if (r > (u64{1} << 31)) throw std::invalid_argument("build_index_table: modulus too large for a dense table");
  g %= r;
  if (g == 0 || multiplicative_order(g, r) != r - 1) {
    throw std::invalid_argument("build_index_table: " + std::to_string(g) +
                                " is not a primitive root mod " + std::to_string(r));
  }
  std::vector<u32> ind(r - 1);
  u64 t = 1;
  for (u64 e = 0; e < r - 1; ++e) {
    ind[t - 1] = static_cast<u32>(e);
    t = t * g % r;
  }
  return ind;
}

int mobius(i64 n) {
  if (n <= 0) throw std::domain_error("mobius: argument must be positive");
  int sign = 1;
  for (auto [p, e] : factorize(static_cast<u64>(n))) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

i64 divisor_count(i64 n) {
  if (n <= 0) throw std::domain_error("divisor_count: argument must be positive");
  i64 count = 1;
  for (auto [p, e] : factorize(static_cast<u64>(n))) count *= e + 1;
  return count;
}

i64 totient(i64 n) {
  if (n <= 0) throw std::domain_error("totient: argument must be positive");
  i64 phi = n;
  for (auto [p, e] : factorize(static_cast<u64>(n))) phi = phi / static_cast<i64>(p) * static_cast<i64>(p - 1);
  return phi;
}

i64 checked_gcd(i64 a, i64 b) {
  if (a == 0 && b == 0) throw std::domain_error("gcd(0, 0) is undefined");
  return std::gcd(a, b);
}

i64 arith_fn(ArithFn kind, i64 n) {
  switch (kind) {
    case ArithFn::mobius: return mobius(n);
    case ArithFn::divisor_count: return divisor_count(n);
    case ArithFn::totient: return totient(n);
  }
  throw std::logic_error("arith_fn: unknown kind");
}

PrimeModulus::PrimeModulus(u64 r) : r_(r), g_(primitive_root(r)) {
  ind_ = build_index_table(r_, g_);
  powers_.resize(r_ - 1);
  u64 t = 1;
  for (u64 e = 0; e < r_ - 1; ++e) {
    powers_[e] = t;
    t = t * g_ % r_;
  }
}

u32 PrimeModulus::index(i64 t) const {
  const auto u = static_cast<u64>(pos_mod(t, static_cast<i64>(r_)));
  if (u == 0) throw std::domain_error("PrimeModulus::index: argument divisible by r");
  return ind_[u - 1];
}

}  // namespace mixsum
