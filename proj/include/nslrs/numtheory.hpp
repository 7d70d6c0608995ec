#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace nslrs {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

/// Inverse of a modulo m; requires gcd(a, m) = 1 (returns 0 when m == 1).
u64 modinv(u64 a, u64 m);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(u64 n);

/// Prime factorization as (prime, exponent) pairs in ascending prime order.
/// Trial division up to 2^16 followed by Pollard rho.
std::vector<std::pair<u64, unsigned>> factorize(u64 n);

std::vector<u64> prime_divisors(u64 n);
std::vector<u64> divisors(u64 n);

/// p^e, throwing Overflow when the result exceeds 2^63.
u64 checked_pow(u64 base, unsigned exp);

struct PrimePower {
  u64 p = 2;
  unsigned s = 1;
  u64 q = 2;

  static PrimePower from_q(u64 q);
  static PrimePower make(u64 p, unsigned s);
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

bool is_prime_power(u64 q);

/// ord_n(q): least m >= 1 with n | q^m - 1.
unsigned mult_order(u64 n, u64 q);

struct QOrder {
  u64 d;  // n / gcd(n, q-1)
  u64 e;  // gcd(n, q-1)
};

/// q-order of n: the least d with xi^d in F_q for xi of order n.
QOrder q_order(u64 n, u64 q);

}  // namespace nslrs
