#include "nslrs/numtheory.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "nslrs/error.hpp"

namespace nslrs {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotPrimePower: return "NotPrimePower";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::OrderUnavailable: return "OrderUnavailable";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorKind::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorKind::ReducibleInput: return "ReducibleInput";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BadInitLength: return "BadInitLength";
    case ErrorKind::ZeroSequence: return "ZeroSequence";
    case ErrorKind::InsufficientTerms: return "InsufficientTerms";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NotAGSequence: return "NotAGSequence";
    case ErrorKind::NotABasis: return "NotABasis";
    case ErrorKind::SingularMap: return "SingularMap";
    case ErrorKind::NotFixing: return "NotFixing";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::BadLiftExponent: return "BadLiftExponent";
    case ErrorKind::BadExtensionFactor: return "BadExtensionFactor";
    case ErrorKind::BadTwist: return "BadTwist";
    case ErrorKind::BadGenerator: return "BadGenerator";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<u64> primes;
  for (u64 p = 2; p < (1u << 16) && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<u64, unsigned>> result;
  for (u64 p : primes) {
    if (!result.empty() && result.back().first == p) {
      ++result.back().second;
    } else {
      result.emplace_back(p, 1);
    }
  }
  return result;
}

std::vector<u64> prime_divisors(u64 n) {
  std::vector<u64> out;
  for (auto [p, e] : factorize(n)) out.push_back(p);
  return out;
}

std::vector<u64> divisors(u64 n) {
  std::vector<u64> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t count = out.size();
    u64 pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 checked_pow(u64 base, unsigned exp) {
  u128 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    result *= base;
    if (result > (static_cast<u128>(1) << 63)) {
      throw Error(ErrorKind::Overflow, std::to_string(base) + "^" + std::to_string(exp) + " exceeds 2^63");
    }
  }
  return static_cast<u64>(result);
}

PrimePower PrimePower::make(u64 p, unsigned s) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (s == 0) throw Error(ErrorKind::NotPrimePower, "exponent must be positive");
  return PrimePower{p, s, checked_pow(p, s)};
}

PrimePower PrimePower::from_q(u64 q) {
  if (q < 2) throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
  auto f = factorize(q);
  if (f.size() != 1) throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
  return PrimePower{f[0].first, f[0].second, q};
}

bool is_prime_power(u64 q) { return q >= 2 && factorize(q).size() == 1; }

unsigned mult_order(u64 n, u64 q) {
  if (n == 0 || std::gcd(n, q) != 1) {
    throw Error(ErrorKind::NotCoprime, "gcd(" + std::to_string(n) + "," + std::to_string(q) + ") != 1");
  }
  if (n == 1) return 1;
  const u64 qm = q % n;
  u64 x = qm;
  unsigned m = 1;
  while (x != 1) {
    x = mulmod(x, qm, n);
    ++m;
  }
  return m;
}

QOrder q_order(u64 n, u64 q) {
  if (n == 0 || std::gcd(n, q) != 1) {
    throw Error(ErrorKind::NotCoprime, "gcd(" + std::to_string(n) + "," + std::to_string(q) + ") != 1");
  }
  const u64 e = std::gcd(n, q - 1);
  return QOrder{n / e, e};
}

u64 modinv(u64 a, u64 m) {
  if (m == 1) return 0;
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    const std::int64_t quo = r / nr;
    t -= quo * nt;
    std::swap(t, nt);
    r -= quo * nr;
    std::swap(r, nr);
  }
  if (r != 1) throw Error(ErrorKind::NotCoprime, "no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<u64>(t);
}

}  // namespace nslrs
