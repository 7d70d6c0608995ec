#include "nslrs/gfield.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "nslrs/error.hpp"

namespace nslrs {
namespace {

using Digits = std::array<u64, 128>;

void decode(Elem a, u64 p, unsigned K, Digits& d) {
  for (unsigned i = 0; i < K; ++i) {
    d[i] = a % p;
    a /= p;
  }
}

Elem encode(const Digits& d, u64 p, unsigned K) {
  Elem a = 0;
  for (unsigned i = K; i-- > 0;) a = a * p + d[i];
  return a;
}

u64 addmod(u64 a, u64 b, u64 p) {
  const u64 s = a + b;
  return s >= p ? s - p : s;
}

// Polynomials over Z_p as ascending digit vectors; only used to validate
// user-supplied moduli.
using ZpPoly = std::vector<u64>;

void trim(ZpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZpPoly zp_mod(ZpPoly a, const ZpPoly& b, u64 p) {
  trim(a);
  const u64 lead_inv = powmod(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    const u64 t = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(t, b[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    ZpPoly r = zp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool Field::same_as(const Field& other) const {
  return this == &other || (base_ == other.base_ && k_ == other.k_ && modulus_ == other.modulus_);
}

Elem Field::from_int(std::int64_t c) const {
  const auto pp = static_cast<std::int64_t>(p());
  std::int64_t r = c % pp;
  if (r < 0) r += pp;
  return static_cast<Elem>(r);
}

Elem Field::from_coords(std::span<const u64> coords) const {
  if (coords.size() > K_) throw Error(ErrorKind::DegreeMismatch, "too many coordinates");
  Digits d{};
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= p()) throw Error(ErrorKind::Parse, "coordinate out of range");
    d[i] = coords[i];
  }
  return encode(d, p(), K_);
}

std::vector<u64> Field::coords(Elem a) const {
  Digits d{};
  decode(a, p(), K_, d);
  return std::vector<u64>(d.begin(), d.begin() + K_);
}

Elem Field::add_generic(Elem a, Elem b) const {
  if (p() == 2) return a ^ b;
  Digits da{}, db{};
  decode(a, p(), K_, da);
  decode(b, p(), K_, db);
  for (unsigned i = 0; i < K_; ++i) da[i] = addmod(da[i], db[i], p());
  return encode(da, p(), K_);
}

Elem Field::neg(Elem a) const {
  if (p() == 2 || a == 0) return a;
  if (K_ == 1) return p() - a;
  if (!log_.empty()) return exp_[log_[a] + (size_ - 1) / 2];
  Digits d{};
  decode(a, p(), K_, d);
  for (unsigned i = 0; i < K_; ++i) d[i] = d[i] == 0 ? 0 : p() - d[i];
  return encode(d, p(), K_);
}

Elem Field::mul_generic(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (K_ == 1) return mulmod(a, b, p());
  if (p() == 2) {
    u128 prod = 0;
    for (unsigned i = 0; i < K_; ++i) {
      if ((b >> i) & 1) prod ^= static_cast<u128>(a) << i;
    }
    u128 mod = 0;
    for (unsigned i = 0; i <= K_; ++i) {
      if (modulus_[i]) mod |= static_cast<u128>(1) << i;
    }
    for (unsigned i = 2 * K_ - 1; i-- > K_;) {
      if ((prod >> i) & 1) prod ^= mod << (i - K_);
    }
    return static_cast<Elem>(prod);
  }
  const u64 pp = p();
  Digits da{}, db{};
  decode(a, pp, K_, da);
  decode(b, pp, K_, db);
  std::array<u64, 256> c{};
  for (unsigned i = 0; i < K_; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < K_; ++j) {
      c[i + j] = addmod(c[i + j], mulmod(da[i], db[j], pp), pp);
    }
  }
  for (unsigned i = 2 * K_ - 1; i-- > K_;) {
    const u64 t = c[i];
    if (t == 0) continue;
    for (unsigned j = 0; j < K_; ++j) {
      c[i - K_ + j] = addmod(c[i - K_ + j], pp - mulmod(t, modulus_[j], pp), pp);
    }
    c[i] = 0;
  }
  Digits out{};
  std::copy(c.begin(), c.begin() + K_, out.begin());
  return encode(out, pp, K_);
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (!log_.empty()) return exp_[(size_ - 1) - log_[a]];
  return pow(a, size_ - 2);
}

Elem Field::pow(Elem a, u64 e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (!log_.empty()) return exp_[mulmod(log_[a], e % (size_ - 1), size_ - 1)];
  Elem result = 1;
  Elem base = a;
  while (e > 0) {
    if (e & 1) result = mul_generic(result, base);
    base = mul_generic(base, base);
    e >>= 1;
  }
  return result;
}

Elem Field::frobenius(Elem a, unsigned i) const {
  i %= k_;
  if (i == 0 || a == 0) return a;
  if (!log_.empty()) return exp_[mulmod(log_[a], powmod(q(), i, size_ - 1), size_ - 1)];
  for (unsigned j = 0; j < i; ++j) a = pow(a, q());
  return a;
}

Elem Field::frobenius_p(Elem a, unsigned i) const {
  i %= K_;
  for (unsigned j = 0; j < i; ++j) a = pow(a, p());
  return a;
}

u64 Field::log(Elem a) const {
  if (a == 0) throw Error(ErrorKind::ZeroElement, "log of zero");
  if (log_.empty()) throw Error(ErrorKind::FieldTooLarge, "no log tables above 2^20 elements");
  return log_[a];
}

Elem Field::exp(u64 e) const {
  if (!log_.empty()) return exp_[e % (size_ - 1)];
  return pow(gamma_, e);
}

Elem Field::trace(Elem a) const {
  Elem t = 0;
  Elem x = a;
  for (unsigned i = 0; i < k_; ++i) {
    t = add(t, x);
    x = frobenius(x, 1);
  }
  return t;
}

u64 Field::element_order(Elem a) const {
  if (a == 0) throw Error(ErrorKind::ZeroElement, "order of zero");
  u64 n = size_ - 1;
  for (auto [r, e] : factors_) {
    for (unsigned i = 0; i < e && n % r == 0 && pow(a, n / r) == 1; ++i) n /= r;
  }
  return n;
}

Elem Field::element_of_order(u64 n) const {
  if (n == 0 || (size_ - 1) % n != 0) {
    throw Error(ErrorKind::OrderUnavailable,
                std::to_string(n) + " does not divide " + std::to_string(size_ - 1));
  }
  return pow(gamma_, (size_ - 1) / n);
}

std::string Field::format(Elem a) const {
  if (K_ == 1) return std::to_string(a);
  std::ostringstream os;
  os << '[';
  const auto c = coords(a);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ']';
  return os.str();
}

void Field::init_tables() {
  const u64 order = size_ - 1;
  exp_.assign(2 * order, 0);
  log_.assign(size_, 0);
  Elem x = 1;
  for (u64 i = 0; i < order; ++i) {
    exp_[i] = x;
    exp_[i + order] = x;
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_generic(x, gamma_);
  }
  if (x != 1) throw Error(ErrorKind::Internal, "primitive element has wrong order");
  if (p() != 2 && K_ > 1) {
    zech_.assign(order, -1);
    for (u64 j = 0; j < order; ++j) {
      const Elem v = add_generic(1, exp_[j]);
      zech_[j] = v == 0 ? -1 : static_cast<std::int32_t>(log_[v]);
    }
  }
}

FieldPtr Field::extension(u64 q, unsigned k) {
  const PrimePower pp = PrimePower::from_q(q);
  return build(pp.p, pp.s, k);
}

FieldPtr Field::build(u64 p, unsigned s, unsigned k, const std::optional<std::vector<u64>>& modulus) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (s == 0 || k == 0) throw Error(ErrorKind::DegreeMismatch, "degrees must be positive");
  const unsigned K = s * k;
  u128 total = 1;
  for (unsigned i = 0; i < K; ++i) {
    total *= p;
    if (total > (static_cast<u128>(1) << 62)) {
      throw Error(ErrorKind::FieldTooLarge, "field size exceeds 2^62");
    }
  }
  auto f = std::shared_ptr<Field>(new Field());
  f->base_ = PrimePower::make(p, s);
  f->k_ = k;
  f->K_ = K;
  f->size_ = static_cast<u64>(total);
  f->pow_p_.resize(K + 1);
  f->pow_p_[0] = 1;
  for (unsigned i = 1; i <= K; ++i) f->pow_p_[i] = f->pow_p_[i - 1] * p;
  f->factors_ = factorize(f->size_ - 1);

  auto x_residue = [&]() -> Elem {
    if (K == 1) return (p - f->modulus_[0]) % p;
    return p;
  };
  auto x_is_primitive = [&]() {
    const Elem x = x_residue();
    if (x == 0) return false;
    if (f->pow(x, f->size_ - 1) != 1) return false;
    for (auto [r, e] : f->factors_) {
      if (f->pow(x, (f->size_ - 1) / r) == 1) return false;
    }
    return true;
  };

  if (modulus) {
    if (s != 1) {
      throw Error(ErrorKind::DegreeMismatch, "explicit modulus is supported over prime fields only");
    }
    const auto& m = *modulus;
    if (m.size() != K + 1 || m.back() != 1) {
      throw Error(ErrorKind::DegreeMismatch, "modulus must be monic of degree " + std::to_string(K));
    }
    for (u64 c : m) {
      if (c >= p) throw Error(ErrorKind::Parse, "modulus coefficient out of range");
    }
    f->modulus_ = m;
    if (m[0] == 0 && K > 1) throw Error(ErrorKind::ReducibleModulus, "modulus divisible by x");
    // Rabin: x^(p^K) = x mod f and gcd(x^(p^(K/r)) - x, f) = 1 for primes r | K.
    const Elem x = x_residue();
    Elem y = x;
    for (unsigned i = 0; i < K; ++i) y = f->pow(y, p);
    bool irreducible = (y == x);
    if (irreducible && K > 1) {
      for (u64 r : prime_divisors(K)) {
        Elem z = x;
        for (u64 i = 0; i < K / r; ++i) z = f->pow(z, p);
        ZpPoly diff = f->coords(f->add_generic(z, f->neg(x)));
        if (zp_gcd(diff, m, p).size() != 1) {
          irreducible = false;
          break;
        }
      }
    }
    if (!irreducible) throw Error(ErrorKind::ReducibleModulus, "modulus is reducible");
    if (x_is_primitive()) {
      f->gamma_ = x_residue();
    } else {
      f->gamma_ = 0;
      for (Elem c = 2; c < f->size_; ++c) {
        if (f->element_order(c) == f->size_ - 1) {
          f->gamma_ = c;
          break;
        }
      }
    }
  } else {
    // Least primitive monic polynomial, coefficients compared from x^(K-1) down.
    f->modulus_.assign(K + 1, 0);
    f->modulus_[K] = 1;
    bool found = false;
    for (u64 N = 1; N < f->size_ && !found; ++N) {
      if (N % p == 0) continue;
      u64 t = N;
      for (unsigned i = 0; i < K; ++i) {
        f->modulus_[i] = t % p;
        t /= p;
      }
      found = x_is_primitive();
    }
    if (!found) throw Error(ErrorKind::Internal, "no primitive polynomial found");
    f->gamma_ = x_residue();
  }

  if (f->size_ <= kTableLimit) f->init_tables();

  // F_q inside F: zero and the powers of gamma^((Q-1)/(q-1)).
  const Elem eta = f->pow(f->gamma_, (f->size_ - 1) / (f->q() - 1));
  f->base_elems_.push_back(0);
  Elem y = 1;
  for (u64 i = 0; i + 1 < f->q(); ++i) {
    f->base_elems_.push_back(y);
    y = f->mul(y, eta);
  }
  std::sort(f->base_elems_.begin(), f->base_elems_.end());
  return f;
}

FFElement::FFElement(FieldPtr ctx, Elem value) : ctx_(std::move(ctx)), value_(value) {
  if (!ctx_->valid(value_)) throw Error(ErrorKind::Parse, "element out of range");
}

namespace {
void require_same(const FFElement& a, const FFElement& b) {
  if (!a.ctx()->same_as(*b.ctx())) throw Error(ErrorKind::ContextMismatch, "elements from different fields");
}
}  // namespace

FFElement arith(const FFElement& a, const FFElement& b, ArithOp op) {
  require_same(a, b);
  const Field& F = *a.ctx();
  switch (op) {
    case ArithOp::Add: return FFElement(a.ctx(), F.add(a.value(), b.value()));
    case ArithOp::Sub: return FFElement(a.ctx(), F.sub(a.value(), b.value()));
    case ArithOp::Mul: return FFElement(a.ctx(), F.mul(a.value(), b.value()));
    case ArithOp::Div:
      if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
      return FFElement(a.ctx(), F.div(a.value(), b.value()));
  }
  throw Error(ErrorKind::Internal, "bad op");
}

FFElement pow(const FFElement& a, u64 e) { return FFElement(a.ctx(), a.ctx()->pow(a.value(), e)); }
FFElement operator+(const FFElement& a, const FFElement& b) { return arith(a, b, ArithOp::Add); }
FFElement operator-(const FFElement& a, const FFElement& b) { return arith(a, b, ArithOp::Sub); }
FFElement operator*(const FFElement& a, const FFElement& b) { return arith(a, b, ArithOp::Mul); }
FFElement operator/(const FFElement& a, const FFElement& b) { return arith(a, b, ArithOp::Div); }

FFElement frobenius(const FFElement& a, unsigned i, const PrimePower& over) {
  if (!(a.ctx()->base() == over)) throw Error(ErrorKind::ContextMismatch, "frobenius over a different base field");
  return FFElement(a.ctx(), a.ctx()->frobenius(a.value(), i));
}

FFElement trace(const FFElement& a, const PrimePower& over) {
  if (!(a.ctx()->base() == over)) throw Error(ErrorKind::ContextMismatch, "trace over a different base field");
  return FFElement(a.ctx(), a.ctx()->trace(a.value()));
}

u64 element_order(const FFElement& a) { return a.ctx()->element_order(a.value()); }

FFElement element_of_order(const FieldPtr& ctx, u64 n) { return FFElement(ctx, ctx->element_of_order(n)); }

}  // namespace nslrs
