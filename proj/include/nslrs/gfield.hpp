#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nslrs/numtheory.hpp"

namespace nslrs {

/// Packed field element: the coordinates c_0, ..., c_{K-1} over F_p (basis
/// 1, x, ..., x^{K-1} modulo the modulus) stored as the integer sum c_i p^i.
/// Elements of the prime subfield are therefore their own integer value.
using Elem = std::uint64_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Fields with at most this many elements get exp/log/Zech tables.
inline constexpr u64 kTableLimit = u64{1} << 20;

/// F_{q^k} with q = p^s, represented over F_p directly with degree K = s*k and
/// a fixed primitive modulus. The subfield F_q is the fixed field of x -> x^q.
/// Immutable after construction; share freely across threads.
class Field {
 public:
  /// Builds F_{(p^s)^k}. Without an explicit modulus the lexicographically
  /// least primitive polynomial of degree s*k over F_p is used. An explicit
  /// modulus (ascending coefficients over F_p, monic, degree k) is accepted
  /// only for s == 1.
  static FieldPtr build(u64 p, unsigned s, unsigned k,
                        const std::optional<std::vector<u64>>& modulus = std::nullopt);
  /// Shorthand for F_{q^k}.
  static FieldPtr extension(u64 q, unsigned k);

  const PrimePower& base() const { return base_; }
  u64 p() const { return base_.p; }
  u64 q() const { return base_.q; }
  unsigned ext_degree() const { return k_; }
  unsigned degree() const { return K_; }
  u64 size() const { return size_; }
  const std::vector<u64>& modulus() const { return modulus_; }
  bool has_tables() const { return !log_.empty(); }
  /// The fixed primitive element (the residue of x when the modulus is primitive).
  Elem primitive() const { return gamma_; }
  bool same_as(const Field& other) const;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t c) const;
  Elem from_coords(std::span<const u64> coords) const;
  std::vector<u64> coords(Elem a) const;
  bool valid(Elem a) const { return a < size_; }

  Elem add(Elem a, Elem b) const {
    if (p() == 2) return a ^ b;
    if (K_ == 1) {
      const u64 s = a + b;
      return s >= p() ? s - p() : s;
    }
    if (!zech_.empty()) {
      if (a == 0) return b;
      if (b == 0) return a;
      const u64 la = log_[a], lb = log_[b];
      const u64 d = lb >= la ? lb - la : lb + (size_ - 1) - la;
      const std::int32_t z = zech_[d];
      if (z < 0) return 0;
      return exp_[la + static_cast<u64>(z)];
    }
    return add_generic(a, b);
  }
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) return exp_[log_[a] + log_[b]];
    return mul_generic(a, b);
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, u64 e) const;
  /// a^(q^i).
  Elem frobenius(Elem a, unsigned i = 1) const;
  /// a^(p^i).
  Elem frobenius_p(Elem a, unsigned i = 1) const;

  /// Discrete log base primitive(); requires tables.
  u64 log(Elem a) const;
  Elem exp(u64 e) const;

  bool in_base(Elem a) const { return frobenius(a, 1) == a; }
  /// Trace from F_{q^k} down to F_q.
  Elem trace(Elem a) const;
  u64 element_order(Elem a) const;
  Elem element_of_order(u64 n) const;
  const std::vector<std::pair<u64, unsigned>>& group_order_factors() const { return factors_; }
  /// All elements of F_q, sorted by packed value.
  const std::vector<Elem>& base_elements() const { return base_elems_; }

  std::string format(Elem a) const;

 private:
  Field() = default;
  void init_tables();
  Elem add_generic(Elem a, Elem b) const;
  Elem mul_generic(Elem a, Elem b) const;

  PrimePower base_;
  unsigned k_ = 1;
  unsigned K_ = 1;
  u64 size_ = 2;
  std::vector<u64> modulus_;  // ascending, monic, length K+1
  Elem gamma_ = 1;
  std::vector<std::pair<u64, unsigned>> factors_;  // of size_-1
  std::vector<u64> pow_p_;                          // p^i for i <= K
  std::vector<Elem> exp_;                           // length 2(size-1)
  std::vector<std::uint32_t> log_;
  std::vector<std::int32_t> zech_;
  std::vector<Elem> base_elems_;
};

/// An element bound to its field, for API-level arithmetic.
class FFElement {
 public:
  FFElement(FieldPtr ctx, Elem value);

  const FieldPtr& ctx() const { return ctx_; }
  Elem value() const { return value_; }
  std::vector<u64> coords() const { return ctx_->coords(value_); }
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const FFElement& a, const FFElement& b) {
    return a.ctx_->same_as(*b.ctx_) && a.value_ == b.value_;
  }

 private:
  FieldPtr ctx_;
  Elem value_;
};

enum class ArithOp { Add, Sub, Mul, Div };

FFElement arith(const FFElement& a, const FFElement& b, ArithOp op);
FFElement pow(const FFElement& a, u64 e);
FFElement operator+(const FFElement& a, const FFElement& b);
FFElement operator-(const FFElement& a, const FFElement& b);
FFElement operator*(const FFElement& a, const FFElement& b);
FFElement operator/(const FFElement& a, const FFElement& b);

/// a^(q^i) where `over` must be the base field of a's context.
FFElement frobenius(const FFElement& a, unsigned i, const PrimePower& over);
/// Trace from F_{q^m} to F_q.
FFElement trace(const FFElement& a, const PrimePower& over);
u64 element_order(const FFElement& a);
FFElement element_of_order(const FieldPtr& ctx, u64 n);

}  // namespace nslrs
