#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nslrs/gfield.hpp"

namespace nslrs {

/// Polynomial with coefficients in a field context, lowest degree first,
/// no trailing zeros. "Over F_q" statements (irreducibility, order) refer to
/// the context's base field ctx->base().
class Poly {
 public:
  Poly(FieldPtr ctx, std::vector<Elem> coeffs);

  static Poly zero(FieldPtr ctx) { return Poly(std::move(ctx), {}); }
  static Poly constant(FieldPtr ctx, Elem c) { return Poly(std::move(ctx), {c}); }
  static Poly monomial(FieldPtr ctx, Elem c, std::size_t degree);
  static Poly x(FieldPtr ctx) { return monomial(std::move(ctx), 1, 1); }
  /// Integer coefficients reduced into the prime subfield.
  static Poly from_ints(FieldPtr ctx, const std::vector<std::int64_t>& coeffs);
  /// x^n - 1.
  static Poly xn_minus_one(FieldPtr ctx, std::size_t n);

  const FieldPtr& ctx() const { return ctx_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  Elem eval(Elem x) const;
  bool coefficients_in_base() const;

  /// Ascending coefficient list, e.g. "[1,1,0,1]" for x^3+x+1.
  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_ && a.ctx_->same_as(*b.ctx_); }

 private:
  FieldPtr ctx_;
  std::vector<Elem> c_;
};

Poly parse_poly(const FieldPtr& ctx, const std::string& text);

enum class PolyOp { Add, Sub, Mul, Mod, Gcd };

Poly poly_arith(const Poly& a, const Poly& b, PolyOp op);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, Elem c);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly mod(const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
Poly monic(const Poly& a);
Poly derivative(const Poly& a);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& f);
Poly pow_mod(const Poly& a, u64 e, const Poly& f);
/// x^deg(f) f(1/x), normalized monic.
Poly reciprocal(const Poly& f);
/// f(c x), normalized monic.
Poly scale_variable(const Poly& f, Elem c);

/// Rabin irreducibility test over F_q = ctx->base().
bool is_irreducible(const Poly& f);

/// Least N with f | x^N - 1. Requires f(0) != 0 and q^d < 2^62 for every
/// irreducible factor degree d.
u64 poly_order(const Poly& f);

/// Square-free factorization: (factor, multiplicity) pairs.
std::vector<std::pair<Poly, unsigned>> squarefree_factorization(const Poly& f);
/// Distinct-degree factorization of a square-free monic polynomial:
/// (degree, product of all irreducible factors of that degree).
std::vector<std::pair<unsigned, Poly>> distinct_degree_factorization(const Poly& f);

/// Minimal polynomial of a over F_q, as the product over its Frobenius orbit.
Poly minimal_poly(const FieldPtr& ctx, Elem a);
Poly minimal_poly(const FFElement& a);

/// g(x^k).
Poly compose_spaced(const Poly& g, unsigned k);

/// Monic irreducible polynomials of the given degree over F_q, in
/// enumeration order (coefficients compared from the top).
std::vector<Poly> monic_irreducibles(const FieldPtr& ctx, unsigned degree);

struct PSetVerdict {
  bool member = false;
  std::optional<u64> failing_prime;
  std::string reason;
};

/// Whether every prime factor r of k satisfies r | n and gcd(r, (q^m-1)/n) = 1.
PSetVerdict p_set_member(u64 k, u64 n, u64 q);

/// The constructive criterion for irreducibility of g(x^k) where g is
/// irreducible of order n over F_q: k in P(n,q), and 4 does not divide k
/// when 2 is in P(n,q) and n = 2 mod 4.
bool spaced_criterion(u64 n, u64 q, u64 k);

/// Predicts irreducibility of g(x^k) for monic irreducible g with g(0) != 0.
bool spaced_irreducible(const Poly& g, unsigned k);

}  // namespace nslrs
