#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "nslrs/gfield.hpp"
#include "nslrs/permgrp.hpp"

namespace nslrs {

/// x -> L_0 x + L_1 x^q + ... + L_{m-1} x^{q^{m-1}} on F_{q^m}, where the
/// context is F_{q^m} with base field F_q.
class QLinearMap {
 public:
  QLinearMap(FieldPtr ctx, std::vector<Elem> coeffs);
  static QLinearMap identity(FieldPtr ctx);
  /// x -> c x^{q^j}.
  static QLinearMap monomial(FieldPtr ctx, Elem c, unsigned j);

  const FieldPtr& ctx() const { return ctx_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  unsigned m() const { return static_cast<unsigned>(c_.size()); }

  Elem operator()(Elem x) const;

  friend bool operator==(const QLinearMap& a, const QLinearMap& b) {
    return a.c_ == b.c_ && a.ctx_->same_as(*b.ctx_);
  }

 private:
  FieldPtr ctx_;
  std::vector<Elem> c_;
};

FFElement eval(const QLinearMap& L, const FFElement& x);

/// (a o b)(x) = a(b(x)).
QLinearMap compose(const QLinearMap& a, const QLinearMap& b);
/// Throws SingularMap when L is not bijective.
QLinearMap invert(const QLinearMap& L);
bool is_invertible(const QLinearMap& L);

/// Solves A x = b over the context field by Gaussian elimination; A is
/// row-major and square. Throws SingularSystem.
std::vector<Elem> solve_linear(const Field& F, std::vector<std::vector<Elem>> A, std::vector<Elem> b);

/// The map with L(basis[i]) = images[i]; basis must be independent over F_q.
/// Throws NotABasis.
QLinearMap from_images(const FieldPtr& ctx, const std::vector<Elem>& basis, const std::vector<Elem>& images);
/// The map with L(xi^i) = images[i] for i < m.
QLinearMap from_basis_images(const FFElement& xi, const std::vector<Elem>& images);

/// F_q-coordinates of a with respect to an F_q-basis of F_{q^m}.
std::vector<Elem> coordinates_over(const Field& F, Elem a, const std::vector<Elem>& basis);

struct StandardForm {
  Elem c;
  unsigned j;
  /// Set when a unity group was supplied: whether c lies in it.
  std::optional<bool> in_unity;
};

class UnityGroup;

/// (c, j) when L = c x^{q^j}.
std::optional<StandardForm> is_standard(const QLinearMap& L, const UnityGroup* U = nullptr);

/// The group <xi> of order n inside a field, with constant-time index lookup.
class UnityGroup {
 public:
  /// xi defaults to the canonical element of order n. Throws OrderUnavailable.
  UnityGroup(FieldPtr ctx, u64 n, std::optional<Elem> xi = std::nullopt);

  const FieldPtr& ctx() const { return ctx_; }
  std::size_t n() const { return powers_.size(); }
  Elem xi() const { return powers_.size() > 1 ? powers_[1] : 1; }
  /// xi^i.
  Elem power(std::size_t i) const { return powers_[i % powers_.size()]; }
  const std::vector<Elem>& powers() const { return powers_; }
  /// i with xi^i = a, or -1 when a is outside the group.
  long index_of(Elem a) const;
  bool contains(Elem a) const { return index_of(a) >= 0; }

 private:
  FieldPtr ctx_;
  std::vector<Elem> powers_;
  u64 step_ = 0;      // (Q-1)/n when logs are available
  u64 log_scale_ = 0;  // inverse of log(xi)/step mod n
  std::unordered_map<Elem, std::uint32_t> lookup_;
};

bool fixes_unity_group(const QLinearMap& L, const UnityGroup& U);
bool fixes_unity_group(const QLinearMap& L, u64 n);

/// pi with L(xi^i) = xi^{pi(i)}. Throws NotFixing.
Perm to_perm(const QLinearMap& L, const UnityGroup& U);

}  // namespace nslrs
