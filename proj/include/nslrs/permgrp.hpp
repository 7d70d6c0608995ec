#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nslrs/numtheory.hpp"

namespace nslrs {

using Point = std::uint32_t;

/// Permutation of {0, ..., n-1} stored as its image list.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<Point> images);
  static Perm identity(std::size_t n);
  /// i -> a*i + b mod n.
  static Perm affine(std::size_t n, u64 a, u64 b);

  std::size_t size() const { return img_.size(); }
  Point operator[](std::size_t i) const { return img_[i]; }
  Point apply(Point i) const { return img_[i]; }
  const std::vector<Point>& images() const { return img_; }
  bool is_identity() const;

  /// Image list "[a,b,...]".
  std::string to_string() const;
  /// Disjoint cycles, e.g. "(0,1,2)(3,4)"; "()" for the identity.
  std::string cycles() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<Point> img_;
};

void check_degree(std::size_t a, std::size_t b);

/// (a*b)(i) = a(b(i)).
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& a);
/// c^pi with (c^pi)_{pi(i)} = c_i.
/// Throws DegreeMismatch when the lengths differ.
template <typename T>
std::vector<T> act_on_vector(const std::vector<T>& c, const Perm& pi) {
  check_degree(c.size(), pi.size());
  std::vector<T> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[pi[i]] = c[i];
  return out;
}
u64 perm_order(const Perm& a);

/// Base and strong generating set built by deterministic Schreier-Sims.
/// Transversals are kept as Schreier vectors.
class StabChain {
 public:
  explicit StabChain(std::size_t degree) : n_(degree) {}

  std::size_t degree() const { return n_; }
  const std::vector<Point>& base() const { return base_; }
  const std::vector<Perm>& strong_generators() const { return gens_; }
  std::vector<std::size_t> orbit_sizes() const;
  /// Product of basic orbit lengths; throws Overflow above 2^63.
  u64 order() const;
  bool contains(const Perm& g) const;
  /// Adds g if it is not already a member; returns whether the group grew.
  bool add(const Perm& g);
  /// Every element, sorted.
  std::vector<Perm> elements() const;

 private:
  struct Level {
    Point point;
    std::vector<std::int32_t> label;  // generator index reaching each orbit point, -1 = base point, -2 = outside
    std::vector<Point> orbit;
  };

  void rebuild_orbit(std::size_t level);
  Perm transversal(std::size_t level, Point beta) const;
  // Strips g through levels from `start`; returns the residue and the first
  // level where the strip failed (levels_.size() if it got through).
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t start) const;
  void complete(std::size_t from_level);
  bool fixes_prefix(const Perm& g, std::size_t count) const;

  std::size_t n_;
  std::vector<Point> base_;
  std::vector<Perm> gens_;
  std::vector<Perm> gens_inv_;
  std::vector<Level> levels_;
};

StabChain schreier_sims(std::size_t degree, const std::vector<Perm>& gens);

/// The group <i -> i+1, i -> q i> on Z_n.
StabChain standard_group(u64 n, u64 q);

}  // namespace nslrs
