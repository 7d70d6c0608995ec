#include "nslrs/permgrp.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nslrs/error.hpp"

namespace nslrs {

void check_degree(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorKind::DegreeMismatch, "degree " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

Perm::Perm(std::vector<Point> images) : img_(std::move(images)) {
  std::vector<char> seen(img_.size(), 0);
  for (Point x : img_) {
    if (x >= img_.size() || seen[x]) throw Error(ErrorKind::Parse, "image list is not a permutation");
    seen[x] = 1;
  }
}

Perm Perm::identity(std::size_t n) {
  std::vector<Point> v(n);
  std::iota(v.begin(), v.end(), Point{0});
  Perm p;
  p.img_ = std::move(v);
  return p;
}

Perm Perm::affine(std::size_t n, u64 a, u64 b) {
  std::vector<Point> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Point>((mulmod(a % n, i, n) + b % n) % n);
  return Perm(std::move(v));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (img_[i] != i) return false;
  }
  return true;
}

std::string Perm::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < img_.size(); ++i) os << (i ? "," : "") << img_[i];
  os << ']';
  return os.str();
}

std::string Perm::cycles() const {
  std::ostringstream os;
  std::vector<char> seen(img_.size(), 0);
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i] || img_[i] == i) continue;
    os << '(';
    for (std::size_t j = i; !seen[j]; j = img_[j]) {
      seen[j] = 1;
      os << (j == i ? "" : ",") << j;
    }
    os << ')';
  }
  const std::string s = os.str();
  return s.empty() ? "()" : s;
}

Perm compose(const Perm& a, const Perm& b) {
  check_degree(a.size(), b.size());
  std::vector<Point> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a[b[i]];
  return Perm(std::move(v));
}

Perm inverse(const Perm& a) {
  std::vector<Point> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[a[i]] = static_cast<Point>(i);
  return Perm(std::move(v));
}

u64 perm_order(const Perm& a) {
  u64 ord = 1;
  std::vector<char> seen(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    u64 len = 0;
    for (std::size_t j = i; !seen[j]; j = a[j]) {
      seen[j] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

bool StabChain::fixes_prefix(const Perm& g, std::size_t count) const {
  for (std::size_t l = 0; l < count; ++l) {
    if (g[base_[l]] != base_[l]) return false;
  }
  return true;
}

void StabChain::rebuild_orbit(std::size_t level) {
  Level& L = levels_[level];
  L.label.assign(n_, -2);
  L.orbit.assign(1, L.point);
  L.label[L.point] = -1;
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    if (fixes_prefix(gens_[k], level)) active.push_back(k);
  }
  for (std::size_t idx = 0; idx < L.orbit.size(); ++idx) {
    const Point x = L.orbit[idx];
    for (std::size_t k : active) {
      const Point y = gens_[k][x];
      if (L.label[y] == -2) {
        L.label[y] = static_cast<std::int32_t>(k);
        L.orbit.push_back(y);
      }
    }
  }
}

Perm StabChain::transversal(std::size_t level, Point beta) const {
  const Level& L = levels_[level];
  Perm u = Perm::identity(n_);
  while (beta != L.point) {
    const auto k = static_cast<std::size_t>(L.label[beta]);
    u = compose(u, gens_[k]);
    beta = gens_inv_[k][beta];
  }
  return u;
}

std::pair<Perm, std::size_t> StabChain::strip(Perm g, std::size_t start) const {
  for (std::size_t l = start; l < levels_.size(); ++l) {
    const Level& L = levels_[l];
    Point beta = g[L.point];
    if (L.label[beta] == -2) return {std::move(g), l};
    while (beta != L.point) {
      const auto k = static_cast<std::size_t>(L.label[beta]);
      g = compose(gens_inv_[k], g);
      beta = gens_inv_[k][beta];
    }
  }
  return {std::move(g), levels_.size()};
}

void StabChain::complete(std::size_t from_level) {
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(from_level);
  while (i >= 0) {
    const auto lvl = static_cast<std::size_t>(i);
    rebuild_orbit(lvl);
    bool grew = false;
    const std::vector<Point> orbit = levels_[lvl].orbit;
    for (Point p : orbit) {
      const Perm up = transversal(lvl, p);
      for (std::size_t k = 0; k < gens_.size() && !grew; ++k) {
        if (!fixes_prefix(gens_[k], lvl)) continue;
        const Perm& s = gens_[k];
        const Perm h = compose(inverse(transversal(lvl, s[p])), compose(s, up));
        auto [res, j] = strip(h, lvl + 1);
        if (res.is_identity()) continue;
        if (j == levels_.size()) {
          Point moved = 0;
          while (res[moved] == moved) ++moved;
          base_.push_back(moved);
          levels_.push_back(Level{moved, {}, {}});
        }
        gens_inv_.push_back(inverse(res));
        gens_.push_back(std::move(res));
        i = static_cast<std::ptrdiff_t>(j);
        grew = true;
      }
      if (grew) break;
    }
    if (!grew) --i;
  }
}

bool StabChain::add(const Perm& g) {
  check_degree(g.size(), n_);
  auto [res, j] = strip(g, 0);
  if (res.is_identity()) return false;
  if (j == levels_.size()) {
    Point moved = 0;
    while (res[moved] == moved) ++moved;
    base_.push_back(moved);
    levels_.push_back(Level{moved, {}, {}});
  }
  gens_inv_.push_back(inverse(res));
  gens_.push_back(std::move(res));
  complete(levels_.size() - 1);
  return true;
}

bool StabChain::contains(const Perm& g) const {
  check_degree(g.size(), n_);
  return strip(g, 0).first.is_identity();
}

std::vector<std::size_t> StabChain::orbit_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& L : levels_) out.push_back(L.orbit.size());
  return out;
}

u64 StabChain::order() const {
  u128 ord = 1;
  for (const auto& L : levels_) {
    ord *= L.orbit.size();
    if (ord > (static_cast<u128>(1) << 63)) throw Error(ErrorKind::Overflow, "group order exceeds 2^63");
  }
  return static_cast<u64>(ord);
}

std::vector<Perm> StabChain::elements() const {
  std::vector<std::vector<Perm>> reps(levels_.size());
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    for (Point b : levels_[l].orbit) reps[l].push_back(transversal(l, b));
  }
  std::vector<Perm> out{Perm::identity(n_)};
  for (std::size_t l = levels_.size(); l-- > 0;) {
    std::vector<Perm> next;
    next.reserve(out.size() * reps[l].size());
    for (const Perm& u : reps[l]) {
      for (const Perm& g : out) next.push_back(compose(u, g));
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

StabChain schreier_sims(std::size_t degree, const std::vector<Perm>& gens) {
  StabChain chain(degree);
  for (const Perm& g : gens) chain.add(g);
  return chain;
}

StabChain standard_group(u64 n, u64 q) {
  if (n == 0 || std::gcd(n, q) != 1) throw Error(ErrorKind::NotCoprime, "gcd(n,q) != 1");
  const auto N = static_cast<std::size_t>(n);
  return schreier_sims(N, {Perm::affine(N, 1, 1), Perm::affine(N, q, 0)});
}

}  // namespace nslrs
