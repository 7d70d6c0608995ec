#include "nslrs/qlinmap.hpp"

#include <algorithm>

#include "nslrs/error.hpp"

namespace nslrs {
namespace {

// Gaussian elimination over F_p on a K x K matrix with several right-hand
// sides. Returns false when singular.
bool solve_mod_p(u64 p, std::vector<std::vector<u64>> A, std::vector<std::vector<u64>>& rhs) {
  const std::size_t K = A.size();
  for (std::size_t col = 0; col < K; ++col) {
    std::size_t piv = col;
    while (piv < K && A[piv][col] == 0) ++piv;
    if (piv == K) return false;
    std::swap(A[piv], A[col]);
    for (auto& r : rhs) std::swap(r[piv], r[col]);
    const u64 inv = modinv(A[col][col], p);
    for (std::size_t j = 0; j < K; ++j) A[col][j] = A[col][j] * inv % p;
    for (auto& r : rhs) r[col] = r[col] * inv % p;
    for (std::size_t row = 0; row < K; ++row) {
      if (row == col || A[row][col] == 0) continue;
      const u64 f = A[row][col];
      for (std::size_t j = 0; j < K; ++j) A[row][j] = (A[row][j] + (p - f) * A[col][j]) % p;
      for (auto& r : rhs) r[row] = (r[row] + (p - f) * r[col]) % p;
    }
  }
  return true;
}

// Columns are the F_p-coordinates of L(e_j) for the unit vectors e_j.
std::vector<std::vector<u64>> fp_matrix(const QLinearMap& L) {
  const Field& F = *L.ctx();
  const unsigned K = F.degree();
  std::vector<std::vector<u64>> A(K, std::vector<u64>(K, 0));
  u64 ej = 1;
  for (unsigned j = 0; j < K; ++j, ej *= F.p()) {
    const auto c = F.coords(L(ej));
    for (unsigned i = 0; i < K; ++i) A[i][j] = c[i];
  }
  return A;
}

void check_ctx(const Field& a, const Field& b) {
  if (!a.same_as(b)) throw Error(ErrorKind::ContextMismatch, "different field contexts");
}

}  // namespace

QLinearMap::QLinearMap(FieldPtr ctx, std::vector<Elem> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  if (c_.size() != ctx_->ext_degree()) {
    throw Error(ErrorKind::DegreeMismatch, "expected " + std::to_string(ctx_->ext_degree()) + " coefficients");
  }
  for (Elem e : c_) {
    if (!ctx_->valid(e)) throw Error(ErrorKind::Parse, "coefficient outside the field");
  }
}

QLinearMap QLinearMap::identity(FieldPtr ctx) { return monomial(std::move(ctx), 1, 0); }

QLinearMap QLinearMap::monomial(FieldPtr ctx, Elem c, unsigned j) {
  std::vector<Elem> v(ctx->ext_degree(), 0);
  v[j % v.size()] = c;
  return QLinearMap(std::move(ctx), std::move(v));
}

Elem QLinearMap::operator()(Elem x) const {
  const Field& F = *ctx_;
  Elem r = 0;
  Elem xp = x;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) r = F.add(r, F.mul(c_[i], xp));
    if (i + 1 < c_.size()) xp = F.frobenius(xp, 1);
  }
  return r;
}

FFElement eval(const QLinearMap& L, const FFElement& x) {
  check_ctx(*L.ctx(), *x.ctx());
  return FFElement(L.ctx(), L(x.value()));
}

QLinearMap compose(const QLinearMap& a, const QLinearMap& b) {
  check_ctx(*a.ctx(), *b.ctx());
  const Field& F = *a.ctx();
  const unsigned m = a.m();
  std::vector<Elem> r(m, 0);
  for (unsigned i = 0; i < m; ++i) {
    if (a.coeffs()[i] == 0) continue;
    for (unsigned j = 0; j < m; ++j) {
      const Elem bj = b.coeffs()[j];
      if (bj == 0) continue;
      const unsigned k = (i + j) % m;
      r[k] = F.add(r[k], F.mul(a.coeffs()[i], F.frobenius(bj, i)));
    }
  }
  return QLinearMap(a.ctx(), std::move(r));
}

bool is_invertible(const QLinearMap& L) {
  std::vector<std::vector<u64>> none;
  return solve_mod_p(L.ctx()->p(), fp_matrix(L), none);
}

QLinearMap invert(const QLinearMap& L) {
  const Field& F = *L.ctx();
  const unsigned m = F.ext_degree();
  std::vector<Elem> basis(m);
  basis[0] = 1;
  for (unsigned i = 1; i < m; ++i) basis[i] = F.mul(basis[i - 1], F.primitive());
  std::vector<std::vector<u64>> rhs;
  for (Elem b : basis) rhs.push_back(F.coords(b));
  if (!solve_mod_p(F.p(), fp_matrix(L), rhs)) throw Error(ErrorKind::SingularMap, "map is not bijective");
  std::vector<Elem> pre;
  for (const auto& r : rhs) pre.push_back(F.from_coords(r));
  // L^{-1}(basis[i]) = pre[i]; swap roles and interpolate on the basis.
  return from_images(L.ctx(), basis, pre);
}

std::vector<Elem> solve_linear(const Field& F, std::vector<std::vector<Elem>> A, std::vector<Elem> b) {
  const std::size_t N = A.size();
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    while (piv < N && A[piv][col] == 0) ++piv;
    if (piv == N) throw Error(ErrorKind::SingularSystem, "singular linear system");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    const Elem inv = F.inv(A[col][col]);
    for (std::size_t j = col; j < N; ++j) A[col][j] = F.mul(A[col][j], inv);
    b[col] = F.mul(b[col], inv);
    for (std::size_t row = 0; row < N; ++row) {
      if (row == col || A[row][col] == 0) continue;
      const Elem f = A[row][col];
      for (std::size_t j = col; j < N; ++j) A[row][j] = F.sub(A[row][j], F.mul(f, A[col][j]));
      b[row] = F.sub(b[row], F.mul(f, b[col]));
    }
  }
  return b;
}

QLinearMap from_images(const FieldPtr& ctx, const std::vector<Elem>& basis, const std::vector<Elem>& images) {
  const Field& F = *ctx;
  const unsigned m = F.ext_degree();
  if (basis.size() != m || images.size() != m) throw Error(ErrorKind::NotABasis, "need exactly m basis elements");
  std::vector<std::vector<Elem>> A(m, std::vector<Elem>(m));
  for (unsigned k = 0; k < m; ++k) {
    Elem x = basis[k];
    for (unsigned i = 0; i < m; ++i) {
      A[k][i] = x;
      x = F.frobenius(x, 1);
    }
  }
  try {
    return QLinearMap(ctx, solve_linear(F, std::move(A), images));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularSystem) throw Error(ErrorKind::NotABasis, "elements are dependent over F_q");
    throw;
  }
}

QLinearMap from_basis_images(const FFElement& xi, const std::vector<Elem>& images) {
  const Field& F = *xi.ctx();
  std::vector<Elem> basis(F.ext_degree());
  Elem x = 1;
  for (auto& b : basis) {
    b = x;
    x = F.mul(x, xi.value());
  }
  return from_images(xi.ctx(), basis, images);
}

std::vector<Elem> coordinates_over(const Field& F, Elem a, const std::vector<Elem>& basis) {
  const unsigned m = F.ext_degree();
  if (basis.size() != m) throw Error(ErrorKind::NotABasis, "need exactly m basis elements");
  std::vector<std::vector<Elem>> A(m, std::vector<Elem>(m));
  std::vector<Elem> rhs(m);
  std::vector<Elem> cur(basis);
  Elem ap = a;
  for (unsigned j = 0; j < m; ++j) {
    A[j] = cur;
    rhs[j] = ap;
    for (auto& c : cur) c = F.frobenius(c, 1);
    ap = F.frobenius(ap, 1);
  }
  try {
    return solve_linear(F, std::move(A), std::move(rhs));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SingularSystem) throw Error(ErrorKind::NotABasis, "elements are dependent over F_q");
    throw;
  }
}

std::optional<StandardForm> is_standard(const QLinearMap& L, const UnityGroup* U) {
  std::optional<StandardForm> out;
  for (unsigned j = 0; j < L.m(); ++j) {
    const Elem c = L.coeffs()[j];
    if (c == 0) continue;
    if (out) return std::nullopt;
    out = StandardForm{c, j, std::nullopt};
  }
  if (out && U) out->in_unity = U->contains(out->c);
  return out;
}

UnityGroup::UnityGroup(FieldPtr ctx, u64 n, std::optional<Elem> xi) : ctx_(std::move(ctx)) {
  const Field& F = *ctx_;
  const u64 Q1 = F.size() - 1;
  if (n == 0 || Q1 % n != 0) {
    throw Error(ErrorKind::OrderUnavailable, std::to_string(n) + " does not divide " + std::to_string(Q1));
  }
  const Elem x = xi ? *xi : F.element_of_order(n);
  if (F.element_order(x) != n) throw Error(ErrorKind::OrderUnavailable, "supplied element does not have order n");
  powers_.resize(n);
  Elem cur = 1;
  for (u64 i = 0; i < n; ++i) {
    powers_[i] = cur;
    cur = F.mul(cur, x);
  }
  if (F.has_tables()) {
    step_ = Q1 / n;
    log_scale_ = modinv((F.log(x) / step_) % n, n);
  } else {
    lookup_.reserve(n);
    for (u64 i = 0; i < n; ++i) lookup_.emplace(powers_[i], static_cast<std::uint32_t>(i));
  }
}

long UnityGroup::index_of(Elem a) const {
  if (a == 0) return -1;
  if (step_ != 0) {
    const u64 k = ctx_->log(a);
    if (k % step_ != 0) return -1;
    return static_cast<long>(mulmod(k / step_, log_scale_, powers_.size()));
  }
  const auto it = lookup_.find(a);
  return it == lookup_.end() ? -1 : static_cast<long>(it->second);
}

bool fixes_unity_group(const QLinearMap& L, const UnityGroup& U) {
  check_ctx(*L.ctx(), *U.ctx());
  std::vector<char> hit(U.n(), 0);
  for (Elem u : U.powers()) {
    const long idx = U.index_of(L(u));
    if (idx < 0 || hit[static_cast<std::size_t>(idx)]) return false;
    hit[static_cast<std::size_t>(idx)] = 1;
  }
  return true;
}

bool fixes_unity_group(const QLinearMap& L, u64 n) { return fixes_unity_group(L, UnityGroup(L.ctx(), n)); }

Perm to_perm(const QLinearMap& L, const UnityGroup& U) {
  check_ctx(*L.ctx(), *U.ctx());
  std::vector<Point> img(U.n());
  std::vector<char> hit(U.n(), 0);
  for (std::size_t i = 0; i < U.n(); ++i) {
    const long idx = U.index_of(L(U.power(i)));
    if (idx < 0 || hit[static_cast<std::size_t>(idx)]) throw Error(ErrorKind::NotFixing, "map does not fix the unity group");
    hit[static_cast<std::size_t>(idx)] = 1;
    img[i] = static_cast<Point>(idx);
  }
  return Perm(std::move(img));
}

}  // namespace nslrs
