#include "nslrs/fpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "nslrs/error.hpp"

namespace nslrs {
namespace {

void trim(std::vector<Elem>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

void require_same(const Poly& a, const Poly& b) {
  if (!a.ctx()->same_as(*b.ctx())) throw Error(ErrorKind::ContextMismatch, "polynomials over different fields");
}

// Remainder of a modulo monic-or-not f, in place.
void reduce(std::vector<Elem>& a, const Poly& f) {
  const Field& F = *f.ctx();
  const auto& fc = f.coeffs();
  const std::size_t df = fc.size() - 1;
  const Elem lead_inv = F.inv(fc.back());
  trim(a);
  while (a.size() > df) {
    const Elem t = F.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i < df; ++i) {
      if (fc[i] != 0) a[shift + i] = F.sub(a[shift + i], F.mul(t, fc[i]));
    }
    a.pop_back();
    trim(a);
  }
}

}  // namespace

Poly::Poly(FieldPtr ctx, std::vector<Elem> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
  for (Elem e : c_) {
    if (!ctx_->valid(e)) throw Error(ErrorKind::Parse, "coefficient out of range");
  }
  trim(c_);
}

Poly Poly::monomial(FieldPtr ctx, Elem c, std::size_t degree) {
  std::vector<Elem> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(ctx), std::move(v));
}

Poly Poly::from_ints(FieldPtr ctx, const std::vector<std::int64_t>& coeffs) {
  std::vector<Elem> v;
  v.reserve(coeffs.size());
  for (auto c : coeffs) v.push_back(ctx->from_int(c));
  return Poly(std::move(ctx), std::move(v));
}

Poly Poly::xn_minus_one(FieldPtr ctx, std::size_t n) {
  std::vector<Elem> v(n + 1, 0);
  v[0] = ctx->neg(1);
  v[n] = 1;
  return Poly(std::move(ctx), std::move(v));
}

Elem Poly::eval(Elem x) const {
  Elem r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = ctx_->add(ctx_->mul(r, x), c_[i]);
  return r;
}

bool Poly::coefficients_in_base() const {
  return std::all_of(c_.begin(), c_.end(), [&](Elem e) { return ctx_->in_base(e); });
}

std::string Poly::to_string() const {
  std::ostringstream os;
  const bool prime_only = std::all_of(c_.begin(), c_.end(), [&](Elem e) { return e < ctx_->p(); });
  os << '[';
  for (std::size_t i = 0; i < c_.size(); ++i) {
    os << (i ? "," : "");
    if (prime_only) {
      os << c_[i];
    } else {
      os << ctx_->format(c_[i]);
    }
  }
  os << ']';
  return os.str();
}

Poly parse_poly(const FieldPtr& ctx, const std::string& text) {
  // Accepts "[1,1,0,1]" and nested coordinate lists "[[1,0],[0,1]]".
  std::vector<Elem> coeffs;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&]() -> u64 {
    skip();
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw Error(ErrorKind::Parse, "expected digit in polynomial text");
    }
    u64 v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
    return v;
  };
  skip();
  if (i >= text.size() || text[i] != '[') throw Error(ErrorKind::Parse, "polynomial must start with '['");
  ++i;
  skip();
  if (i < text.size() && text[i] == ']') return Poly::zero(ctx);
  while (true) {
    skip();
    if (i < text.size() && text[i] == '[') {
      ++i;
      std::vector<u64> coords;
      while (true) {
        coords.push_back(number());
        skip();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == ']') {
          ++i;
          break;
        }
        throw Error(ErrorKind::Parse, "bad coordinate list");
      }
      coeffs.push_back(ctx->from_coords(coords));
    } else {
      const u64 v = number();
      if (v >= ctx->p()) throw Error(ErrorKind::Parse, "integer coefficient must lie in the prime field");
      coeffs.push_back(v);
    }
    skip();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    if (i < text.size() && text[i] == ']') break;
    throw Error(ErrorKind::Parse, "bad polynomial text");
  }
  return Poly(ctx, std::move(coeffs));
}

Poly add(const Poly& a, const Poly& b) {
  require_same(a, b);
  const Field& F = *a.ctx();
  std::vector<Elem> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(a[i], b[i]);
  return Poly(a.ctx(), std::move(r));
}

Poly sub(const Poly& a, const Poly& b) {
  require_same(a, b);
  const Field& F = *a.ctx();
  std::vector<Elem> r(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(a[i], b[i]);
  return Poly(a.ctx(), std::move(r));
}

Poly mul(const Poly& a, const Poly& b) {
  require_same(a, b);
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.ctx());
  const Field& F = *a.ctx();
  const auto& ac = a.coeffs();
  const auto& bc = b.coeffs();
  std::vector<Elem> r(ac.size() + bc.size() - 1, 0);
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i] == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) {
      if (bc[j] != 0) r[i + j] = F.add(r[i + j], F.mul(ac[i], bc[j]));
    }
  }
  return Poly(a.ctx(), std::move(r));
}

Poly scale(const Poly& a, Elem c) {
  std::vector<Elem> r(a.coeffs());
  for (Elem& e : r) e = a.ctx()->mul(e, c);
  return Poly(a.ctx(), std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  require_same(a, b);
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZeroPoly, "division by the zero polynomial");
  const Field& F = *a.ctx();
  std::vector<Elem> rem(a.coeffs());
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  if (rem.size() <= db) return {Poly::zero(a.ctx()), a};
  std::vector<Elem> quo(rem.size() - db, 0);
  const Elem lead_inv = F.inv(bc.back());
  for (std::size_t k = rem.size(); k-- > db;) {
    const Elem t = F.mul(rem[k], lead_inv);
    quo[k - db] = t;
    if (t == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) rem[k - db + i] = F.sub(rem[k - db + i], F.mul(t, bc[i]));
  }
  rem.resize(db);
  return {Poly(a.ctx(), std::move(quo)), Poly(a.ctx(), std::move(rem))};
}

Poly mod(const Poly& a, const Poly& b) {
  require_same(a, b);
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZeroPoly, "division by the zero polynomial");
  std::vector<Elem> r(a.coeffs());
  reduce(r, b);
  return Poly(a.ctx(), std::move(r));
}

Poly monic(const Poly& a) {
  if (a.is_zero() || a.lead() == 1) return a;
  return scale(a, a.ctx()->inv(a.lead()));
}

Poly gcd(const Poly& a, const Poly& b) {
  require_same(a, b);
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x);
}

Poly poly_arith(const Poly& a, const Poly& b, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return add(a, b);
    case PolyOp::Sub: return sub(a, b);
    case PolyOp::Mul: return mul(a, b);
    case PolyOp::Mod: return mod(a, b);
    case PolyOp::Gcd: return gcd(a, b);
  }
  throw Error(ErrorKind::Internal, "bad op");
}

Poly derivative(const Poly& a) {
  const Field& F = *a.ctx();
  std::vector<Elem> r;
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) {
    r.push_back(F.mul(a[i], F.from_int(static_cast<std::int64_t>(i % F.p()))));
  }
  return Poly(a.ctx(), std::move(r));
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& f) {
  Poly prod = mul(a, b);
  std::vector<Elem> r(prod.coeffs());
  reduce(r, f);
  return Poly(f.ctx(), std::move(r));
}

Poly pow_mod(const Poly& a, u64 e, const Poly& f) {
  Poly result = mod(Poly::constant(f.ctx(), 1), f);
  Poly base = mod(a, f);
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, f);
    e >>= 1;
    if (e) base = mul_mod(base, base, f);
  }
  return result;
}

Poly reciprocal(const Poly& f) {
  std::vector<Elem> r(f.coeffs().rbegin(), f.coeffs().rend());
  return monic(Poly(f.ctx(), std::move(r)));
}

Poly scale_variable(const Poly& f, Elem c) {
  const Field& F = *f.ctx();
  std::vector<Elem> r(f.coeffs());
  Elem ci = 1;
  for (Elem& e : r) {
    e = F.mul(e, ci);
    ci = F.mul(ci, c);
  }
  return monic(Poly(f.ctx(), std::move(r)));
}

namespace {

// Rows x^(q j) mod f, j < deg f: the Frobenius h -> h^q is linear over F_q
// on F_q[x]/(f) when f has F_q coefficients.
std::vector<Poly> frobenius_rows(const Poly& f) {
  const auto D = static_cast<std::size_t>(f.degree());
  const u64 q = f.ctx()->q();
  std::vector<Poly> rows;
  rows.reserve(D);
  const Poly xq = pow_mod(Poly::x(f.ctx()), q, f);
  rows.push_back(mod(Poly::constant(f.ctx(), 1), f));
  for (std::size_t j = 1; j < D; ++j) rows.push_back(mul_mod(rows.back(), xq, f));
  return rows;
}

Poly apply_frobenius(const Poly& h, const std::vector<Poly>& rows) {
  const Field& F = *h.ctx();
  std::vector<Elem> r(rows.size(), 0);
  for (std::size_t j = 0; j < h.coeffs().size(); ++j) {
    const Elem c = h[j];
    if (c == 0) continue;
    const auto& row = rows[j].coeffs();
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i] != 0) r[i] = F.add(r[i], F.mul(c, row[i]));
    }
  }
  return Poly(h.ctx(), std::move(r));
}

}  // namespace

bool is_irreducible(const Poly& f_in) {
  if (f_in.degree() < 1) return false;
  const Poly f = monic(f_in);
  const auto D = static_cast<unsigned>(f.degree());
  if (D == 1) return true;
  if (f[0] == 0) return false;
  const auto rows = frobenius_rows(f);
  const Poly x = mod(Poly::x(f.ctx()), f);
  const auto primes = prime_divisors(D);
  Poly h = x;
  for (unsigned i = 1; i <= D; ++i) {
    h = apply_frobenius(h, rows);
    if (i < D && std::any_of(primes.begin(), primes.end(), [&](u64 r) { return D / r == i; })) {
      if (!gcd(sub(h, x), f).is_one()) return false;
    }
  }
  return h == x;
}

std::vector<std::pair<Poly, unsigned>> squarefree_factorization(const Poly& f_in) {
  std::vector<std::pair<Poly, unsigned>> out;
  const Poly f = monic(f_in);
  if (f.degree() < 1) return out;
  const Field& F = *f.ctx();
  const u64 p = F.p();
  Poly c = gcd(f, derivative(f));
  Poly w = divmod(f, c).first;
  unsigned i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly fac = divmod(w, y).first;
    if (!fac.is_one()) out.emplace_back(monic(fac), i);
    w = y;
    c = divmod(c, y).first;
    ++i;
  }
  if (!c.is_one()) {
    // c is a polynomial in x^p; take the p-th root coefficientwise.
    std::vector<Elem> root;
    const unsigned s = F.base().s;
    for (std::size_t j = 0; j < c.coeffs().size(); j += p) root.push_back(F.frobenius_p(c[j], s - 1));
    for (auto& [g, mult] : squarefree_factorization(Poly(f.ctx(), std::move(root)))) {
      out.emplace_back(g, mult * static_cast<unsigned>(p));
    }
  }
  return out;
}

std::vector<std::pair<unsigned, Poly>> distinct_degree_factorization(const Poly& f_in) {
  std::vector<std::pair<unsigned, Poly>> out;
  Poly f = monic(f_in);
  const Poly x = Poly::x(f.ctx());
  Poly h = x;
  unsigned d = 1;
  while (f.degree() >= 2 * static_cast<int>(d)) {
    h = pow_mod(h, f.ctx()->q(), f);
    Poly g = gcd(sub(h, x), f);
    if (!g.is_one()) {
      out.emplace_back(d, g);
      f = divmod(f, g).first;
      h = mod(h, f);
    }
    ++d;
  }
  if (f.degree() > 0) out.emplace_back(static_cast<unsigned>(f.degree()), f);
  return out;
}

u64 poly_order(const Poly& f_in) {
  if (f_in.degree() < 1) throw Error(ErrorKind::DegreeMismatch, "poly_order needs degree >= 1");
  if (f_in[0] == 0) throw Error(ErrorKind::ZeroConstantTerm, "f(0) = 0");
  const Poly f = monic(f_in);
  const Field& F = *f.ctx();
  const u64 p = F.p(), q = F.q();
  unsigned max_mult = 1;
  Poly rad = Poly::constant(f.ctx(), 1);
  for (auto& [g, mult] : squarefree_factorization(f)) {
    max_mult = std::max(max_mult, mult);
    rad = mul(rad, g);
  }
  u64 order = 1;
  const Poly one = Poly::constant(f.ctx(), 1);
  for (auto& [d, h] : distinct_degree_factorization(rad)) {
    u128 qd = 1;
    for (unsigned i = 0; i < d; ++i) {
      qd *= q;
      if (qd > (static_cast<u128>(1) << 62)) {
        throw Error(ErrorKind::TooLarge, "irreducible factor degree too large for exact order");
      }
    }
    u64 N = static_cast<u64>(qd) - 1;
    for (auto [r, e] : factorize(N)) {
      for (unsigned i = 0; i < e && N % r == 0; ++i) {
        if (!(pow_mod(Poly::x(f.ctx()), N / r, h) == mod(one, h))) break;
        N /= r;
      }
    }
    const u64 g = std::gcd(order, N);
    if (static_cast<u128>(order / g) * N > (static_cast<u128>(1) << 63)) throw Error(ErrorKind::Overflow, "order overflow");
    order = order / g * N;
  }
  u64 pt = 1;
  while (pt < max_mult) pt *= p;
  return order * pt;
}

Poly minimal_poly(const FieldPtr& ctx, Elem a) {
  const Field& F = *ctx;
  Poly result = Poly::constant(ctx, 1);
  Elem b = a;
  do {
    result = mul(result, Poly(ctx, {F.neg(b), 1}));
    b = F.frobenius(b, 1);
  } while (b != a);
  return result;
}

Poly minimal_poly(const FFElement& a) { return minimal_poly(a.ctx(), a.value()); }

Poly compose_spaced(const Poly& g, unsigned k) {
  if (k == 0) throw Error(ErrorKind::DegreeMismatch, "spacing must be positive");
  if (g.is_zero()) return g;
  std::vector<Elem> r(static_cast<std::size_t>(g.degree()) * k + 1, 0);
  for (std::size_t i = 0; i < g.coeffs().size(); ++i) r[i * k] = g[i];
  return Poly(g.ctx(), std::move(r));
}

std::vector<Poly> monic_irreducibles(const FieldPtr& ctx, unsigned degree) {
  const auto& elems = ctx->base_elements();
  const u64 q = elems.size();
  std::vector<Poly> out;
  u64 total = 1;
  for (unsigned i = 0; i < degree; ++i) total *= q;
  std::vector<Elem> c(degree + 1, 0);
  c[degree] = 1;
  for (u64 N = 0; N < total; ++N) {
    u64 t = N;
    for (unsigned i = 0; i < degree; ++i) {
      c[i] = elems[t % q];
      t /= q;
    }
    Poly f(ctx, c);
    if (is_irreducible(f)) out.push_back(std::move(f));
  }
  return out;
}

PSetVerdict p_set_member(u64 k, u64 n, u64 q) {
  if (n == 0 || std::gcd(n, q) != 1) {
    throw Error(ErrorKind::NotCoprime, "gcd(" + std::to_string(n) + "," + std::to_string(q) + ") != 1");
  }
  const unsigned m = mult_order(n, q);
  PSetVerdict v;
  v.member = true;
  for (u64 r : prime_divisors(k)) {
    if (n % r != 0) {
      v.member = false;
      v.failing_prime = r;
      v.reason = "prime " + std::to_string(r) + " does not divide n=" + std::to_string(n);
      return v;
    }
    // r | (q^m-1)/n  <=>  q^m = 1 mod r*n
    if (powmod(q, m, r * n) == 1) {
      v.member = false;
      v.failing_prime = r;
      v.reason = "prime " + std::to_string(r) + " divides (q^m-1)/n";
      return v;
    }
  }
  return v;
}

bool spaced_criterion(u64 n, u64 q, u64 k) {
  if (k < 2) return false;
  if (!p_set_member(k, n, q).member) return false;
  if (n % 4 == 2 && k % 4 == 0 && p_set_member(2, n, q).member) return false;
  return true;
}

bool spaced_irreducible(const Poly& g_in, unsigned k) {
  if (g_in.is_zero()) throw Error(ErrorKind::ReducibleInput, "zero polynomial");
  if (g_in[0] == 0) throw Error(ErrorKind::ZeroConstantTerm, "g(0) = 0");
  const Poly g = monic(g_in);
  if (!is_irreducible(g)) throw Error(ErrorKind::ReducibleInput, "g is reducible");
  const u64 n = poly_order(g);
  const u64 q = g.ctx()->q();
  if (std::gcd(n * k, q) != 1) throw Error(ErrorKind::NotCoprime, "gcd(nk, q) != 1");
  return spaced_criterion(n, q, k);
}

}  // namespace nslrs
