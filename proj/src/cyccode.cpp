#include "nslrs/cyccode.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>

#include "nslrs/error.hpp"

namespace nslrs {
namespace {

Poly word_poly(const FieldPtr& ctx, const Word& c) { return Poly(ctx, c); }

Word poly_word(const Poly& p, std::size_t n) {
  Word w(n, 0);
  for (std::size_t i = 0; i < p.coeffs().size() && i < n; ++i) w[i] = p[i];
  return w;
}

u64 binom_saturated(u64 n, u64 k, u64 cap) {
  if (k > n) return 0;
  u128 r = 1;
  for (u64 i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<u64>(r);
}

}  // namespace

CyclicCode::CyclicCode(std::size_t n, Poly generator) : n_(n), g_(std::move(generator)), h_(Poly::zero(g_.ctx())) {
  if (n_ == 0) throw Error(ErrorKind::BadGenerator, "length must be positive");
  if (g_.is_zero() || g_.lead() != 1) throw Error(ErrorKind::BadGenerator, "generator must be monic");
  if (!g_.coefficients_in_base()) throw Error(ErrorKind::BadGenerator, "generator must have coefficients in F_q");
  auto [quo, rem] = divmod(Poly::xn_minus_one(g_.ctx(), n_), g_);
  if (!rem.is_zero()) throw Error(ErrorKind::BadGenerator, "generator does not divide x^n - 1");
  h_ = std::move(quo);
}

bool CyclicCode::contains(const Word& c) const {
  if (c.size() != n_) return false;
  const Field& F = *ctx();
  for (Elem e : c) {
    if (!F.valid(e) || !F.in_base(e)) return false;
  }
  return mod(word_poly(ctx(), c), g_).is_zero();
}

Word CyclicCode::from_message(const std::vector<Elem>& msg) const {
  if (msg.size() > dimension()) throw Error(ErrorKind::DegreeMismatch, "message longer than the dimension");
  return poly_word(mul(Poly(ctx(), msg), g_), n_);
}

std::vector<Word> CyclicCode::basis() const {
  std::vector<Word> rows;
  for (std::size_t i = 0; i < dimension(); ++i) rows.push_back(poly_word(mul(Poly::monomial(ctx(), 1, i), g_), n_));
  return rows;
}

std::vector<Word> CyclicCode::systematic_basis() const {
  std::vector<Word> rows;
  const std::size_t k = dimension();
  for (std::size_t i = 0; i < k; ++i) {
    const Poly t = Poly::monomial(ctx(), 1, n_ - k + i);
    rows.push_back(poly_word(sub(t, mod(t, g_)), n_));
  }
  return rows;
}

Word CyclicCode::encode(Elem a) const {
  if (!xi_) throw Error(ErrorKind::Internal, "encode needs an irreducible code");
  const Field& F = *ctx();
  Word w(n_);
  Elem x = a;
  for (std::size_t i = 0; i < n_; ++i) {
    w[i] = F.trace(x);
    x = F.mul(x, *xi_);
  }
  return w;
}

CyclicCode irreducible_code(const FieldPtr& ctx, std::size_t n, Elem xi) {
  const Field& F = *ctx;
  if (F.element_order(xi) != n) throw Error(ErrorKind::OrderUnavailable, "xi does not have order n");
  const Poly h = minimal_poly(ctx, F.inv(xi));
  CyclicCode C(n, divmod(Poly::xn_minus_one(ctx, n), h).first);
  C.xi_ = xi;
  return C;
}

CyclicCode irreducible_code(u64 n, u64 q) {
  if (n == 0 || std::gcd(n, q) != 1) throw Error(ErrorKind::NotCoprime, "gcd(n,q) != 1");
  const auto ctx = Field::extension(q, mult_order(n, q));
  return irreducible_code(ctx, static_cast<std::size_t>(n), ctx->element_of_order(n));
}

CyclicCode dual(const CyclicCode& C) { return CyclicCode(C.n(), monic(reciprocal(C.parity_check()))); }

Word apply_perm(const Word& c, const Perm& pi) { return act_on_vector(c, pi); }

bool is_paut(const CyclicCode& C, const Perm& pi) {
  check_degree(C.n(), pi.size());
  for (const Word& row : C.basis()) {
    if (!C.contains(apply_perm(row, pi))) return false;
  }
  return true;
}

StabChain paut_bruteforce(const CyclicCode& C) {
  const std::size_t n = C.n();
  if (n > 8) throw Error(ErrorKind::TooLarge, "brute force limited to n <= 8");
  const auto rows = C.basis();
  std::vector<Point> img(n);
  std::iota(img.begin(), img.end(), Point{0});
  StabChain chain(n);
  u64 count = 0;
  do {
    const Perm pi(img);
    bool ok = true;
    for (const Word& row : rows) {
      if (!C.contains(apply_perm(row, pi))) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    ++count;
    chain.add(pi);
  } while (std::next_permutation(img.begin(), img.end()));
  if (chain.order() != count) throw Error(ErrorKind::Internal, "automorphism count disagrees with the chain order");
  return chain;
}

StabChain paut_standard(const CyclicCode& C) { return standard_group(C.n(), C.q()); }

std::size_t weight(const Word& c) {
  return static_cast<std::size_t>(std::count_if(c.begin(), c.end(), [](Elem e) { return e != 0; }));
}

std::map<std::size_t, u64> weight_distribution(const CyclicCode& C) {
  const Field& F = *C.ctx();
  const auto& elems = F.base_elements();
  const std::size_t k = C.dimension();
  const std::size_t n = C.n();
  u128 total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= elems.size();
    if (total > (u128{1} << 20)) throw Error(ErrorKind::TooLarge, "q^dimension exceeds 2^20");
  }
  std::map<std::size_t, u64> dist;
  if (k == 0) {
    dist[0] = 1;
    return dist;
  }
  const auto rows = C.basis();
  // Each worker owns one value of the top message digit.
  auto run = [&](Elem top, std::vector<u64>& counts) {
    Word w(n, 0);
    for (std::size_t j = 0; j < n; ++j) w[j] = F.mul(top, rows[k - 1][j]);
    std::vector<std::size_t> digit(k - 1, 0);
    while (true) {
      ++counts[weight(w)];
      std::size_t i = 0;
      for (; i < k - 1; ++i) {
        const Elem old = elems[digit[i]];
        digit[i] = (digit[i] + 1) % elems.size();
        const Elem diff = F.sub(elems[digit[i]], old);
        for (std::size_t j = 0; j < n; ++j) {
          if (rows[i][j] != 0) w[j] = F.add(w[j], F.mul(diff, rows[i][j]));
        }
        if (digit[i] != 0) break;
      }
      if (i == k - 1) break;
    }
  };
  std::vector<std::vector<u64>> counts(elems.size(), std::vector<u64>(n + 1, 0));
  if (total >= (u128{1} << 14)) {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < elems.size(); ++t) pool.emplace_back(run, elems[t], std::ref(counts[t]));
    for (auto& th : pool) th.join();
  } else {
    for (std::size_t t = 0; t < elems.size(); ++t) run(elems[t], counts[t]);
  }
  for (const auto& c : counts) {
    for (std::size_t w = 0; w <= n; ++w) {
      if (c[w]) dist[w] += c[w];
    }
  }
  return dist;
}

LowWeightWords low_weight_words(const CyclicCode& C, unsigned w_max, u64 work_limit) {
  const Field& F = *C.ctx();
  const std::size_t k = C.dimension();
  const std::size_t n = C.n();
  const u64 q1 = F.q() - 1;
  auto work = [&](unsigned w) {
    u128 sum = 0;
    for (unsigned r = 1; r <= w && r <= k; ++r) {
      u128 term = binom_saturated(k, r, work_limit);
      for (unsigned i = 1; i < r && term <= work_limit; ++i) term *= q1;
      sum += term;
      if (sum > work_limit) return work_limit + 1;
    }
    return static_cast<u64>(sum);
  };
  unsigned w = w_max;
  while (w > 1 && work(w) > work_limit) --w;
  LowWeightWords out{{}, w};
  if (k == 0 || w == 0) return out;
  const auto rows = C.systematic_basis();
  std::vector<Elem> nonzero;
  for (Elem e : F.base_elements()) {
    if (e != 0) nonzero.push_back(e);
  }
  std::vector<Word> stack(w + 1, Word(n, 0));
  // Depth r holds a combination of r rows with information weight r; the
  // first chosen row carries scalar 1.
  auto dfs = [&](auto&& self, std::size_t next_row, unsigned depth) -> void {
    for (std::size_t i = next_row; i < k; ++i) {
      const auto& scalars = depth == 0 ? std::vector<Elem>{1} : nonzero;
      for (Elem s : scalars) {
        Word& cur = stack[depth + 1];
        const Word& prev = stack[depth];
        for (std::size_t j = 0; j < n; ++j) cur[j] = rows[i][j] == 0 ? prev[j] : F.add(prev[j], F.mul(s, rows[i][j]));
        if (weight(cur) <= w) {
          Word norm = cur;
          const auto first = std::find_if(norm.begin(), norm.end(), [](Elem e) { return e != 0; });
          const Elem inv = F.inv(*first);
          for (Elem& e : norm) e = F.mul(e, inv);
          out.words.push_back(std::move(norm));
        }
        if (depth + 1 < w) self(self, i + 1, depth + 1);
      }
    }
  };
  dfs(dfs, 0, 0);
  std::sort(out.words.begin(), out.words.end());
  return out;
}

CyclicCode spaced_product(const CyclicCode& C, unsigned k) {
  const u64 nk = C.n() * k;
  if (std::gcd(nk, C.q()) != 1) throw Error(ErrorKind::NotCoprime, "gcd(nk,q) != 1");
  return CyclicCode(static_cast<std::size_t>(nk), compose_spaced(C.generator(), k));
}

Word interleave(const std::vector<Word>& words) {
  const std::size_t k = words.size();
  const std::size_t n = k ? words[0].size() : 0;
  Word out(n * k, 0);
  for (std::size_t r = 0; r < k; ++r) {
    check_degree(words[r].size(), n);
    for (std::size_t i = 0; i < n; ++i) out[r + k * i] = words[r][i];
  }
  return out;
}

bool spaced_product_matches_interleaving(const CyclicCode& C, unsigned k) {
  const CyclicCode P = spaced_product(C, k);
  if (P.dimension() != k * C.dimension()) return false;
  const Word zero(C.n(), 0);
  for (unsigned r = 0; r < k; ++r) {
    for (const Word& row : C.basis()) {
      std::vector<Word> parts(k, zero);
      parts[r] = row;
      if (!P.contains(interleave(parts))) return false;
    }
  }
  return true;
}

Word twist_word(const Field& F, const Word& c, Elem nu, unsigned f) {
  const std::size_t n = c.size();
  Word out(n * f);
  Elem nj = 1;
  for (std::size_t j = 0; j < n * f; ++j) {
    out[j] = F.mul(nj, c[j % n]);
    nj = F.mul(nj, nu);
  }
  return out;
}

namespace {

void check_twist(const CyclicCode& C, Elem nu, unsigned f) {
  const Field& F = *C.ctx();
  if (f == 0 || nu == 0 || !F.valid(nu) || !F.in_base(nu)) throw Error(ErrorKind::BadTwist, "nu must lie in F_q^*");
  if (F.pow(nu, C.n() * f) != 1) throw Error(ErrorKind::BadTwist, "nu^(nf) != 1");
}

}  // namespace

CyclicCode twist_extension(const CyclicCode& C, Elem nu, unsigned f) {
  check_twist(C, nu, f);
  const std::size_t N = C.n() * f;
  const Poly hn = scale_variable(C.parity_check(), nu);
  auto [gen, rem] = divmod(Poly::xn_minus_one(C.ctx(), N), hn);
  if (!rem.is_zero()) throw Error(ErrorKind::Internal, "h(nu x) does not divide x^(nf) - 1");
  CyclicCode T(N, gen);
  for (const Word& row : C.basis()) {
    if (!T.contains(twist_word(*C.ctx(), row, nu, f))) throw Error(ErrorKind::Internal, "twisted word outside the code");
  }
  return T;
}

bool twist_matches_product(const CyclicCode& C, Elem nu, unsigned f) {
  check_twist(C, nu, f);
  const Field& F = *C.ctx();
  const std::size_t n = C.n();
  const Elem nu_n = F.pow(nu, n);
  if (F.element_order(nu_n) != f) return false;
  const auto& elems = F.base_elements();
  const std::size_t k = C.dimension();
  u128 total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    total *= elems.size();
    if (total > (u128{1} << 16)) throw Error(ErrorKind::TooLarge, "code too large for set comparison");
  }
  // Membership in C_0 x C_1 at layout i + n r: rows in C_1, columns in C_0.
  const Elem nu_inv = F.inv(nu);
  auto in_product = [&](const Word& w) {
    for (std::size_t r = 0; r < f; ++r) {
      Word row(n);
      Elem s = 1;
      for (std::size_t i = 0; i < n; ++i) {
        row[i] = F.mul(s, w[i + n * r]);
        s = F.mul(s, nu_inv);
      }
      if (!C.contains(row)) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Elem s = w[i];
      for (std::size_t r = 1; r < f; ++r) {
        s = F.mul(s, nu_n);
        if (w[i + n * r] != s) return false;
      }
    }
    return true;
  };
  std::set<Word> seen;
  std::vector<std::size_t> digit(k, 0);
  for (u64 t = 0; t < static_cast<u64>(total); ++t) {
    std::vector<Elem> msg(k);
    for (std::size_t i = 0; i < k; ++i) msg[i] = elems[digit[i]];
    const Word tw = twist_word(F, C.from_message(msg), nu, f);
    if (!in_product(tw)) return false;
    seen.insert(tw);
    for (std::size_t i = 0; i < k; ++i) {
      digit[i] = (digit[i] + 1) % elems.size();
      if (digit[i] != 0) break;
    }
  }
  // |C_0 x C_1| = q^(1 * dim C_1) = q^k.
  return seen.size() == static_cast<std::size_t>(total);
}

}  // namespace nslrs
