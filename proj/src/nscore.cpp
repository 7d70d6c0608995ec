#include "nslrs/nscore.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <thread>

#include "nslrs/error.hpp"

namespace nslrs {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

u64 saturating_pow(u64 base, u64 exp, u64 cap) {
  u128 r = 1;
  for (u64 i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap) return cap + 1;
  }
  return static_cast<u64>(r);
}

void require_coprime(u64 n, u64 q) {
  if (!is_prime_power(q)) throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
  if (n == 0 || std::gcd(n, q) != 1) {
    throw Error(ErrorKind::NotCoprime, "gcd(" + std::to_string(n) + "," + std::to_string(q) + ") != 1");
  }
}

PairReport blank_report(u64 n, u64 q) {
  require_coprime(n, q);
  PairReport r;
  r.n = n;
  r.q = q;
  r.m = mult_order(n, q);
  const auto qo = q_order(n, q);
  r.d = qo.d;
  r.e = qo.e;
  r.standard_order = n * r.m;
  return r;
}

QLinearMap map_from_perm(const UnityGroup& U, const Perm& pi) {
  const unsigned m = U.ctx()->ext_degree();
  std::vector<Elem> images(m);
  for (unsigned i = 0; i < m; ++i) images[i] = U.power(pi[i]);
  return from_basis_images(FFElement(U.ctx(), U.xi()), images);
}

bool is_standard_stab(const Perm& pi, u64 q) {
  const std::size_t n = pi.size();
  if (n <= 1) return true;
  const u64 a = pi[1];
  for (std::size_t i = 0; i < n; ++i) {
    if (pi[i] != mulmod(a, i, n)) return false;
  }
  u64 qj = 1 % n;
  do {
    if (qj == a) return true;
    qj = mulmod(qj, q % n, n);
  } while (qj != 1 % n);
  return false;
}

// Fills order/generators from the sorted stabilizer of 0.
void finish_from_stabilizer(PairReport& r, const UnityGroup& U, const std::vector<Perm>& stab) {
  const std::size_t n = U.n();
  StabChain chain(n);
  r.generators.clear();
  if (n > 1) {
    chain.add(Perm::affine(n, 1, 1));
    r.generators.push_back(QLinearMap::monomial(U.ctx(), U.xi(), 0));
  }
  for (const Perm& pi : stab) {
    if (chain.add(pi)) r.generators.push_back(map_from_perm(U, pi));
  }
  r.order = static_cast<u64>(n) * stab.size();
  if (chain.order() != r.order) {
    throw Error(ErrorKind::Internal, "generated group order " + std::to_string(chain.order()) + " differs from count " +
                                         std::to_string(r.order));
  }
  if (r.order % r.standard_order != 0) throw Error(ErrorKind::Internal, "group order not divisible by nm");
  r.nonstandard = r.order > r.standard_order;
}

// Same, from stabilizer generators whose group has the given order.
void finish_from_generators(PairReport& r, const UnityGroup& U, const std::vector<Perm>& gens, u64 stab_order) {
  const std::size_t n = U.n();
  StabChain chain(n);
  r.generators.clear();
  if (n > 1) {
    chain.add(Perm::affine(n, 1, 1));
    r.generators.push_back(QLinearMap::monomial(U.ctx(), U.xi(), 0));
  }
  std::vector<Perm> sorted = gens;
  std::sort(sorted.begin(), sorted.end());
  for (const Perm& pi : sorted) {
    if (chain.add(pi)) r.generators.push_back(map_from_perm(U, pi));
  }
  if (stab_order > std::numeric_limits<u64>::max() / n) throw Error(ErrorKind::Overflow, "group order exceeds 2^64");
  r.order = static_cast<u64>(n) * stab_order;
  if (chain.order() != r.order) {
    throw Error(ErrorKind::Internal, "generated group order " + std::to_string(chain.order()) + " differs from search count " +
                                         std::to_string(r.order));
  }
  r.nonstandard = r.order > r.standard_order;
}

// ---------------------------------------------------------------------------
// Pruned search.

struct Check {
  std::vector<std::uint32_t> pos;
  std::vector<Elem> coef;
};

struct Problem {
  FieldPtr F;
  std::optional<UnityGroup> U;
  std::size_t n = 0;
  unsigned m = 0;
  u64 q = 0;
  std::vector<Check> checks;
  std::vector<std::vector<std::pair<std::uint32_t, Elem>>> occ;
  std::vector<std::uint32_t> basis;
  std::vector<std::vector<Elem>> expand;  // expand[j][t]: xi^j = sum_t expand[j][t] xi^{basis[t]}
  unsigned weight_bound = 0;
};

// Rows of an echelon form over F_p, for F_q-span membership.
class SpanTracker {
 public:
  explicit SpanTracker(const Field& F) : F_(F), pivot_(F.degree(), -1) {}

  // Reduces v in place; returns true if it became zero.
  bool reduce(std::vector<u64>& v) const {
    const u64 p = F_.p();
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (v[c] == 0 || pivot_[c] < 0) continue;
      const auto& row = rows_[static_cast<std::size_t>(pivot_[c])];
      const u64 f = v[c];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = (v[j] + (p - f) * row[j]) % p;
    }
    return std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
  }

  bool in_span(Elem a) const {
    auto v = F_.coords(a);
    return reduce(v);
  }

  // Adds the F_q-multiples of a.
  void add_fq_line(Elem a) {
    const Elem omega = F_.q() == F_.p() ? 1 : F_.element_of_order(F_.q() - 1);
    Elem scale = 1;
    for (unsigned l = 0; l < F_.base().s; ++l) {
      auto v = F_.coords(F_.mul(scale, a));
      if (!reduce(v)) {
        std::size_t c = 0;
        while (v[c] == 0) ++c;
        const u64 inv = modinv(v[c], F_.p());
        for (auto& x : v) x = x * inv % F_.p();
        // Keep rows fully reduced at the new pivot.
        for (auto& row : rows_) {
          if (row[c] == 0) continue;
          const u64 f = row[c];
          for (std::size_t j = 0; j < v.size(); ++j) row[j] = (row[j] + (F_.p() - f) * v[j]) % F_.p();
        }
        pivot_[c] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
      }
      scale = F_.mul(scale, omega);
    }
  }

 private:
  const Field& F_;
  std::vector<int> pivot_;
  std::vector<std::vector<u64>> rows_;
};

Problem build_problem(u64 n, u64 q, const SearchBudget& budget) {
  Problem P;
  P.n = static_cast<std::size_t>(n);
  P.q = q;
  P.m = mult_order(n, q);
  P.F = Field::extension(q, P.m);
  P.U.emplace(P.F, n);
  const Field& F = *P.F;
  const UnityGroup& U = *P.U;

  const CyclicCode D = dual(irreducible_code(P.F, P.n, U.xi()));
  const unsigned w = budget.w_max ? budget.w_max : P.m + 2;
  const auto low = low_weight_words(D, w);
  P.weight_bound = low.weight_bound;
  P.occ.assign(P.n, {});
  for (const Word& word : low.words) {
    Check c;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (word[i] == 0) continue;
      c.pos.push_back(static_cast<std::uint32_t>(i));
      c.coef.push_back(word[i]);
    }
    const auto id = static_cast<std::uint32_t>(P.checks.size());
    for (std::size_t t = 0; t < c.pos.size(); ++t) P.occ[c.pos[t]].emplace_back(id, c.coef[t]);
    P.checks.push_back(std::move(c));
  }

  // Greedy basis: each new position maximizes, lexicographically, the number
  // of checks through it with 1, 2, ... other positions still open.
  std::vector<char> closed(P.n, 0);
  std::vector<std::uint32_t> open_count(P.checks.size());
  for (std::size_t c = 0; c < P.checks.size(); ++c) open_count[c] = static_cast<std::uint32_t>(P.checks[c].pos.size());
  auto close = [&](std::uint32_t start) {
    std::vector<std::uint32_t> queue{start};
    while (!queue.empty()) {
      const std::uint32_t i = queue.back();
      queue.pop_back();
      if (closed[i]) continue;
      closed[i] = 1;
      for (auto [c, coef] : P.occ[i]) {
        (void)coef;
        if (--open_count[c] == 1) {
          for (auto j : P.checks[c].pos) {
            if (!closed[j]) queue.push_back(j);
          }
        }
      }
    }
  };
  SpanTracker span(F);
  P.basis.push_back(0);
  span.add_fq_line(1);
  close(0);
  while (P.basis.size() < P.m) {
    std::vector<u64> best_score;
    long best = -1;
    for (std::uint32_t b = 0; b < P.n; ++b) {
      if (closed[b] || span.in_span(U.power(b))) continue;
      std::vector<u64> score(P.weight_bound + 1, 0);
      for (auto [c, coef] : P.occ[b]) {
        (void)coef;
        const std::uint32_t others = open_count[c] - 1;
        if (others >= 1 && others <= P.weight_bound) ++score[others - 1];
      }
      if (best < 0 || score > best_score) {
        best = b;
        best_score = std::move(score);
      }
    }
    if (best < 0) throw Error(ErrorKind::Internal, "no independent position left");
    const auto b = static_cast<std::uint32_t>(best);
    P.basis.push_back(b);
    span.add_fq_line(U.power(b));
    close(b);
  }

  std::vector<Elem> basis_elems;
  for (auto b : P.basis) basis_elems.push_back(U.power(b));
  P.expand.resize(P.n);
  for (std::size_t j = 0; j < P.n; ++j) P.expand[j] = coordinates_over(F, U.power(j), basis_elems);
  return P;
}

struct Shared {
  const SearchBudget* budget;
  Clock::time_point start;
  std::atomic<u64> nodes{0};
  std::atomic<bool> abort{false};
};

// One assignment state. A probe fixes the first `level` basis points and sends
// basis[level] to a target, then looks for the first completion in DFS order.
class Worker {
 public:
  Worker(const Problem& P, Shared& S) : P_(P), S_(S), val_(P.n, -1), used_(P.n, 0), stamp_(P.n, 0) {
    remaining_.resize(P.checks.size());
    sum_.assign(P.checks.size(), 0);
    for (std::size_t c = 0; c < P.checks.size(); ++c) remaining_[c] = static_cast<std::uint32_t>(P.checks[c].pos.size());
  }

  bool assign(std::uint32_t pos, std::uint32_t v) {
    const Field& F = *P_.F;
    const UnityGroup& U = *P_.U;
    queue_.clear();
    queue_.emplace_back(pos, v);
    bool ok = true;
    for (std::size_t head = 0; head < queue_.size() && ok; ++head) {
      const auto [i, vi] = queue_[head];
      if (val_[i] >= 0) {
        if (static_cast<std::uint32_t>(val_[i]) != vi) ok = false;
        continue;
      }
      if (used_[vi]) {
        ok = false;
        continue;
      }
      val_[i] = static_cast<std::int32_t>(vi);
      used_[vi] = 1;
      trail_.push_back(i);
      const Elem y = U.power(vi);
      // The loop runs to the end even after a conflict so undo stays uniform.
      for (auto [c, coef] : P_.occ[i]) {
        const std::uint32_t rem = --remaining_[c];
        sum_[c] = F.add(sum_[c], F.mul(coef, y));
        if (!ok) continue;
        if (rem == 0) {
          if (sum_[c] != 0) ok = false;
        } else if (rem == 1) {
          const Check& ch = P_.checks[c];
          std::size_t t = 0;
          while (val_[ch.pos[t]] >= 0) ++t;
          const long idx = U.index_of(F.neg(F.div(sum_[c], ch.coef[t])));
          if (idx < 0) {
            ok = false;
          } else {
            queue_.emplace_back(ch.pos[t], static_cast<std::uint32_t>(idx));
          }
        }
      }
    }
    return ok;
  }

  void undo(std::size_t mark) {
    const Field& F = *P_.F;
    const UnityGroup& U = *P_.U;
    while (trail_.size() > mark) {
      const std::uint32_t i = trail_.back();
      trail_.pop_back();
      const Elem y = U.power(static_cast<std::size_t>(val_[i]));
      for (auto [c, coef] : P_.occ[i]) {
        ++remaining_[c];
        sum_[c] = F.sub(sum_[c], F.mul(coef, y));
      }
      used_[static_cast<std::size_t>(val_[i])] = 0;
      val_[i] = -1;
    }
  }

  std::optional<Perm> probe(std::size_t level, std::uint32_t target, u64& nodes) {
    undo(0);
    const u64 before = local_nodes_;
    std::optional<Perm> found;
    bool ok = assign(0, 0);
    for (std::size_t t = 1; t < level && ok; ++t) ok = assign(P_.basis[t], P_.basis[t]);
    if (ok) {
      count_node();
      if (assign(P_.basis[level], target)) dfs(level + 1, found);
    }
    nodes = local_nodes_ - before;
    flush_nodes();
    return found;
  }

  bool aborted() const { return S_.abort.load(std::memory_order_relaxed); }

 private:
  void count_node() {
    if (++local_nodes_ % 1024 == 0) flush_nodes();
  }

  void flush_nodes() {
    const u64 delta = local_nodes_ - flushed_;
    const u64 total = S_.nodes.fetch_add(delta) + delta;
    flushed_ = local_nodes_;
    if (total > S_.budget->max_nodes || seconds_since(S_.start) > S_.budget->max_seconds) S_.abort = true;
  }

  void dfs(std::size_t depth, std::optional<Perm>& found) {
    if (aborted()) return;
    if (depth == P_.basis.size()) {
      found = leaf();
      return;
    }
    const std::uint32_t b = P_.basis[depth];
    if (val_[b] >= 0) {
      dfs(depth + 1, found);
      return;
    }
    for (std::uint32_t v = 1; v < P_.n && !found && !aborted(); ++v) {
      if (used_[v]) continue;
      count_node();
      const std::size_t mk = trail_.size();
      if (assign(b, v)) dfs(depth + 1, found);
      undo(mk);
    }
  }

  // Full linear-extension check from the basis images.
  std::optional<Perm> leaf() {
    const Field& F = *P_.F;
    const UnityGroup& U = *P_.U;
    ++stamp_gen_;
    std::vector<Elem> yb(P_.basis.size());
    for (std::size_t t = 0; t < yb.size(); ++t) yb[t] = U.power(static_cast<std::size_t>(val_[P_.basis[t]]));
    std::vector<Point> img(P_.n);
    for (std::size_t j = 0; j < P_.n; ++j) {
      Elem y = 0;
      const auto& a = P_.expand[j];
      for (std::size_t t = 0; t < yb.size(); ++t) {
        if (a[t] != 0) y = F.add(y, F.mul(a[t], yb[t]));
      }
      const long idx = U.index_of(y);
      if (idx < 0) return std::nullopt;
      if (val_[j] >= 0 && val_[j] != idx) return std::nullopt;
      if (stamp_[static_cast<std::size_t>(idx)] == stamp_gen_) return std::nullopt;
      stamp_[static_cast<std::size_t>(idx)] = stamp_gen_;
      img[j] = static_cast<Point>(idx);
    }
    return Perm(std::move(img));
  }

  const Problem& P_;
  Shared& S_;
  std::vector<std::int32_t> val_;
  std::vector<char> used_;
  std::vector<u64> stamp_;
  u64 stamp_gen_ = 0;
  std::vector<std::uint32_t> remaining_;
  std::vector<Elem> sum_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> queue_;
  u64 local_nodes_ = 0;
  u64 flushed_ = 0;
};

std::vector<Point> orbit_of(Point start, const std::vector<Perm>& gens, std::size_t n) {
  std::vector<char> seen(n, 0);
  std::vector<Point> orbit{start};
  seen[start] = 1;
  for (std::size_t h = 0; h < orbit.size(); ++h) {
    for (const auto& g : gens) {
      const Point y = g[orbit[h]];
      if (!seen[y]) {
        seen[y] = 1;
        orbit.push_back(y);
      }
    }
  }
  return orbit;
}

StabilizerSearch run_search(const Problem& P, const SearchBudget& budget, const SearchOptions& opts) {
  Shared S;
  S.budget = &budget;
  S.start = Clock::now();
  StabilizerSearch out;
  out.base = P.basis;
  out.orbit_sizes.assign(P.basis.size(), 1);
  out.stats.weight_bound = P.weight_bound;
  out.stats.checks = P.checks.size();

  const unsigned threads = std::max(1u, resolve_threads(budget.threads));
  std::vector<std::unique_ptr<Worker>> workers;
  for (unsigned t = 0; t < threads; ++t) workers.push_back(std::make_unique<Worker>(P, S));

  bool done = false;
  for (std::size_t level = P.basis.size(); level-- > 1 && !done;) {
    const Point b = P.basis[level];
    std::vector<Point> orbit = orbit_of(b, out.generators, P.n);
    std::vector<char> in_orbit(P.n, 0);
    for (auto x : orbit) in_orbit[x] = 1;

    // Targets are taken in increasing order; a target already in the orbit of
    // the known subgroup needs no probe.
    std::vector<std::uint32_t> targets;
    for (std::uint32_t v = 1; v < P.n; ++v) {
      if (!in_orbit[v]) targets.push_back(v);
    }
    std::vector<std::optional<Perm>> results(targets.size());
    std::vector<u64> probe_nodes(targets.size(), 0);
    std::vector<char> computed(targets.size(), 0);
    auto compute_range = [&](std::size_t lo, std::size_t hi) {
      if (threads == 1 || hi - lo <= 1) {
        for (std::size_t k = lo; k < hi; ++k) {
          results[k] = workers[0]->probe(level, targets[k], probe_nodes[k]);
          computed[k] = 1;
        }
        return;
      }
      std::atomic<std::size_t> next{lo};
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          for (std::size_t k; (k = next.fetch_add(1)) < hi && !S.abort;) {
            results[k] = workers[t]->probe(level, targets[k], probe_nodes[k]);
            computed[k] = 1;
          }
        });
      }
      for (auto& th : pool) th.join();
    };

    for (std::size_t k = 0; k < targets.size() && !done; ++k) {
      if (in_orbit[targets[k]]) continue;
      if (!computed[k]) compute_range(k, std::min(targets.size(), k + (threads == 1 ? 1 : 2 * threads)));
      if (S.abort) break;
      out.stats.nodes += probe_nodes[k];
      if (!results[k]) continue;
      const Perm g = *results[k];
      out.generators.push_back(g);
      if (opts.witness_only && !is_standard_stab(g, P.q)) {
        out.witness = g;
        done = true;
        break;
      }
      for (auto x : orbit_of(b, out.generators, P.n)) {
        if (!in_orbit[x]) {
          in_orbit[x] = 1;
          orbit.push_back(x);
        }
      }
    }
    if (S.abort) break;
    out.orbit_sizes[level] = orbit.size();
  }
  out.stats.seconds = seconds_since(S.start);
  if (S.abort) {
    throw Error(ErrorKind::SearchBudgetExceeded, "search stopped after " + std::to_string(S.nodes.load()) + " nodes and " +
                                                     std::to_string(out.stats.seconds) + " s");
  }
  out.complete = !done;
  out.order = 1;
  if (done) return out;
  for (auto s : out.orbit_sizes) {
    if (out.order > std::numeric_limits<u64>::max() / s) throw Error(ErrorKind::Overflow, "stabilizer order exceeds 2^64");
    out.order *= s;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<FamilyTag> direct_family(u64 n, u64 q) {
  if (std::gcd(n, q) != 1) return std::nullopt;
  FamilyTag tag;
  if (n == 23 && q == 2) {
    tag.kind = Family::Golay23_2;
    return tag;
  }
  if (n == 11 && q == 3) {
    tag.kind = Family::Golay11_3;
    return tag;
  }
  const unsigned m = mult_order(n, q);
  if (n >= 5 && is_prime(n) && m == n - 1) {
    tag.kind = Family::Repetition;
    return tag;
  }
  const u64 qm = saturating_pow(q, m, u64{1} << 62);
  if (qm <= (u64{1} << 62) && qm - 1 == n && (m > 2 || (m == 2 && q > 2))) {
    tag.kind = Family::Simplex;
    return tag;
  }
  for (u64 k : divisors(n)) {
    if (k < 2) continue;
    const u64 n0 = n / k;
    if (n0 <= 1 || (n0 == 2 && k <= 2)) continue;
    if (spaced_criterion(n0, q, k)) {
      tag.kind = Family::EquallySpaced;
      tag.k = k;
      tag.n0 = n0;
      return tag;
    }
  }
  return std::nullopt;
}

}  // namespace

unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("NSLRS_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::string FamilyTag::name() const {
  switch (kind) {
    case Family::Repetition: return "REPETITION";
    case Family::Simplex: return "SIMPLEX";
    case Family::Golay23_2: return "GOLAY23_2";
    case Family::Golay11_3: return "GOLAY11_3";
    case Family::EquallySpaced: return "EQUALLY_SPACED";
    case Family::LiftExtend: return "LIFT_EXTEND";
    case Family::NoneKnown: return "NONE_KNOWN";
  }
  return "NONE_KNOWN";
}

std::string FamilyTag::to_string() const {
  if (kind == Family::EquallySpaced) return name() + "(k=" + std::to_string(k) + ",n0=" + std::to_string(n0) + ")";
  if (kind == Family::LiftExtend) {
    return name() + "(n0=" + std::to_string(base_n) + ",q0=" + std::to_string(base_q) + ",t=" + std::to_string(t) +
           ",f=" + std::to_string(f) + ")";
  }
  return name();
}

std::string method_name(Method m) {
  switch (m) {
    case Method::FullEnumeration: return "full_enumeration";
    case Method::PrunedSearch: return "pruned_search";
    case Method::Certified: return "certified";
  }
  return "certified";
}

StabChain PairReport::chain() const {
  const UnityGroup U = unity();
  std::vector<Perm> perms;
  for (const auto& L : generators) perms.push_back(to_perm(L, U));
  return schreier_sims(static_cast<std::size_t>(n), perms);
}

PairReport enumerate_maps(const UnityGroup& U, u64 limit) {
  const Field& F = *U.ctx();
  const u64 q = F.q();
  PairReport r = blank_report(U.n(), q);
  if (r.m != F.ext_degree()) throw Error(ErrorKind::ContextMismatch, "context is not F_{q^m}");
  const u64 Q = F.size();
  const u64 total = saturating_pow(Q, r.m, limit);
  if (total > limit) {
    throw Error(ErrorKind::EnumerationTooLarge, "q^(m^2) exceeds the enumeration bound " + std::to_string(limit));
  }
  const auto t0 = Clock::now();
  r.ctx = U.ctx();
  r.xi = U.xi();
  r.method = Method::FullEnumeration;
  const std::size_t n = U.n();
  const unsigned m = r.m;
  // frob[i][j] = (xi^i)^{q^j}
  std::vector<std::vector<Elem>> frob(n, std::vector<Elem>(m));
  for (std::size_t i = 0; i < n; ++i) {
    Elem x = U.power(i);
    for (unsigned j = 0; j < m; ++j) {
      frob[i][j] = x;
      x = F.frobenius(x, 1);
    }
  }
  std::vector<Elem> L(m, 0);
  std::vector<Perm> stab;
  u64 count = 0;
  std::vector<Point> img(n);
  std::vector<u64> stamp(n, 0);
  u64 gen = 0;
  for (u64 t = 0; t < total; ++t) {
    u64 x = t;
    for (unsigned j = 0; j < m; ++j) {
      L[j] = x % Q;
      x /= Q;
    }
    ++gen;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      Elem y = 0;
      for (unsigned j = 0; j < m; ++j) {
        if (L[j] != 0) y = F.add(y, F.mul(L[j], frob[i][j]));
      }
      const long idx = U.index_of(y);
      if (idx < 0 || stamp[static_cast<std::size_t>(idx)] == gen) {
        ok = false;
      } else {
        stamp[static_cast<std::size_t>(idx)] = gen;
        img[i] = static_cast<Point>(idx);
      }
    }
    if (!ok) continue;
    ++count;
    if (img[0] == 0) stab.emplace_back(img);
  }
  r.stats.nodes = total;
  std::sort(stab.begin(), stab.end());
  finish_from_stabilizer(r, U, stab);
  if (count != r.order) throw Error(ErrorKind::Internal, "orbit-stabilizer count mismatch");
  r.stats.seconds = seconds_since(t0);
  return r;
}

PairReport enumerate_maps(u64 n, u64 q, u64 limit) {
  const PairReport base = blank_report(n, q);
  const auto ctx = Field::extension(q, base.m);
  return enumerate_maps(UnityGroup(ctx, n), limit);
}

StabilizerSearch search_stabilizer(u64 n, u64 q, const SearchBudget& budget, const SearchOptions& opts) {
  require_coprime(n, q);
  const auto t0 = Clock::now();
  const Problem P = build_problem(n, q, budget);
  StabilizerSearch s = run_search(P, budget, opts);
  s.stats.seconds = seconds_since(t0);
  return s;
}

PairReport search_group(u64 n, u64 q, const SearchBudget& budget, const SearchOptions& opts) {
  PairReport r = blank_report(n, q);
  const auto t0 = Clock::now();
  const Problem P = build_problem(n, q, budget);
  const StabilizerSearch s = run_search(P, budget, opts);
  r.ctx = P.F;
  r.xi = P.U->xi();
  r.stats = s.stats;
  if (s.complete) {
    r.method = Method::PrunedSearch;
    finish_from_generators(r, *P.U, s.generators, s.order);
  } else {
    // Witness mode: only the existence of a non-standard element is shown.
    r.method = Method::Certified;
    r.generators = {QLinearMap::monomial(P.F, r.xi, 0), QLinearMap::monomial(P.F, 1, 1),
                    map_from_perm(*P.U, *s.witness)};
    try {
      r.order = r.chain().order();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Overflow) throw;
      r.order = std::numeric_limits<u64>::max();  // saturated
    }
    r.nonstandard = true;
  }
  r.stats.seconds = seconds_since(t0);
  return r;
}

PairReport decide(u64 n, u64 q, const SearchBudget& budget) {
  PairReport r = blank_report(n, q);
  if (n <= 2) {
    const auto ctx = Field::extension(q, r.m);
    const UnityGroup U(ctx, n);
    r.ctx = ctx;
    r.xi = U.xi();
    r.method = Method::FullEnumeration;
    finish_from_stabilizer(r, U, {Perm::identity(static_cast<std::size_t>(n))});
  } else if (saturating_pow(q, u64{r.m} * r.m, u64{1} << 16) <= (u64{1} << 16)) {
    r = enumerate_maps(n, q);
  } else {
    r = search_group(n, q, budget);
  }
  r.family = known_family(n, q);
  r.prediction_mismatch = r.family.kind != Family::NoneKnown && !r.nonstandard;
  return r;
}

FamilyTag known_family(u64 n, u64 q) {
  require_coprime(n, q);
  if (auto tag = direct_family(n, q)) return *tag;
  const PrimePower pp = PrimePower::from_q(q);
  for (unsigned t = pp.s; t >= 1; --t) {
    if (pp.s % t != 0) continue;
    const u64 q0 = checked_pow(pp.p, pp.s / t);
    for (u64 n0 : divisors(n)) {
      const u64 f = n / n0;
      if (t == 1 && f == 1) continue;
      if (n0 < 3) continue;
      const unsigned m0 = mult_order(n0, q0);
      if (std::gcd(u64{t}, u64{m0}) != 1) continue;
      if (((q - 1) / std::gcd(n0, q - 1)) % f != 0) continue;
      if (!direct_family(n0, q0)) continue;
      FamilyTag tag;
      tag.kind = Family::LiftExtend;
      tag.base_n = n0;
      tag.base_q = q0;
      tag.t = t;
      tag.f = f;
      return tag;
    }
  }
  return FamilyTag{};
}

Elem FieldEmbedding::operator()(Elem a) const {
  const auto c = small->coords(a);
  Elem r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = big->add(big->mul(r, image_of_primitive), c[i]);
  return r;
}

FieldEmbedding embed(const FieldPtr& small, const FieldPtr& big) {
  if (small->p() != big->p() || big->degree() % small->degree() != 0) {
    throw Error(ErrorKind::ContextMismatch, "no embedding between these fields");
  }
  const u64 Qs = small->size(), Qb = big->size();
  const Elem eta = big->pow(big->primitive(), (Qb - 1) / (Qs - 1));
  const auto& mod = small->modulus();
  Elem rho = 1;
  for (u64 r = 1; r < Qs; ++r) {
    rho = big->mul(rho, eta);
    Elem v = 0;
    for (std::size_t i = mod.size(); i-- > 0;) v = big->add(big->mul(v, rho), mod[i]);
    if (v == 0) return FieldEmbedding{small, big, rho};
  }
  throw Error(ErrorKind::Internal, "modulus has no root in the larger field");
}

namespace {

// Order of the generated group, saturated when it does not fit.
void set_certified_order(PairReport& r) {
  try {
    r.order = r.chain().order();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Overflow) throw;
    r.order = std::numeric_limits<u64>::max();
  }
  r.nonstandard = r.order > r.standard_order;
}

}  // namespace

PairReport lift(const PairReport& base, unsigned t) {
  if (t == 0 || std::gcd(u64{t}, u64{base.m}) != 1) {
    throw Error(ErrorKind::BadLiftExponent, "gcd(t, m) = gcd(" + std::to_string(t) + "," + std::to_string(base.m) + ") != 1");
  }
  if (t == 1) return base;
  const PrimePower pp = PrimePower::from_q(base.q);
  const u64 qt = checked_pow(base.q, t);
  PairReport r = blank_report(base.n, qt);
  r.ctx = Field::build(pp.p, pp.s * t, base.m);
  const FieldEmbedding phi = embed(base.ctx, r.ctx);
  r.xi = phi(base.xi);
  const UnityGroup Us = base.unity();
  const UnityGroup Ub = r.unity();
  for (const auto& L : base.generators) {
    std::vector<Elem> c(base.m);
    for (unsigned i = 0; i < base.m; ++i) c[i] = phi(L.coeffs()[(static_cast<u64>(i) * t) % base.m]);
    QLinearMap Lt(r.ctx, std::move(c));
    if (!fixes_unity_group(Lt, Ub)) throw Error(ErrorKind::Internal, "lifted map does not fix the unity group");
    if (!(to_perm(Lt, Ub) == to_perm(L, Us))) throw Error(ErrorKind::Internal, "lifted map induces a different permutation");
    r.generators.push_back(std::move(Lt));
  }
  r.method = Method::Certified;
  set_certified_order(r);
  r.family = known_family(r.n, r.q);
  return r;
}

PairReport extend(const PairReport& base, u64 f) {
  const u64 e = std::gcd(base.n, base.q - 1);
  if (f == 0 || ((base.q - 1) / e) % f != 0) {
    throw Error(ErrorKind::BadExtensionFactor, std::to_string(f) + " does not divide (q-1)/e = " + std::to_string((base.q - 1) / e));
  }
  if (f == 1) return base;
  PairReport r = blank_report(base.n * f, base.q);
  if (r.d != base.d || r.m != base.m) throw Error(ErrorKind::Internal, "extension changed the q-order");
  r.ctx = base.ctx;
  const Elem theta = base.ctx->element_of_order(r.n);
  r.xi = theta;
  const UnityGroup U = r.unity();
  r.generators.push_back(QLinearMap::monomial(r.ctx, theta, 0));
  for (const auto& L : base.generators) r.generators.push_back(L);
  for (std::size_t i = 0; i < r.generators.size(); ++i) {
    if (!fixes_unity_group(r.generators[i], U)) throw NotFixingError(i, "extension generator does not fix U");
  }
  r.method = Method::Certified;
  set_certified_order(r);
  r.family = known_family(r.n, r.q);
  return r;
}

PairReport certify(u64 n, u64 q, const std::vector<QLinearMap>& maps) {
  PairReport r = blank_report(n, q);
  r.ctx = Field::extension(q, r.m);
  const UnityGroup U(r.ctx, n);
  r.xi = U.xi();
  r.generators = {QLinearMap::monomial(r.ctx, r.xi, 0), QLinearMap::monomial(r.ctx, 1, 1)};
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (!maps[i].ctx()->same_as(*r.ctx)) throw Error(ErrorKind::ContextMismatch, "map is over a different field");
    if (!fixes_unity_group(maps[i], U)) {
      throw NotFixingError(i, "map " + std::to_string(i) + " does not fix the unity group");
    }
    r.generators.push_back(maps[i]);
  }
  r.method = Method::Certified;
  set_certified_order(r);
  r.family = known_family(n, q);
  return r;
}

M2Row predict_m2(u64 n, u64 q) {
  M2Row row;
  row.q = q;
  row.n = n;
  row.d = q_order(n, q).d;
  row.predicted_case = "standard";
  row.predicted_order = 2 * n;
  const bool q_odd = q % 2 == 1;
  if (n % 2 == 0 && n > 4) {
    const u64 e = n / 2;
    if ((q - 1) % e == 0 && q_odd && ((q - 1) / e) % 2 == 1) {
      row.predicted_nonstandard = true;
      row.predicted_order = n * e;
      row.predicted_case = "case1";
      return row;
    }
  }
  const PrimePower pp = PrimePower::from_q(q);
  for (unsigned t = 1; t <= pp.s; t += 2) {
    if (pp.s % t != 0) continue;
    const u64 q0 = checked_pow(pp.p, pp.s / t);
    if (q0 < 3) continue;
    const u64 base = q0 * q0 - 1;
    if (n % base != 0) continue;
    const u64 f = n / base;
    if (((q - 1) / (q0 - 1)) % f != 0) continue;
    row.predicted_nonstandard = true;
    row.predicted_order = n * (q0 * q0 - q0);
    row.predicted_case = "closure";
    return row;
  }
  return row;
}

M2Table classify_m2(u64 q_max, const SearchBudget& budget) {
  if (q_max < 3) throw Error(ErrorKind::TooLarge, "q_max must be at least 3");
  M2Table table;
  for (u64 q = 3; q <= q_max; ++q) {
    if (!is_prime_power(q)) continue;
    for (u64 n : divisors(q * q - 1)) {
      if ((q - 1) % n == 0) continue;
      M2Row row = predict_m2(n, q);
      const PairReport rep = decide(n, q, budget);
      row.order = rep.order;
      row.nonstandard = rep.nonstandard;
      if (!row.agrees()) ++table.mismatches;
      if (row.nonstandard && row.d == q + 1 && n != q * q - 1) ++table.d_violations;
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace nslrs
