// One PASS/FAIL line per acceptance criterion; exit status 1 if any fail.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "nslrs/cli.hpp"
#include "nslrs/lrseq.hpp"
#include "nslrs/nscore.hpp"
#include "nslrs/serialize.hpp"
#include "oracles.hpp"

using namespace nslrs;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note << " [exception: " << e.what() << "]";
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.ok) ++failures;
  std::printf("criterion %2d: %s  %s (%.2f s)%s\n", id, o.ok ? "PASS" : "FAIL", title.c_str(), s, o.note.str().c_str());
  std::fflush(stdout);
}

const SearchBudget kBudget{};

std::set<oracle::PermV> raw_set(const std::vector<Perm>& v) {
  std::set<oracle::PermV> out;
  for (const auto& p : v) out.insert(oracle::PermV(p.images().begin(), p.images().end()));
  return out;
}

}  // namespace

int main() {
  criterion(1, "family orders by enumeration", [](Outcome& o) {
    struct Case {
      u64 n, q, want;
      bool nonstandard;
    };
    const Case cases[] = {
        {8, 3, oracle::gl_order(2, 3), true},
        {8, 5, 2 * 4 * 4, true},
        {12, 7, 2 * 6 * 6, true},
        {4, 3, 4 * oracle::mult_order(4, 3), false},
        {16, 7, 16 * oracle::mult_order(16, 7), false},
        {13, 3, 13 * oracle::mult_order(13, 3), false},
    };
    for (const auto& c : cases) {
      const PairReport r = decide(c.n, c.q, kBudget);
      o.note << " S(" << c.n << "," << c.q << ")=" << r.order;
      o.expect(r.order == c.want && r.nonstandard == c.nonstandard, "order of (" + std::to_string(c.n) + "," + std::to_string(c.q) + ")");
    }
  });

  criterion(2, "simplex and repetition orders", [](Outcome& o) {
    const PairReport r7 = decide(7, 2, kBudget);
    const PairReport r5 = decide(5, 2, kBudget);
    o.note << " S(7,2)=" << r7.order << " S(5,2)=" << r5.order;
    o.expect(r7.order == oracle::gl_order(3, 2), "|S(7,2)| = |GL(3,2)|");
    o.expect(r5.order == oracle::factorial(5), "|S(5,2)| = 5!");
  });

  criterion(3, "Golay pairs by pruned search", [](Outcome& o) {
    const PairReport r11 = decide(11, 3, kBudget);
    const PairReport r23 = decide(23, 2, kBudget);
    o.note << " S(11,3)=" << r11.order << " S(23,2)=" << r23.order << " nodes " << r23.stats.nodes;
    o.expect(r11.order == 660, "|S(11,3)| = 660");
    o.expect(r23.order == 10200960, "|S(23,2)| = 10200960");
    const StabChain ch = r23.chain();
    const StabChain st = standard_group(23, 2);
    o.expect(st.order() == 253, "standard group order 253");
    for (const auto& g : st.strong_generators()) o.expect(ch.contains(g), "standard generator in S(23,2)");
  });

  criterion(4, "brute-force automorphisms equal the map group, n <= 8", [](Outcome& o) {
    std::size_t pairs = 0;
    for (u64 q : {2, 3, 4, 5}) {
      for (u64 n = 1; n <= 8; ++n) {
        if (std::gcd(n, q) != 1) continue;
        const CyclicCode C = irreducible_code(n, q);
        const auto bf = paut_bruteforce(C).elements();
        const auto bfd = paut_bruteforce(dual(C)).elements();
        const auto psi = decide(n, q, kBudget).chain().elements();
        const std::string tag = "(" + std::to_string(n) + "," + std::to_string(q) + ")";
        o.expect(raw_set(bf) == raw_set(psi), "PAut(C) = Psi(L) at " + tag);
        o.expect(raw_set(bfd) == raw_set(bf), "PAut(dual) = PAut(C) at " + tag);
        ++pairs;
      }
    }
    o.note << " " << pairs << " pairs";
  });

  criterion(5, "maps of (8,3) as sequences", [](Outcome& o) {
    const auto F = Field::extension(3, 2);
    const UnityGroup U(F, 8);
    const FFElement xi(F, U.xi());
    std::size_t tuples = 0, represents = 0, cyclic = 0;
    for (Elem a = 0; a < 9; ++a) {
      for (Elem b = 0; b < 9; ++b) {
        ++tuples;
        const QLinearMap L(F, {a, b});
        if (a == 0 && b == 0) continue;
        const SeqWindow s = seq_from_map(L, xi, 16);
        if (!represents_unity_group(s, U)) continue;
        ++represents;
        if (is_cyclic(s)) ++cyclic;
      }
    }
    o.note << " tuples " << tuples << ", representing " << represents << ", cyclic " << cyclic;
    o.expect(tuples == 81, "81 tuples");
    o.expect(represents == 48, "48 representing");
    o.expect(cyclic == 8 * oracle::mult_order(8, 3), "cyclic = nm");
  });

  criterion(6, "periods of irreducible recurrences", [](Outcome& o) {
    std::size_t polys = 0, states = 0;
    for (u64 p : {2, 3}) {
      const auto F = Field::extension(p, 1);
      const oracle::SmallField OF(p, 1);
      const oracle::PolyOps ops{OF};
      for (unsigned d = 1; d <= 3; ++d) {
        for (const auto& g : ops.monic_irreducibles(d)) {
          if (g[0] == 0) continue;
          ++polys;
          const u64 n = ops.order(g, 100000);
          const auto rec = Recurrence::from_char_poly(Poly::from_ints(F, std::vector<std::int64_t>(g.begin(), g.end())));
          u64 total = 1;
          for (unsigned i = 0; i < d; ++i) total *= p;
          for (u64 c = 1; c < total; ++c) {
            std::vector<Elem> init(d);
            u64 x = c;
            for (unsigned i = 0; i < d; ++i, x /= p) init[i] = x % p;
            ++states;
            if (min_period(generate(rec, init, d)) != n) o.expect(false, "period of " + rec.char_poly().to_string());
          }
        }
      }
    }
    o.note << " " << polys << " polynomials, " << states << " states";
  });

  criterion(7, "spaced irreducibility criterion against Berlekamp", [](Outcome& o) {
    std::size_t checked = 0, disagreements = 0;
    for (u64 q : {2, 3, 4, 5, 7, 9}) {
      u64 p = 2;
      unsigned s = 1;
      while (q % p) ++p;
      for (u64 x = p; x < q; x *= p) ++s;
      const oracle::SmallField OF(p, s);
      const oracle::PolyOps ops{OF};
      for (unsigned d = 1; d <= 4; ++d) {
        u64 qd = 1;
        for (unsigned i = 0; i < d; ++i) qd *= q;
        if (qd > 4096) break;
        for (const auto& g : ops.monic_irreducibles(d)) {
          if (g[0] == 0) continue;
          const u64 n = ops.order(g, qd);
          for (u64 k = 2; k <= 30; ++k) {
            if (std::gcd(n * k, q) != 1) continue;
            oracle::IntPoly gk(d * k + 1, 0);
            for (unsigned i = 0; i <= d; ++i) gk[i * k] = g[i];
            const bool brute = ops.irreducible(gk);
            const bool crit = spaced_criterion(n, q, k);
            ++checked;
            if (brute != crit) ++disagreements;
          }
        }
      }
    }
    o.note << " " << checked << " cases, " << disagreements << " disagreements";
    o.expect(disagreements == 0, "zero disagreements");
  });

  criterion(8, "lifting (8,3) to (8,27)", [](Outcome& o) {
    const PairReport small = enumerate_maps(8, 3);
    const auto F = Field::extension(27, 2);
    // xi in F_729 with the same minimal polynomial over F_3 as the small xi.
    auto minpoly3 = [](const Field& K, Elem a) {
      const Elem b = K.frobenius_p(a, 1);
      return std::pair<Elem, Elem>{K.mul(a, b), K.neg(K.add(a, b))};
    };
    const auto target = minpoly3(*small.ctx, small.xi);
    std::optional<Elem> xi;
    for (Elem a = 1; a < F->size() && !xi; ++a)
      if (F->element_order(a) == 8 && minpoly3(*F, a) == target) xi = a;
    o.expect(xi.has_value(), "matching xi in F_729");
    if (!xi) return;
    const PairReport big = enumerate_maps(UnityGroup(F, 8, *xi));
    const PairReport lifted = lift(small, 3);
    o.note << " |S(8,27)| = " << big.order;
    o.expect(big.order == 48, "order 48");
    o.expect(big.chain().elements() == small.chain().elements(), "same permutation set by enumeration");
    o.expect(lifted.chain().elements() == small.chain().elements(), "lifted generators give the same set");
  });

  criterion(9, "extension (8,27) to (104,27)", [](Outcome& o) {
    const StabilizerSearch s = search_stabilizer(104, 27, kBudget);
    const PairReport r = decide(104, 27, kBudget);
    o.note << " stabilizer " << s.order << ", order " << r.order;
    o.expect(s.order == 6, "stabilizer of 1 has size 6");
    o.expect(r.order == 104 * s.order && r.order == 624, "order 624");
    const PairReport ext = extend(lift(enumerate_maps(8, 3), 3), 13);
    o.expect(ext.order == 624, "generated order 624");
    for (const auto& L : ext.generators) o.expect(fixes_unity_group(L, 104), "generator fixes U_104");
  });

  criterion(10, "m = 2 classification up to q = 11", [](Outcome& o) {
    const M2Table t = classify_m2(11, kBudget);
    std::size_t bad_d = 0, nonstandard = 0;
    for (const auto& r : t.rows) {
      const u64 d = r.n / std::gcd(r.n, r.q - 1);
      if (r.nonstandard) ++nonstandard;
      if (r.nonstandard && d == r.q + 1 && r.n != r.q * r.q - 1) ++bad_d;
    }
    o.note << " " << t.rows.size() << " rows, " << nonstandard << " non-standard, " << t.mismatches << " mismatches";
    o.expect(t.mismatches == 0, "zero mismatches");
    o.expect(bad_d == 0 && t.d_violations == 0, "d = q+1 only at n = q^2-1");
  });

  criterion(11, "code facts", [](Outcome& o) {
    const CyclicCode C7 = irreducible_code(7, 2);
    for (Elem a = 1; a < C7.ctx()->size(); ++a) o.expect(weight(C7.encode(a)) == 4, "weight 4 in C_{7,2}");
    const auto d23 = weight_distribution(dual(irreducible_code(23, 2)));
    const auto d11 = weight_distribution(dual(irreducible_code(11, 3)));
    o.note << " A_7 = " << (d23.count(7) ? d23.at(7) : 0) << ", d(dual C_{11,3}) = " << std::next(d11.begin())->first;
    o.expect(d23.count(7) && d23.at(7) == 253 && std::next(d23.begin())->first == 7, "A_7 = 253");
    o.expect(std::next(d11.begin())->first == 5, "minimum weight 5");
  });

  criterion(12, "sweep determinism across worker counts", [](Outcome& o) {
    const std::string a = sweep_catalog(4, 10, kBudget, 1);
    const std::string b = sweep_catalog(4, 10, kBudget, 4);
    std::size_t lines = 0;
    for (char c : a) lines += c == '\n';
    o.note << " " << lines << " lines";
    o.expect(lines == sweep_pairs(4, 10).size(), "one line per pair");
    o.expect(strip_volatile(a) == strip_volatile(b), "identical modulo timestamps");
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
