#include <doctest.h>

#include <set>

#include "nslrs/lrseq.hpp"
#include "nslrs/nscore.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace nslrs;

TEST_SUITE("lrseq") {
  TEST_CASE("generate and period for x^3+x+1") {
    const auto F2 = Field::extension(2, 1);
    const auto rec = Recurrence::from_char_poly(Poly::from_ints(F2, {1, 1, 0, 1}));
    const auto s = generate(rec, {1, 0, 0}, 10);
    CHECK(s.terms == std::vector<Elem>{1, 0, 0, 1, 0, 1, 1, 1, 0, 0});
    CHECK(min_period(s) == 7);
    CHECK(oracle::lfsr_period({1, 1, 0, 1}, {1, 0, 0}, 2) == 7);
    const auto z = generate(rec, {0, 0, 0}, 5);
    CHECK(z.terms == std::vector<Elem>(5, 0));
    CHECK_THROWS_KIND(min_period(z), ErrorKind::ZeroSequence);
    CHECK_THROWS_KIND(generate(rec, {1, 0}, 5), ErrorKind::BadInitLength);
    CHECK_THROWS_KIND(Recurrence(F2, {0, 1}), ErrorKind::ZeroConstantTerm);
  }

  TEST_CASE("geometric sequences") {
    const auto F = Field::build(2, 1, 3, std::vector<u64>{1, 1, 0, 1});
    const FFElement xi(F, F->primitive());
    const auto rec = Recurrence::from_char_poly(minimal_poly(xi));
    const Elem x = xi.value();
    const auto s = generate(rec, {1, x, F->mul(x, x)}, 14);
    Elem pw = 1;
    for (Elem t : s.terms) {
      CHECK(t == pw);
      pw = F->mul(pw, x);
    }
    CHECK(min_period(s) == 7);
    CHECK(is_cyclic(s) == std::optional<Elem>(x));

    const auto F2 = Field::extension(2, 1);
    const auto ones = generate(Recurrence::from_char_poly(Poly::from_ints(F2, {-1, 1})), {1}, 4);
    CHECK(min_period(ones) == 1);
    CHECK(is_cyclic(ones) == std::optional<Elem>(1));
  }

  TEST_CASE("periods of irreducible recurrences are the root order") {
    for (u64 p : {2, 3}) {
      const auto F = Field::extension(p, 1);
      const oracle::SmallField OF(p, 1);
      const oracle::PolyOps ops{OF};
      for (unsigned d = 1; d <= 3; ++d) {
        for (const auto& g : ops.monic_irreducibles(d)) {
          if (g[0] == 0) continue;
          const u64 n = ops.order(g, 1000);
          std::vector<std::int64_t> gi(g.begin(), g.end());
          const auto rec = Recurrence::from_char_poly(Poly::from_ints(F, gi));
          u64 states = 1;
          for (unsigned i = 0; i < d; ++i) states *= p;
          for (u64 c = 1; c < states; ++c) {
            std::vector<Elem> init(d);
            std::vector<u64> oinit(d);
            u64 x = c;
            for (unsigned i = 0; i < d; ++i) {
              init[i] = oinit[i] = x % p;
              x /= p;
            }
            const auto s = generate(rec, init, d);
            CHECK(min_period(s) == n);
            CHECK(oracle::lfsr_period(g, oinit, p) == n);
          }
        }
      }
    }
  }

  TEST_CASE("map and sequence correspondence for (8,3)") {
    const auto F = Field::extension(3, 2);
    const UnityGroup U(F, 8);
    const FFElement xi(F, U.xi());
    std::size_t represents = 0, cyclic = 0, standard = 0;
    for (Elem a = 0; a < 9; ++a) {
      for (Elem b = 0; b < 9; ++b) {
        const QLinearMap L(F, {a, b});
        const auto s = seq_from_map(L, xi, 16);
        if (a == 0 && b == 0) continue;
        // Round trip.
        CHECK(map_from_seq(s, xi).coeffs() == L.coeffs());
        const bool rep = represents_unity_group(s, U);
        CHECK(rep == fixes_unity_group(L, U));
        if (rep) {
          ++represents;
          const bool cyc = is_cyclic(s).has_value();
          CHECK(cyc == is_standard(L).has_value());
          if (cyc) ++cyclic;
        }
        if (is_standard(L, &U) && is_standard(L, &U)->in_unity.value_or(false)) ++standard;
      }
    }
    CHECK(represents == 48);
    CHECK(cyclic == 16);
    CHECK(standard == 16);
  }

  TEST_CASE("standard maps give cyclic sequences") {
    const auto F = Field::extension(2, 3);
    const UnityGroup U(F, 7);
    const FFElement xi(F, U.xi());
    const auto id = seq_from_map(QLinearMap::identity(F), xi, 14);
    CHECK(is_cyclic(id) == std::optional<Elem>(xi.value()));
    const auto fr = seq_from_map(QLinearMap::monomial(F, 1, 1), xi, 14);
    CHECK(is_cyclic(fr) == std::optional<Elem>(F->frobenius(xi.value(), 1)));
    CHECK(map_from_seq(fr, xi).coeffs() == std::vector<Elem>{0, 1, 0});
    CHECK(map_from_seq(id, xi).coeffs() == std::vector<Elem>{1, 0, 0});
  }

  TEST_CASE("a non-standard (7,2) map gives a non-cyclic representing sequence") {
    const PairReport r = decide(7, 2, SearchBudget{});
    const UnityGroup U = r.unity();
    bool seen = false;
    for (const auto& L : r.generators) {
      if (is_standard(L)) continue;
      const auto s = seq_from_map(L, FFElement(r.ctx, r.xi), 14);
      CHECK(represents_unity_group(s, U));
      CHECK_FALSE(is_cyclic(s).has_value());
      seen = true;
    }
    CHECK(seen);
  }

  TEST_CASE("errors") {
    const auto F = Field::extension(2, 3);
    const UnityGroup U(F, 7);
    const FFElement xi(F, U.xi());
    auto s = seq_from_map(QLinearMap::identity(F), xi, 3);
    CHECK_THROWS_KIND(represents_unity_group(s, U), ErrorKind::InsufficientTerms);
    auto t = seq_from_map(QLinearMap::identity(F), xi, 8);
    t.terms[5] = F->add(t.terms[5], 1);
    CHECK_THROWS_KIND(map_from_seq(t, xi), ErrorKind::NotAGSequence);
    const auto F3 = Field::extension(3, 1);
    const auto red = generate(Recurrence::from_char_poly(Poly::from_ints(F3, {2, 0, 1})), {1, 1}, 8);
    CHECK_THROWS_KIND(represents_unity_group(red, UnityGroup(Field::extension(3, 2), 8)), ErrorKind::ReducibleInput);
  }

  TEST_CASE("dump format") {
    const auto F2 = Field::extension(2, 1);
    const auto rec = Recurrence::from_char_poly(Poly::from_ints(F2, {1, 1, 0, 1}));
    const std::string d = dump_sequence(generate(rec, {1, 0, 0}, 4));
    CHECK(d.rfind("# taps", 0) == 0);
    CHECK(std::count(d.begin(), d.end(), '\n') == 5);
  }
}
