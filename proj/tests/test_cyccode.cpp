#include <doctest.h>

#include <set>

#include "nslrs/cyccode.hpp"
#include "nslrs/nscore.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace nslrs;

namespace {

// Generator of a prime-field code as integers.
oracle::IntPoly ints(const Poly& g) { return oracle::IntPoly(g.coeffs().begin(), g.coeffs().end()); }

std::set<std::vector<u64>> words_of(const CyclicCode& C) { return oracle::cyclic_codewords(ints(C.generator()), C.n(), C.q()); }

oracle::PermV raw(const Perm& p) { return oracle::PermV(p.images().begin(), p.images().end()); }

std::set<oracle::PermV> raw_set(const std::vector<Perm>& v) {
  std::set<oracle::PermV> out;
  for (const auto& p : v) out.insert(raw(p));
  return out;
}

}  // namespace

TEST_SUITE("cyccode") {
  TEST_CASE("trace encoder for (7,2)") {
    const CyclicCode C = irreducible_code(7, 2);
    CHECK(C.dimension() == 3);
    CHECK(C.encode(1) == Word{1, 0, 0, 1, 0, 1, 1});
    CHECK(C.encode(0) == Word(7, 0));
    for (Elem a = 1; a < 8; ++a) {
      CHECK(weight(C.encode(a)) == 4);
      CHECK(C.contains(C.encode(a)));
    }
    const auto dist = weight_distribution(C);
    CHECK(dist == std::map<std::size_t, u64>{{0, 1}, {4, 7}});
    CHECK(dist == oracle::weights(words_of(C)));
    CHECK_THROWS_KIND(irreducible_code(6, 2), ErrorKind::NotCoprime);
  }

  TEST_CASE("encode is injective and lands in the code") {
    for (u64 q : {2, 3, 4, 5, 7, 8, 9}) {
      for (u64 n = 2; n <= 40; ++n) {
        if (std::gcd(n, q) != 1) continue;
        const unsigned m = mult_order(n, q);
        if (m > 12 || checked_pow(q, m) > 4096) continue;
        const CyclicCode C = irreducible_code(n, q);
        CHECK(C.dimension() == m);
        CHECK(mul(C.generator(), C.parity_check()) == Poly::xn_minus_one(C.ctx(), n));
        std::set<Word> seen;
        for (Elem a = 0; a < C.ctx()->size(); ++a) {
          const Word w = C.encode(a);
          for (Elem x : w) CHECK(C.ctx()->in_base(x));
          seen.insert(w);
        }
        CHECK(seen.size() == C.ctx()->size());
        if (!is_prime(q)) continue;
        std::set<std::vector<u64>> all;
        for (const Word& w : seen) all.insert(std::vector<u64>(w.begin(), w.end()));
        CHECK(all == words_of(C));
      }
    }
  }

  TEST_CASE("duals") {
    const CyclicCode C = irreducible_code(7, 2);
    const CyclicCode D = dual(C);
    CHECK(D.generator().coeffs() == std::vector<Elem>{1, 1, 0, 1});
    CHECK(D.dimension() == 4);
    CHECK(dual(D) == C);
    CHECK(mul(D.generator(), D.parity_check()) == Poly::xn_minus_one(D.ctx(), 7));

    const CyclicCode D11 = dual(irreducible_code(11, 3));
    CHECK(D11.dimension() == 6);
    const auto d11 = oracle::weights(words_of(D11));
    CHECK(d11.size() > 1);
    CHECK(std::next(d11.begin())->first == 5);
    CHECK(weight_distribution(D11) == d11);

    const CyclicCode D23 = dual(irreducible_code(23, 2));
    CHECK(D23.dimension() == 12);
    const auto d23 = oracle::weights(words_of(D23));
    CHECK(std::next(d23.begin())->first == 7);
    CHECK(d23.at(7) == 253);
    CHECK(weight_distribution(D23) == d23);
    const auto low = low_weight_words(D23, 8);
    CHECK(low.weight_bound == 8);
    std::size_t w7 = 0;
    for (const Word& w : low.words) {
      CHECK(D23.contains(w));
      if (weight(w) == 7) ++w7;
    }
    CHECK(w7 == 253);
  }

  TEST_CASE("low weight words up to scalars") {
    const CyclicCode D = dual(irreducible_code(13, 3));
    const auto low = low_weight_words(D, 5);
    const auto all = oracle::weights(words_of(D));
    u64 expected = 0;
    for (auto [w, c] : all)
      if (w > 0 && w <= low.weight_bound) expected += c / 2;
    CHECK(low.words.size() == expected);
    for (const Word& w : low.words) {
      const auto first = std::find_if(w.begin(), w.end(), [](Elem x) { return x != 0; });
      CHECK(*first == 1);
    }
    const auto tiny = low_weight_words(D, 12, 100);
    CHECK(tiny.weight_bound < 12);
    CHECK(weight_distribution(CyclicCode(4, Poly::xn_minus_one(Field::extension(2, 1), 4))) ==
          std::map<std::size_t, u64>{{0, 1}});
  }

  TEST_CASE("permutations of words") {
    const Word c{1, 0, 0, 1, 0, 1, 1};
    CHECK(apply_perm(c, Perm::identity(7)) == c);
    CHECK(apply_perm(c, Perm::affine(7, 1, 1)) == Word{1, 1, 0, 0, 1, 0, 1});
    const Perm a = Perm::affine(7, 3, 2), b = Perm::affine(7, 2, 6);
    CHECK(apply_perm(apply_perm(c, a), b) == apply_perm(c, compose(b, a)));
    CHECK_THROWS_KIND(apply_perm(c, Perm::identity(6)), ErrorKind::DegreeMismatch);
  }

  TEST_CASE("permutation automorphisms") {
    const CyclicCode C = irreducible_code(7, 2);
    CHECK(is_paut(C, Perm::affine(7, 1, 1)));
    CHECK(is_paut(C, Perm::affine(7, 2, 0)));
    std::vector<Point> t{1, 0, 2, 3, 4, 5, 6};
    CHECK_FALSE(is_paut(C, Perm(t)));
    CHECK(oracle::paut(words_of(C), 7).count(raw(Perm(t))) == 0);
    CHECK_THROWS_KIND(is_paut(C, Perm::identity(5)), ErrorKind::DegreeMismatch);

    const StabChain P = paut_bruteforce(C);
    CHECK(P.order() == 168);
    CHECK(raw_set(P.elements()) == oracle::paut(words_of(C), 7));
    CHECK(paut_bruteforce(dual(C)).elements() == P.elements());

    const auto F2 = Field::extension(2, 1);
    const CyclicCode even(5, Poly::from_ints(F2, {1, 1}));
    CHECK(paut_bruteforce(even).order() == 120);
    const CyclicCode full(6, Poly::constant(F2, 1));
    CHECK(paut_bruteforce(full).order() == 720);
    CHECK_THROWS_KIND(paut_bruteforce(irreducible_code(9, 2)), ErrorKind::TooLarge);

    CHECK(paut_standard(C).order() == 21);
    CHECK(paut_standard(irreducible_code(11, 3)).order() == 55);
    CHECK(paut_standard(irreducible_code(6, 7)).order() == 6);
  }

  TEST_CASE("brute-force automorphisms match the map group for n <= 8") {
    for (u64 q : {2, 3, 4, 5, 7, 8, 9}) {
      for (u64 n = 1; n <= 8; ++n) {
        if (std::gcd(n, q) != 1) continue;
        CAPTURE(n);
        CAPTURE(q);
        const CyclicCode C = irreducible_code(n, q);
        const auto bf = paut_bruteforce(C).elements();
        CHECK(paut_bruteforce(dual(C)).elements() == bf);
        const PairReport r = decide(n, q, SearchBudget{});
        CHECK(r.chain().elements() == bf);
        if (is_prime(q)) CHECK(raw_set(bf) == oracle::paut(words_of(C), n));
      }
    }
  }

  TEST_CASE("bad generator") {
    const auto F2 = Field::extension(2, 1);
    CHECK_THROWS_KIND(CyclicCode(7, Poly::from_ints(F2, {1, 0, 1})), ErrorKind::BadGenerator);
    const auto F4 = Field::extension(2, 2);
    CHECK_THROWS_KIND(CyclicCode(3, Poly(F4, {F4->primitive(), 1})), ErrorKind::BadGenerator);
  }

  TEST_CASE("spaced products") {
    const CyclicCode D = dual(irreducible_code(7, 2));
    const CyclicCode P = spaced_product(D, 7);
    CHECK(P.n() == 49);
    CHECK(P.generator() == Poly::from_ints(D.ctx(), [] {
            std::vector<std::int64_t> c(22, 0);
            c[0] = c[7] = c[21] = 1;
            return c;
          }()));
    CHECK_THROWS_KIND(spaced_product(D, 2), ErrorKind::NotCoprime);

    // Interleavings of C against the code of g(x^k), both by enumeration.
    const CyclicCode E = dual(irreducible_code(7, 2));
    const unsigned k = 3;
    const CyclicCode S = spaced_product(irreducible_code(5, 2), k);
    CHECK(S.n() == 15);
    const auto base = words_of(irreducible_code(5, 2));
    std::set<std::vector<u64>> inter;
    for (const auto& a : base)
      for (const auto& b : base)
        for (const auto& c : base) {
          const Word w = interleave({Word(a.begin(), a.end()), Word(b.begin(), b.end()), Word(c.begin(), c.end())});
          inter.insert(std::vector<u64>(w.begin(), w.end()));
        }
    CHECK(inter == words_of(S));
    CHECK(spaced_product_matches_interleaving(irreducible_code(5, 2), k));
    CHECK(spaced_product_matches_interleaving(E, 3));
    CHECK(spaced_product_matches_interleaving(irreducible_code(4, 3), 5));

    const auto F3 = Field::extension(3, 1);
    const CyclicCode full(4, Poly::constant(F3, 1));
    CHECK(spaced_product(full, 5).dimension() == 20);
  }

  TEST_CASE("irreducible spaced generator gives the longer irreducible code") {
    // x^3+x+1 at k = 7 is irreducible and its root has order 49.
    const CyclicCode D = dual(irreducible_code(7, 2));
    const CyclicCode P = spaced_product(D, 7);
    REQUIRE(spaced_irreducible(D.generator(), 7));
    const FieldPtr F = irreducible_code(49, 2).ctx();
    const Elem xi = F->element_of_order(49);
    std::optional<Elem> root;
    for (u64 j = 1; j < 49 && !root; ++j) {
      if (j % 7 == 0) continue;
      if (minimal_poly(F, F->pow(xi, j)).coeffs() == P.generator().coeffs()) root = F->pow(xi, j);
    }
    REQUIRE(root);
    CHECK(dual(irreducible_code(F, 49, *root)).generator().coeffs() == P.generator().coeffs());
  }

  TEST_CASE("twisted extension") {
    const CyclicCode C = irreducible_code(7, 2);
    CHECK(twist_extension(C, 1, 1) == C);
    CHECK_THROWS_KIND(twist_extension(irreducible_code(3, 7), 3, 1), ErrorKind::BadTwist);
    CHECK_THROWS_KIND(twist_extension(C, 0, 1), ErrorKind::BadTwist);

    // nu = 3 has order 6 in F_7, so nu^3 = -1 has order 2.
    const CyclicCode C37 = irreducible_code(3, 7);
    const CyclicCode T = twist_extension(C37, 3, 2);
    CHECK(T.n() == 6);
    CHECK(T.dimension() == C37.dimension());
    CHECK(twist_matches_product(C37, 3, 2));
    CHECK_FALSE(twist_matches_product(C37, 2, 2));  // 2^3 = 1
    std::set<Word> tw;
    for (Elem a = 0; a < 7; ++a) {
      const Word w = twist_word(*C37.ctx(), C37.encode(a), 3, 2);
      CHECK(T.contains(w));
      tw.insert(w);
    }
    CHECK(tw.size() == 7);

    // (8,27) -> (104,27): coordinates i of mu(a) times nu^i are the traces of a (xi nu)^i.
    const CyclicCode C8 = irreducible_code(8, 27);
    const FieldPtr F = C8.ctx();
    const Elem xi = *C8.xi();
    std::size_t used = 0;
    for (Elem nu : F->base_elements()) {
      if (nu == 0 || F->element_order(F->mul(xi, nu)) != 104) continue;
      const CyclicCode T8 = twist_extension(C8, nu, 13);
      const CyclicCode target = irreducible_code(F, 104, F->mul(xi, nu));
      CHECK(T8 == target);
      for (Elem a = 1; a < F->size(); a += 37) CHECK(twist_word(*F, C8.encode(a), nu, 13) == target.encode(a));
      ++used;
    }
    CHECK(used > 0);
    CHECK(irreducible_code(104, 27).dimension() == 2);
  }
}
