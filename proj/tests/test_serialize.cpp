#include <doctest.h>

#include "nslrs/serialize.hpp"
#include "test_util.hpp"

using namespace nslrs;

namespace {

void check_same(const PairReport& a, const PairReport& b) {
  CHECK(a.n == b.n);
  CHECK(a.q == b.q);
  CHECK(a.m == b.m);
  CHECK(a.d == b.d);
  CHECK(a.e == b.e);
  CHECK(a.order == b.order);
  CHECK(a.standard_order == b.standard_order);
  CHECK(a.nonstandard == b.nonstandard);
  CHECK(a.family == b.family);
  CHECK(a.method == b.method);
  CHECK(a.stats.nodes == b.stats.nodes);
  CHECK(a.prediction_mismatch == b.prediction_mismatch);
  CHECK(a.xi == b.xi);
  REQUIRE(a.generators.size() == b.generators.size());
  for (std::size_t i = 0; i < a.generators.size(); ++i) CHECK(a.generators[i] == b.generators[i]);
}

}  // namespace

TEST_SUITE("serialize") {
  TEST_CASE("elements") {
    const auto F = Field::extension(3, 2);
    CHECK(elem_to_json(*F, 2) == json(2));
    CHECK(elem_to_json(*F, 5) == json::array({2, 1}));
    for (Elem a = 0; a < 9; ++a) CHECK(elem_from_json(*F, elem_to_json(*F, a)) == a);
    CHECK(elem_from_json(*F, json(-1)) == 2);
    CHECK_THROWS_KIND(elem_from_json(*F, json::array({1, 1, 1})), ErrorKind::Parse);
    CHECK_THROWS_KIND(elem_from_json(*F, json::array({3})), ErrorKind::Parse);
    CHECK_THROWS_KIND(elem_from_json(*F, json("x")), ErrorKind::Parse);
  }

  TEST_CASE("maps") {
    const auto F = Field::extension(3, 2);
    const QLinearMap L(F, {5, 7});
    const json j = map_to_json(L, 8);
    CHECK(j.at("n") == 8);
    CHECK(j.at("q") == 3);
    CHECK(j.at("m") == 2);
    CHECK(map_from_json(j) == L);
    CHECK(map_from_json(j, F) == L);
    CHECK(map_from_json(json{{"q", 3}, {"coeffs", {1, 0}}}) == QLinearMap::identity(F));
    CHECK_THROWS_KIND(map_from_json(json{{"coeffs", {1, 0}}}), ErrorKind::Parse);
    CHECK_THROWS_KIND(map_from_json(j, Field::extension(9, 2)), ErrorKind::ContextMismatch);
  }

  TEST_CASE("families") {
    FamilyTag es;
    es.kind = Family::EquallySpaced;
    es.k = 3;
    es.n0 = 3;
    FamilyTag le;
    le.kind = Family::LiftExtend;
    le.base_n = 8;
    le.base_q = 3;
    le.t = 3;
    le.f = 13;
    for (const FamilyTag& f : {es, le, FamilyTag{}, FamilyTag{Family::Golay23_2}}) CHECK(family_from_json(family_to_json(f)) == f);
    CHECK(family_to_json(es).at("tag") == "EQUALLY_SPACED");
    CHECK_THROWS_KIND(family_from_json(json{{"tag", "PLATONIC"}}), ErrorKind::Parse);
  }

  TEST_CASE("reports round trip") {
    for (auto [n, q] : std::vector<std::pair<u64, u64>>{{8, 3}, {7, 2}, {13, 3}, {9, 2}, {2, 5}, {12, 7}}) {
      const PairReport r = decide(n, q, SearchBudget{});
      const json j = report_to_json(r);
      for (const char* key : {"n", "q", "m", "d", "order", "standard_order", "nonstandard", "family", "method", "generators", "stats"})
        CHECK(j.contains(key));
      const PairReport back = report_from_json(json::parse(j.dump()));
      check_same(r, back);
      CHECK(back.chain().elements() == r.chain().elements());
    }
    const PairReport up = lift(decide(8, 3, SearchBudget{}), 3);
    check_same(up, report_from_json(report_to_json(up)));
    CHECK_THROWS_KIND(report_from_json(json{{"n", 8}}), ErrorKind::Parse);
  }

  TEST_CASE("catalog lines") {
    CatalogEntry e;
    e.timestamp = "2026-01-01T00:00:00Z";
    e.version = kVersion;
    e.budget.max_nodes = 1234;
    e.budget.max_seconds = 5.5;
    e.budget.w_max = 4;
    e.report = decide(11, 3, SearchBudget{});
    const std::string line = catalog_line(e);
    CHECK(line.find('\n') == std::string::npos);
    const CatalogEntry back = catalog_entry_from_json(json::parse(line));
    CHECK(back.timestamp == e.timestamp);
    CHECK(back.version == e.version);
    CHECK(back.budget.max_nodes == 1234);
    CHECK(back.budget.max_seconds == 5.5);
    CHECK(back.budget.w_max == 4);
    check_same(e.report, back.report);
    CHECK(catalog_line(back) == line);
  }

  TEST_CASE("strip_volatile") {
    CatalogEntry a;
    a.timestamp = "2026-01-01T00:00:00Z";
    a.version = kVersion;
    a.report = decide(7, 2, SearchBudget{});
    CatalogEntry b = a;
    b.timestamp = "2027-05-05T10:10:10Z";
    b.report.stats.seconds = a.report.stats.seconds + 3;
    const std::string ca = catalog_line(a) + "\n" + catalog_line(a) + "\n";
    const std::string cb = catalog_line(b) + "\n" + catalog_line(b) + "\n";
    CHECK(ca != cb);
    CHECK(strip_volatile(ca) == strip_volatile(cb));
    const json s = json::parse(strip_volatile(ca).substr(0, strip_volatile(ca).find('\n')));
    CHECK_FALSE(s.contains("timestamp"));
    CHECK_FALSE(s.at("report").at("stats").contains("seconds"));
    CHECK(s.at("report").at("stats").contains("nodes"));
    b.report.stats.nodes += 1;
    CHECK(strip_volatile(ca) != strip_volatile(catalog_line(b) + "\n" + catalog_line(b) + "\n"));
  }

  TEST_CASE("codes and tables") {
    const CyclicCode D = dual(irreducible_code(7, 2));
    const json j = code_to_json(D);
    CHECK(j.at("n") == 7);
    CHECK(j.at("q") == 2);
    CHECK(j.at("generator") == json::array({1, 1, 0, 1}));
    CHECK(j.at("parity_check") == json::array({1, 1, 1, 0, 1}));
    CHECK(weight_csv(weight_distribution(irreducible_code(7, 2))) == "weight,count\n0,1\n4,7\n");
    const json t = m2_table_to_json(classify_m2(4, SearchBudget{}));
    CHECK(t.at("mismatches") == 0);
    CHECK(t.at("rows").size() >= 2);
    CHECK(now_timestamp().size() == 20);
  }
}
