#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "nslrs/cli.hpp"
#include "nslrs/serialize.hpp"

using namespace nslrs;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "nslrs");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<json> lines_of(const std::string& s) {
  std::vector<json> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);)
    if (!l.empty()) out.push_back(json::parse(l));
  return out;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check exit codes") {
    const Run a = run({"check", "8", "3"});
    CHECK(a.code == kExitNonstandard);
    CHECK(a.out.find("order 48") != std::string::npos);
    const Run b = run({"check", "13", "3"});
    CHECK(b.code == kExitStandard);
    CHECK(b.out.find("order 39") != std::string::npos);
    const Run c = run({"check", "6", "4"});
    CHECK(c.code == kExitError);
    CHECK(c.err.find("NotCoprime") != std::string::npos);
    CHECK(run({"check", "8"}).code == kExitError);
    CHECK(run({}).code == kExitError);
    CHECK(run({"frobnicate"}).code == kExitError);
    CHECK(run({"check", "8", "3", "--budget-nodes", "0"}).code == kExitError);
  }

  TEST_CASE("check json") {
    const Run r = run({"check", "7", "2", "--json"});
    CHECK(r.code == kExitNonstandard);
    const json j = json::parse(r.out);
    CHECK(j.at("order") == 168);
    CHECK(j.at("family").at("tag") == "SIMPLEX");
    CHECK(j.at("nonstandard") == true);
    const PairReport back = report_from_json(j);
    CHECK(back.chain().order() == 168);
  }

  TEST_CASE("budget flags reach the search") {
    const Run r = run({"check", "23", "2", "--budget-nodes", "5"});
    CHECK(r.code == kExitError);
    CHECK(r.err.find("SearchBudgetExceeded") != std::string::npos);
  }

  TEST_CASE("sweep") {
    const Run empty = run({"sweep", "1", "10"});
    CHECK(empty.code == 0);
    CHECK(empty.out.empty());
    const Run r = run({"sweep", "4", "10", "--threads", "2"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    CHECK(lines.size() == sweep_pairs(4, 10).size());
    std::map<std::pair<u64, u64>, json> by_pair;
    u64 last_q = 0, last_n = 0;
    for (const auto& l : lines) {
      REQUIRE(l.contains("report"));
      const json& rep = l.at("report");
      const u64 n = rep.at("n"), q = rep.at("q");
      CHECK((q > last_q || (q == last_q && n > last_n)));
      last_q = q;
      last_n = n;
      by_pair[{n, q}] = rep;
    }
    CHECK(by_pair.at({7, 2}).at("family").at("tag") == "SIMPLEX");
    CHECK(by_pair.at({7, 2}).at("nonstandard") == true);
    CHECK(by_pair.at({9, 2}).at("family").at("tag") == "EQUALLY_SPACED");
    CHECK(by_pair.at({9, 2}).at("nonstandard") == true);
    CHECK(by_pair.at({5, 2}).at("family").at("tag") == "REPETITION");
    CHECK(by_pair.at({5, 2}).at("nonstandard") == true);
    CHECK(strip_volatile(run({"sweep", "4", "10", "--threads", "1"}).out) == strip_volatile(r.out));
  }

  TEST_CASE("sweep pairs") {
    const auto p = sweep_pairs(4, 4);
    const std::vector<std::pair<u64, u64>> want{{1, 2}, {3, 2}, {1, 3}, {2, 3}, {4, 3}, {1, 4}, {3, 4}};
    CHECK(p == want);
  }

  TEST_CASE("classify-m2") {
    const Run r = run({"classify-m2", "7", "--json"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("mismatches") == 0);
    std::set<u64> qs;
    for (const auto& row : j.at("rows")) qs.insert(row.at("q").get<u64>());
    CHECK(qs == std::set<u64>{3, 4, 5, 7});
    CHECK(run({"classify-m2", "2"}).code == kExitError);
  }

  TEST_CASE("code") {
    const Run r = run({"code", "7", "2", "--json"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("dual").at("generator") == json::array({1, 1, 0, 1}));
    CHECK(j.at("dimension") == 3);
    CHECK(j.at("weights").at("4") == 7);
    const Run csv = run({"code", "7", "2", "--csv"});
    CHECK(csv.out == "weight,count\n0,1\n4,7\n");
    CHECK(run({"code", "7", "2"}).out.find("dual generator [1,1,0,1]") != std::string::npos);
  }

  TEST_CASE("seq") {
    const Run id = run({"seq", "7", "2", "--map", "identity", "--json"});
    CHECK(id.code == 0);
    const json j = json::parse(id.out);
    CHECK(j.at("cyclic") == true);
    CHECK(j.at("represents") == true);
    CHECK(json::parse(run({"seq", "7", "2", "--map", "frobenius", "--json"}).out).at("cyclic") == true);

    const std::string path = "cli_test_map.json";
    {
      std::ofstream f(path);
      f << json{{"q", 2}, {"coeffs", {1, 0, 0}}}.dump();
    }
    CHECK(json::parse(run({"seq", "7", "2", "--map", path, "--json"}).out).at("cyclic") == true);
    std::remove(path.c_str());
    CHECK(run({"seq", "7", "2", "--map", "missing.json"}).code == kExitError);
  }

  TEST_CASE("certify, lift, extend") {
    const PairReport r = decide(8, 3, SearchBudget{});
    const std::string path = "cli_test_cert.json";
    for (const auto& L : r.generators) {
      if (is_standard(L)) continue;
      std::ofstream f(path);
      f << map_to_json(L, 8).dump();
      break;
    }
    const Run c = run({"certify", "8", "3", "--map", path, "--json"});
    CHECK(c.code == kExitNonstandard);
    CHECK(json::parse(c.out).at("order") == 48);
    CHECK(run({"certify", "8", "3"}).code == kExitStandard);
    {
      std::ofstream f(path);
      f << json{{"q", 3}, {"coeffs", {2, 2}}}.dump();
    }
    const Run bad = run({"certify", "8", "3", "--map", path});
    CHECK(bad.code == kExitError);
    CHECK(bad.err.find("map index 0") != std::string::npos);
    std::remove(path.c_str());

    const Run l = run({"lift", "8", "3", "3", "--json"});
    CHECK(l.code == kExitNonstandard);
    CHECK(json::parse(l.out).at("q") == 27);
    CHECK(run({"lift", "7", "2", "3"}).code == kExitError);
    CHECK(run({"extend", "8", "3", "2"}).code == kExitError);
    const Run e = run({"extend", "8", "27", "13", "--json"});
    CHECK(e.code == kExitNonstandard);
    CHECK(json::parse(e.out).at("n") == 104);
    CHECK(json::parse(e.out).at("order") == 624);
    CHECK(run({"extend", "5", "11", "2"}).code == kExitStandard);
  }

  TEST_CASE("output file") {
    const std::string path = "cli_test_out.json";
    const Run r = run({"check", "5", "2", "--json", "--out", path});
    CHECK(r.code == kExitNonstandard);
    CHECK(r.out.empty());
    std::ifstream in(path);
    CHECK(json::parse(in).at("order") == 120);
    std::remove(path.c_str());
    CHECK(run({"check", "5", "2", "--out", "/nonexistent/dir/x"}).code == kExitError);
  }

  TEST_CASE("thread count") {
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) >= 1);
  }
}
