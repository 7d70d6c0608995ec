#include "nslrs/serialize.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

#include "nslrs/error.hpp"

namespace nslrs {
namespace {

json poly_to_json(const Poly& f) {
  json out = json::array();
  for (Elem c : f.coeffs()) out.push_back(elem_to_json(*f.ctx(), c));
  return out;
}

const std::pair<Family, const char*> kFamilyNames[] = {
    {Family::Repetition, "REPETITION"},       {Family::Simplex, "SIMPLEX"},
    {Family::Golay23_2, "GOLAY23_2"},         {Family::Golay11_3, "GOLAY11_3"},
    {Family::EquallySpaced, "EQUALLY_SPACED"}, {Family::LiftExtend, "LIFT_EXTEND"},
    {Family::NoneKnown, "NONE_KNOWN"},
};

Method method_from_name(const std::string& s) {
  for (Method m : {Method::FullEnumeration, Method::PrunedSearch, Method::Certified}) {
    if (method_name(m) == s) return m;
  }
  throw Error(ErrorKind::Parse, "unknown method " + s);
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field ") + key);
  return j.at(key).get<T>();
}

}  // namespace

json elem_to_json(const Field& F, Elem a) {
  if (a < F.p()) return a;
  return F.coords(a);
}

Elem elem_from_json(const Field& F, const json& j) {
  if (j.is_number_integer()) return F.from_int(j.get<std::int64_t>());
  if (!j.is_array()) throw Error(ErrorKind::Parse, "field element must be an integer or a coordinate list");
  const auto c = j.get<std::vector<u64>>();
  if (c.size() > F.degree()) throw Error(ErrorKind::Parse, "too many coordinates");
  for (u64 x : c) {
    if (x >= F.p()) throw Error(ErrorKind::Parse, "coordinate out of range");
  }
  return F.from_coords(c);
}

json map_to_json(const QLinearMap& L, u64 n) {
  const Field& F = *L.ctx();
  json coeffs = json::array();
  for (Elem c : L.coeffs()) coeffs.push_back(F.coords(c));
  return {{"n", n}, {"q", F.q()}, {"m", L.m()}, {"coeffs", coeffs}};
}

QLinearMap map_from_json(const json& j, FieldPtr ctx) {
  try {
    const u64 q = get<u64>(j, "q");
    const auto& cj = j.at("coeffs");
    unsigned m = j.contains("m") ? get<unsigned>(j, "m") : static_cast<unsigned>(cj.size());
    if (!ctx) {
      if (j.contains("n")) m = mult_order(get<u64>(j, "n"), q);
      ctx = Field::extension(q, m);
    }
    if (ctx->q() != q) throw Error(ErrorKind::ContextMismatch, "map is over a different base field");
    std::vector<Elem> coeffs;
    for (const auto& c : cj) coeffs.push_back(elem_from_json(*ctx, c));
    return QLinearMap(ctx, std::move(coeffs));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

json family_to_json(const FamilyTag& f) {
  json j = {{"tag", f.name()}};
  if (f.kind == Family::EquallySpaced) {
    j["k"] = f.k;
    j["n0"] = f.n0;
  } else if (f.kind == Family::LiftExtend) {
    j["base_n"] = f.base_n;
    j["base_q"] = f.base_q;
    j["t"] = f.t;
    j["f"] = f.f;
  }
  return j;
}

FamilyTag family_from_json(const json& j) {
  FamilyTag f;
  const auto tag = get<std::string>(j, "tag");
  bool known = false;
  for (auto [kind, name] : kFamilyNames) {
    if (tag == name) {
      f.kind = kind;
      known = true;
    }
  }
  if (!known) throw Error(ErrorKind::Parse, "unknown family " + tag);
  if (f.kind == Family::EquallySpaced) {
    f.k = get<u64>(j, "k");
    f.n0 = get<u64>(j, "n0");
  } else if (f.kind == Family::LiftExtend) {
    f.base_n = get<u64>(j, "base_n");
    f.base_q = get<u64>(j, "base_q");
    f.t = get<u64>(j, "t");
    f.f = get<u64>(j, "f");
  }
  return f;
}

json report_to_json(const PairReport& r) {
  json gens = json::array();
  for (const auto& L : r.generators) gens.push_back(map_to_json(L, r.n).at("coeffs"));
  json j = {
      {"n", r.n},
      {"q", r.q},
      {"m", r.m},
      {"d", r.d},
      {"e", r.e},
      {"order", r.order},
      {"standard_order", r.standard_order},
      {"nonstandard", r.nonstandard},
      {"family", family_to_json(r.family)},
      {"method", method_name(r.method)},
      {"generators", gens},
      {"stats", {{"nodes", r.stats.nodes}, {"seconds", r.stats.seconds}}},
      {"prediction_mismatch", r.prediction_mismatch},
  };
  if (r.ctx) j["xi"] = r.ctx->coords(r.xi);
  return j;
}

PairReport report_from_json(const json& j) {
  try {
    PairReport r;
    r.n = get<u64>(j, "n");
    r.q = get<u64>(j, "q");
    r.m = get<unsigned>(j, "m");
    r.d = get<u64>(j, "d");
    r.e = j.value("e", u64{0});
    r.order = get<u64>(j, "order");
    r.standard_order = get<u64>(j, "standard_order");
    r.nonstandard = get<bool>(j, "nonstandard");
    r.family = family_from_json(j.at("family"));
    r.method = method_from_name(get<std::string>(j, "method"));
    r.stats.nodes = j.at("stats").value("nodes", u64{0});
    r.stats.seconds = j.at("stats").value("seconds", 0.0);
    r.prediction_mismatch = j.value("prediction_mismatch", false);
    r.ctx = Field::extension(r.q, r.m);
    r.xi = j.contains("xi") ? elem_from_json(*r.ctx, j.at("xi")) : UnityGroup(r.ctx, r.n).xi();
    for (const auto& g : j.at("generators")) {
      std::vector<Elem> coeffs;
      for (const auto& c : g) coeffs.push_back(elem_from_json(*r.ctx, c));
      r.generators.emplace_back(r.ctx, std::move(coeffs));
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

json budget_to_json(const SearchBudget& b) {
  return {{"max_nodes", b.max_nodes}, {"max_seconds", b.max_seconds}, {"w_max", b.w_max}};
}

SearchBudget budget_from_json(const json& j) {
  SearchBudget b;
  b.max_nodes = j.value("max_nodes", b.max_nodes);
  b.max_seconds = j.value("max_seconds", b.max_seconds);
  b.w_max = j.value("w_max", b.w_max);
  return b;
}

json catalog_entry_to_json(const CatalogEntry& e) {
  return {{"timestamp", e.timestamp}, {"version", e.version}, {"budget", budget_to_json(e.budget)},
          {"report", report_to_json(e.report)}};
}

CatalogEntry catalog_entry_from_json(const json& j) {
  CatalogEntry e;
  e.timestamp = j.value("timestamp", "");
  e.version = j.value("version", "");
  e.budget = budget_from_json(j.value("budget", json::object()));
  e.report = report_from_json(j.at("report"));
  return e;
}

std::string catalog_line(const CatalogEntry& e) { return catalog_entry_to_json(e).dump(); }

std::string strip_volatile(const std::string& catalog) {
  std::istringstream in(catalog);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    j.erase("timestamp");
    if (j.contains("report") && j["report"].contains("stats")) j["report"]["stats"].erase("seconds");
    out += j.dump();
    out += '\n';
  }
  return out;
}

json code_to_json(const CyclicCode& C) {
  return {{"n", C.n()}, {"q", C.q()}, {"generator", poly_to_json(C.generator())},
          {"parity_check", poly_to_json(C.parity_check())}};
}

std::string weight_csv(const std::map<std::size_t, u64>& dist) {
  std::string out = "weight,count\n";
  for (auto [w, c] : dist) out += std::to_string(w) + "," + std::to_string(c) + "\n";
  return out;
}

json m2_table_to_json(const M2Table& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"q", r.q},
                    {"n", r.n},
                    {"d", r.d},
                    {"order", r.order},
                    {"nonstandard", r.nonstandard},
                    {"predicted_nonstandard", r.predicted_nonstandard},
                    {"predicted_order", r.predicted_order},
                    {"predicted_case", r.predicted_case},
                    {"agrees", r.agrees()}});
  }
  return {{"rows", rows}, {"mismatches", t.mismatches}, {"d_violations", t.d_violations}};
}

std::string now_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace nslrs
