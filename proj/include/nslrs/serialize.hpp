#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "nslrs/nscore.hpp"

namespace nslrs {

using json = nlohmann::json;

/// Integer when a lies in the prime field, coordinate list otherwise.
json elem_to_json(const Field& F, Elem a);
Elem elem_from_json(const Field& F, const json& j);

/// {"n","q","m","coeffs":[[coords]...]}
json map_to_json(const QLinearMap& L, u64 n);
/// Reads a map over the canonical F_{q^m}, or over ctx when given.
QLinearMap map_from_json(const json& j, FieldPtr ctx = nullptr);

json family_to_json(const FamilyTag& f);
FamilyTag family_from_json(const json& j);

json report_to_json(const PairReport& r);
PairReport report_from_json(const json& j);

json budget_to_json(const SearchBudget& b);
SearchBudget budget_from_json(const json& j);

struct CatalogEntry {
  std::string timestamp;
  std::string version;
  SearchBudget budget;
  PairReport report;
};

json catalog_entry_to_json(const CatalogEntry& e);
CatalogEntry catalog_entry_from_json(const json& j);
/// One JSON object, no trailing newline.
std::string catalog_line(const CatalogEntry& e);

/// Removes "timestamp" and "stats.seconds" from every line of a catalog.
std::string strip_volatile(const std::string& catalog);

/// {"n","q","generator":[...],"parity_check":[...]}
json code_to_json(const CyclicCode& C);
std::string weight_csv(const std::map<std::size_t, u64>& dist);

json m2_table_to_json(const M2Table& t);

std::string now_timestamp();
inline constexpr const char* kVersion = "1.0.0";

}  // namespace nslrs
