#include "adfd/catalog.hpp"

#include <set>

namespace adfd {

namespace {

[[noreturn]] void bad(const std::string& message) {
  throw ModelError(ErrorCode::InvalidDocument, message);
}

std::string get_string(const nlohmann::json& obj, const char* field, const std::string& where,
                       bool required) {
  if (!obj.contains(field)) {
    if (required) bad(where + " needs a '" + field + "'");
    return "";
  }
  if (!obj.at(field).is_string()) bad(where + "." + field + " must be a string");
  return obj.at(field).get<std::string>();
}

int get_rating(const nlohmann::json& obj, const char* field, const std::string& where) {
  if (!obj.contains(field)) bad(where + " needs a '" + field + "'");
  const nlohmann::json& value = obj.at(field);
  if (!value.is_number_integer()) bad(where + "." + field + " must be an integer");
  const int rating = value.get<int>();
  if (rating < 1 || rating > 5)
    throw ModelError(ErrorCode::RangeError,
                     where + "." + field + " is " + std::to_string(rating) +
                         " but ratings range from 1 to 5");
  return rating;
}

}  // namespace

Catalog load_catalog(const nlohmann::json& doc) {
  if (!doc.is_object()) bad("catalog document must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "rules") bad("catalog document: unknown field '" + key + "'");
  }
  Catalog catalog;
  if (!doc.contains("rules")) return catalog;
  if (!doc.at("rules").is_array()) bad("rules must be an array");

  std::set<std::string> seen;
  const nlohmann::json& rules = doc.at("rules");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const std::string where = "rules[" + std::to_string(i) + "]";
    const nlohmann::json& entry = rules.at(i);
    if (!entry.is_object()) bad(where + " must be an object");
    for (const auto& [key, value] : entry.items()) {
      static const std::set<std::string> allowed = {"id",     "title",      "description",
                                                    "threat_type", "impact", "likelihood",
                                                    "pattern"};
      if (!allowed.count(key)) bad(where + ": unknown field '" + key + "'");
    }
    Rule rule;
    rule.id = get_string(entry, "id", where, /*required=*/true);
    rule.title = get_string(entry, "title", where, /*required=*/true);
    rule.description = get_string(entry, "description", where, /*required=*/false);
    rule.threat_type = get_string(entry, "threat_type", where, /*required=*/false);
    rule.impact = get_rating(entry, "impact", where);
    rule.likelihood = get_rating(entry, "likelihood", where);
    rule.pattern_text = get_string(entry, "pattern", where, /*required=*/true);
    if (!seen.insert(rule.id).second)
      throw ModelError(ErrorCode::DuplicateRuleId, "rule id '" + rule.id + "' reused");
    catalog.rules.push_back(std::move(rule));
  }
  return catalog;
}

}  // namespace adfd
