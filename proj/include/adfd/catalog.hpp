#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "adfd/model.hpp"

namespace adfd {

// One threat rule of a catalog: identification, a severity assessment and
// the anti-pattern text. The pattern is kept as written; parsing and
// checking happen at analysis time so one bad rule cannot take down a whole
// catalog.
struct Rule {
  std::string id;
  std::string title;
  std::string description;
  std::string threat_type;
  int impact = 1;      // 1..5
  int likelihood = 1;  // 1..5
  std::string pattern_text;
};

struct Catalog {
  std::vector<Rule> rules;  // document order
};

// Loads a catalog document ({"rules": [...]}). Rule ids must be unique
// (DUPLICATE_RULE_ID) and both ratings within 1..5 (RANGE_ERROR).
Catalog load_catalog(const nlohmann::json& doc);

}  // namespace adfd
