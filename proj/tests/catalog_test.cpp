#include <doctest.h>

#include <adfd/catalog.hpp>
#include <adfd/io.hpp>

#include <string>

using namespace adfd;
using nlohmann::json;

namespace {

json minimal_rule() {
  return json{{"id", "R1"},
              {"title", "Plain HTTP"},
              {"impact", 4},
              {"likelihood", 2},
              {"pattern", "Connector { Source Element & Target Element & \"Protocol\" = "
                          "\"HTTP\" }"}};
}

void expect_error(ErrorCode code, const json& doc) {
  try {
    load_catalog(doc);
    FAIL_CHECK("expected " << to_string(code));
  } catch (const ModelError& e) {
    CHECK(e.code() == code);
  }
}

}  // namespace

TEST_CASE("a minimal catalog loads with defaults for optional fields") {
  const Catalog catalog = load_catalog(json{{"rules", json::array({minimal_rule()})}});
  REQUIRE(catalog.rules.size() == 1);
  const Rule& r = catalog.rules[0];
  CHECK(r.id == "R1");
  CHECK(r.title == "Plain HTTP");
  CHECK(r.impact == 4);
  CHECK(r.likelihood == 2);
  CHECK(r.description.empty());
  CHECK(r.threat_type.empty());
  CHECK(r.pattern_text.find("Connector") == 0);
}

TEST_CASE("optional fields are carried through in document order") {
  json first = minimal_rule();
  first["description"] = "Credentials travel unencrypted.";
  first["threat_type"] = "Information Disclosure";
  json second = minimal_rule();
  second["id"] = "R2";
  const Catalog catalog = load_catalog(json{{"rules", json::array({first, second})}});
  REQUIRE(catalog.rules.size() == 2);
  CHECK(catalog.rules[0].description == "Credentials travel unencrypted.");
  CHECK(catalog.rules[0].threat_type == "Information Disclosure");
  CHECK(catalog.rules[1].id == "R2");  // document order preserved
}

TEST_CASE("catalog validation") {
  SUBCASE("a missing rules section means an empty catalog") {
    CHECK(load_catalog(json::object()).rules.empty());
    expect_error(ErrorCode::InvalidDocument, json{{"rules", "nope"}});
    expect_error(ErrorCode::InvalidDocument, json{{"ruless", json::array()}});
  }
  SUBCASE("every required field must be present") {
    for (const char* field : {"id", "title", "impact", "likelihood", "pattern"}) {
      json rule = minimal_rule();
      rule.erase(field);
      expect_error(ErrorCode::InvalidDocument, json{{"rules", json::array({rule})}});
    }
  }
  SUBCASE("unknown fields are rejected") {
    json rule = minimal_rule();
    rule["serverity"] = 3;  // typo'd field names should not pass silently
    expect_error(ErrorCode::InvalidDocument, json{{"rules", json::array({rule})}});
  }
  SUBCASE("ratings must be integers in 1..5") {
    for (const char* field : {"impact", "likelihood"}) {
      for (const json& bad : {json(0), json(6), json(-1)}) {
        json rule = minimal_rule();
        rule[field] = bad;
        expect_error(ErrorCode::RangeError, json{{"rules", json::array({rule})}});
      }
      json rule = minimal_rule();
      rule[field] = "high";
      expect_error(ErrorCode::InvalidDocument, json{{"rules", json::array({rule})}});
    }
  }
  SUBCASE("rule ids must be unique") {
    expect_error(ErrorCode::DuplicateRuleId,
                 json{{"rules", json::array({minimal_rule(), minimal_rule()})}});
  }
  SUBCASE("patterns are not parsed at load time") {
    json rule = minimal_rule();
    rule["pattern"] = "Element { { {";  // nonsense, still loads
    const Catalog catalog = load_catalog(json{{"rules", json::array({rule})}});
    CHECK(catalog.rules[0].pattern_text == "Element { { {");
  }
}

TEST_CASE("the demo catalog fixture loads") {
  const Catalog catalog =
      load_catalog(parse_json(read_file(std::string(ADFD_FIXTURE_DIR) + "/demo.rules.json")));
  CHECK(catalog.rules.size() == 7);
  CHECK(catalog.rules[0].id == "CRED-001");
}
