#include <doctest.h>

#include <adfd/flows.hpp>
#include <adfd/io.hpp>
#include <adfd/loader.hpp>

#include <algorithm>
#include <set>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace adfd;

namespace {

Diagram chain(std::initializer_list<std::pair<const char*, const char*>> edges) {
  Diagram::Data data;
  std::set<std::string> seen;
  for (const auto& [src, tgt] : edges) {
    for (const char* id : {src, tgt}) {
      if (seen.insert(id).second) data.elements.push_back({id, "Service", {}, {}, {}});
    }
  }
  int i = 0;
  for (const auto& [src, tgt] : edges)
    data.connectors.push_back({"r" + std::to_string(i++), "Link", src, tgt, {}});
  return Diagram::from_parts(std::move(data));
}

Diagram fixture_model() {
  const auto spec = load_specification(
      parse_json(read_file(std::string(ADFD_FIXTURE_DIR) + "/mobile-request.spec.json")));
  return load_diagram(
      parse_json(read_file(std::string(ADFD_FIXTURE_DIR) + "/mobile-request.model.json")), spec);
}

}  // namespace

TEST_CASE("flows through the example model") {
  const Diagram d = fixture_model();

  SUBCASE("one path from the server to the database") {
    const auto flows = enumerate_flows(d, "n4", "n6", FlowUniqueness::Elements);
    REQUIRE(flows.size() == 1);
    CHECK(flows[0].sequence() == std::vector<std::string>{"n4", "r2", "n5", "r3", "n6"});
    // The same path is the only connector-unique flow as well.
    CHECK(enumerate_flows(d, "n4", "n6", FlowUniqueness::Connectors) == flows);
  }
  SUBCASE("one path from the database to the cell tower") {
    const auto flows = enumerate_flows(d, "n6", "n3", FlowUniqueness::Elements);
    REQUIRE(flows.size() == 1);
    CHECK(flows[0].sequence() == std::vector<std::string>{"n6", "r4", "n5", "r5", "n3"});
  }
  SUBCASE("no path from the phone or the application to the database") {
    CHECK(enumerate_flows(d, "n1", "n6", FlowUniqueness::Elements).empty());
    CHECK(enumerate_flows(d, "n2", "n6", FlowUniqueness::Elements).empty());
    CHECK(enumerate_flows(d, "n2", "n6", FlowUniqueness::Connectors).empty());
  }
  SUBCASE("cycles exist only in connector-unique mode") {
    CHECK(enumerate_flows(d, "n5", "n5", FlowUniqueness::Elements).empty());
    const auto cycles = enumerate_flows(d, "n5", "n5", FlowUniqueness::Connectors);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].sequence() == std::vector<std::string>{"n5", "r3", "n6", "r4", "n5"});
  }
  SUBCASE("a branch stops the first time it reaches the target") {
    const auto flows = enumerate_flows(d, "n4", "n5", FlowUniqueness::Connectors);
    REQUIRE(flows.size() == 1);
    CHECK(flows[0].hop_count() == 1);  // never extended through n6 and back
  }
  SUBCASE("unknown endpoints are rejected") {
    CHECK_THROWS_AS(enumerate_flows(d, "ghost", "n6", FlowUniqueness::Elements), ModelError);
    CHECK_THROWS_AS(enumerate_flows(d, "n4", "r1", FlowUniqueness::Connectors), ModelError);
  }
}

TEST_CASE("parallel edges and diamonds") {
  // Two parallel connectors between the same elements are distinct flows.
  Diagram::Data data;
  data.elements = {{"a", "Service", {}, {}, {}}, {"b", "Service", {}, {}, {}}};
  data.connectors = {{"r1", "Link", "a", "b", {}}, {"r2", "Link", "a", "b", {}}};
  const Diagram two = Diagram::from_parts(std::move(data));
  CHECK(enumerate_flows(two, "a", "b", FlowUniqueness::Elements).size() == 2);

  const Diagram diamond = chain({{"s", "l"}, {"s", "r"}, {"l", "t"}, {"r", "t"}});
  const auto flows = enumerate_flows(diamond, "s", "t", FlowUniqueness::Elements);
  REQUIRE(flows.size() == 2);
  CHECK(std::is_sorted(flows.begin(), flows.end()));
}

TEST_CASE("self-loop connectors feed connector-unique cycles") {
  Diagram::Data data;
  data.elements = {{"a", "Service", {}, {}, {}}, {"b", "Service", {}, {}, {}}};
  data.connectors = {{"loop", "Link", "a", "a", {}}, {"r1", "Link", "a", "b", {}}};
  const Diagram d = Diagram::from_parts(std::move(data));

  CHECK(enumerate_flows(d, "a", "a", FlowUniqueness::Elements).empty());
  const auto cycles = enumerate_flows(d, "a", "a", FlowUniqueness::Connectors);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].sequence() == std::vector<std::string>{"a", "loop", "a"});
  // Revisiting a non-target element keeps the branch alive, so the loop may
  // occur mid-walk; only reaching the target ends it.
  const auto to_b = enumerate_flows(d, "a", "b", FlowUniqueness::Connectors);
  REQUIRE(to_b.size() == 2);
  CHECK(to_b[0].sequence() == std::vector<std::string>{"a", "loop", "a", "r1", "b"});
  CHECK(to_b[1].sequence() == std::vector<std::string>{"a", "r1", "b"});
  CHECK(enumerate_flows(d, "a", "b", FlowUniqueness::Elements).size() == 1);
}

TEST_CASE("element-unique flows are a subset of connector-unique flows") {
  gen::Rng rng(808);
  for (int round = 0; round < 150; ++round) {
    const Diagram d = gen::random_digraph(rng, 6, 10);
    const auto& ids = d.ids(Category::Element);
    const std::vector<std::string> nodes(ids.begin(), ids.end());
    const std::string& src = nodes[gen::pick(rng, nodes.size())];
    const std::string& tgt = nodes[gen::pick(rng, nodes.size())];
    const auto simple = enumerate_flows(d, src, tgt, FlowUniqueness::Elements);
    const auto walks = enumerate_flows(d, src, tgt, FlowUniqueness::Connectors);
    const std::set<Flow> walk_set(walks.begin(), walks.end());
    for (const Flow& f : simple) CHECK(walk_set.count(f) == 1);
  }
}

TEST_CASE("both modes agree with brute-force enumeration") {
  gen::Rng rng(1312);
  for (int round = 0; round < 120; ++round) {
    const Diagram d = gen::random_digraph(rng, 6, 9);
    const auto& ids = d.ids(Category::Element);
    const std::vector<std::string> nodes(ids.begin(), ids.end());
    const std::string& src = nodes[gen::pick(rng, nodes.size())];
    const std::string& tgt = nodes[gen::pick(rng, nodes.size())];
    for (const auto mode : {FlowUniqueness::Elements, FlowUniqueness::Connectors}) {
      const auto got = enumerate_flows(d, src, tgt, mode);
      const std::set<Flow> got_set(got.begin(), got.end());
      REQUIRE(got_set.size() == got.size());  // no duplicates
      CHECK(std::is_sorted(got.begin(), got.end()));
      CHECK(got_set == oracle::flows(d, src, tgt, mode));
    }
  }
}
