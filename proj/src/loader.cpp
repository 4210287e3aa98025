#include "adfd/loader.hpp"

#include <set>
#include <string>

namespace adfd {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) {
  throw ModelError(ErrorCode::InvalidDocument, message);
}

const json& expect_object(const json& j, const std::string& where) {
  if (!j.is_object()) bad(where + " must be an object");
  return j;
}

const json& expect_array(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where + " must be an array");
  return j;
}

std::string expect_string(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where + " must be a string");
  return j.get<std::string>();
}

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) bad(where + ": unknown field '" + key + "'");
  }
}

std::map<std::string, std::string> read_properties(const json& obj, const std::string& where) {
  std::map<std::string, std::string> out;
  if (!obj.contains("properties")) return out;
  const json& props = expect_object(obj.at("properties"), where + ".properties");
  for (const auto& [key, value] : props.items())
    out[key] = expect_string(value, where + ".properties['" + key + "']");
  return out;
}

// A containment link is written as a string or as an array holding at most
// one string; more than one declared parent is a structural error.
std::optional<std::string> read_parent_link(const json& obj, const std::string& field,
                                            const std::string& where) {
  if (!obj.contains(field)) return std::nullopt;
  const json& link = obj.at(field);
  if (link.is_string()) return link.get<std::string>();
  if (link.is_array()) {
    if (link.empty()) return std::nullopt;
    if (link.size() > 1)
      throw ModelError(ErrorCode::MultipleParents,
                       where + " declares " + std::to_string(link.size()) + " '" + field +
                           "' links; containment forms a forest");
    return expect_string(link.at(0), where + "." + field);
  }
  bad(where + "." + field + " must be a string or a one-element array");
}

std::vector<ContentSpecification::TypeDecl> read_type_section(const json& doc,
                                                              const std::string& section) {
  std::vector<ContentSpecification::TypeDecl> out;
  if (!doc.contains(section)) return out;
  const json& arr = expect_array(doc.at(section), section);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = section + "[" + std::to_string(i) + "]";
    const json& entry = arr.at(i);
    ContentSpecification::TypeDecl decl;
    if (entry.is_string()) {
      decl.name = entry.get<std::string>();
    } else {
      expect_object(entry, where);
      reject_unknown_fields(entry, {"name", "parent", "keys"}, where);
      if (!entry.contains("name")) bad(where + " needs a 'name'");
      decl.name = expect_string(entry.at("name"), where + ".name");
      if (entry.contains("parent"))
        decl.parent = expect_string(entry.at("parent"), where + ".parent");
      if (entry.contains("keys")) {
        for (const json& k : expect_array(entry.at("keys"), where + ".keys"))
          decl.keys.insert(expect_string(k, where + ".keys[]"));
      }
    }
    out.push_back(std::move(decl));
  }
  return out;
}

}  // namespace

ContentSpecification load_specification(const json& doc) {
  expect_object(doc, "specification document");
  reject_unknown_fields(doc,
                        {"element_types", "asset_types", "boundary_types", "connector_types",
                         "properties", "values"},
                        "specification document");
  ContentSpecification::Data data;
  data.element_types = read_type_section(doc, "element_types");
  data.asset_types = read_type_section(doc, "asset_types");
  data.boundary_types = read_type_section(doc, "boundary_types");
  data.connector_types = read_type_section(doc, "connector_types");
  if (doc.contains("properties")) {
    const json& props = expect_object(doc.at("properties"), "properties");
    for (const auto& [key, values] : props.items()) {
      std::set<std::string> domain;
      for (const json& v : expect_array(values, "properties['" + key + "']"))
        domain.insert(expect_string(v, "properties['" + key + "'][]"));
      data.value_domains[key] = std::move(domain);
    }
  }
  if (doc.contains("values")) {
    std::set<std::string> universe;
    for (const json& v : expect_array(doc.at("values"), "values"))
      universe.insert(expect_string(v, "values[]"));
    data.declared_values = std::move(universe);
  }
  return ContentSpecification::from_parts(data);
}

Diagram load_diagram(const json& doc, const ContentSpecification&) {
  expect_object(doc, "model document");
  reject_unknown_fields(doc, {"elements", "boundaries", "connectors", "assets"},
                        "model document");
  Diagram::Data data;

  auto read_common = [](const json& entry, const std::string& where, std::string& id,
                        std::string& type) {
    expect_object(entry, where);
    if (!entry.contains("id")) bad(where + " needs an 'id'");
    if (!entry.contains("type")) bad(where + " needs a 'type'");
    id = expect_string(entry.at("id"), where + ".id");
    type = expect_string(entry.at("type"), where + ".type");
  };

  if (doc.contains("elements")) {
    const json& arr = expect_array(doc.at("elements"), "elements");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "elements[" + std::to_string(i) + "]";
      const json& entry = arr.at(i);
      Diagram::ElementDecl e;
      read_common(entry, where, e.id, e.type);
      reject_unknown_fields(entry, {"id", "type", "parent", "boundary", "properties"}, where);
      e.parent = read_parent_link(entry, "parent", where);
      e.boundary = read_parent_link(entry, "boundary", where);
      e.properties = read_properties(entry, where);
      data.elements.push_back(std::move(e));
    }
  }
  if (doc.contains("boundaries")) {
    const json& arr = expect_array(doc.at("boundaries"), "boundaries");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "boundaries[" + std::to_string(i) + "]";
      const json& entry = arr.at(i);
      Diagram::BoundaryDecl b;
      read_common(entry, where, b.id, b.type);
      // Boundaries carry no properties, so none are accepted here.
      reject_unknown_fields(entry, {"id", "type", "parent"}, where);
      b.parent = read_parent_link(entry, "parent", where);
      data.boundaries.push_back(std::move(b));
    }
  }
  if (doc.contains("connectors")) {
    const json& arr = expect_array(doc.at("connectors"), "connectors");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "connectors[" + std::to_string(i) + "]";
      const json& entry = arr.at(i);
      Diagram::ConnectorDecl c;
      read_common(entry, where, c.id, c.type);
      reject_unknown_fields(entry, {"id", "type", "source", "target", "properties"}, where);
      if (!entry.contains("source") || !entry.contains("target"))
        bad(where + " needs 'source' and 'target'");
      c.source = expect_string(entry.at("source"), where + ".source");
      c.target = expect_string(entry.at("target"), where + ".target");
      c.properties = read_properties(entry, where);
      data.connectors.push_back(std::move(c));
    }
  }
  if (doc.contains("assets")) {
    const json& arr = expect_array(doc.at("assets"), "assets");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "assets[" + std::to_string(i) + "]";
      const json& entry = arr.at(i);
      Diagram::AssetDecl a;
      read_common(entry, where, a.id, a.type);
      reject_unknown_fields(entry, {"id", "type", "properties", "held_by"}, where);
      a.properties = read_properties(entry, where);
      if (entry.contains("held_by")) {
        for (const json& h : expect_array(entry.at("held_by"), where + ".held_by"))
          a.held_by.push_back(expect_string(h, where + ".held_by[]"));
      }
      data.assets.push_back(std::move(a));
    }
  }
  return Diagram::from_parts(std::move(data));
}

nlohmann::json serialize_diagram(const Diagram& diagram) {
  json doc = json::object();
  const Diagram::Data& parts = diagram.parts();

  json elements = json::array();
  for (const auto& e : parts.elements) {
    json entry{{"id", e.id}, {"type", e.type}};
    if (e.parent) entry["parent"] = *e.parent;
    if (e.boundary) entry["boundary"] = *e.boundary;
    if (!e.properties.empty()) entry["properties"] = e.properties;
    elements.push_back(std::move(entry));
  }
  doc["elements"] = std::move(elements);

  json boundaries = json::array();
  for (const auto& b : parts.boundaries) {
    json entry{{"id", b.id}, {"type", b.type}};
    if (b.parent) entry["parent"] = *b.parent;
    boundaries.push_back(std::move(entry));
  }
  if (!boundaries.empty()) doc["boundaries"] = std::move(boundaries);

  json connectors = json::array();
  for (const auto& c : parts.connectors) {
    json entry{{"id", c.id}, {"type", c.type}, {"source", c.source}, {"target", c.target}};
    if (!c.properties.empty()) entry["properties"] = c.properties;
    connectors.push_back(std::move(entry));
  }
  if (!connectors.empty()) doc["connectors"] = std::move(connectors);

  json assets = json::array();
  for (const auto& a : parts.assets) {
    json entry{{"id", a.id}, {"type", a.type}};
    if (!a.properties.empty()) entry["properties"] = a.properties;
    if (!a.held_by.empty()) entry["held_by"] = a.held_by;
    assets.push_back(std::move(entry));
  }
  if (!assets.empty()) doc["assets"] = std::move(assets);

  return doc;
}

}  // namespace adfd
