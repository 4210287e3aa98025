#include "adfd/conformance.hpp"

namespace adfd {

namespace {

Violation make(ViolationCode code, std::string condition, std::string subject, std::string key,
               std::string message, Severity severity = Severity::Error) {
  Violation v;
  v.severity = severity;
  v.code = code;
  v.condition = std::move(condition);
  v.subject = std::move(subject);
  v.key = std::move(key);
  v.message = std::move(message);
  return v;
}

// Checks one component's type assignment and property table. Property
// checks are skipped when the type itself is unknown; the type violation
// already covers the component.
void check_component(const Diagram& diagram, const ContentSpecification& spec, Category category,
                     const std::string& id, std::vector<Violation>& out) {
  const std::string label = to_string(category);
  const std::string& type = diagram.type_of(category, id);
  if (!spec.has_type(category, type)) {
    out.push_back(make(ViolationCode::UnknownType, label + "-type", id, "",
                       label + " '" + id + "' has undeclared type '" + type + "'"));
    return;
  }
  if (category == Category::Boundary) return;

  const std::set<std::string>& allowed = spec.effective_keys(category, type);
  for (const auto& [key, value] : diagram.properties_of(id)) {
    if (!allowed.count(key)) {
      out.push_back(make(ViolationCode::KeyNotAllowed, label + "-keys", id, key,
                         label + " '" + id + "' of type '" + type + "' cannot carry key '" + key +
                             "'"));
      continue;
    }
    const std::set<std::string>* domain = spec.value_domain(key);
    if (domain && !domain->count(value)) {
      out.push_back(make(ViolationCode::ValueNotInDomain, "value-domain", id, key,
                         "value '" + value + "' of key '" + key + "' on '" + id +
                             "' is outside the key's domain"));
    }
  }
}

}  // namespace

std::vector<Violation> validate_cardinality(const Diagram& diagram) {
  std::vector<Violation> out;
  if (diagram.ids(Category::Element).empty())
    out.push_back(make(ViolationCode::EmptyDiagram, "element-cardinality", "", "",
                       "a diagram needs at least one element"));
  if (!diagram.ids(Category::Connector).empty() && diagram.ids(Category::Element).size() < 2)
    out.push_back(make(ViolationCode::ConnectorNeedsTwoElements, "connector-cardinality", "", "",
                       "connectors require at least two elements"));
  return out;
}

std::vector<Violation> validate_diagram(const Diagram& diagram,
                                        const ContentSpecification& spec) {
  std::vector<Violation> out = validate_cardinality(diagram);
  for (Category category : {Category::Element, Category::Asset, Category::Boundary,
                            Category::Connector}) {
    for (const std::string& id : diagram.ids(category))
      check_component(diagram, spec, category, id, out);
  }
  // The asset cardinality condition holds vacuously; an asset nothing holds
  // is still worth pointing out, as a warning.
  for (const std::string& id : diagram.ids(Category::Asset)) {
    if (diagram.holders_of(id).empty())
      out.push_back(make(ViolationCode::UnheldAsset, "asset-cardinality", id, "",
                         "asset '" + id + "' is held by no element or connector",
                         Severity::Warning));
  }
  sort_violations(out);
  return out;
}

}  // namespace adfd
