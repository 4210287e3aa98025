#pragma once

#include <json.hpp>

#include "adfd/model.hpp"

namespace adfd {

// Builds a ContentSpecification from its JSON document form. Section names:
// element_types, asset_types, boundary_types, connector_types, properties,
// and optionally values. Throws ModelError on malformed documents and on
// specification invariant violations.
ContentSpecification load_specification(const nlohmann::json& doc);

// Builds a Diagram from its JSON document form (sections elements,
// boundaries, connectors, assets). Type names are kept as written; whether
// they exist in the specification is a conformance question, not a load
// error. Throws ModelError on structural problems (DUPLICATE_ID,
// DANGLING_ENDPOINT, CYCLIC_CONTAINMENT, MULTIPLE_PARENTS, ...).
Diagram load_diagram(const nlohmann::json& doc, const ContentSpecification& spec);

// Document form of a diagram; load_diagram(serialize_diagram(d)) == d.
nlohmann::json serialize_diagram(const Diagram& diagram);

}  // namespace adfd
