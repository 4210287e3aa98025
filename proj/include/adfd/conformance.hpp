#pragma once

#include <vector>

#include "adfd/model.hpp"
#include "adfd/violation.hpp"

namespace adfd {

// Checks the two cardinality conditions: a diagram has at least one element,
// and any connector requires at least two elements.
std::vector<Violation> validate_cardinality(const Diagram& diagram);

// Full conformance check of a diagram against a specification: cardinality,
// every assigned type is declared, every assigned property key is allowed
// for the component's effective type, and every assigned value lies in the
// key's domain. Assets held by nothing are flagged as a warning, which does
// not affect conformance. The diagram conforms iff no Error entry is
// returned; the result is sorted canonically.
std::vector<Violation> validate_diagram(const Diagram& diagram,
                                        const ContentSpecification& spec);

}  // namespace adfd
