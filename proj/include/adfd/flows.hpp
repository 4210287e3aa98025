#pragma once

#include <vector>

#include "adfd/model.hpp"

namespace adfd {

// What a flow may not revisit while being traced.
enum class FlowUniqueness { Elements, Connectors };

constexpr const char* to_string(FlowUniqueness mode) {
  return mode == FlowUniqueness::Elements ? "elements" : "connectors";
}

// Every directed flow from `source` to `target`, sorted by sequence.
//
// Elements mode: simple paths — all visited elements pairwise distinct, so
// no flow from an element to itself exists. Connectors mode: each connector
// is used at most once and a branch stops the first time it reaches the
// target, so the target occurs only at the final position (and additionally
// at the start when source == target, which admits cycles). Iterative
// depth-first search; recursion depth is not bounded by the diagram size.
//
// Throws ModelError(UNKNOWN_COMPONENT) when either endpoint is not an
// element of the diagram.
std::vector<Flow> enumerate_flows(const Diagram& diagram, const std::string& source,
                                  const std::string& target, FlowUniqueness mode);

}  // namespace adfd
