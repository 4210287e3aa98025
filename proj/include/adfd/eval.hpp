#pragma once

#include <optional>
#include <set>

#include "adfd/ast.hpp"
#include "adfd/flows.hpp"
#include "adfd/model.hpp"

namespace adfd {

// One way a term is satisfied: the component or flow under consideration
// (absent for conjunction results, which aggregate several foci) together
// with the set of components and flows that materially took part.
struct MatchTuple {
  std::optional<ComponentRef> focus;
  std::set<ComponentRef> affected;

  friend bool operator==(const MatchTuple& a, const MatchTuple& b) {
    return a.focus == b.focus && a.affected == b.affected;
  }
  friend bool operator<(const MatchTuple& a, const MatchTuple& b) {
    if (a.focus != b.focus) {
      if (!a.focus) return true;
      if (!b.focus) return false;
      return *a.focus < *b.focus;
    }
    return a.affected < b.affected;
  }
};

using MatchSet = std::set<MatchTuple>;

// Evaluates rule terms over one diagram. All methods are const and total
// for any parser-producible tree, whether or not the rule passes the static
// check: unknown names simply match nothing.
class Evaluator {
 public:
  Evaluator(const Diagram& diagram, const ContentSpecification& spec,
            FlowUniqueness flow_uniqueness = FlowUniqueness::Elements)
      : diagram_(diagram), spec_(spec), flow_uniqueness_(flow_uniqueness) {}

  // Conjunctions combine sub-results pairwise into anonymous tuples whose
  // affected sets are unions; disjunctions collect sub-results unchanged.
  MatchSet evaluate(const Query& query) const;

  // All components or flows the pattern denotes, each with the components
  // that witnessed its filters.
  MatchSet evaluate_pattern(const Pattern& pattern) const;

  // One filter under a fixed context component; every returned tuple keeps
  // the context as focus. Negated filter forms return the bare context
  // tuple exactly when their positive form returns nothing.
  MatchSet evaluate_filter(const Filter& filter, const ComponentRef& context) const;

  // Components of one category admitted by a type filter, with empty
  // affected sets. A named top-type admits its sub-types.
  MatchSet evaluate_type_filter(const TypeFilter& type_filter, Category category) const;

  bool type_filter_admits(const TypeFilter& type_filter, Category category,
                          const std::string& id) const;

  FlowUniqueness flow_uniqueness() const { return flow_uniqueness_; }

 private:
  // Affected-set choices of a pattern result, grouped by focus id.
  std::map<std::string, std::vector<std::set<ComponentRef>>> group_by_focus(
      const MatchSet& result) const;

  // Affected-set choices of an optional secondary filter under `context`;
  // nullopt when the filter failed (as opposed to one empty choice when
  // there is no filter).
  std::optional<std::vector<std::set<ComponentRef>>> extra_choices(
      const FilterPtr& filter, const ComponentRef& context) const;

  MatchSet evaluate_simple_pattern(const Pattern& pattern, Category category) const;
  MatchSet evaluate_connector_pattern(const Pattern& pattern) const;
  MatchSet evaluate_flow_pattern(const Pattern& pattern) const;

  MatchSet evaluate_property_filter(const PropertyFilter& filter,
                                    const ComponentRef& context) const;
  MatchSet evaluate_holds_filter(const HoldsFilter& filter, const ComponentRef& context) const;
  MatchSet evaluate_containment_filter(const ContainmentFilter& filter,
                                       const ComponentRef& context) const;
  MatchSet evaluate_connector_filter(const ConnectorFilter& filter,
                                     const ComponentRef& context) const;
  MatchSet evaluate_flow_filter(const FlowFilter& filter, const ComponentRef& context) const;
  MatchSet evaluate_crosses_filter(const CrossesFilter& filter,
                                   const ComponentRef& context) const;
  MatchSet evaluate_includes_filter(const IncludesFilter& filter,
                                    const ComponentRef& context) const;

  // Whether `container` (an element or boundary pattern result) contains
  // the element `inner_element` under the matching containment relation.
  bool component_contains(const ComponentRef& container, const std::string& inner_element) const;

  const Diagram& diagram_;
  const ContentSpecification& spec_;
  FlowUniqueness flow_uniqueness_;
};

}  // namespace adfd
