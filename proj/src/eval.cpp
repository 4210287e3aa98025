#include "adfd/eval.hpp"

#include <algorithm>

namespace adfd {

namespace {

std::set<ComponentRef> set_union(const std::set<ComponentRef>& a,
                                 const std::set<ComponentRef>& b) {
  std::set<ComponentRef> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

Category category_of(PatternKind kind) {
  switch (kind) {
    case PatternKind::Element: return Category::Element;
    case PatternKind::Asset: return Category::Asset;
    case PatternKind::Boundary: return Category::Boundary;
    case PatternKind::Connector: return Category::Connector;
    case PatternKind::Flow: break;
  }
  return Category::Element;
}

MatchTuple context_only(const ComponentRef& context) {
  return MatchTuple{context, {context}};
}

}  // namespace

// ---------------------------------------------------------------------------
// Queries

MatchSet Evaluator::evaluate(const Query& query) const {
  if (const auto* conj = std::get_if<QueryAnd>(&query.node)) {
    MatchSet acc = evaluate(*conj->items.front());
    for (std::size_t i = 1; i < conj->items.size(); ++i) {
      if (acc.empty()) return {};
      MatchSet next = evaluate(*conj->items[i]);
      if (next.empty()) return {};
      MatchSet merged;
      for (const MatchTuple& a : acc) {
        for (const MatchTuple& b : next)
          merged.insert(MatchTuple{std::nullopt, set_union(a.affected, b.affected)});
      }
      acc = std::move(merged);
    }
    return acc;
  }
  if (const auto* disj = std::get_if<QueryOr>(&query.node)) {
    MatchSet out;
    for (const QueryPtr& item : disj->items) {
      MatchSet sub = evaluate(*item);
      out.insert(sub.begin(), sub.end());
    }
    return out;
  }
  return evaluate_pattern(*std::get<PatternPtr>(query.node));
}

// ---------------------------------------------------------------------------
// Patterns

MatchSet Evaluator::evaluate_pattern(const Pattern& pattern) const {
  if (pattern.is_alternative()) {
    MatchSet out;
    for (const PatternPtr& alt : pattern.alternatives) {
      MatchSet sub = evaluate_pattern(*alt);
      out.insert(sub.begin(), sub.end());
    }
    return out;
  }
  switch (pattern.kind) {
    case PatternKind::Element:
    case PatternKind::Asset:
    case PatternKind::Boundary:
      return evaluate_simple_pattern(pattern, category_of(pattern.kind));
    case PatternKind::Connector:
      if (!pattern.has_endpoints())
        return evaluate_simple_pattern(pattern, Category::Connector);
      return evaluate_connector_pattern(pattern);
    case PatternKind::Flow:
      return evaluate_flow_pattern(pattern);
  }
  return {};
}

MatchSet Evaluator::evaluate_simple_pattern(const Pattern& pattern, Category category) const {
  MatchSet out;
  for (const std::string& id : diagram_.ids(category)) {
    if (pattern.type && !type_filter_admits(*pattern.type, category, id)) continue;
    ComponentRef ref = ComponentRef::of(category, id);
    if (!pattern.filter) {
      out.insert(MatchTuple{ref, {ref}});
      continue;
    }
    for (const MatchTuple& t : evaluate_filter(*pattern.filter, ref))
      out.insert(MatchTuple{ref, set_union({ref}, t.affected)});
  }
  return out;
}

MatchSet Evaluator::evaluate_connector_pattern(const Pattern& pattern) const {
  const auto sources = group_by_focus(evaluate_pattern(*pattern.source));
  const auto targets = group_by_focus(evaluate_pattern(*pattern.target));
  MatchSet out;
  for (const std::string& id : diagram_.ids(Category::Connector)) {
    if (pattern.type && !type_filter_admits(*pattern.type, Category::Connector, id)) continue;
    auto src = sources.find(diagram_.source_of(id));
    if (src == sources.end()) continue;
    auto tgt = targets.find(diagram_.target_of(id));
    if (tgt == targets.end()) continue;
    ComponentRef ref = ComponentRef::connector(id);
    auto extras = extra_choices(pattern.filter, ref);
    if (!extras) continue;
    for (const auto& m1 : src->second) {
      for (const auto& m2 : tgt->second) {
        for (const auto& m3 : *extras)
          out.insert(MatchTuple{ref, set_union(set_union(set_union({ref}, m1), m2), m3)});
      }
    }
  }
  return out;
}

MatchSet Evaluator::evaluate_flow_pattern(const Pattern& pattern) const {
  const auto sources = group_by_focus(evaluate_pattern(*pattern.source));
  const auto targets = group_by_focus(evaluate_pattern(*pattern.target));
  MatchSet out;
  for (const auto& [src_id, src_sets] : sources) {
    for (const auto& [tgt_id, tgt_sets] : targets) {
      for (const Flow& flow : enumerate_flows(diagram_, src_id, tgt_id, flow_uniqueness_)) {
        ComponentRef ref = ComponentRef::of_flow(flow);
        auto extras = extra_choices(pattern.filter, ref);
        if (!extras) continue;
        for (const auto& m1 : src_sets) {
          for (const auto& m2 : tgt_sets) {
            for (const auto& m3 : *extras)
              out.insert(MatchTuple{ref, set_union(set_union(set_union({ref}, m1), m2), m3)});
          }
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Filters

MatchSet Evaluator::evaluate_filter(const Filter& filter, const ComponentRef& context) const {
  if (const auto* conj = std::get_if<FilterAnd>(&filter.node)) {
    MatchSet acc = evaluate_filter(*conj->items.front(), context);
    for (std::size_t i = 1; i < conj->items.size(); ++i) {
      if (acc.empty()) return {};
      MatchSet next = evaluate_filter(*conj->items[i], context);
      if (next.empty()) return {};
      MatchSet merged;
      for (const MatchTuple& a : acc) {
        for (const MatchTuple& b : next)
          merged.insert(MatchTuple{context, set_union(a.affected, b.affected)});
      }
      acc = std::move(merged);
    }
    return acc;
  }
  if (const auto* disj = std::get_if<FilterOr>(&filter.node)) {
    MatchSet out;
    for (const FilterPtr& item : disj->items) {
      MatchSet sub = evaluate_filter(*item, context);
      out.insert(sub.begin(), sub.end());
    }
    return out;
  }
  if (const auto* prop = std::get_if<PropertyFilter>(&filter.node))
    return evaluate_property_filter(*prop, context);
  if (const auto* holds = std::get_if<HoldsFilter>(&filter.node))
    return evaluate_holds_filter(*holds, context);
  if (const auto* cont = std::get_if<ContainmentFilter>(&filter.node))
    return evaluate_containment_filter(*cont, context);
  if (const auto* con = std::get_if<ConnectorFilter>(&filter.node))
    return evaluate_connector_filter(*con, context);
  if (const auto* flow = std::get_if<FlowFilter>(&filter.node))
    return evaluate_flow_filter(*flow, context);
  if (const auto* crosses = std::get_if<CrossesFilter>(&filter.node))
    return evaluate_crosses_filter(*crosses, context);
  return evaluate_includes_filter(std::get<IncludesFilter>(filter.node), context);
}

// A property filter holds only when the key is actually assigned on the
// context; negated comparison forms still require an assigned value.
MatchSet Evaluator::evaluate_property_filter(const PropertyFilter& filter,
                                             const ComponentRef& context) const {
  std::optional<std::string> value = diagram_.property_value(context.id, filter.key);
  if (!value) return {};
  bool listed = std::find(filter.values.begin(), filter.values.end(), *value) !=
                filter.values.end();
  bool holds = false;
  switch (filter.op) {
    case SetOp::Eq:
    case SetOp::In: holds = listed; break;
    case SetOp::Neq:
    case SetOp::NotIn: holds = !listed; break;
  }
  return holds ? MatchSet{context_only(context)} : MatchSet{};
}

MatchSet Evaluator::evaluate_holds_filter(const HoldsFilter& filter,
                                          const ComponentRef& context) const {
  MatchSet out;
  for (const MatchTuple& t : evaluate_pattern(*filter.asset)) {
    if (diagram_.holds_asset(context.id, t.focus->id))
      out.insert(MatchTuple{context, t.affected});
  }
  return out;
}

MatchSet Evaluator::evaluate_containment_filter(const ContainmentFilter& filter,
                                                const ComponentRef& context) const {
  const bool negated =
      filter.mode == Containment::ContainsNo || filter.mode == Containment::NotContainedBy;
  const bool inward =
      filter.mode == Containment::Contains || filter.mode == Containment::ContainsNo;

  MatchSet positive;
  for (const MatchTuple& t : evaluate_pattern(*filter.inner)) {
    const ComponentRef& other = *t.focus;
    bool related;
    if (inward) {
      // context contains other: only elements can be inside an element.
      if (context.kind == ComponentKind::Element) {
        related = diagram_.contains(Relation::Delta, context.id, other.id);
      } else {
        related = diagram_.contains(Relation::Kappa, context.id, other.id);
      }
    } else {
      // context is contained by other.
      if (other.kind == ComponentKind::Element) {
        related = diagram_.contains(Relation::Delta, other.id, context.id);
      } else {
        related = diagram_.contains(Relation::Kappa, other.id, context.id);
      }
    }
    if (related) positive.insert(MatchTuple{context, t.affected});
  }
  if (!negated) return positive;
  return positive.empty() ? MatchSet{context_only(context)} : MatchSet{};
}

MatchSet Evaluator::evaluate_connector_filter(const ConnectorFilter& filter,
                                              const ComponentRef& context) const {
  const auto endpoints = group_by_focus(evaluate_pattern(*filter.endpoint));
  MatchSet positive;
  for (const std::string& id : diagram_.ids(Category::Connector)) {
    if (filter.type && !type_filter_admits(*filter.type, Category::Connector, id)) continue;
    // Source conditions select incoming connectors by their source element,
    // target conditions outgoing connectors by their target element.
    const std::string& anchor =
        filter.side == Side::Source ? diagram_.target_of(id) : diagram_.source_of(id);
    if (anchor != context.id) continue;
    const std::string& other =
        filter.side == Side::Source ? diagram_.source_of(id) : diagram_.target_of(id);
    auto match = endpoints.find(other);
    if (match == endpoints.end()) continue;
    ComponentRef ref = ComponentRef::connector(id);
    auto extras = extra_choices(filter.extra, ref);
    if (!extras) continue;
    for (const auto& m1 : match->second) {
      for (const auto& m2 : *extras)
        positive.insert(MatchTuple{context, set_union(set_union({ref}, m1), m2)});
    }
  }
  if (!filter.negated) return positive;
  return positive.empty() ? MatchSet{context_only(context)} : MatchSet{};
}

MatchSet Evaluator::evaluate_flow_filter(const FlowFilter& filter,
                                         const ComponentRef& context) const {
  MatchSet positive;
  for (const MatchTuple& t : evaluate_pattern(*filter.endpoint)) {
    const std::string& other = t.focus->id;
    const std::string& from = filter.side == Side::Source ? other : context.id;
    const std::string& to = filter.side == Side::Source ? context.id : other;
    for (const Flow& flow : enumerate_flows(diagram_, from, to, flow_uniqueness_)) {
      ComponentRef ref = ComponentRef::of_flow(flow);
      auto extras = extra_choices(filter.extra, ref);
      if (!extras) continue;
      for (const auto& m2 : *extras)
        positive.insert(MatchTuple{context, set_union(set_union({ref}, t.affected), m2)});
    }
  }
  if (!filter.negated) return positive;
  return positive.empty() ? MatchSet{context_only(context)} : MatchSet{};
}

bool Evaluator::component_contains(const ComponentRef& container,
                                   const std::string& inner_element) const {
  if (container.kind == ComponentKind::Element)
    return diagram_.contains(Relation::Delta, container.id, inner_element);
  return diagram_.contains(Relation::Kappa, container.id, inner_element);
}

MatchSet Evaluator::evaluate_crosses_filter(const CrossesFilter& filter,
                                            const ComponentRef& context) const {
  MatchSet out;
  for (const MatchTuple& t : evaluate_pattern(*filter.inner)) {
    const ComponentRef& container = *t.focus;
    bool crossed = false;
    if (context.kind == ComponentKind::Connector) {
      crossed = component_contains(container, diagram_.source_of(context.id)) !=
                component_contains(container, diagram_.target_of(context.id));
    } else {
      for (std::size_t i = 1; i < context.flow.size() && !crossed; i += 2) {
        const std::string& connector = context.flow[i];
        crossed = component_contains(container, diagram_.source_of(connector)) !=
                  component_contains(container, diagram_.target_of(connector));
      }
    }
    if (crossed) out.insert(MatchTuple{context, t.affected});
  }
  return out;
}

MatchSet Evaluator::evaluate_includes_filter(const IncludesFilter& filter,
                                             const ComponentRef& context) const {
  const Flow flow(context.flow);
  const std::set<std::string> members =
      filter.inner->kind == PatternKind::Connector ? flow.connectors() : flow.elements();
  const MatchSet inner = evaluate_pattern(*filter.inner);

  if (filter.mode == Multiplicity::Only) {
    // Every member must match the pattern; one tuple per way of choosing a
    // witness set for each member.
    const auto choices = group_by_focus(inner);
    std::set<std::set<ComponentRef>> acc{std::set<ComponentRef>{}};
    for (const std::string& member : members) {
      auto it = choices.find(member);
      if (it == choices.end()) return {};
      std::set<std::set<ComponentRef>> next;
      for (const auto& base : acc) {
        for (const auto& witness : it->second) next.insert(set_union(base, witness));
      }
      acc = std::move(next);
    }
    MatchSet out;
    for (const auto& affected : acc) out.insert(MatchTuple{context, affected});
    return out;
  }

  MatchSet positive;
  for (const MatchTuple& t : inner) {
    if (members.count(t.focus->id)) positive.insert(MatchTuple{context, t.affected});
  }
  if (filter.mode == Multiplicity::Some) return positive;
  return positive.empty() ? MatchSet{context_only(context)} : MatchSet{};
}

// ---------------------------------------------------------------------------
// Type filters

bool Evaluator::type_filter_admits(const TypeFilter& type_filter, Category category,
                                   const std::string& id) const {
  const std::string& assigned = diagram_.type_of(category, id);
  auto denotes = [&](const std::string& name) {
    if (assigned == name) return true;
    // A top-type name also denotes each of its sub-types.
    return spec_.has_type(category, name) && spec_.subtypes(category, name).count(assigned) > 0;
  };
  switch (type_filter.op) {
    case SetOp::Eq:
    case SetOp::In:
      return std::any_of(type_filter.types.begin(), type_filter.types.end(), denotes);
    case SetOp::Neq:
    case SetOp::NotIn:
      return std::none_of(type_filter.types.begin(), type_filter.types.end(), denotes);
  }
  return false;
}

MatchSet Evaluator::evaluate_type_filter(const TypeFilter& type_filter,
                                         Category category) const {
  MatchSet out;
  for (const std::string& id : diagram_.ids(category)) {
    if (type_filter_admits(type_filter, category, id))
      out.insert(MatchTuple{ComponentRef::of(category, id), {}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Helpers

std::map<std::string, std::vector<std::set<ComponentRef>>> Evaluator::group_by_focus(
    const MatchSet& result) const {
  std::map<std::string, std::vector<std::set<ComponentRef>>> out;
  for (const MatchTuple& t : result) out[t.focus->id].push_back(t.affected);
  return out;
}

std::optional<std::vector<std::set<ComponentRef>>> Evaluator::extra_choices(
    const FilterPtr& filter, const ComponentRef& context) const {
  std::vector<std::set<ComponentRef>> out;
  if (!filter) {
    out.emplace_back();
    return out;
  }
  for (const MatchTuple& t : evaluate_filter(*filter, context)) out.push_back(t.affected);
  if (out.empty()) return std::nullopt;
  return out;
}

}  // namespace adfd
