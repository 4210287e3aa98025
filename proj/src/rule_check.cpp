#include "adfd/rule_check.hpp"

namespace adfd {

namespace {

Category category_of(PatternKind kind) {
  switch (kind) {
    case PatternKind::Element: return Category::Element;
    case PatternKind::Asset: return Category::Asset;
    case PatternKind::Boundary: return Category::Boundary;
    case PatternKind::Connector: return Category::Connector;
    case PatternKind::Flow: break;
  }
  return Category::Element;  // flows have no category; never used for them
}

class Checker {
 public:
  explicit Checker(const ContentSpecification& spec) : spec_(spec) {}

  std::vector<Violation> run(const Query& query) {
    check_query_node(query);
    sort_violations(out_);
    return std::move(out_);
  }

 private:
  // The type names a pattern position can still denote: nullopt when
  // unconstrained (no or only negated type information).
  using Context = std::optional<std::vector<std::string>>;

  void report(ViolationCode code, std::string condition, std::string subject, std::string key,
              std::string message, SourceSpan span, Severity severity = Severity::Error) {
    Violation v;
    v.severity = severity;
    v.code = code;
    v.condition = std::move(condition);
    v.subject = std::move(subject);
    v.key = std::move(key);
    v.message = std::move(message);
    v.span = span;
    out_.push_back(std::move(v));
  }

  void check_query_node(const Query& query) {
    if (const auto* conj = std::get_if<QueryAnd>(&query.node)) {
      for (const QueryPtr& item : conj->items) check_query_node(*item);
    } else if (const auto* disj = std::get_if<QueryOr>(&query.node)) {
      for (const QueryPtr& item : disj->items) check_query_node(*item);
    } else {
      check_pattern(*std::get<PatternPtr>(query.node));
    }
  }

  // Validates a type filter's names against one category and derives the
  // context its host passes to property filters.
  Context check_type_filter(const TypeFilter& tf, Category category) {
    for (const std::string& name : tf.types) {
      if (!spec_.has_type(category, name))
        report(ViolationCode::UnknownType, "type-filter", name, "",
               std::string("no ") + to_string(category) + " type named '" + name + "'", tf.span);
    }
    if (is_negated(tf.op)) {
      report(ViolationCode::NegatedTypeContext, "type-filter-context", "", "",
             "a negated type filter constrains no property keys", tf.span, Severity::Warning);
      return std::nullopt;
    }
    return tf.types;
  }

  void check_pattern(const Pattern& pattern) {
    if (pattern.is_alternative()) {
      for (const PatternPtr& alt : pattern.alternatives) check_pattern(*alt);
      return;
    }
    Context context;
    if (pattern.type) context = check_type_filter(*pattern.type, category_of(pattern.kind));
    if (pattern.source) check_pattern(*pattern.source);
    if (pattern.target) check_pattern(*pattern.target);
    if (pattern.filter) check_filter(*pattern.filter, category_of(pattern.kind), context);
  }

  void check_filter(const Filter& filter, Category category, const Context& context) {
    if (const auto* conj = std::get_if<FilterAnd>(&filter.node)) {
      for (const FilterPtr& item : conj->items) check_filter(*item, category, context);
    } else if (const auto* disj = std::get_if<FilterOr>(&filter.node)) {
      for (const FilterPtr& item : disj->items) check_filter(*item, category, context);
    } else if (const auto* prop = std::get_if<PropertyFilter>(&filter.node)) {
      check_property_filter(*prop, category, context, filter.span);
    } else if (const auto* holds = std::get_if<HoldsFilter>(&filter.node)) {
      check_pattern(*holds->asset);
    } else if (const auto* cont = std::get_if<ContainmentFilter>(&filter.node)) {
      check_pattern(*cont->inner);
    } else if (const auto* con = std::get_if<ConnectorFilter>(&filter.node)) {
      Context con_context;
      if (con->type) con_context = check_type_filter(*con->type, Category::Connector);
      check_pattern(*con->endpoint);
      if (con->extra) check_filter(*con->extra, Category::Connector, con_context);
    } else if (const auto* flow = std::get_if<FlowFilter>(&filter.node)) {
      check_pattern(*flow->endpoint);
      if (flow->extra) check_filter(*flow->extra, category, std::nullopt);
    } else if (const auto* crosses = std::get_if<CrossesFilter>(&filter.node)) {
      check_pattern(*crosses->inner);
    } else if (const auto* inc = std::get_if<IncludesFilter>(&filter.node)) {
      check_pattern(*inc->inner);
    }
  }

  void check_property_filter(const PropertyFilter& prop, Category category,
                             const Context& context, SourceSpan span) {
    if (!spec_.has_key(prop.key)) {
      report(ViolationCode::UnknownKey, "property-key", prop.key, prop.key,
             "no property key named '" + prop.key + "'", span);
      return;  // context and domain checks would only echo the same problem
    }
    if (context) {
      for (const std::string& type : *context) {
        if (!spec_.has_type(category, type)) continue;  // reported by the type filter already
        if (!spec_.effective_keys(category, type).count(prop.key))
          report(ViolationCode::KeyNotInContext, "property-context", type, prop.key,
                 std::string(to_string(category)) + " type '" + type + "' does not carry key '" +
                     prop.key + "'",
                 span);
      }
    }
    const std::set<std::string>* domain = spec_.value_domain(prop.key);
    for (const std::string& value : prop.values) {
      if (!domain || !domain->count(value))
        report(ViolationCode::ValueNotInDomain, "property-value", value, prop.key,
               "value '" + value + "' is outside the domain of key '" + prop.key + "'", span);
    }
  }

  const ContentSpecification& spec_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> check_query(const Query& query, const ContentSpecification& spec) {
  return Checker(spec).run(query);
}

}  // namespace adfd
