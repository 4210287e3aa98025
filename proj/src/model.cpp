#include "adfd/model.hpp"

#include <algorithm>

namespace adfd {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateType: return "DUPLICATE_TYPE";
    case ErrorCode::SubtypeWithChildren: return "SUBTYPE_WITH_CHILDREN";
    case ErrorCode::UnknownKeyInEta: return "UNKNOWN_KEY_IN_ETA";
    case ErrorCode::UnknownValueInGamma: return "UNKNOWN_VALUE_IN_GAMMA";
    case ErrorCode::DuplicateId: return "DUPLICATE_ID";
    case ErrorCode::DanglingEndpoint: return "DANGLING_ENDPOINT";
    case ErrorCode::CyclicContainment: return "CYCLIC_CONTAINMENT";
    case ErrorCode::MultipleParents: return "MULTIPLE_PARENTS";
    case ErrorCode::UnknownType: return "UNKNOWN_TYPE";
    case ErrorCode::UnknownComponent: return "UNKNOWN_COMPONENT";
    case ErrorCode::DuplicateRuleId: return "DUPLICATE_RULE_ID";
    case ErrorCode::RangeError: return "RANGE_ERROR";
    case ErrorCode::InvalidDocument: return "INVALID_DOCUMENT";
    case ErrorCode::IoError: return "IO_ERROR";
    case ErrorCode::ModelNotConforming: return "MODEL_NOT_CONFORMING";
  }
  return "UNKNOWN_ERROR";
}

ModelError::ModelError(ErrorCode code, std::string message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& message) {
  throw ModelError(code, message);
}

}  // namespace

// ---------------------------------------------------------------------------
// ContentSpecification

ContentSpecification ContentSpecification::from_parts(const Data& data) {
  ContentSpecification spec;
  spec.value_domains_ = data.value_domains;
  for (const auto& [key, values] : data.value_domains) {
    spec.keys_.insert(key);
    if (!data.declared_values) spec.values_.insert(values.begin(), values.end());
  }
  if (data.declared_values) {
    spec.values_ = *data.declared_values;
    for (const auto& [key, values] : data.value_domains) {
      for (const auto& v : values) {
        if (!spec.values_.count(v))
          fail(ErrorCode::UnknownValueInGamma,
               "value '" + v + "' of key '" + key + "' is not in the value universe");
      }
    }
  }

  const std::pair<Category, const std::vector<TypeDecl>*> sections[] = {
      {Category::Element, &data.element_types},
      {Category::Asset, &data.asset_types},
      {Category::Boundary, &data.boundary_types},
      {Category::Connector, &data.connector_types},
  };

  for (const auto& [category, decls] : sections) {
    CategoryTable& table = spec.table(category);
    for (const TypeDecl& decl : *decls) {
      if (!table.types.insert(decl.name).second)
        fail(ErrorCode::DuplicateType,
             std::string(to_string(category)) + " type '" + decl.name + "' declared twice");
      if (category == Category::Boundary && !decl.keys.empty())
        fail(ErrorCode::InvalidDocument,
             "boundary type '" + decl.name + "' must not declare property keys");
    }
    for (const TypeDecl& decl : *decls) {
      if (!decl.parent) continue;
      if (!table.types.count(*decl.parent))
        fail(ErrorCode::UnknownType, "parent type '" + *decl.parent + "' of '" + decl.name +
                                         "' is not a declared " + to_string(category) + " type");
      table.subs_of[*decl.parent].insert(decl.name);
      table.top_of[decl.name] = *decl.parent;
    }
    // The hierarchy is two-level: a type with a parent must not be a parent.
    for (const TypeDecl& decl : *decls) {
      if (decl.parent && table.subs_of.count(decl.name))
        fail(ErrorCode::SubtypeWithChildren,
             "type '" + decl.name + "' is a sub-type and cannot have sub-types of its own");
    }
    for (const TypeDecl& decl : *decls) {
      std::set<std::string> keys = decl.keys;
      if (decl.parent) {
        auto parent = std::find_if(decls->begin(), decls->end(),
                                   [&](const TypeDecl& d) { return d.name == *decl.parent; });
        keys.insert(parent->keys.begin(), parent->keys.end());
      }
      for (const auto& key : keys) {
        if (!spec.keys_.count(key))
          fail(ErrorCode::UnknownKeyInEta,
               "type '" + decl.name + "' references key '" + key + "' without a value domain");
      }
      table.effective_keys[decl.name] = std::move(keys);
    }
  }
  return spec;
}

const ContentSpecification::CategoryTable& ContentSpecification::table(Category c) const {
  switch (c) {
    case Category::Element: return elements_;
    case Category::Asset: return assets_;
    case Category::Boundary: return boundaries_;
    case Category::Connector: return connectors_;
  }
  return elements_;
}

ContentSpecification::CategoryTable& ContentSpecification::table(Category c) {
  return const_cast<CategoryTable&>(static_cast<const ContentSpecification*>(this)->table(c));
}

const std::set<std::string>& ContentSpecification::types(Category c) const {
  return table(c).types;
}

bool ContentSpecification::has_type(Category c, const std::string& name) const {
  return table(c).types.count(name) > 0;
}

const std::set<std::string>& ContentSpecification::subtypes(Category c,
                                                            const std::string& name) const {
  static const std::set<std::string> kEmpty;
  const CategoryTable& t = table(c);
  if (!t.types.count(name))
    fail(ErrorCode::UnknownType,
         std::string("no ") + to_string(c) + " type named '" + name + "'");
  auto it = t.subs_of.find(name);
  return it == t.subs_of.end() ? kEmpty : it->second;
}

std::optional<std::string> ContentSpecification::top_type_of(Category c,
                                                             const std::string& name) const {
  const CategoryTable& t = table(c);
  if (!t.types.count(name))
    fail(ErrorCode::UnknownType,
         std::string("no ") + to_string(c) + " type named '" + name + "'");
  auto it = t.top_of.find(name);
  if (it == t.top_of.end()) return std::nullopt;
  return it->second;
}

const std::set<std::string>& ContentSpecification::effective_keys(Category c,
                                                                  const std::string& name) const {
  static const std::set<std::string> kEmpty;
  if (c == Category::Boundary) return kEmpty;
  const CategoryTable& t = table(c);
  auto it = t.effective_keys.find(name);
  if (it == t.effective_keys.end())
    fail(ErrorCode::UnknownType,
         std::string("no ") + to_string(c) + " type named '" + name + "'");
  return it->second;
}

const std::set<std::string>* ContentSpecification::value_domain(const std::string& key) const {
  auto it = value_domains_.find(key);
  return it == value_domains_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Flow

Flow::Flow(std::vector<std::string> sequence) : seq_(std::move(sequence)) {
  if (seq_.size() < 3 || seq_.size() % 2 == 0)
    throw std::invalid_argument("flow sequences alternate element, connector, ..., element");
}

std::set<std::string> Flow::elements() const {
  std::set<std::string> out;
  for (std::size_t i = 0; i < seq_.size(); i += 2) out.insert(seq_[i]);
  return out;
}

std::set<std::string> Flow::connectors() const {
  std::set<std::string> out;
  for (std::size_t i = 1; i < seq_.size(); i += 2) out.insert(seq_[i]);
  return out;
}

// ---------------------------------------------------------------------------
// ComponentRef

ComponentRef ComponentRef::element(std::string id) {
  return {ComponentKind::Element, std::move(id), {}};
}
ComponentRef ComponentRef::asset(std::string id) {
  return {ComponentKind::Asset, std::move(id), {}};
}
ComponentRef ComponentRef::boundary(std::string id) {
  return {ComponentKind::Boundary, std::move(id), {}};
}
ComponentRef ComponentRef::connector(std::string id) {
  return {ComponentKind::Connector, std::move(id), {}};
}

ComponentRef ComponentRef::of(Category c, std::string id) {
  switch (c) {
    case Category::Element: return element(std::move(id));
    case Category::Asset: return asset(std::move(id));
    case Category::Boundary: return boundary(std::move(id));
    case Category::Connector: return connector(std::move(id));
  }
  return element(std::move(id));
}

ComponentRef ComponentRef::of_flow(const Flow& f) {
  return {ComponentKind::Flow, {}, f.sequence()};
}

std::string ComponentRef::display() const {
  if (!is_flow()) return id;
  std::string out;
  for (std::size_t i = 0; i < flow.size(); ++i) {
    if (i) out += "->";
    out += flow[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagram

namespace {

// Expands parent chains into a transitive closure of (ancestor, descendant)
// pairs. `parent_of` must describe a forest; cycles are reported.
std::set<std::pair<std::string, std::string>> chain_closure(
    const std::map<std::string, std::string>& parent_of) {
  std::set<std::pair<std::string, std::string>> closure;
  for (const auto& [start, first_parent] : parent_of) {
    std::set<std::string> seen{start};
    const std::string* up = &first_parent;
    while (true) {
      if (!seen.insert(*up).second)
        fail(ErrorCode::CyclicContainment, "containment cycle through '" + start + "'");
      closure.emplace(*up, start);
      auto it = parent_of.find(*up);
      if (it == parent_of.end()) break;
      up = &it->second;
    }
  }
  return closure;
}

}  // namespace

Diagram Diagram::from_parts(Data data) {
  Diagram d;

  auto declare = [&](std::set<std::string>& ids, const std::string& id, const std::string& type) {
    if (d.type_of_.count(id)) fail(ErrorCode::DuplicateId, "component id '" + id + "' reused");
    ids.insert(id);
    d.type_of_[id] = type;
  };
  for (const auto& e : data.elements) declare(d.element_ids_, e.id, e.type);
  for (const auto& b : data.boundaries) declare(d.boundary_ids_, b.id, b.type);
  for (const auto& c : data.connectors) declare(d.connector_ids_, c.id, c.type);
  for (const auto& a : data.assets) declare(d.asset_ids_, a.id, a.type);

  std::map<std::string, std::string> element_parent, boundary_parent, boundary_of;
  for (const auto& e : data.elements) {
    d.properties_[e.id] = e.properties;
    if (e.parent) {
      if (!d.element_ids_.count(*e.parent))
        fail(ErrorCode::UnknownComponent,
             "parent '" + *e.parent + "' of element '" + e.id + "' is not an element");
      element_parent[e.id] = *e.parent;
    }
    if (e.boundary) {
      if (!d.boundary_ids_.count(*e.boundary))
        fail(ErrorCode::UnknownComponent,
             "boundary '" + *e.boundary + "' of element '" + e.id + "' is not a boundary");
      boundary_of[e.id] = *e.boundary;
    }
  }
  for (const auto& b : data.boundaries) {
    if (!b.parent) continue;
    if (!d.boundary_ids_.count(*b.parent))
      fail(ErrorCode::UnknownComponent,
           "parent '" + *b.parent + "' of boundary '" + b.id + "' is not a boundary");
    boundary_parent[b.id] = *b.parent;
  }
  for (const auto& c : data.connectors) {
    d.properties_[c.id] = c.properties;
    for (const std::string* end : {&c.source, &c.target}) {
      if (!d.element_ids_.count(*end))
        fail(ErrorCode::DanglingEndpoint,
             "connector '" + c.id + "' references missing element '" + *end + "'");
    }
    d.endpoints_[c.id] = {c.source, c.target};
    d.outgoing_[c.source].push_back(c.id);
  }
  for (auto& [element, connectors] : d.outgoing_) std::sort(connectors.begin(), connectors.end());
  for (const auto& a : data.assets) {
    d.properties_[a.id] = a.properties;
    for (const auto& holder : a.held_by) {
      if (!d.element_ids_.count(holder) && !d.connector_ids_.count(holder))
        fail(ErrorCode::UnknownComponent,
             "holder '" + holder + "' of asset '" + a.id + "' is neither element nor connector");
      d.asset_links_.emplace(holder, a.id);
      d.holders_[a.id].insert(holder);
    }
  }

  d.delta_ = chain_closure(element_parent);
  // The boundary relation chains through nested boundaries: an element or
  // boundary sits in its declared boundary and in all of that boundary's
  // ancestors.
  d.kappa_ = chain_closure(boundary_parent);
  for (const auto& [inner, boundary] : boundary_of) {
    d.kappa_.emplace(boundary, inner);
    const std::string* up = &boundary;
    while (true) {
      auto it = boundary_parent.find(*up);
      if (it == boundary_parent.end()) break;
      up = &it->second;
      d.kappa_.emplace(*up, inner);
    }
  }

  d.parts_ = std::move(data);
  return d;
}

const std::set<std::string>& Diagram::ids(Category c) const {
  switch (c) {
    case Category::Element: return element_ids_;
    case Category::Asset: return asset_ids_;
    case Category::Boundary: return boundary_ids_;
    case Category::Connector: return connector_ids_;
  }
  return element_ids_;
}

bool Diagram::has_component(Category c, const std::string& id) const {
  return ids(c).count(id) > 0;
}

std::optional<Category> Diagram::category_of(const std::string& id) const {
  if (element_ids_.count(id)) return Category::Element;
  if (asset_ids_.count(id)) return Category::Asset;
  if (boundary_ids_.count(id)) return Category::Boundary;
  if (connector_ids_.count(id)) return Category::Connector;
  return std::nullopt;
}

void Diagram::require(Category c, const std::string& id) const {
  if (!has_component(c, id))
    fail(ErrorCode::UnknownComponent,
         std::string("no ") + to_string(c) + " with id '" + id + "'");
}

const std::string& Diagram::type_of(Category c, const std::string& id) const {
  require(c, id);
  return type_of_.at(id);
}

const std::string& Diagram::source_of(const std::string& connector_id) const {
  require(Category::Connector, connector_id);
  return endpoints_.at(connector_id).first;
}

const std::string& Diagram::target_of(const std::string& connector_id) const {
  require(Category::Connector, connector_id);
  return endpoints_.at(connector_id).second;
}

const std::vector<std::string>& Diagram::outgoing(const std::string& element_id) const {
  static const std::vector<std::string> kEmpty;
  require(Category::Element, element_id);
  auto it = outgoing_.find(element_id);
  return it == outgoing_.end() ? kEmpty : it->second;
}

std::optional<std::string> Diagram::property_value(const std::string& component_id,
                                                   const std::string& key) const {
  auto it = properties_.find(component_id);
  if (it == properties_.end())
    fail(ErrorCode::UnknownComponent,
         "no element, asset or connector with id '" + component_id + "'");
  auto kv = it->second.find(key);
  if (kv == it->second.end()) return std::nullopt;
  return kv->second;
}

const std::map<std::string, std::string>& Diagram::properties_of(
    const std::string& component_id) const {
  auto it = properties_.find(component_id);
  if (it == properties_.end())
    fail(ErrorCode::UnknownComponent,
         "no element, asset or connector with id '" + component_id + "'");
  return it->second;
}

bool Diagram::contains(Relation rel, const std::string& container_id,
                       const std::string& inner_id) const {
  if (rel == Relation::Delta) {
    require(Category::Element, container_id);
    require(Category::Element, inner_id);
    return delta_.count({container_id, inner_id}) > 0;
  }
  require(Category::Boundary, container_id);
  if (!boundary_ids_.count(inner_id)) require(Category::Element, inner_id);
  return kappa_.count({container_id, inner_id}) > 0;
}

bool Diagram::holds_asset(const std::string& holder_id, const std::string& asset_id) const {
  if (!element_ids_.count(holder_id) && !connector_ids_.count(holder_id))
    fail(ErrorCode::UnknownComponent,
         "no element or connector with id '" + holder_id + "'");
  require(Category::Asset, asset_id);
  return asset_links_.count({holder_id, asset_id}) > 0;
}

const std::set<std::string>& Diagram::holders_of(const std::string& asset_id) const {
  static const std::set<std::string> kEmpty;
  require(Category::Asset, asset_id);
  auto it = holders_.find(asset_id);
  return it == holders_.end() ? kEmpty : it->second;
}

const std::set<std::pair<std::string, std::string>>& Diagram::closure(Relation rel) const {
  return rel == Relation::Delta ? delta_ : kappa_;
}

bool operator==(const Diagram& a, const Diagram& b) {
  return a.type_of_ == b.type_of_ && a.endpoints_ == b.endpoints_ &&
         a.properties_ == b.properties_ && a.delta_ == b.delta_ && a.kappa_ == b.kappa_ &&
         a.asset_links_ == b.asset_links_ && a.element_ids_ == b.element_ids_ &&
         a.asset_ids_ == b.asset_ids_ && a.boundary_ids_ == b.boundary_ids_ &&
         a.connector_ids_ == b.connector_ids_;
}

}  // namespace adfd
