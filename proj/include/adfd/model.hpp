#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace adfd {

// Typed component categories of an advanced data-flow diagram.
enum class Category { Element, Asset, Boundary, Connector };

constexpr const char* to_string(Category c) {
  switch (c) {
    case Category::Element: return "element";
    case Category::Asset: return "asset";
    case Category::Boundary: return "boundary";
    case Category::Connector: return "connector";
  }
  return "?";
}

enum class ErrorCode {
  DuplicateType,
  SubtypeWithChildren,
  UnknownKeyInEta,
  UnknownValueInGamma,
  DuplicateId,
  DanglingEndpoint,
  CyclicContainment,
  MultipleParents,
  UnknownType,
  UnknownComponent,
  DuplicateRuleId,
  RangeError,
  InvalidDocument,
  IoError,
  ModelNotConforming,
};

const char* to_string(ErrorCode code);

// Thrown by loaders and accessors for structurally invalid inputs.
// Violations of the conformance relation are reported as values instead.
class ModelError : public std::runtime_error {
 public:
  ModelError(ErrorCode code, std::string message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// The stencil universe: which types exist, how they nest (two levels),
// which property keys each type carries and which values each key admits.
class ContentSpecification {
 public:
  struct TypeDecl {
    std::string name;
    std::optional<std::string> parent;
    std::set<std::string> keys;
  };

  struct Data {
    std::vector<TypeDecl> element_types;
    std::vector<TypeDecl> asset_types;
    std::vector<TypeDecl> boundary_types;
    std::vector<TypeDecl> connector_types;
    // Key -> admissible values. The key set of this map is the key universe.
    std::map<std::string, std::set<std::string>> value_domains;
    // Explicit value universe; when absent it is derived as the union of
    // all value domains.
    std::optional<std::set<std::string>> declared_values;
  };

  // Validates all invariants and inherits top-type keys into sub-types.
  // Throws ModelError (DUPLICATE_TYPE, SUBTYPE_WITH_CHILDREN,
  // UNKNOWN_KEY_IN_ETA, UNKNOWN_VALUE_IN_GAMMA, UNKNOWN_TYPE).
  static ContentSpecification from_parts(const Data& data);

  const std::set<std::string>& types(Category c) const;
  bool has_type(Category c, const std::string& name) const;

  // Sub-types of a top-type; empty for leaf types and for sub-types.
  // Never contains `name` itself. Throws UNKNOWN_TYPE.
  const std::set<std::string>& subtypes(Category c, const std::string& name) const;

  // Top-type of a sub-type, or nullopt when `name` is itself top-level.
  std::optional<std::string> top_type_of(Category c, const std::string& name) const;

  // Keys usable on components of the given type: the type's own keys plus
  // the inherited top-type keys. Only element, asset and connector types
  // carry keys. Throws UNKNOWN_TYPE.
  const std::set<std::string>& effective_keys(Category c, const std::string& name) const;

  const std::set<std::string>& property_keys() const { return keys_; }
  const std::set<std::string>& property_values() const { return values_; }
  bool has_key(const std::string& key) const { return keys_.count(key) > 0; }

  // Admissible values for a key, or nullptr when the key has no domain.
  const std::set<std::string>* value_domain(const std::string& key) const;

 private:
  struct CategoryTable {
    std::set<std::string> types;
    std::map<std::string, std::set<std::string>> subs_of;  // top -> subs
    std::map<std::string, std::string> top_of;             // sub -> top
    std::map<std::string, std::set<std::string>> effective_keys;
  };

  const CategoryTable& table(Category c) const;
  CategoryTable& table(Category c);

  CategoryTable elements_, assets_, boundaries_, connectors_;
  std::set<std::string> keys_;
  std::set<std::string> values_;
  std::map<std::string, std::set<std::string>> value_domains_;
};

// An alternating element/connector sequence with at least one connector.
class Flow {
 public:
  explicit Flow(std::vector<std::string> sequence);

  const std::vector<std::string>& sequence() const { return seq_; }
  const std::string& source() const { return seq_.front(); }
  const std::string& target() const { return seq_.back(); }
  std::set<std::string> elements() const;
  std::set<std::string> connectors() const;
  std::size_t hop_count() const { return seq_.size() / 2; }

  friend bool operator==(const Flow& a, const Flow& b) { return a.seq_ == b.seq_; }
  friend bool operator<(const Flow& a, const Flow& b) { return a.seq_ < b.seq_; }

 private:
  std::vector<std::string> seq_;
};

enum class ComponentKind { Element, Asset, Boundary, Connector, Flow };

constexpr const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Element: return "element";
    case ComponentKind::Asset: return "asset";
    case ComponentKind::Boundary: return "boundary";
    case ComponentKind::Connector: return "connector";
    case ComponentKind::Flow: return "flow";
  }
  return "?";
}

// Uniform member for match sets: either a diagram component id or a flow.
struct ComponentRef {
  ComponentKind kind = ComponentKind::Element;
  std::string id;                   // unset for flows
  std::vector<std::string> flow;    // alternating id sequence, flows only

  static ComponentRef element(std::string id);
  static ComponentRef asset(std::string id);
  static ComponentRef boundary(std::string id);
  static ComponentRef connector(std::string id);
  static ComponentRef of(Category c, std::string id);
  static ComponentRef of_flow(const Flow& f);

  bool is_flow() const { return kind == ComponentKind::Flow; }
  // "n1" for components, "n1->r1->n2" for flows.
  std::string display() const;

  friend bool operator==(const ComponentRef& a, const ComponentRef& b) {
    return a.kind == b.kind && a.id == b.id && a.flow == b.flow;
  }
  friend bool operator<(const ComponentRef& a, const ComponentRef& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.id != b.id) return a.id < b.id;
    return a.flow < b.flow;
  }
};

// Containment relations of a diagram.
enum class Relation { Delta, Kappa };

// Immutable instance model. Construction computes the transitive closures
// of both containment relations and checks the structural invariants.
class Diagram {
 public:
  struct ElementDecl {
    std::string id;
    std::string type;
    std::optional<std::string> parent;    // containing element
    std::optional<std::string> boundary;  // containing boundary
    std::map<std::string, std::string> properties;
  };
  struct BoundaryDecl {
    std::string id;
    std::string type;
    std::optional<std::string> parent;  // containing boundary
  };
  struct ConnectorDecl {
    std::string id;
    std::string type;
    std::string source;
    std::string target;
    std::map<std::string, std::string> properties;
  };
  struct AssetDecl {
    std::string id;
    std::string type;
    std::map<std::string, std::string> properties;
    std::vector<std::string> held_by;  // element or connector ids
  };
  struct Data {
    std::vector<ElementDecl> elements;
    std::vector<BoundaryDecl> boundaries;
    std::vector<ConnectorDecl> connectors;
    std::vector<AssetDecl> assets;
  };

  // Throws ModelError (DUPLICATE_ID, DANGLING_ENDPOINT, CYCLIC_CONTAINMENT,
  // UNKNOWN_COMPONENT).
  static Diagram from_parts(Data data);

  const std::set<std::string>& ids(Category c) const;
  bool has_component(Category c, const std::string& id) const;
  std::optional<Category> category_of(const std::string& id) const;

  // Assigned type of a component. Throws UNKNOWN_COMPONENT.
  const std::string& type_of(Category c, const std::string& id) const;

  const std::string& source_of(const std::string& connector_id) const;
  const std::string& target_of(const std::string& connector_id) const;

  // Outgoing connector ids of an element, sorted.
  const std::vector<std::string>& outgoing(const std::string& element_id) const;

  // Assigned property value, or nullopt when the key is unset on the
  // component. Only elements, assets and connectors carry properties.
  std::optional<std::string> property_value(const std::string& component_id,
                                            const std::string& key) const;

  // All assigned properties of a component (the raw property table row).
  const std::map<std::string, std::string>& properties_of(const std::string& component_id) const;

  // Membership in a containment closure: delta relates element pairs,
  // kappa relates a boundary to a contained boundary or element.
  bool contains(Relation rel, const std::string& container_id,
                const std::string& inner_id) const;

  bool holds_asset(const std::string& holder_id, const std::string& asset_id) const;

  // Holder ids (elements and connectors) of an asset, sorted.
  const std::set<std::string>& holders_of(const std::string& asset_id) const;

  const std::set<std::pair<std::string, std::string>>& closure(Relation rel) const;
  const std::set<std::pair<std::string, std::string>>& asset_links() const { return asset_links_; }

  // Direct links as declared, for re-serialization.
  const Data& parts() const { return parts_; }

  friend bool operator==(const Diagram& a, const Diagram& b);

 private:
  void require(Category c, const std::string& id) const;

  Data parts_;
  std::set<std::string> element_ids_, asset_ids_, boundary_ids_, connector_ids_;
  std::map<std::string, std::string> type_of_;  // all categories share the id space
  std::map<std::string, std::pair<std::string, std::string>> endpoints_;
  std::map<std::string, std::map<std::string, std::string>> properties_;
  std::map<std::string, std::vector<std::string>> outgoing_;
  std::set<std::pair<std::string, std::string>> delta_, kappa_;  // closures
  std::set<std::pair<std::string, std::string>> asset_links_;
  std::map<std::string, std::set<std::string>> holders_;
};

}  // namespace adfd
