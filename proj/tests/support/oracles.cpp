#include "support/oracles.hpp"

#include <functional>

namespace oracle {

using namespace adfd;

namespace {

bool element_on_path(const std::vector<std::string>& path, const std::string& id) {
  for (std::size_t i = 0; i < path.size(); i += 2)
    if (path[i] == id) return true;
  return false;
}

bool connector_on_path(const std::vector<std::string>& path, const std::string& id) {
  for (std::size_t i = 1; i < path.size(); i += 2)
    if (path[i] == id) return true;
  return false;
}

}  // namespace

std::set<Flow> simple_paths(const Diagram& d, const std::string& src, const std::string& tgt) {
  std::set<Flow> out;
  std::vector<std::string> path{src};
  std::function<void()> extend = [&]() {
    if (path.size() >= 3 && path.back() == tgt) out.insert(Flow(path));
    for (const std::string& r : d.ids(Category::Connector)) {
      if (d.source_of(r) != path.back()) continue;
      const std::string& next = d.target_of(r);
      if (element_on_path(path, next)) continue;
      path.push_back(r);
      path.push_back(next);
      extend();
      path.pop_back();
      path.pop_back();
    }
  };
  extend();
  return out;
}

std::set<Flow> edge_distinct_walks(const Diagram& d, const std::string& src,
                                   const std::string& tgt) {
  std::set<Flow> out;
  std::vector<std::string> path{src};
  std::function<void()> extend = [&]() {
    if (path.size() >= 3 && path.back() == tgt) {
      out.insert(Flow(path));
      return;  // a branch ends the first time it reaches the target
    }
    for (const std::string& r : d.ids(Category::Connector)) {
      if (d.source_of(r) != path.back()) continue;
      if (connector_on_path(path, r)) continue;
      path.push_back(r);
      path.push_back(d.target_of(r));
      extend();
      path.pop_back();
      path.pop_back();
    }
  };
  extend();
  return out;
}

std::set<Flow> flows(const Diagram& d, const std::string& src, const std::string& tgt,
                     FlowUniqueness mode) {
  return mode == FlowUniqueness::Elements ? simple_paths(d, src, tgt)
                                          : edge_distinct_walks(d, src, tgt);
}

// ---------------------------------------------------------------------------
// Definitional evaluator

namespace {

struct Brute {
  const Diagram& d;
  const ContentSpecification& s;
  FlowUniqueness mode;

  // ---- type filters ----

  bool denotes(Category cat, const std::string& name, const std::string& assigned) const {
    if (name == assigned) return true;
    return s.has_type(cat, name) && s.subtypes(cat, name).count(assigned) > 0;
  }

  bool admitted(const std::optional<TypeFilter>& tf, Category cat, const std::string& id) const {
    if (!tf) return true;
    const std::string& assigned = d.type_of(cat, id);
    bool any = false;
    for (const std::string& name : tf->types) any = any || denotes(cat, name, assigned);
    return is_negated(tf->op) ? !any : any;
  }

  // ---- shared shapes ----

  static MatchTuple self(const ComponentRef& c) { return MatchTuple{c, {c}}; }

  // Appends one tuple per choice of the optional trailing filter, evaluated
  // under `extra_ctx`, to `out`; `base` is the fixed part of the affected set.
  void combine(MatchSet& out, const ComponentRef& focus, const FilterPtr& extra,
               const ComponentRef& extra_ctx, const std::set<ComponentRef>& base) const {
    if (!extra) {
      out.insert(MatchTuple{focus, base});
      return;
    }
    for (const MatchTuple& x : filter(*extra, extra_ctx)) {
      std::set<ComponentRef> m = base;
      m.insert(x.affected.begin(), x.affected.end());
      out.insert(MatchTuple{focus, std::move(m)});
    }
  }

  static std::set<ComponentRef> unite(std::set<ComponentRef> a, const std::set<ComponentRef>& b) {
    a.insert(b.begin(), b.end());
    return a;
  }

  // Whether `container` (an element or a boundary) contains the component
  // `inner`: element-in-element pairs live in delta, everything else in kappa.
  bool inside(const ComponentRef& container, const ComponentRef& inner) const {
    if (container.kind == ComponentKind::Element && inner.kind == ComponentKind::Element)
      return d.contains(Relation::Delta, container.id, inner.id);
    return d.contains(Relation::Kappa, container.id, inner.id);
  }

  // ---- queries ----

  MatchSet query(const Query& q) const {
    if (const auto* conj = std::get_if<QueryAnd>(&q.node)) {
      std::vector<MatchSet> parts;
      for (const QueryPtr& item : conj->items) parts.push_back(query(*item));
      if (parts.size() == 1) return parts.front();
      for (const MatchSet& p : parts)
        if (p.empty()) return {};
      // every way of picking one tuple from each operand
      std::set<std::set<ComponentRef>> combos{std::set<ComponentRef>{}};
      for (const MatchSet& part : parts) {
        std::set<std::set<ComponentRef>> next;
        for (const std::set<ComponentRef>& base : combos)
          for (const MatchTuple& t : part) next.insert(unite(base, t.affected));
        combos = std::move(next);
      }
      MatchSet out;
      for (const std::set<ComponentRef>& m : combos) out.insert(MatchTuple{std::nullopt, m});
      return out;
    }
    if (const auto* disj = std::get_if<QueryOr>(&q.node)) {
      MatchSet out;
      for (const QueryPtr& item : disj->items) {
        MatchSet sub = query(*item);
        out.insert(sub.begin(), sub.end());
      }
      return out;
    }
    return pattern(*std::get<PatternPtr>(q.node));
  }

  // ---- patterns ----

  MatchSet pattern(const Pattern& p) const {
    if (p.is_alternative()) {
      MatchSet out;
      for (const PatternPtr& alt : p.alternatives) {
        MatchSet sub = pattern(*alt);
        out.insert(sub.begin(), sub.end());
      }
      return out;
    }
    switch (p.kind) {
      case PatternKind::Element: return simple(p, Category::Element);
      case PatternKind::Asset: return simple(p, Category::Asset);
      case PatternKind::Boundary: return simple(p, Category::Boundary);
      case PatternKind::Connector:
        return p.has_endpoints() ? connector_pattern(p) : simple(p, Category::Connector);
      case PatternKind::Flow: return flow_pattern(p);
    }
    return {};
  }

  MatchSet simple(const Pattern& p, Category cat) const {
    MatchSet out;
    for (const std::string& id : d.ids(cat)) {
      if (!admitted(p.type, cat, id)) continue;
      const ComponentRef c = ComponentRef::of(cat, id);
      if (!p.filter) {
        out.insert(self(c));
        continue;
      }
      for (const MatchTuple& t : filter(*p.filter, c))
        out.insert(MatchTuple{c, unite({c}, t.affected)});
    }
    return out;
  }

  MatchSet connector_pattern(const Pattern& p) const {
    const MatchSet sources = pattern(*p.source);
    const MatchSet targets = pattern(*p.target);
    MatchSet out;
    for (const std::string& id : d.ids(Category::Connector)) {
      if (!admitted(p.type, Category::Connector, id)) continue;
      const ComponentRef c = ComponentRef::connector(id);
      for (const MatchTuple& a : sources) {
        if (a.focus->id != d.source_of(id)) continue;
        for (const MatchTuple& b : targets) {
          if (b.focus->id != d.target_of(id)) continue;
          combine(out, c, p.filter, c, unite(unite({c}, a.affected), b.affected));
        }
      }
    }
    return out;
  }

  MatchSet flow_pattern(const Pattern& p) const {
    const MatchSet sources = pattern(*p.source);
    const MatchSet targets = pattern(*p.target);
    MatchSet out;
    for (const MatchTuple& a : sources) {
      for (const MatchTuple& b : targets) {
        for (const Flow& f : flows(d, a.focus->id, b.focus->id, mode)) {
          const ComponentRef c = ComponentRef::of_flow(f);
          combine(out, c, p.filter, c, unite(unite({c}, a.affected), b.affected));
        }
      }
    }
    return out;
  }

  // ---- filters ----

  MatchSet filter(const Filter& f, const ComponentRef& c) const {
    if (const auto* conj = std::get_if<FilterAnd>(&f.node)) {
      std::vector<MatchSet> parts;
      for (const FilterPtr& item : conj->items) parts.push_back(filter(*item, c));
      if (parts.size() == 1) return parts.front();
      for (const MatchSet& p : parts)
        if (p.empty()) return {};
      std::set<std::set<ComponentRef>> combos{std::set<ComponentRef>{}};
      for (const MatchSet& part : parts) {
        std::set<std::set<ComponentRef>> next;
        for (const std::set<ComponentRef>& base : combos)
          for (const MatchTuple& t : part) next.insert(unite(base, t.affected));
        combos = std::move(next);
      }
      MatchSet out;
      for (const std::set<ComponentRef>& m : combos) out.insert(MatchTuple{c, m});
      return out;
    }
    if (const auto* disj = std::get_if<FilterOr>(&f.node)) {
      MatchSet out;
      for (const FilterPtr& item : disj->items) {
        MatchSet sub = filter(*item, c);
        out.insert(sub.begin(), sub.end());
      }
      return out;
    }
    if (const auto* prop = std::get_if<PropertyFilter>(&f.node)) return property(*prop, c);
    if (const auto* h = std::get_if<HoldsFilter>(&f.node)) return holds(*h, c);
    if (const auto* cont = std::get_if<ContainmentFilter>(&f.node)) return containment(*cont, c);
    if (const auto* con = std::get_if<ConnectorFilter>(&f.node)) return connector_filter(*con, c);
    if (const auto* fl = std::get_if<FlowFilter>(&f.node)) return flow_filter(*fl, c);
    if (const auto* x = std::get_if<CrossesFilter>(&f.node)) return crosses(*x, c);
    return includes(std::get<IncludesFilter>(f.node), c);
  }

  MatchSet property(const PropertyFilter& pf, const ComponentRef& c) const {
    const std::optional<std::string> value = d.property_value(c.id, pf.key);
    if (!value) return {};
    bool listed = false;
    for (const std::string& v : pf.values) listed = listed || v == *value;
    const bool pass = is_negated(pf.op) ? !listed : listed;
    return pass ? MatchSet{self(c)} : MatchSet{};
  }

  MatchSet holds(const HoldsFilter& hf, const ComponentRef& c) const {
    MatchSet out;
    for (const MatchTuple& t : pattern(*hf.asset)) {
      if (d.holds_asset(c.id, t.focus->id)) out.insert(MatchTuple{c, t.affected});
    }
    return out;
  }

  MatchSet containment(const ContainmentFilter& cf, const ComponentRef& c) const {
    const bool negated =
        cf.mode == Containment::ContainsNo || cf.mode == Containment::NotContainedBy;
    const bool inward = cf.mode == Containment::Contains || cf.mode == Containment::ContainsNo;
    MatchSet positive;
    for (const MatchTuple& t : pattern(*cf.inner)) {
      const bool related = inward ? inside(c, *t.focus) : inside(*t.focus, c);
      if (related) positive.insert(MatchTuple{c, t.affected});
    }
    if (!negated) return positive;
    return positive.empty() ? MatchSet{self(c)} : MatchSet{};
  }

  MatchSet connector_filter(const ConnectorFilter& cf, const ComponentRef& c) const {
    const MatchSet endpoints = pattern(*cf.endpoint);
    MatchSet positive;
    for (const std::string& id : d.ids(Category::Connector)) {
      if (!admitted(cf.type, Category::Connector, id)) continue;
      const std::string& anchor = cf.side == Side::Source ? d.target_of(id) : d.source_of(id);
      if (anchor != c.id) continue;
      const std::string& other = cf.side == Side::Source ? d.source_of(id) : d.target_of(id);
      const ComponentRef r = ComponentRef::connector(id);
      for (const MatchTuple& t : endpoints) {
        if (t.focus->id != other) continue;
        combine(positive, c, cf.extra, r, unite({r}, t.affected));
      }
    }
    if (!cf.negated) return positive;
    return positive.empty() ? MatchSet{self(c)} : MatchSet{};
  }

  MatchSet flow_filter(const FlowFilter& ff, const ComponentRef& c) const {
    MatchSet positive;
    for (const MatchTuple& t : pattern(*ff.endpoint)) {
      const std::string& from = ff.side == Side::Source ? t.focus->id : c.id;
      const std::string& to = ff.side == Side::Source ? c.id : t.focus->id;
      for (const Flow& f : flows(d, from, to, mode)) {
        const ComponentRef fr = ComponentRef::of_flow(f);
        combine(positive, c, ff.extra, fr, unite({fr}, t.affected));
      }
    }
    if (!ff.negated) return positive;
    return positive.empty() ? MatchSet{self(c)} : MatchSet{};
  }

  MatchSet crosses(const CrossesFilter& xf, const ComponentRef& c) const {
    std::vector<std::string> hops;
    if (c.kind == ComponentKind::Connector) {
      hops.push_back(c.id);
    } else {
      for (std::size_t i = 1; i < c.flow.size(); i += 2) hops.push_back(c.flow[i]);
    }
    MatchSet out;
    for (const MatchTuple& t : pattern(*xf.inner)) {
      bool crossed = false;
      for (const std::string& r : hops) {
        const bool src_in = inside(*t.focus, ComponentRef::element(d.source_of(r)));
        const bool tgt_in = inside(*t.focus, ComponentRef::element(d.target_of(r)));
        crossed = crossed || (src_in != tgt_in);
      }
      if (crossed) out.insert(MatchTuple{c, t.affected});
    }
    return out;
  }

  MatchSet includes(const IncludesFilter& inf, const ComponentRef& c) const {
    const Flow f(c.flow);
    const std::set<std::string> members =
        inf.inner->kind == PatternKind::Connector ? f.connectors() : f.elements();
    const MatchSet inner = pattern(*inf.inner);

    if (inf.mode == Multiplicity::Only) {
      std::set<std::set<ComponentRef>> combos{std::set<ComponentRef>{}};
      for (const std::string& member : members) {
        std::set<std::set<ComponentRef>> next;
        for (const MatchTuple& t : inner) {
          if (t.focus->id != member) continue;
          for (const std::set<ComponentRef>& base : combos) next.insert(unite(base, t.affected));
        }
        if (next.empty()) return {};
        combos = std::move(next);
      }
      MatchSet out;
      for (const std::set<ComponentRef>& m : combos) out.insert(MatchTuple{c, m});
      return out;
    }

    MatchSet positive;
    for (const MatchTuple& t : inner) {
      if (members.count(t.focus->id)) positive.insert(MatchTuple{c, t.affected});
    }
    if (inf.mode == Multiplicity::Some) return positive;
    return positive.empty() ? MatchSet{self(c)} : MatchSet{};
  }
};

}  // namespace

MatchSet evaluate(const Query& query, const Diagram& d, const ContentSpecification& s,
                  FlowUniqueness mode) {
  return Brute{d, s, mode}.query(query);
}

}  // namespace oracle
