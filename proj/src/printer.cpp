#include <sstream>

#include "adfd/ast.hpp"

namespace adfd {

namespace {

std::string quoted(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string name_list(const std::vector<std::string>& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += quoted(names[i]);
  }
  out += "]";
  return out;
}

std::string print_set_op(SetOp op, const std::vector<std::string>& operands, bool type_position) {
  switch (op) {
    case SetOp::Eq: return (type_position ? ": " : "= ") + quoted(operands.front());
    case SetOp::Neq: return "!= " + quoted(operands.front());
    case SetOp::In: return "in " + name_list(operands);
    case SetOp::NotIn: return "not in " + name_list(operands);
  }
  return "";
}

void print_query(std::ostream& os, const Query& q);
void print_pattern(std::ostream& os, const Pattern& p);
void print_filter(std::ostream& os, const Filter& f);

void print_query(std::ostream& os, const Query& q) {
  if (const auto* conj = std::get_if<QueryAnd>(&q.node)) {
    for (std::size_t i = 0; i < conj->items.size(); ++i) {
      if (i) os << " & ";
      print_query(os, *conj->items[i]);
    }
  } else if (const auto* disj = std::get_if<QueryOr>(&q.node)) {
    os << "(";
    for (std::size_t i = 0; i < disj->items.size(); ++i) {
      if (i) os << " | ";
      print_query(os, *disj->items[i]);
    }
    os << ")";
  } else {
    print_pattern(os, *std::get<PatternPtr>(q.node));
  }
}

void print_pattern(std::ostream& os, const Pattern& p) {
  if (p.is_alternative()) {
    os << "(";
    for (std::size_t i = 0; i < p.alternatives.size(); ++i) {
      if (i) os << " | ";
      print_pattern(os, *p.alternatives[i]);
    }
    os << ")";
    return;
  }
  os << to_string(p.kind);
  if (p.type) os << " " << print_set_op(p.type->op, p.type->types, /*type_position=*/true);
  if (p.has_endpoints()) {
    os << " { Source ";
    print_pattern(os, *p.source);
    os << " & Target ";
    print_pattern(os, *p.target);
    if (p.filter) {
      os << " & ";
      print_filter(os, *p.filter);
    }
    os << " }";
  } else if (p.filter) {
    os << " { ";
    print_filter(os, *p.filter);
    os << " }";
  }
}

void print_filter(std::ostream& os, const Filter& f) {
  if (const auto* conj = std::get_if<FilterAnd>(&f.node)) {
    for (std::size_t i = 0; i < conj->items.size(); ++i) {
      if (i) os << " & ";
      print_filter(os, *conj->items[i]);
    }
  } else if (const auto* disj = std::get_if<FilterOr>(&f.node)) {
    os << "(";
    for (std::size_t i = 0; i < disj->items.size(); ++i) {
      if (i) os << " | ";
      print_filter(os, *disj->items[i]);
    }
    os << ")";
  } else if (const auto* prop = std::get_if<PropertyFilter>(&f.node)) {
    os << quoted(prop->key) << " "
       << print_set_op(prop->op, prop->values, /*type_position=*/false);
  } else if (const auto* holds = std::get_if<HoldsFilter>(&f.node)) {
    os << "Holds ";
    print_pattern(os, *holds->asset);
  } else if (const auto* cont = std::get_if<ContainmentFilter>(&f.node)) {
    switch (cont->mode) {
      case Containment::Contains: os << "Contains "; break;
      case Containment::ContainsNo: os << "Contains no "; break;
      case Containment::ContainedBy: os << "Contained by "; break;
      case Containment::NotContainedBy: os << "Not Contained by "; break;
    }
    print_pattern(os, *cont->inner);
  } else if (const auto* con = std::get_if<ConnectorFilter>(&f.node)) {
    os << "Has " << (con->negated ? "No " : "") << "Connector";
    if (con->type) os << " " << print_set_op(con->type->op, con->type->types, true);
    os << " { " << (con->side == Side::Source ? "Source " : "Target ");
    print_pattern(os, *con->endpoint);
    if (con->extra) {
      os << " & ";
      print_filter(os, *con->extra);
    }
    os << " }";
  } else if (const auto* flow = std::get_if<FlowFilter>(&f.node)) {
    os << "Has " << (flow->negated ? "No " : "") << "Flow";
    os << " { " << (flow->side == Side::Source ? "Source " : "Target ");
    print_pattern(os, *flow->endpoint);
    if (flow->extra) {
      os << " & ";
      print_filter(os, *flow->extra);
    }
    os << " }";
  } else if (const auto* crosses = std::get_if<CrossesFilter>(&f.node)) {
    os << "Crosses ";
    print_pattern(os, *crosses->inner);
  } else if (const auto* inc = std::get_if<IncludesFilter>(&f.node)) {
    os << "Includes ";
    if (inc->mode == Multiplicity::None) os << "no ";
    if (inc->mode == Multiplicity::Only) os << "only ";
    print_pattern(os, *inc->inner);
  }
}

}  // namespace

std::string pretty_print(const Query& query) {
  std::ostringstream os;
  print_query(os, query);
  return os.str();
}

std::string pretty_print(const Pattern& pattern) {
  std::ostringstream os;
  print_pattern(os, pattern);
  return os.str();
}

std::string pretty_print(const Filter& filter) {
  std::ostringstream os;
  print_filter(os, filter);
  return os.str();
}

}  // namespace adfd
