#include "adfd/ast.hpp"

#include <algorithm>

namespace adfd {

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::KwElement: return "Element";
    case TokenKind::KwAsset: return "Asset";
    case TokenKind::KwBoundary: return "Boundary";
    case TokenKind::KwConnector: return "Connector";
    case TokenKind::KwFlow: return "Flow";
    case TokenKind::KwSource: return "Source";
    case TokenKind::KwTarget: return "Target";
    case TokenKind::KwHolds: return "Holds";
    case TokenKind::KwContains: return "Contains";
    case TokenKind::KwContained: return "Contained";
    case TokenKind::KwBy: return "by";
    case TokenKind::KwHas: return "Has";
    case TokenKind::KwCrosses: return "Crosses";
    case TokenKind::KwIncludes: return "Includes";
    case TokenKind::KwIn: return "in";
    case TokenKind::KwNot: return "not";
    case TokenKind::KwNo: return "no";
    case TokenKind::KwOnly: return "only";
    case TokenKind::String: return "string";
    case TokenKind::Amp: return "'&'";
    case TokenKind::Pipe: return "'|'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Comma: return "','";
    case TokenKind::Colon: return "':'";
    case TokenKind::Eq: return "'='";
    case TokenKind::NotEq: return "'!='";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

const char* to_string(ParseErrorCode code) {
  switch (code) {
    case ParseErrorCode::Syntax: return "SYNTAX";
    case ParseErrorCode::UnterminatedString: return "UNTERMINATED_STRING";
    case ParseErrorCode::IllegalCharacter: return "ILLEGAL_CHARACTER";
    case ParseErrorCode::UnknownKeyword: return "UNKNOWN_KEYWORD";
    case ParseErrorCode::MisplacedFilter: return "MISPLACED_FILTER";
    case ParseErrorCode::NestingTooDeep: return "NESTING_TOO_DEEP";
  }
  return "?";
}

const char* to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::Element: return "Element";
    case PatternKind::Asset: return "Asset";
    case PatternKind::Boundary: return "Boundary";
    case PatternKind::Connector: return "Connector";
    case PatternKind::Flow: return "Flow";
  }
  return "?";
}

ParseError::ParseError(ParseErrorCode code, std::string message, SourceSpan span,
                       std::size_t line, std::size_t column)
    : std::runtime_error(std::string(to_string(code)) + " at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + message),
      code_(code),
      span_(span),
      line_(line),
      column_(column) {}

// --------------------------------------------------------------------------
// Structural equality

namespace {

bool equal_type(const std::optional<TypeFilter>& a, const std::optional<TypeFilter>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->op == b->op && a->types == b->types;
}

template <typename T>
bool equal_list(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(),
                    [](const T& x, const T& y) { return equal(x, y); });
}

}  // namespace

bool equal(const QueryPtr& a, const QueryPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

bool equal(const PatternPtr& a, const PatternPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

bool equal(const FilterPtr& a, const FilterPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

bool equal(const Query& a, const Query& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* conj = std::get_if<QueryAnd>(&a.node))
    return equal_list(conj->items, std::get<QueryAnd>(b.node).items);
  if (const auto* disj = std::get_if<QueryOr>(&a.node))
    return equal_list(disj->items, std::get<QueryOr>(b.node).items);
  return equal(std::get<PatternPtr>(a.node), std::get<PatternPtr>(b.node));
}

bool equal(const Pattern& a, const Pattern& b) {
  return a.kind == b.kind && equal_list(a.alternatives, b.alternatives) &&
         equal_type(a.type, b.type) && equal(a.source, b.source) && equal(a.target, b.target) &&
         equal(a.filter, b.filter);
}

bool equal(const Filter& a, const Filter& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& lhs) {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, FilterAnd> || std::is_same_v<T, FilterOr>) {
          return equal_list(lhs.items, rhs.items);
        } else if constexpr (std::is_same_v<T, PropertyFilter>) {
          return lhs.key == rhs.key && lhs.op == rhs.op && lhs.values == rhs.values;
        } else if constexpr (std::is_same_v<T, HoldsFilter>) {
          return equal(lhs.asset, rhs.asset);
        } else if constexpr (std::is_same_v<T, ContainmentFilter>) {
          return lhs.mode == rhs.mode && equal(lhs.inner, rhs.inner);
        } else if constexpr (std::is_same_v<T, ConnectorFilter>) {
          return lhs.negated == rhs.negated && equal_type(lhs.type, rhs.type) &&
                 lhs.side == rhs.side && equal(lhs.endpoint, rhs.endpoint) &&
                 equal(lhs.extra, rhs.extra);
        } else if constexpr (std::is_same_v<T, FlowFilter>) {
          return lhs.negated == rhs.negated && lhs.side == rhs.side &&
                 equal(lhs.endpoint, rhs.endpoint) && equal(lhs.extra, rhs.extra);
        } else if constexpr (std::is_same_v<T, CrossesFilter>) {
          return equal(lhs.inner, rhs.inner);
        } else {
          static_assert(std::is_same_v<T, IncludesFilter>);
          return lhs.mode == rhs.mode && equal(lhs.inner, rhs.inner);
        }
      },
      a.node);
}

}  // namespace adfd
