#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "adfd/violation.hpp"  // SourceSpan

namespace adfd {

// --------------------------------------------------------------------------
// Tokens

enum class TokenKind {
  KwElement, KwAsset, KwBoundary, KwConnector, KwFlow,
  KwSource, KwTarget, KwHolds, KwContains, KwContained, KwBy,
  KwHas, KwCrosses, KwIncludes, KwIn, KwNot, KwNo, KwOnly,
  String,
  Amp, Pipe, LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Comma, Colon, Eq, NotEq,
  End,
};

const char* to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // decoded value for strings, raw spelling otherwise
  SourceSpan span;
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, in bytes
};

enum class ParseErrorCode {
  Syntax,
  UnterminatedString,
  IllegalCharacter,
  UnknownKeyword,
  MisplacedFilter,
  NestingTooDeep,
};

const char* to_string(ParseErrorCode code);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorCode code, std::string message, SourceSpan span, std::size_t line,
             std::size_t column);

  ParseErrorCode code() const { return code_; }
  SourceSpan span() const { return span_; }
  std::size_t offset() const { return span_.offset; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  ParseErrorCode code_;
  SourceSpan span_;
  std::size_t line_, column_;
};

// Splits a rule text into tokens. Keywords are case-insensitive; names are
// always double-quoted strings with \" and \\ escapes. Offsets are byte
// positions into the input.
std::vector<Token> tokenize(const std::string& text);

// --------------------------------------------------------------------------
// Abstract syntax

struct Query;
struct Pattern;
struct Filter;
using QueryPtr = std::shared_ptr<const Query>;
using PatternPtr = std::shared_ptr<const Pattern>;
using FilterPtr = std::shared_ptr<const Filter>;

// Comparison shape shared by type filters and property filters.
enum class SetOp { Eq, Neq, In, NotIn };

constexpr bool is_negated(SetOp op) { return op == SetOp::Neq || op == SetOp::NotIn; }

struct TypeFilter {
  SetOp op = SetOp::Eq;
  std::vector<std::string> types;  // exactly one for Eq/Neq
  SourceSpan span;
};

struct PropertyFilter {
  std::string key;
  SetOp op = SetOp::Eq;
  std::vector<std::string> values;  // exactly one for Eq/Neq
};

struct HoldsFilter {
  PatternPtr asset;
};

enum class Containment { Contains, ContainsNo, ContainedBy, NotContainedBy };

struct ContainmentFilter {
  Containment mode = Containment::Contains;
  PatternPtr inner;  // element or boundary pattern, host-dependent
};

enum class Side { Source, Target };

// `Has (No)? Connector` — an endpoint condition on the host element.
// Side::Source constrains incoming connectors by their source element,
// Side::Target outgoing connectors by their target element.
struct ConnectorFilter {
  bool negated = false;
  std::optional<TypeFilter> type;
  Side side = Side::Source;
  PatternPtr endpoint;  // element pattern
  FilterPtr extra;      // optional further connector filters
};

// `Has (No)? Flow` — a reachability condition on the host element.
struct FlowFilter {
  bool negated = false;
  Side side = Side::Source;
  PatternPtr endpoint;  // element pattern
  FilterPtr extra;      // optional further flow filters
};

// Host connector or flow passes exactly one endpoint inside the inner
// element or boundary.
struct CrossesFilter {
  PatternPtr inner;
};

enum class Multiplicity { Some, None, Only };

// Membership of elements or connectors in the host flow.
struct IncludesFilter {
  Multiplicity mode = Multiplicity::Some;
  PatternPtr inner;  // element or connector pattern (connector may be bare)
};

struct FilterAnd {
  std::vector<FilterPtr> items;  // two or more
};

struct FilterOr {
  std::vector<FilterPtr> items;  // two or more
};

struct Filter {
  std::variant<FilterAnd, FilterOr, PropertyFilter, HoldsFilter, ContainmentFilter,
               ConnectorFilter, FlowFilter, CrossesFilter, IncludesFilter>
      node;
  SourceSpan span;
};

enum class PatternKind { Element, Asset, Boundary, Connector, Flow };

const char* to_string(PatternKind kind);

// One component pattern. A non-empty `alternatives` list makes this node a
// same-kind alternative group and the remaining fields are unused.
// Connector and flow patterns in pattern position carry mandatory source
// and target element patterns; a connector pattern without endpoints is the
// bare form that may only appear inside an Includes filter.
struct Pattern {
  PatternKind kind = PatternKind::Element;
  std::vector<PatternPtr> alternatives;
  std::optional<TypeFilter> type;  // never set on flow patterns
  PatternPtr source;
  PatternPtr target;
  FilterPtr filter;
  SourceSpan span;

  bool is_alternative() const { return !alternatives.empty(); }
  bool has_endpoints() const { return source != nullptr; }
};

struct QueryAnd {
  std::vector<QueryPtr> items;  // two or more
};

struct QueryOr {
  std::vector<QueryPtr> items;  // two or more
};

struct Query {
  std::variant<QueryAnd, QueryOr, PatternPtr> node;
  SourceSpan span;
};

// Structural equality; source spans are ignored.
bool equal(const Query& a, const Query& b);
bool equal(const Pattern& a, const Pattern& b);
bool equal(const Filter& a, const Filter& b);
bool equal(const QueryPtr& a, const QueryPtr& b);
bool equal(const PatternPtr& a, const PatternPtr& b);
bool equal(const FilterPtr& a, const FilterPtr& b);

// Parses a full rule text into its syntax tree. Grammar errors, unknown
// words, misplaced filters and nesting beyond 64 levels raise ParseError.
QueryPtr parse_query(const std::string& text);

// Canonical text form; parse_query(pretty_print(q)) is structurally equal
// to q for every parser-producible tree.
std::string pretty_print(const Query& query);
std::string pretty_print(const Pattern& pattern);
std::string pretty_print(const Filter& filter);

}  // namespace adfd
