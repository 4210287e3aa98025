#include <utility>

#include "adfd/ast.hpp"

namespace adfd {

namespace {

constexpr std::size_t kMaxNestingDepth = 64;

// Pattern positions a filter block can belong to; decides which filter
// kinds are admissible and which inner pattern kinds relation filters take.
enum class Host { Element, Asset, Boundary, Connector, Flow };

constexpr const char* to_string(Host host) {
  switch (host) {
    case Host::Element: return "element";
    case Host::Asset: return "asset";
    case Host::Boundary: return "boundary";
    case Host::Connector: return "connector";
    case Host::Flow: return "flow";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  QueryPtr run() {
    QueryPtr query = parse_query();
    expect(TokenKind::End, "after the query");
    return query;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  const Token& advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  bool at(TokenKind kind) const { return peek().kind == kind; }

  bool eat(TokenKind kind) {
    if (!at(kind)) return false;
    advance();
    return true;
  }

  const Token& expect(TokenKind kind, const std::string& where) {
    if (!at(kind))
      error(ParseErrorCode::Syntax,
            std::string("expected ") + to_string(kind) + " " + where + ", found " +
                to_string(peek().kind));
    return advance();
  }

  [[noreturn]] void error(ParseErrorCode code, const std::string& message) const {
    error_at(code, message, peek());
  }

  [[noreturn]] void error_at(ParseErrorCode code, const std::string& message,
                             const Token& token) const {
    throw ParseError(code, message, token.span, token.line, token.column);
  }

  [[noreturn]] void error_span(ParseErrorCode code, const std::string& message,
                               SourceSpan span) const {
    std::size_t line = 1, column = 1;
    for (const Token& t : tokens_) {
      if (t.span.offset == span.offset) {
        line = t.line;
        column = t.column;
        break;
      }
    }
    throw ParseError(code, message, span, line, column);
  }

  SourceSpan span_from(std::size_t begin_offset) const {
    const Token& prev = tokens_[pos_ > 0 ? pos_ - 1 : 0];
    const std::size_t end = prev.span.offset + prev.span.length;
    return SourceSpan{begin_offset, end > begin_offset ? end - begin_offset : 0};
  }

  // Pattern nesting is capped at 64 levels; a much larger cap on overall
  // grammar recursion keeps pathological paren towers from overflowing the
  // stack.
  struct DepthGuard {
    DepthGuard(Parser& p, std::size_t& counter, std::size_t limit)
        : parser(p), counter(counter) {
      if (++counter > limit)
        parser.error(ParseErrorCode::NestingTooDeep,
                     "rule nests deeper than " + std::to_string(limit) + " levels");
    }
    ~DepthGuard() { --counter; }
    Parser& parser;
    std::size_t& counter;
  };

  DepthGuard pattern_guard() { return DepthGuard(*this, pattern_depth_, kMaxNestingDepth); }
  DepthGuard recursion_guard() { return DepthGuard(*this, recursion_depth_, 512); }

  // ---- queries ----

  QueryPtr parse_query() {
    DepthGuard guard = recursion_guard();
    const std::size_t begin = peek().span.offset;
    std::vector<QueryPtr> items;
    items.push_back(parse_query_term());
    while (eat(TokenKind::Amp)) items.push_back(parse_query_term());
    if (items.size() == 1) return items.front();
    return std::make_shared<Query>(Query{QueryAnd{std::move(items)}, span_from(begin)});
  }

  QueryPtr parse_query_term() {
    DepthGuard guard = recursion_guard();
    const std::size_t begin = peek().span.offset;
    if (eat(TokenKind::LParen)) {
      std::vector<QueryPtr> items;
      items.push_back(parse_query());
      expect(TokenKind::Pipe, "inside a query group; groups combine at least two queries");
      do {
        items.push_back(parse_query());
      } while (eat(TokenKind::Pipe));
      expect(TokenKind::RParen, "to close the query group");
      return std::make_shared<Query>(Query{QueryOr{std::move(items)}, span_from(begin)});
    }
    PatternPtr pattern = parse_pattern(/*allow_bare_connector=*/false);
    SourceSpan span = pattern->span;
    return std::make_shared<Query>(Query{std::move(pattern), span});
  }

  // ---- patterns ----

  // Parses one pattern at the current position. Alternative groups
  // `( pattern | pattern )` are accepted when `kind` is already fixed by
  // the surrounding construct (inner positions); at query level a leading
  // '(' belongs to the query grammar instead.
  PatternPtr parse_inner_pattern(std::initializer_list<PatternKind> allowed,
                                 const std::string& where) {
    DepthGuard guard = recursion_guard();
    const std::size_t begin = peek().span.offset;
    if (eat(TokenKind::LParen)) {
      DepthGuard depth = pattern_guard();
      std::vector<PatternPtr> items;
      items.push_back(parse_inner_pattern(allowed, where));
      expect(TokenKind::Pipe, "inside a pattern group; groups combine at least two patterns");
      do {
        items.push_back(parse_inner_pattern(allowed, where));
      } while (eat(TokenKind::Pipe));
      expect(TokenKind::RParen, "to close the pattern group");
      for (const PatternPtr& p : items) {
        if (p->kind != items.front()->kind)
          error_span(ParseErrorCode::Syntax, "alternative patterns must all have the same kind",
                     span_from(begin));
      }
      Pattern group;
      group.kind = items.front()->kind;
      group.alternatives = std::move(items);
      group.span = span_from(begin);
      return std::make_shared<Pattern>(std::move(group));
    }
    PatternPtr p = parse_pattern(/*allow_bare_connector=*/true);
    bool ok = false;
    for (PatternKind k : allowed) ok = ok || k == p->kind;
    if (!ok)
      error_span(ParseErrorCode::Syntax,
                 std::string(to_string(p->kind)) + " pattern is not allowed " + where, p->span);
    return p;
  }

  PatternPtr parse_pattern(bool allow_bare_connector) {
    DepthGuard depth = pattern_guard();
    DepthGuard guard = recursion_guard();
    const Token& head = peek();
    Pattern p;
    switch (head.kind) {
      case TokenKind::KwElement: p.kind = PatternKind::Element; break;
      case TokenKind::KwAsset: p.kind = PatternKind::Asset; break;
      case TokenKind::KwBoundary: p.kind = PatternKind::Boundary; break;
      case TokenKind::KwConnector: p.kind = PatternKind::Connector; break;
      case TokenKind::KwFlow: p.kind = PatternKind::Flow; break;
      default:
        error(ParseErrorCode::Syntax,
              std::string("expected a pattern keyword, found ") + to_string(head.kind));
    }
    advance();

    if (p.kind != PatternKind::Flow) p.type = try_parse_type_filter();

    switch (p.kind) {
      case PatternKind::Element:
      case PatternKind::Asset:
      case PatternKind::Boundary:
        if (eat(TokenKind::LBrace)) {
          p.filter = parse_filter_expression(host_of(p.kind));
          expect(TokenKind::RBrace, "to close the filter block");
        }
        break;
      case PatternKind::Connector:
        if (at(TokenKind::LBrace)) {
          parse_endpoint_block(p, Host::Connector);
        } else if (!allow_bare_connector) {
          error(ParseErrorCode::Syntax,
                "a connector pattern here requires '{ Source ... & Target ... }'");
        }
        break;
      case PatternKind::Flow:
        if (at(TokenKind::Colon) || at(TokenKind::NotEq) || at(TokenKind::KwIn) ||
            at(TokenKind::KwNot))
          error(ParseErrorCode::Syntax, "flow patterns carry no type filter");
        if (!at(TokenKind::LBrace))
          error(ParseErrorCode::Syntax,
                "a flow pattern requires '{ Source ... & Target ... }'");
        parse_endpoint_block(p, Host::Flow);
        break;
    }
    p.span = span_from(head.span.offset);
    return std::make_shared<Pattern>(std::move(p));
  }

  static Host host_of(PatternKind kind) {
    switch (kind) {
      case PatternKind::Element: return Host::Element;
      case PatternKind::Asset: return Host::Asset;
      case PatternKind::Boundary: return Host::Boundary;
      case PatternKind::Connector: return Host::Connector;
      case PatternKind::Flow: return Host::Flow;
    }
    return Host::Element;
  }

  // `{ Source elPat & Target elPat (& filters)? }` for connector and flow
  // patterns in pattern position.
  void parse_endpoint_block(Pattern& p, Host host) {
    expect(TokenKind::LBrace, "to open the endpoint block");
    expect(TokenKind::KwSource, "first inside an endpoint block");
    p.source = parse_inner_pattern({PatternKind::Element}, "as a source endpoint");
    expect(TokenKind::Amp, "between the source and target endpoint");
    expect(TokenKind::KwTarget, "after '&' in an endpoint block");
    p.target = parse_inner_pattern({PatternKind::Element}, "as a target endpoint");
    if (eat(TokenKind::Amp)) p.filter = parse_filter_expression(host);
    expect(TokenKind::RBrace, "to close the endpoint block");
  }

  std::optional<TypeFilter> try_parse_type_filter() {
    TypeFilter tf;
    const std::size_t begin = peek().span.offset;
    if (eat(TokenKind::Colon)) {
      tf.op = SetOp::Eq;
      tf.types.push_back(expect(TokenKind::String, "after ':'").text);
    } else if (eat(TokenKind::NotEq)) {
      tf.op = SetOp::Neq;
      tf.types.push_back(expect(TokenKind::String, "after '!='").text);
    } else if (eat(TokenKind::KwIn)) {
      tf.op = SetOp::In;
      tf.types = parse_name_list();
    } else if (at(TokenKind::KwNot) && peek(1).kind == TokenKind::KwIn) {
      advance();
      advance();
      tf.op = SetOp::NotIn;
      tf.types = parse_name_list();
    } else {
      return std::nullopt;
    }
    tf.span = span_from(begin);
    return tf;
  }

  std::vector<std::string> parse_name_list() {
    expect(TokenKind::LBracket, "to open the name list");
    std::vector<std::string> names;
    names.push_back(expect(TokenKind::String, "inside the name list").text);
    while (eat(TokenKind::Comma))
      names.push_back(expect(TokenKind::String, "after ',' in the name list").text);
    expect(TokenKind::RBracket, "to close the name list");
    return names;
  }

  // ---- filters ----

  FilterPtr parse_filter_expression(Host host) {
    DepthGuard guard = recursion_guard();
    const std::size_t begin = peek().span.offset;
    std::vector<FilterPtr> items;
    items.push_back(parse_filter_term(host));
    while (eat(TokenKind::Amp)) items.push_back(parse_filter_term(host));
    if (items.size() == 1) return items.front();
    return std::make_shared<Filter>(Filter{FilterAnd{std::move(items)}, span_from(begin)});
  }

  FilterPtr parse_filter_term(Host host) {
    DepthGuard guard = recursion_guard();
    const std::size_t begin = peek().span.offset;
    if (eat(TokenKind::LParen)) {
      std::vector<FilterPtr> items;
      items.push_back(parse_filter_expression(host));
      expect(TokenKind::Pipe, "inside a filter group; groups combine at least two filters");
      do {
        items.push_back(parse_filter_expression(host));
      } while (eat(TokenKind::Pipe));
      expect(TokenKind::RParen, "to close the filter group");
      return std::make_shared<Filter>(Filter{FilterOr{std::move(items)}, span_from(begin)});
    }
    return parse_atomic_filter(host);
  }

  [[noreturn]] void misplaced(const std::string& what, Host host, SourceSpan span) {
    error_span(ParseErrorCode::MisplacedFilter,
               what + " cannot appear in a " + to_string(host) + " filter block", span);
  }

  FilterPtr parse_atomic_filter(Host host) {
    DepthGuard guard = recursion_guard();
    const Token& head = peek();
    const std::size_t begin = head.span.offset;
    Filter f;
    switch (head.kind) {
      case TokenKind::String:
        f.node = parse_property_filter();
        if (host == Host::Boundary || host == Host::Flow)
          misplaced("a property filter", host, span_from(begin));
        break;
      case TokenKind::KwHolds:
        advance();
        if (host != Host::Element && host != Host::Connector)
          misplaced("'Holds'", host, span_from(begin));
        f.node = HoldsFilter{parse_inner_pattern({PatternKind::Asset}, "after 'Holds'")};
        break;
      case TokenKind::KwContains: {
        advance();
        if (host != Host::Element && host != Host::Boundary)
          misplaced("'Contains'", host, span_from(begin));
        ContainmentFilter cf;
        cf.mode = eat(TokenKind::KwNo) ? Containment::ContainsNo : Containment::Contains;
        cf.inner = host == Host::Element
                       ? parse_inner_pattern({PatternKind::Element}, "after 'Contains'")
                       : parse_inner_pattern({PatternKind::Element, PatternKind::Boundary},
                                             "after 'Contains'");
        f.node = std::move(cf);
        break;
      }
      case TokenKind::KwContained:
      case TokenKind::KwNot: {
        ContainmentFilter cf;
        if (head.kind == TokenKind::KwNot) {
          advance();
          cf.mode = Containment::NotContainedBy;
        } else {
          cf.mode = Containment::ContainedBy;
        }
        expect(TokenKind::KwContained, "to begin a containment filter");
        expect(TokenKind::KwBy, "after 'Contained'");
        if (host != Host::Element && host != Host::Boundary)
          misplaced("'Contained by'", host, span_from(begin));
        cf.inner = host == Host::Element
                       ? parse_inner_pattern({PatternKind::Element, PatternKind::Boundary},
                                             "after 'Contained by'")
                       : parse_inner_pattern({PatternKind::Boundary}, "after 'Contained by'");
        f.node = std::move(cf);
        break;
      }
      case TokenKind::KwHas: {
        advance();
        if (host != Host::Element) misplaced("'Has'", host, span_from(begin));
        const bool negated = eat(TokenKind::KwNo);
        if (eat(TokenKind::KwConnector)) {
          ConnectorFilter cf;
          cf.negated = negated;
          cf.type = try_parse_type_filter();
          parse_has_block(cf.side, cf.endpoint, cf.extra, Host::Connector);
          f.node = std::move(cf);
        } else if (eat(TokenKind::KwFlow)) {
          FlowFilter ff;
          ff.negated = negated;
          parse_has_block(ff.side, ff.endpoint, ff.extra, Host::Flow);
          f.node = std::move(ff);
        } else {
          error(ParseErrorCode::Syntax, "expected Connector or Flow after 'Has'");
        }
        break;
      }
      case TokenKind::KwCrosses:
        advance();
        if (host != Host::Connector && host != Host::Flow)
          misplaced("'Crosses'", host, span_from(begin));
        f.node = CrossesFilter{parse_inner_pattern(
            {PatternKind::Element, PatternKind::Boundary}, "after 'Crosses'")};
        break;
      case TokenKind::KwIncludes: {
        advance();
        if (host != Host::Flow) misplaced("'Includes'", host, span_from(begin));
        IncludesFilter inc;
        if (eat(TokenKind::KwNo))
          inc.mode = Multiplicity::None;
        else if (eat(TokenKind::KwOnly))
          inc.mode = Multiplicity::Only;
        inc.inner = parse_inner_pattern({PatternKind::Element, PatternKind::Connector},
                                        "after 'Includes'");
        f.node = std::move(inc);
        break;
      }
      default:
        error(ParseErrorCode::Syntax,
              std::string("expected a filter, found ") + to_string(head.kind));
    }
    f.span = span_from(begin);
    return std::make_shared<Filter>(std::move(f));
  }

  // `{ (Source|Target) elPat (& filters)? }` inside Has Connector/Has Flow.
  void parse_has_block(Side& side, PatternPtr& endpoint, FilterPtr& extra, Host inner_host) {
    expect(TokenKind::LBrace, "to open the endpoint condition");
    if (eat(TokenKind::KwSource)) {
      side = Side::Source;
    } else if (eat(TokenKind::KwTarget)) {
      side = Side::Target;
    } else {
      error(ParseErrorCode::Syntax, "expected Source or Target inside the endpoint condition");
    }
    endpoint = parse_inner_pattern({PatternKind::Element}, "as an endpoint");
    if (eat(TokenKind::Amp)) extra = parse_filter_expression(inner_host);
    expect(TokenKind::RBrace, "to close the endpoint condition");
  }

  PropertyFilter parse_property_filter() {
    PropertyFilter pf;
    pf.key = expect(TokenKind::String, "as a property key").text;
    if (eat(TokenKind::Eq)) {
      pf.op = SetOp::Eq;
      pf.values.push_back(expect(TokenKind::String, "after '='").text);
    } else if (eat(TokenKind::NotEq)) {
      pf.op = SetOp::Neq;
      pf.values.push_back(expect(TokenKind::String, "after '!='").text);
    } else if (eat(TokenKind::KwIn)) {
      pf.op = SetOp::In;
      pf.values = parse_name_list();
    } else if (at(TokenKind::KwNot) && peek(1).kind == TokenKind::KwIn) {
      advance();
      advance();
      pf.op = SetOp::NotIn;
      pf.values = parse_name_list();
    } else {
      error(ParseErrorCode::Syntax, "expected '=', '!=', 'in' or 'not in' after a property key");
    }
    return pf;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t pattern_depth_ = 0;
  std::size_t recursion_depth_ = 0;
};

}  // namespace

QueryPtr parse_query(const std::string& text) { return Parser(tokenize(text)).run(); }

}  // namespace adfd
