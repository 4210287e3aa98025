#include "adfd/report.hpp"

#include <atomic>
#include <future>
#include <sstream>

#include "adfd/conformance.hpp"
#include "adfd/rule_check.hpp"

namespace adfd {

const char* to_string(RuleStatus status) {
  switch (status) {
    case RuleStatus::Matched: return "matched";
    case RuleStatus::NotMatched: return "not-matched";
    case RuleStatus::RuleInvalid: return "rule-invalid";
  }
  return "?";
}

ConformanceError::ConformanceError(std::vector<Violation> violations)
    : ModelError(ErrorCode::ModelNotConforming,
                 "the model violates the specification (" +
                     std::to_string(violations.size()) + " finding(s))"),
      violations_(std::move(violations)) {}

namespace {

RuleResult run_rule(const Rule& rule, const Evaluator& evaluator,
                    const ContentSpecification& spec) {
  RuleResult result;
  result.rule = rule;
  QueryPtr query;
  try {
    query = parse_query(rule.pattern_text);
  } catch (const ParseError& e) {
    result.status = RuleStatus::RuleInvalid;
    result.parse_error = e.what();
    return result;
  }
  result.violations = check_query(*query, spec);
  if (!all_warnings(result.violations)) {
    result.status = RuleStatus::RuleInvalid;
    return result;
  }
  MatchSet tuples = evaluator.evaluate(*query);
  std::set<std::set<ComponentRef>> distinct;
  for (const MatchTuple& t : tuples) distinct.insert(t.affected);
  result.matches.assign(distinct.begin(), distinct.end());
  result.status = tuples.empty() ? RuleStatus::NotMatched : RuleStatus::Matched;
  return result;
}

}  // namespace

ThreatReport analyze(const Diagram& diagram, const ContentSpecification& spec,
                     const Catalog& catalog, const AnalyzeOptions& options) {
  std::vector<Violation> conformance = validate_diagram(diagram, spec);
  if (!all_warnings(conformance)) throw ConformanceError(std::move(conformance));

  ThreatReport report;
  report.tool_version = kToolVersion;
  report.spec_digest = options.spec_digest;
  report.model_digest = options.model_digest;
  report.flow_uniqueness = options.flow_uniqueness;
  report.results.resize(catalog.rules.size());

  const Evaluator evaluator(diagram, spec, options.flow_uniqueness);
  const std::size_t total = catalog.rules.size();
  const unsigned jobs =
      std::min<std::size_t>(options.jobs > 0 ? options.jobs : 1, total ? total : 1);

  if (jobs <= 1) {
    for (std::size_t i = 0; i < total; ++i)
      report.results[i] = run_rule(catalog.rules[i], evaluator, spec);
  } else {
    // Each worker claims rule indices; results land in catalog order, so
    // the report is identical to a sequential run.
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= total) return;
        report.results[i] = run_rule(catalog.rules[i], evaluator, spec);
      }
    };
    std::vector<std::future<void>> workers;
    for (unsigned j = 0; j < jobs; ++j)
      workers.push_back(std::async(std::launch::async, worker));
    for (std::future<void>& w : workers) w.get();
  }
  return report;
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::ordered_json violation_to_json(const Violation& violation) {
  nlohmann::ordered_json out;
  out["severity"] = to_string(violation.severity);
  out["code"] = to_string(violation.code);
  out["condition"] = violation.condition;
  if (!violation.subject.empty()) out["subject"] = violation.subject;
  if (!violation.key.empty()) out["key"] = violation.key;
  out["message"] = violation.message;
  if (violation.span) {
    out["span"] = {{"offset", violation.span->offset}, {"length", violation.span->length}};
  }
  return out;
}

std::string violation_to_text(const Violation& violation) {
  std::ostringstream os;
  os << to_string(violation.severity) << " " << to_string(violation.code) << " ["
     << violation.condition << "]";
  if (!violation.subject.empty()) os << " " << violation.subject;
  if (!violation.key.empty()) os << " key '" << violation.key << "'";
  if (violation.span) os << " at offset " << violation.span->offset;
  os << ": " << violation.message;
  return os.str();
}

namespace {

nlohmann::ordered_json match_to_json(const std::set<ComponentRef>& match) {
  nlohmann::ordered_json components = nlohmann::ordered_json::array();
  nlohmann::ordered_json flows = nlohmann::ordered_json::array();
  for (const ComponentRef& ref : match) {
    if (ref.is_flow())
      flows.push_back(ref.flow);
    else
      components.push_back(ref.id);
  }
  return {{"components", std::move(components)}, {"flows", std::move(flows)}};
}

}  // namespace

nlohmann::ordered_json report_to_json(const ThreatReport& report) {
  nlohmann::ordered_json out;
  out["tool"] = kToolName;
  out["tool_version"] = report.tool_version;
  out["spec_digest"] = report.spec_digest;
  out["model_digest"] = report.model_digest;
  out["flow_uniqueness"] = to_string(report.flow_uniqueness);

  std::size_t matched = 0, invalid = 0;
  for (const RuleResult& r : report.results) {
    matched += r.status == RuleStatus::Matched;
    invalid += r.status == RuleStatus::RuleInvalid;
  }
  out["rules_total"] = report.results.size();
  out["rules_matched"] = matched;
  out["rules_invalid"] = invalid;

  nlohmann::ordered_json rules = nlohmann::ordered_json::array();
  for (const RuleResult& r : report.results) {
    nlohmann::ordered_json entry;
    entry["id"] = r.rule.id;
    entry["title"] = r.rule.title;
    if (!r.rule.description.empty()) entry["description"] = r.rule.description;
    if (!r.rule.threat_type.empty()) entry["threat_type"] = r.rule.threat_type;
    entry["impact"] = r.rule.impact;
    entry["likelihood"] = r.rule.likelihood;
    entry["risk"] = r.risk();
    entry["status"] = to_string(r.status);
    if (!r.parse_error.empty()) entry["parse_error"] = r.parse_error;
    if (!r.violations.empty()) {
      nlohmann::ordered_json violations = nlohmann::ordered_json::array();
      for (const Violation& v : r.violations) violations.push_back(violation_to_json(v));
      entry["violations"] = std::move(violations);
    }
    if (r.status != RuleStatus::RuleInvalid) {
      entry["match_count"] = r.matches.size();
      nlohmann::ordered_json matches = nlohmann::ordered_json::array();
      for (const auto& match : r.matches) matches.push_back(match_to_json(match));
      entry["matches"] = std::move(matches);
    }
    rules.push_back(std::move(entry));
  }
  out["rules"] = std::move(rules);
  return out;
}

std::string report_to_text(const ThreatReport& report) {
  std::ostringstream os;
  os << kToolName << " " << report.tool_version << "\n";
  os << "spec digest: " << report.spec_digest << "\n";
  os << "model digest: " << report.model_digest << "\n";
  os << "flow uniqueness: " << to_string(report.flow_uniqueness) << "\n";

  std::size_t matched = 0, invalid = 0;
  for (const RuleResult& r : report.results) {
    matched += r.status == RuleStatus::Matched;
    invalid += r.status == RuleStatus::RuleInvalid;
  }
  os << "rules: " << report.results.size() << " total, " << matched << " matched, " << invalid
     << " invalid\n";

  for (const RuleResult& r : report.results) {
    os << "\n[" << to_string(r.status) << "] " << r.rule.id << "  risk " << r.risk()
       << " (impact " << r.rule.impact << " x likelihood " << r.rule.likelihood << ")";
    if (!r.rule.title.empty()) os << "  " << r.rule.title;
    os << "\n";
    if (!r.parse_error.empty()) os << "  parse error: " << r.parse_error << "\n";
    for (const Violation& v : r.violations) os << "  " << violation_to_text(v) << "\n";
    if (r.status != RuleStatus::RuleInvalid) {
      os << "  matches: " << r.matches.size() << "\n";
      for (const auto& match : r.matches) {
        os << "    -";
        for (const ComponentRef& ref : match) os << " " << ref.display();
        os << "\n";
      }
    }
  }
  return os.str();
}

}  // namespace adfd
