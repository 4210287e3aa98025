#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "adfd/catalog.hpp"
#include "adfd/eval.hpp"
#include "adfd/violation.hpp"

namespace adfd {

inline constexpr const char* kToolName = "adfd-analyzer";
inline constexpr const char* kToolVersion = "0.1.0";

enum class RuleStatus { Matched, NotMatched, RuleInvalid };

const char* to_string(RuleStatus status);

struct RuleResult {
  Rule rule;
  RuleStatus status = RuleStatus::NotMatched;
  // Parse failure, when the pattern text is not even syntax.
  std::string parse_error;
  // Static check results; any Error entry makes the rule invalid.
  std::vector<Violation> violations;
  // Distinct affected sets of the match tuples, sorted.
  std::vector<std::set<ComponentRef>> matches;

  // Risk is the plain impact x likelihood product (range 1..25).
  int risk() const { return rule.impact * rule.likelihood; }
};

struct ThreatReport {
  std::string tool_version;
  std::string spec_digest;
  std::string model_digest;
  FlowUniqueness flow_uniqueness = FlowUniqueness::Elements;
  std::vector<RuleResult> results;  // catalog order
};

// Thrown by analyze() when the model does not conform to the specification.
class ConformanceError : public ModelError {
 public:
  explicit ConformanceError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct AnalyzeOptions {
  FlowUniqueness flow_uniqueness = FlowUniqueness::Elements;
  // Rules evaluated concurrently when > 1; the report is identical either
  // way.
  unsigned jobs = 1;
  // Digests of the input documents, carried into the report.
  std::string spec_digest;
  std::string model_digest;
};

// Evaluates every rule of the catalog against the diagram. Rules that fail
// to parse or fail the static check are reported as rule-invalid and do not
// abort the run; the diagram itself must conform (ConformanceError
// otherwise, warnings excepted).
ThreatReport analyze(const Diagram& diagram, const ContentSpecification& spec,
                     const Catalog& catalog, const AnalyzeOptions& options = {});

// Stable structured form; serializing the same report twice is
// byte-identical.
nlohmann::ordered_json report_to_json(const ThreatReport& report);

// Human-readable form; agrees with the structured form on statuses, match
// counts and match members.
std::string report_to_text(const ThreatReport& report);

nlohmann::ordered_json violation_to_json(const Violation& violation);
std::string violation_to_text(const Violation& violation);

}  // namespace adfd
