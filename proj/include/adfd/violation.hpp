#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace adfd {

enum class Severity { Error, Warning };

constexpr const char* to_string(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

enum class ViolationCode {
  // Diagram-against-specification checks.
  EmptyDiagram,
  ConnectorNeedsTwoElements,
  UnknownType,
  KeyNotAllowed,
  ValueNotInDomain,
  UnheldAsset,  // warning: an asset no element or connector holds
  // Rule-against-specification checks.
  UnknownKey,
  KeyNotInContext,
  NegatedTypeContext,  // warning: a negated type filter yields no key context
};

const char* to_string(ViolationCode code);

// Half-open byte range into a rule text.
struct SourceSpan {
  std::size_t offset = 0;
  std::size_t length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

// One failed check, as a value. `condition` names the violated clause of
// the validated relation, `subject` the offending component id (diagram
// checks) and `key` the property key involved, when one is. Rule checks
// carry the source span of the offending term instead of a subject.
struct Violation {
  Severity severity = Severity::Error;
  ViolationCode code = ViolationCode::EmptyDiagram;
  std::string condition;
  std::string subject;
  std::string key;
  std::string message;
  std::optional<SourceSpan> span;
};

// Canonical report order: code, then subject, then key.
void sort_violations(std::vector<Violation>& violations);

// True when no Error-severity entry is present (warnings do not block).
bool all_warnings(const std::vector<Violation>& violations);

}  // namespace adfd
