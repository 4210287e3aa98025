#include "adfd/violation.hpp"

#include <algorithm>
#include <tuple>

namespace adfd {

const char* to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::EmptyDiagram: return "EMPTY_DIAGRAM";
    case ViolationCode::ConnectorNeedsTwoElements: return "CONNECTOR_NEEDS_TWO_ELEMENTS";
    case ViolationCode::UnknownType: return "UNKNOWN_TYPE";
    case ViolationCode::KeyNotAllowed: return "KEY_NOT_ALLOWED";
    case ViolationCode::ValueNotInDomain: return "VALUE_NOT_IN_DOMAIN";
    case ViolationCode::UnheldAsset: return "UNHELD_ASSET";
    case ViolationCode::UnknownKey: return "UNKNOWN_KEY";
    case ViolationCode::KeyNotInContext: return "KEY_NOT_IN_CONTEXT";
    case ViolationCode::NegatedTypeContext: return "NEGATED_TYPE_CONTEXT";
  }
  return "UNKNOWN_VIOLATION";
}

void sort_violations(std::vector<Violation>& violations) {
  std::sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
    const std::string_view code_a = to_string(a.code), code_b = to_string(b.code);
    if (code_a != code_b) return code_a < code_b;
    if (a.subject != b.subject) return a.subject < b.subject;
    if (a.key != b.key) return a.key < b.key;
    const std::size_t offset_a = a.span ? a.span->offset : 0;
    const std::size_t offset_b = b.span ? b.span->offset : 0;
    return offset_a < offset_b;
  });
}

bool all_warnings(const std::vector<Violation>& violations) {
  return std::ranges::none_of(
      violations, [](const Violation& v) { return v.severity == Severity::Error; });
}

}  // namespace adfd
