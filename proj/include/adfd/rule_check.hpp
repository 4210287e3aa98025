#pragma once

#include <vector>

#include "adfd/ast.hpp"
#include "adfd/model.hpp"
#include "adfd/violation.hpp"

namespace adfd {

// Checks a parsed rule against a specification: every named type exists in
// the category the pattern ranges over, every property key exists, every
// key is carried by all types the enclosing pattern can still denote, and
// every compared value lies in the key's domain. Patterns without a
// positive type filter are checked in an unconstrained context; a negated
// type filter also yields an unconstrained context and is additionally
// reported as a warning. The rule is well-formed iff no Error entry is
// returned. Results carry the source span of the offending term and are
// sorted canonically.
std::vector<Violation> check_query(const Query& query, const ContentSpecification& spec);

}  // namespace adfd
