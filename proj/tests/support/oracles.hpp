#pragma once

#include <set>
#include <string>

#include "adfd/ast.hpp"
#include "adfd/eval.hpp"
#include "adfd/flows.hpp"
#include "adfd/model.hpp"

// Brute-force reference implementations the engine is checked against.
// Everything here favours being obviously correct over being fast; all of
// it is exponential and meant for tiny inputs only.
namespace oracle {

// Every alternating sequence from src to tgt whose elements are pairwise
// distinct (simple paths).
std::set<adfd::Flow> simple_paths(const adfd::Diagram& d, const std::string& src,
                                  const std::string& tgt);

// Every alternating walk from src to tgt that reuses no connector and
// touches tgt only at its final position (first-arrival discipline; a walk
// may additionally start at tgt when src == tgt).
std::set<adfd::Flow> edge_distinct_walks(const adfd::Diagram& d, const std::string& src,
                                         const std::string& tgt);

std::set<adfd::Flow> flows(const adfd::Diagram& d, const std::string& src,
                           const std::string& tgt, adfd::FlowUniqueness mode);

// Direct transcription of the match-set equations, nested loops and all,
// using the brute-force flow enumeration above.
adfd::MatchSet evaluate(const adfd::Query& query, const adfd::Diagram& d,
                        const adfd::ContentSpecification& s, adfd::FlowUniqueness mode);

}  // namespace oracle
