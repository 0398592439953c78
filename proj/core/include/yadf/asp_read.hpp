#pragma once

#include <string>

#include "yadf/asp.hpp"

namespace yadf {
namespace asp {

/// Minimal reader for the rule fragment the encoders emit (and the clingo
/// dialect subset aspeval consumes): facts, normal and disjunctive rules,
/// constraints, default negation, comparison literals over & ? - + *, and
/// assignment aggregates #sum/#min/#max/#count. Throws std::runtime_error
/// with a line:column prefix on anything else.
Program parse_program(const std::string& text);

}  // namespace asp
}  // namespace yadf
