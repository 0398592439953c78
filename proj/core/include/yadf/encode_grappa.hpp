#pragma once

#include <string>
#include <vector>

#include "yadf/asp.hpp"
#include "yadf/encode_adf.hpp"
#include "yadf/instance.hpp"

namespace yadf {

struct TermAtomResult {
  std::vector<asp::Literal> literals;
  std::string var;
};

/// Binding literal(s) for one term at statement s. Active-label terms
/// aggregate over the Z variables of the relevant parents; static terms bind
/// a constant computed from the instance. Throws std::invalid_argument for
/// min/max over an empty parent set and for numeric terms on symbolic labels.
TermAtomResult term_atom(const GrappaInstance& g, std::size_t s, const Term& t,
                         const std::string& var_name);

struct PatternBodyResult {
  std::vector<asp::Literal> literals;
  std::string root;
};

/// Pattern compilation: linear-term chains, basic patterns materialized as
/// 0/1 via #sum{1: cmp}, Boolean structure via & ? 1-.
PatternBodyResult pattern_body(const GrappaInstance& g, std::size_t s);

asp::Program encode_grappa(const GrappaInstance& g, Semantics sigma);

}  // namespace yadf
