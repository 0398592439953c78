#pragma once

#include <string>
#include <vector>

#include "yadf/asp.hpp"

namespace yadf {
namespace aspeval {

/// Stable-model evaluation for the ground-free rule fragment the encoders
/// emit: facts, a stratified base layer, mutual-default-negation choice
/// cliques, choice-dependent definitional rules, constraints, and the
/// saturation idiom for disjunctive heads. Every reported model is certified
/// against the Gelfond-Lifschitz reduct; programs outside the supported
/// class raise std::runtime_error instead of guessing.
struct Result {
  bool satisfiable = false;
  bool exhausted = true;  // false when the model cap stopped enumeration
  std::vector<std::vector<std::string>> models;  // rendered ground atoms
};

/// max_models: 0 enumerates all models.
Result evaluate(const asp::Program& program, long long max_models);

Result evaluate_text(const std::string& program_text, long long max_models);

}  // namespace aspeval
}  // namespace yadf
