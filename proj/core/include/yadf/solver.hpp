#pragma once

#include <optional>
#include <string>
#include <vector>

#include "yadf/asp.hpp"
#include "yadf/truth.hpp"

namespace yadf {

enum class SolverExit : std::uint8_t { Sat, Unsat, Error, Timeout };

struct SolverConfig {
  std::string solver_path;                    // clingo-compatible executable
  std::optional<std::string> preprocessor;    // e.g. a rule decomposer, stdin -> stdout
  long long answer_cap = 0;                   // 0 = enumerate all
  int time_limit_s = 0;                       // 0 = none

  /// YADF_SOLVER, or the bundled aspeval next to the running executable.
  static SolverConfig default_config();
};

struct RunResult {
  SolverExit exit_class = SolverExit::Error;
  std::string output;       // child stdout
  std::string diagnostics;  // child stderr
};

/// Streams the rendered program to the (optional preprocessor, then) solver
/// via stdin and captures stdout. Exit statuses 10/30 map to Sat, 20 to
/// Unsat. Throws std::runtime_error on spawn failure.
RunResult run_solver(const asp::Program& p, const SolverConfig& cfg);
RunResult run_solver_text(const std::string& program_text, const SolverConfig& cfg);

struct AnswerSetReport {
  bool satisfiable = false;
  SolverExit exit_class = SolverExit::Error;
  std::vector<Interpretation3> interpretations;
  std::vector<std::vector<std::string>> raw_atom_sets;
};

/// Parses "Answer: N" blocks and reads interpretations off the asg(s,x)
/// atoms; every other predicate is ignored. Throws std::runtime_error on
/// non-total or conflicting assignments.
AnswerSetReport decode(const std::string& raw, const std::vector<std::string>& statements);

/// Credulous: yes iff satisfiable; skeptical: yes iff unsatisfiable.
/// Runs with an answer cap of 1.
enum class QueryKind : std::uint8_t { Credulous, Skeptical };
bool decide(const asp::Program& program_with_query, QueryKind kind, const SolverConfig& cfg);

}  // namespace yadf
