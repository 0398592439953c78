// Command-line front end: translate ADF / GRAPPA instances into dynamic ASP
// encodings, optionally run a solver and decode the answer sets, or answer
// directly from the built-in brute-force semantics.

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "yadf/encode_adf.hpp"
#include "yadf/encode_grappa.hpp"
#include "yadf/oracle.hpp"
#include "yadf/parse.hpp"
#include "yadf/solver.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

const char* kUsage = R"(usage: yadf [options] inputfile
with options:
 -h              display this help
 -adm            compute the admissible interpretations
 -com            compute the complete interpretations
 -prf            compute the preferred interpretations
 -grd            compute the grounded interpretation
 -stb            compute the stable interpretations
 -cred s         check credulous acceptance of statement s
 -scep s         check sceptical acceptance of statement s (also: -skept)
 --grappa        treat the input as a GRAPPA instance (adm/com/prf only)
 --solve         pipe the encoding through the solver and decode the answers
 --oracle        answer from the built-in brute-force semantics instead of ASP
 --solver PATH   solver executable (default: $YADF_SOLVER or bundled aspeval)
 --pre PATH      preprocessor to pipe the encoding through (e.g. lpopt)
 --time-limit N  solver time limit in seconds

The encoding is written to stdout, so `yadf -adm file | clingo 0` works as a
shell pipeline. The input file may be `-` for stdin.
)";

struct Options {
  std::optional<yadf::Semantics> semantics;
  std::optional<yadf::QueryMode> query;
  std::string query_statement;
  bool grappa = false;
  bool solve = false;
  bool oracle = false;
  std::string input_path;
  yadf::SolverConfig solver = yadf::SolverConfig::default_config();
};

int usage_error(const std::string& msg) {
  std::cerr << "yadf: " << msg << "\n" << kUsage;
  return kExitUsage;
}

std::optional<std::string> read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const Options& opt) {
  auto source = read_input(opt.input_path);
  if (!source) {
    std::cerr << "yadf: cannot read '" << opt.input_path << "'\n";
    return kExitUsage;
  }

  std::vector<std::string> statements;
  std::optional<yadf::AdfInstance> adf;
  std::optional<yadf::GrappaInstance> grappa;
  try {
    if (opt.grappa) {
      grappa = yadf::parse_grappa(*source);
      statements = grappa->statements();
    } else {
      adf = yadf::parse_adf(*source);
      statements = adf->statements();
    }
  } catch (const yadf::ParseError& e) {
    std::cerr << "yadf: " << opt.input_path << ":" << e.what() << "\n";
    return kExitUsage;
  }

  yadf::Semantics sigma = *opt.semantics;

  if (opt.oracle) {
    std::set<yadf::Interpretation3> result;
    if (opt.grappa) {
      result = yadf::enumerate_grappa(*grappa, sigma);
    } else if (sigma == yadf::Semantics::Grd) {
      result.insert(yadf::grounded(*adf));
    } else {
      result = yadf::enumerate_adf(*adf, sigma);
    }
    if (opt.query) {
      bool cred = *opt.query == yadf::QueryMode::Credulous;
      std::size_t idx = 0;
      for (; idx < statements.size(); ++idx)
        if (statements[idx] == opt.query_statement) break;
      if (idx == statements.size()) return usage_error("unknown statement in query");
      bool yes = cred ? false : true;
      for (const auto& v : result) {
        bool t = v[idx] == yadf::Tv::True;
        if (cred && t) yes = true;
        if (!cred && !t) yes = false;
      }
      std::cout << (yes ? "YES" : "NO") << "\n";
      return yes ? kExitYes : kExitNo;
    }
    if (result.empty()) {
      std::cout << "UNSATISFIABLE\n";
      return kExitNo;
    }
    for (const auto& v : result) std::cout << yadf::format_interpretation(statements, v) << "\n";
    return kExitYes;
  }

  yadf::asp::Program program;
  try {
    program = opt.grappa ? yadf::encode_grappa(*grappa, sigma) : yadf::encode_adf(*adf, sigma);
    if (opt.query) {
      auto mode = *opt.query;
      program = yadf::attach_query(std::move(program), mode, opt.query_statement, statements);
    }
  } catch (const std::exception& e) {
    std::cerr << "yadf: " << e.what() << "\n";
    return kExitUsage;
  }

  if (!opt.solve) {
    std::cout << yadf::asp::render(program);
    return kExitYes;
  }

  try {
    if (opt.query) {
      bool yes = yadf::decide(program,
                              *opt.query == yadf::QueryMode::Credulous
                                  ? yadf::QueryKind::Credulous
                                  : yadf::QueryKind::Skeptical,
                              opt.solver);
      std::cout << (yes ? "YES" : "NO") << "\n";
      return yes ? kExitYes : kExitNo;
    }
    yadf::RunResult raw = yadf::run_solver(program, opt.solver);
    if (raw.exit_class == yadf::SolverExit::Error || raw.exit_class == yadf::SolverExit::Timeout) {
      std::cerr << "yadf: solver failed\n" << raw.diagnostics;
      return kExitSolver;
    }
    yadf::AnswerSetReport report = yadf::decode(raw.output, statements);
    std::set<yadf::Interpretation3> unique(report.interpretations.begin(),
                                           report.interpretations.end());
    if (unique.empty()) {
      std::cout << "UNSATISFIABLE\n";
      return kExitNo;
    }
    for (const auto& v : unique) std::cout << yadf::format_interpretation(statements, v) << "\n";
    return kExitYes;
  } catch (const std::exception& e) {
    std::cerr << "yadf: " << e.what() << "\n";
    return kExitSolver;
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  std::vector<std::string> args(argv + 1, argv + argc);

  auto take_value = [&](std::size_t& i, const std::string& flag) -> std::optional<std::string> {
    if (i + 1 >= args.size()) {
      usage_error("missing value for " + flag);
      return std::nullopt;
    }
    return args[++i];
  };

  auto set_semantics = [&](yadf::Semantics s) {
    if (opt.semantics) return false;
    opt.semantics = s;
    return true;
  };

  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "-h" || a == "--help") {
      std::cout << kUsage;
      return kExitYes;
    } else if (a == "-adm") {
      if (!set_semantics(yadf::Semantics::Adm)) return usage_error("multiple semantics flags");
    } else if (a == "-com") {
      if (!set_semantics(yadf::Semantics::Com)) return usage_error("multiple semantics flags");
    } else if (a == "-prf") {
      if (!set_semantics(yadf::Semantics::Prf)) return usage_error("multiple semantics flags");
    } else if (a == "-grd") {
      if (!set_semantics(yadf::Semantics::Grd)) return usage_error("multiple semantics flags");
    } else if (a == "-stb") {
      if (!set_semantics(yadf::Semantics::Stb)) return usage_error("multiple semantics flags");
    } else if (a == "-cred" || a == "-scep" || a == "-skept") {
      if (opt.query) return usage_error("at most one of -cred/-scep");
      auto v = take_value(i, a);
      if (!v) return kExitUsage;
      opt.query = a == "-cred" ? yadf::QueryMode::Credulous : yadf::QueryMode::Skeptical;
      opt.query_statement = *v;
    } else if (a == "--grappa") {
      opt.grappa = true;
    } else if (a == "--solve") {
      opt.solve = true;
    } else if (a == "--oracle") {
      opt.oracle = true;
    } else if (a == "--solver") {
      auto v = take_value(i, a);
      if (!v) return kExitUsage;
      opt.solver.solver_path = *v;
    } else if (a == "--pre") {
      auto v = take_value(i, a);
      if (!v) return kExitUsage;
      opt.solver.preprocessor = *v;
    } else if (a == "--time-limit") {
      auto v = take_value(i, a);
      if (!v) return kExitUsage;
      opt.solver.time_limit_s = std::stoi(*v);
    } else if (!a.empty() && a[0] == '-' && a != "-") {
      return usage_error("unknown option '" + a + "'");
    } else {
      if (!opt.input_path.empty()) return usage_error("multiple input files");
      opt.input_path = a;
    }
  }

  if (!opt.semantics) return usage_error("exactly one semantics flag is required");
  if (opt.input_path.empty()) return usage_error("no input file");
  if (opt.grappa &&
      (*opt.semantics == yadf::Semantics::Grd || *opt.semantics == yadf::Semantics::Stb ||
       *opt.semantics == yadf::Semantics::Mod))
    return usage_error("GRAPPA supports -adm, -com and -prf only");

  return run(opt);
}
