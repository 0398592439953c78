// Graph-based random ADF generator: reads a `u v` edge list, assigns parents
// to attack/group-attack/support/group-support/xor groups and emits the
// instance in the textual ADF format.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "yadf/generate.hpp"
#include "yadf/parse.hpp"

namespace {

const char* kUsage = R"(usage: adfgen [options] graphfile
with options:
 -h              display this help
 --seed N        RNG seed (default 0)
 --directed      edges are already directed (default: undirected)
 --sym-prob P    probability of keeping an undirected edge symmetric (default 0.5)
 --probs a,b,c,d,e  group probabilities, must sum to 1 (default uniform)

The graph file holds whitespace-separated `u v` edge pairs; integer node ids
n become statements s<n>. The generated ADF is written to stdout. `-` reads
the graph from stdin.
)";

int usage_error(const std::string& msg) {
  std::cerr << "adfgen: " << msg << "\n" << kUsage;
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  yadf::GeneratorOptions opt;
  std::string path;
  std::vector<std::string> args(argv + 1, argv + argc);

  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    auto value = [&]() -> std::optional<std::string> {
      if (i + 1 >= args.size()) return std::nullopt;
      return args[++i];
    };
    if (a == "-h" || a == "--help") {
      std::cout << kUsage;
      return 0;
    } else if (a == "--seed") {
      auto v = value();
      if (!v) return usage_error("missing value for --seed");
      opt.seed = std::stoull(*v);
    } else if (a == "--directed") {
      opt.directed = true;
    } else if (a == "--sym-prob") {
      auto v = value();
      if (!v) return usage_error("missing value for --sym-prob");
      opt.symmetric_link_prob = std::stod(*v);
    } else if (a == "--probs") {
      auto v = value();
      if (!v) return usage_error("missing value for --probs");
      std::istringstream ss(*v);
      std::string part;
      std::size_t k = 0;
      while (std::getline(ss, part, ',') && k < 5) opt.group_probs[k++] = std::stod(part);
      if (k != 5) return usage_error("--probs needs five comma-separated values");
    } else if (!a.empty() && a[0] == '-' && a != "-") {
      return usage_error("unknown option '" + a + "'");
    } else {
      if (!path.empty()) return usage_error("multiple graph files");
      path = a;
    }
  }
  if (path.empty()) return usage_error("no graph file");

  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) return usage_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  try {
    yadf::GraphInput graph = yadf::parse_edge_list(text);
    yadf::AdfInstance d = yadf::generate(graph, opt);
    std::cout << yadf::print_adf(d);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "adfgen: " << e.what() << "\n";
    return 2;
  }
}
