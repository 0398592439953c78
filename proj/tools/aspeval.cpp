// Stable-model evaluator for the rule fragment the encoders emit, speaking
// the clingo command-line contract: program on stdin, optional model cap as
// the first argument (0 = all), "Answer: N" blocks on stdout, exit status
// 10 (some models, cap hit), 30 (all models enumerated) or 20 (none).

#include <iostream>
#include <sstream>
#include <string>

#include "yadf/asp_eval.hpp"

int main(int argc, char** argv) {
  long long cap = 1;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "-h" || a == "--help") {
      std::cout << "usage: aspeval [max_models] < program.lp\n";
      return 0;
    }
    try {
      cap = std::stoll(a);
    } catch (...) {
      std::cerr << "aspeval: bad model cap '" << a << "'\n";
      return 65;
    }
  }

  std::ostringstream ss;
  ss << std::cin.rdbuf();

  try {
    yadf::aspeval::Result res = yadf::aspeval::evaluate_text(ss.str(), cap);
    int n = 0;
    for (const auto& model : res.models) {
      std::cout << "Answer: " << ++n << "\n";
      for (std::size_t i = 0; i < model.size(); ++i) {
        if (i) std::cout << ' ';
        std::cout << model[i];
      }
      std::cout << "\n";
    }
    if (res.models.empty()) {
      std::cout << "UNSATISFIABLE\n";
      return 20;
    }
    std::cout << "SATISFIABLE\n";
    return res.exhausted ? 30 : 10;
  } catch (const std::exception& e) {
    std::cerr << "aspeval: " << e.what() << "\n";
    return 65;
  }
}
