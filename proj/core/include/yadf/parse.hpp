#pragma once

#include <stdexcept>
#include <string>

#include "yadf/instance.hpp"

namespace yadf {

enum class ParseErrorKind : std::uint8_t {
  Syntax,
  UndeclaredStatement,
  DuplicateCondition,
  BadIdentifier,
};

struct ParseError : std::runtime_error {
  ParseError(int line, int column, ParseErrorKind kind, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line(line),
        column(column),
        kind(kind),
        message(message) {}

  int line;
  int column;
  ParseErrorKind kind;
  std::string message;
};

/// Textual instance format: facts `s(x).` (alias `statement(x).`) and
/// `ac(x,F).` with F in prefix notation over and/or/neg/imp/xor/c(v)/c(f).
/// `%` comments to end of line. Throws ParseError.
AdfInstance parse_adf(const std::string& source);

/// GRAPPA format: `s(x).`, `e(u,v,l).` and `pat(x,"P").` with P in the
/// pattern surface grammar (&&, ||, !, linear term REL int).
GrappaInstance parse_grappa(const std::string& source);

/// Standalone pattern parser for the quoted pattern grammar.
Pattern parse_pattern(const std::string& text);

std::string print_adf(const AdfInstance& d);
std::string print_grappa(const GrappaInstance& g);

}  // namespace yadf
