#include "yadf/parse.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace yadf {
namespace {

struct Cursor {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Cursor(const std::string& s) : src(s) {}

  bool eof() const { return pos >= src.size(); }
  char peek() const { return eof() ? '\0' : src[pos]; }

  char advance() {
    char c = src[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == '%') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(ParseErrorKind kind, const std::string& msg) const {
    throw ParseError(line, col, kind, msg);
  }

  void expect(char c) {
    if (peek() != c) fail(ParseErrorKind::Syntax, std::string("expected '") + c + "'");
    advance();
  }

  bool consume(char c) {
    if (peek() != c) return false;
    advance();
    return true;
  }

  std::string identifier() {
    skip_ws();
    if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_')
      fail(ParseErrorKind::Syntax, "expected identifier");
    std::string id;
    while (!eof()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
        id += advance();
      else
        break;
    }
    return id;
  }

  long long integer() {
    skip_ws();
    bool negative = consume('-');
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail(ParseErrorKind::Syntax, "expected integer");
    long long v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (advance() - '0');
    return negative ? -v : v;
  }
};

Formula parse_formula(Cursor& cur) {
  cur.skip_ws();
  int line = cur.line, col = cur.col;
  std::string id = cur.identifier();
  cur.skip_ws();
  auto binary = [&](Formula (*make)(Formula, Formula)) {
    cur.expect('(');
    Formula a = parse_formula(cur);
    cur.skip_ws();
    cur.expect(',');
    Formula b = parse_formula(cur);
    cur.skip_ws();
    cur.expect(')');
    return make(std::move(a), std::move(b));
  };
  if (cur.peek() == '(') {
    if (id == "c") {
      cur.expect('(');
      cur.skip_ws();
      std::string which = cur.identifier();
      cur.skip_ws();
      cur.expect(')');
      if (which == "v") return Formula::top();
      if (which == "f") return Formula::bot();
      throw ParseError(line, col, ParseErrorKind::Syntax, "constant must be c(v) or c(f)");
    }
    if (id == "neg") {
      cur.expect('(');
      Formula a = parse_formula(cur);
      cur.skip_ws();
      cur.expect(')');
      return Formula::neg(std::move(a));
    }
    if (id == "and") return binary(&Formula::conj);
    if (id == "or") return binary(&Formula::disj);
    if (id == "imp") return binary(&Formula::imp);
    if (id == "xor") return binary(&Formula::xor_);
    throw ParseError(line, col, ParseErrorKind::Syntax, "unknown connective '" + id + "'");
  }
  if (!valid_statement_id(id))
    throw ParseError(line, col, ParseErrorKind::BadIdentifier, "bad statement id '" + id + "'");
  return Formula::var(id);
}

std::string parse_declared_id(Cursor& cur) {
  cur.skip_ws();
  int line = cur.line, col = cur.col;
  std::string id = cur.identifier();
  if (!valid_statement_id(id))
    throw ParseError(line, col, ParseErrorKind::BadIdentifier, "bad statement id '" + id + "'");
  return id;
}

// ---- pattern grammar ----------------------------------------------------
//
// pattern := disj ; disj := conj ('||' conj)* ; conj := atom ('&&' atom)*
// atom := '!' atom | '(' pattern ')' | basic
// basic := linterm REL int ; linterm := summand (('+'|'-') summand)*
// summand := [uint '*'] term

Label parse_label(Cursor& cur) {
  cur.skip_ws();
  char c = cur.peek();
  if (c == '+' || c == '-') {
    cur.advance();
    return Label::symbol(std::string(1, c));
  }
  if (std::isdigit(static_cast<unsigned char>(c))) return Label::integer(cur.integer());
  if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return Label::symbol(cur.identifier());
  cur.fail(ParseErrorKind::Syntax, "expected label");
}

Term parse_term(Cursor& cur) {
  cur.skip_ws();
  if (cur.consume('#')) {
    bool statics = false;
    if (cur.peek() == 't') {
      cur.advance();
      statics = true;
    }
    cur.expect('(');
    Label l = parse_label(cur);
    cur.skip_ws();
    cur.expect(')');
    return Term{statics ? TermKind::LabelCountStatic : TermKind::LabelCount, std::move(l)};
  }
  int line = cur.line, col = cur.col;
  std::string id = cur.identifier();
  static const std::map<std::string, TermKind> kinds = {
      {"min", TermKind::Min},     {"mint", TermKind::MinStatic},
      {"max", TermKind::Max},     {"maxt", TermKind::MaxStatic},
      {"sum", TermKind::Sum},     {"sumt", TermKind::SumStatic},
      {"count", TermKind::CountDistinct}, {"countt", TermKind::CountDistinctStatic},
  };
  auto it = kinds.find(id);
  if (it == kinds.end())
    throw ParseError(line, col, ParseErrorKind::Syntax, "unknown term '" + id + "'");
  return Term{it->second, std::nullopt};
}

Pattern::Summand parse_summand(Cursor& cur, long long sign) {
  cur.skip_ws();
  long long coeff = sign;
  if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
    coeff = sign * cur.integer();
    cur.skip_ws();
    cur.expect('*');
  }
  return Pattern::Summand{coeff, parse_term(cur)};
}

Pattern parse_basic(Cursor& cur) {
  std::vector<Pattern::Summand> sum;
  cur.skip_ws();
  long long sign = cur.consume('-') ? -1 : 1;
  sum.push_back(parse_summand(cur, sign));
  for (;;) {
    cur.skip_ws();
    if (cur.consume('+'))
      sum.push_back(parse_summand(cur, 1));
    else if (cur.peek() == '-') {
      // Lookahead: '-' starts a new summand only if a term follows; otherwise
      // it belongs to the relational bound (e.g. "sum>=-2" never reaches here).
      cur.advance();
      sum.push_back(parse_summand(cur, -1));
    } else {
      break;
    }
  }
  cur.skip_ws();
  Rel rel;
  if (cur.consume('<'))
    rel = cur.consume('=') ? Rel::Le : Rel::Lt;
  else if (cur.consume('>'))
    rel = cur.consume('=') ? Rel::Ge : Rel::Gt;
  else if (cur.consume('='))
    rel = Rel::Eq;
  else if (cur.consume('!')) {
    cur.expect('=');
    rel = Rel::Ne;
  } else {
    cur.fail(ParseErrorKind::Syntax, "expected relation");
  }
  long long bound = cur.integer();
  return Pattern::basic(std::move(sum), rel, bound);
}

Pattern parse_pattern_expr(Cursor& cur);

Pattern parse_pattern_atom(Cursor& cur) {
  cur.skip_ws();
  if (cur.consume('!')) return Pattern::neg(parse_pattern_atom(cur));
  if (cur.consume('(')) {
    Pattern p = parse_pattern_expr(cur);
    cur.skip_ws();
    cur.expect(')');
    return p;
  }
  return parse_basic(cur);
}

Pattern parse_pattern_conj(Cursor& cur) {
  Pattern p = parse_pattern_atom(cur);
  for (;;) {
    cur.skip_ws();
    if (cur.peek() == '&' && cur.pos + 1 < cur.src.size() && cur.src[cur.pos + 1] == '&') {
      cur.advance();
      cur.advance();
      p = Pattern::conj(std::move(p), parse_pattern_atom(cur));
    } else {
      return p;
    }
  }
}

Pattern parse_pattern_expr(Cursor& cur) {
  Pattern p = parse_pattern_conj(cur);
  for (;;) {
    cur.skip_ws();
    if (cur.peek() == '|' && cur.pos + 1 < cur.src.size() && cur.src[cur.pos + 1] == '|') {
      cur.advance();
      cur.advance();
      p = Pattern::disj(std::move(p), parse_pattern_conj(cur));
    } else {
      return p;
    }
  }
}

}  // namespace

Pattern parse_pattern(const std::string& text) {
  Cursor cur(text);
  Pattern p = parse_pattern_expr(cur);
  cur.skip_ws();
  if (!cur.eof()) cur.fail(ParseErrorKind::Syntax, "trailing input after pattern");
  return p;
}

AdfInstance parse_adf(const std::string& source) {
  Cursor cur(source);
  std::vector<std::string> statements;
  std::map<std::string, std::pair<Formula, std::pair<int, int>>> conditions;
  std::vector<std::pair<std::string, std::pair<int, int>>> ac_order;

  for (;;) {
    cur.skip_ws();
    if (cur.eof()) break;
    int line = cur.line, col = cur.col;
    std::string head = cur.identifier();
    cur.skip_ws();
    if (head == "s" || head == "statement") {
      cur.expect('(');
      std::string id = parse_declared_id(cur);
      cur.skip_ws();
      cur.expect(')');
      bool known = false;
      for (const auto& s : statements) known |= s == id;
      if (!known) statements.push_back(id);
    } else if (head == "ac") {
      cur.expect('(');
      std::string id = parse_declared_id(cur);
      cur.skip_ws();
      cur.expect(',');
      Formula f = parse_formula(cur);
      cur.skip_ws();
      cur.expect(')');
      if (conditions.count(id))
        throw ParseError(line, col, ParseErrorKind::DuplicateCondition,
                         "duplicate acceptance condition for '" + id + "'");
      conditions.emplace(id, std::make_pair(std::move(f), std::make_pair(line, col)));
      ac_order.push_back({id, {line, col}});
    } else {
      throw ParseError(line, col, ParseErrorKind::Syntax, "unknown fact '" + head + "'");
    }
    cur.skip_ws();
    cur.expect('.');
  }

  for (const auto& [id, where] : ac_order) {
    bool declared = false;
    for (const auto& s : statements) declared |= s == id;
    if (!declared)
      throw ParseError(where.first, where.second, ParseErrorKind::UndeclaredStatement,
                       "acceptance condition for undeclared statement '" + id + "'");
  }

  std::vector<Formula> conds;
  for (const auto& s : statements) {
    auto it = conditions.find(s);
    if (it == conditions.end())
      throw ParseError(cur.line, cur.col, ParseErrorKind::Syntax,
                       "missing acceptance condition for '" + s + "'");
    conds.push_back(it->second.first);
  }
  try {
    return AdfInstance(std::move(statements), std::move(conds));
  } catch (const std::invalid_argument& e) {
    throw ParseError(cur.line, cur.col, ParseErrorKind::UndeclaredStatement, e.what());
  }
}

GrappaInstance parse_grappa(const std::string& source) {
  Cursor cur(source);
  std::vector<std::string> statements;
  struct RawEdge {
    std::string src, dst;
    Label label;
    int line, col;
  };
  std::vector<RawEdge> edges;
  std::map<std::string, std::pair<Pattern, std::pair<int, int>>> patterns;

  for (;;) {
    cur.skip_ws();
    if (cur.eof()) break;
    int line = cur.line, col = cur.col;
    std::string head = cur.identifier();
    cur.skip_ws();
    if (head == "s" || head == "statement") {
      cur.expect('(');
      std::string id = parse_declared_id(cur);
      cur.skip_ws();
      cur.expect(')');
      bool known = false;
      for (const auto& s : statements) known |= s == id;
      if (!known) statements.push_back(id);
    } else if (head == "e") {
      cur.expect('(');
      std::string u = parse_declared_id(cur);
      cur.skip_ws();
      cur.expect(',');
      std::string v = parse_declared_id(cur);
      cur.skip_ws();
      cur.expect(',');
      Label l = parse_label(cur);
      cur.skip_ws();
      cur.expect(')');
      edges.push_back({std::move(u), std::move(v), std::move(l), line, col});
    } else if (head == "pat") {
      cur.expect('(');
      std::string id = parse_declared_id(cur);
      cur.skip_ws();
      cur.expect(',');
      cur.skip_ws();
      cur.expect('"');
      std::string body;
      while (!cur.eof() && cur.peek() != '"') body += cur.advance();
      cur.expect('"');
      cur.skip_ws();
      cur.expect(')');
      Pattern p = [&] {
        try {
          return parse_pattern(body);
        } catch (const ParseError& e) {
          throw ParseError(line, col, e.kind, "in pattern of '" + id + "': " + e.message);
        }
      }();
      if (patterns.count(id))
        throw ParseError(line, col, ParseErrorKind::DuplicateCondition,
                         "duplicate pattern for '" + id + "'");
      patterns.emplace(id, std::make_pair(std::move(p), std::make_pair(line, col)));
    } else {
      throw ParseError(line, col, ParseErrorKind::Syntax, "unknown fact '" + head + "'");
    }
    cur.skip_ws();
    cur.expect('.');
  }

  auto index_of = [&](const std::string& id) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < statements.size(); ++i)
      if (statements[i] == id) return i;
    return std::nullopt;
  };

  std::vector<GrappaEdge> es;
  for (const auto& e : edges) {
    auto si = index_of(e.src), di = index_of(e.dst);
    if (!si || !di)
      throw ParseError(e.line, e.col, ParseErrorKind::UndeclaredStatement,
                       "edge endpoint '" + (!si ? e.src : e.dst) + "' is not a statement");
    es.push_back({*si, *di, e.label});
  }
  std::vector<Pattern> pats;
  for (const auto& s : statements) {
    auto it = patterns.find(s);
    if (it == patterns.end())
      throw ParseError(cur.line, cur.col, ParseErrorKind::Syntax, "missing pattern for '" + s + "'");
    pats.push_back(it->second.first);
  }
  for (const auto& [id, where] : patterns) {
    if (!index_of(id))
      throw ParseError(where.second.first, where.second.second, ParseErrorKind::UndeclaredStatement,
                       "pattern for undeclared statement '" + id + "'");
  }
  try {
    return GrappaInstance(std::move(statements), std::move(es), std::move(pats));
  } catch (const std::invalid_argument& e) {
    throw ParseError(cur.line, cur.col, ParseErrorKind::Syntax, e.what());
  }
}

std::string print_adf(const AdfInstance& d) {
  std::string out;
  for (std::size_t i = 0; i < d.size(); ++i) out += "s(" + d.name(i) + ").\n";
  for (std::size_t i = 0; i < d.size(); ++i)
    out += "ac(" + d.name(i) + "," + to_prefix(d.condition(i)) + ").\n";
  return out;
}

std::string print_grappa(const GrappaInstance& g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) out += "s(" + g.name(i) + ").\n";
  for (const auto& e : g.edges())
    out += "e(" + g.name(e.src) + "," + g.name(e.dst) + "," + e.label.text() + ").\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    out += "pat(" + g.name(i) + ",\"" + to_text(g.pattern(i)) + "\").\n";
  return out;
}

}  // namespace yadf
