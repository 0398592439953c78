#include "yadf/asp_read.hpp"

#include <cctype>
#include <optional>
#include <stdexcept>

namespace yadf {
namespace asp {
namespace {

enum class Tok : std::uint8_t {
  Ident,    // lowercase-led identifier or quoted string
  Variable, // uppercase/underscore-led identifier
  Number,
  Aggregate, // #sum #min #max #count
  LParen, RParen, LBrace, RBrace,
  Comma, Semi, Colon, Dot, Pipe,
  If,  // :-
  Not,
  RelEq, RelNe, RelLt, RelLe, RelGt, RelGe,
  OpAnd, OpOr, OpPlus, OpMinus, OpStar,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  long long num = 0;
  int line = 0, col = 0;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }

  char peek(std::size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }

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

  Token next() {
    for (;;) {
      while (pos < src.size() && std::isspace(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '%') {
        while (pos < src.size() && peek() != '\n') advance();
        continue;
      }
      break;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (pos >= src.size()) {
      t.kind = Tok::End;
      return t;
    }
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) v = v * 10 + (advance() - '0');
      t.kind = Tok::Number;
      t.num = v;
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') id += advance();
      if (id == "not") {
        t.kind = Tok::Not;
        return t;
      }
      t.kind = std::isupper(static_cast<unsigned char>(id[0])) || id[0] == '_' ? Tok::Variable
                                                                               : Tok::Ident;
      t.text = std::move(id);
      return t;
    }
    if (c == '"') {
      advance();
      std::string s = "\"";
      while (pos < src.size() && peek() != '"') s += advance();
      if (pos >= src.size()) fail("unterminated string");
      advance();
      s += '"';
      t.kind = Tok::Ident;
      t.text = std::move(s);
      return t;
    }
    if (c == '#') {
      advance();
      std::string id;
      while (std::isalpha(static_cast<unsigned char>(peek()))) id += advance();
      if (id == "sum" || id == "min" || id == "max" || id == "count") {
        t.kind = Tok::Aggregate;
        t.text = id;
        return t;
      }
      fail("unknown directive #" + id);
    }
    advance();
    switch (c) {
      case '(': t.kind = Tok::LParen; return t;
      case ')': t.kind = Tok::RParen; return t;
      case '{': t.kind = Tok::LBrace; return t;
      case '}': t.kind = Tok::RBrace; return t;
      case ',': t.kind = Tok::Comma; return t;
      case ';': t.kind = Tok::Semi; return t;
      case '.': t.kind = Tok::Dot; return t;
      case '|': t.kind = Tok::Pipe; return t;
      case '&': t.kind = Tok::OpAnd; return t;
      case '?': t.kind = Tok::OpOr; return t;
      case '+': t.kind = Tok::OpPlus; return t;
      case '*': t.kind = Tok::OpStar; return t;
      case '-': t.kind = Tok::OpMinus; return t;
      case '=': t.kind = Tok::RelEq; return t;
      case ':':
        if (peek() == '-') {
          advance();
          t.kind = Tok::If;
        } else {
          t.kind = Tok::Colon;
        }
        return t;
      case '!':
        if (peek() == '=') {
          advance();
          t.kind = Tok::RelNe;
          return t;
        }
        fail("stray '!'");
      case '<':
        if (peek() == '=') {
          advance();
          t.kind = Tok::RelLe;
        } else {
          t.kind = Tok::RelLt;
        }
        return t;
      case '>':
        if (peek() == '=') {
          advance();
          t.kind = Tok::RelGe;
        } else {
          t.kind = Tok::RelGt;
        }
        return t;
      default: fail(std::string("unexpected character '") + c + "'");
    }
  }
};

struct Parser {
  Lexer lex;
  Token tok;

  explicit Parser(const std::string& s) : lex(s) { tok = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error(std::to_string(tok.line) + ":" + std::to_string(tok.col) + ": " + msg);
  }

  void bump() { tok = lex.next(); }

  bool at(Tok k) const { return tok.kind == k; }

  void expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    bump();
  }

  std::optional<Rel> rel_kind() const {
    switch (tok.kind) {
      case Tok::RelEq: return Rel::Eq;
      case Tok::RelNe: return Rel::Ne;
      case Tok::RelLt: return Rel::Lt;
      case Tok::RelLe: return Rel::Le;
      case Tok::RelGt: return Rel::Gt;
      case Tok::RelGe: return Rel::Ge;
      default: return std::nullopt;
    }
  }

  ExprPtr primary() {
    if (at(Tok::Number)) {
      long long v = tok.num;
      bump();
      return Expr::num(v);
    }
    if (at(Tok::OpMinus)) {  // negative literal constant, e.g. (-1)
      bump();
      if (!at(Tok::Number)) fail("expected number after '-'");
      long long v = tok.num;
      bump();
      return Expr::num(-v);
    }
    if (at(Tok::Ident)) {
      std::string s = tok.text;
      bump();
      return Expr::sym(std::move(s));
    }
    if (at(Tok::Variable)) {
      std::string s = tok.text;
      bump();
      return Expr::var(std::move(s));
    }
    if (at(Tok::LParen)) {
      bump();
      ExprPtr e = expr();
      expect(Tok::RParen, "')'");
      return e;
    }
    fail("expected term");
  }

  ExprPtr product() {
    ExprPtr e = primary();
    while (at(Tok::OpStar)) {
      bump();
      e = Expr::bin(BinOp::Mul, std::move(e), primary());
    }
    return e;
  }

  ExprPtr additive() {
    ExprPtr e = product();
    for (;;) {
      if (at(Tok::OpPlus)) {
        bump();
        e = Expr::bin(BinOp::Add, std::move(e), product());
      } else if (at(Tok::OpMinus)) {
        bump();
        e = Expr::bin(BinOp::Sub, std::move(e), product());
      } else {
        return e;
      }
    }
  }

  ExprPtr expr() {
    ExprPtr e = additive();
    for (;;) {
      if (at(Tok::OpAnd)) {
        bump();
        e = Expr::bin(BinOp::BitAnd, std::move(e), additive());
      } else if (at(Tok::OpOr)) {
        bump();
        e = Expr::bin(BinOp::BitOr, std::move(e), additive());
      } else {
        return e;
      }
    }
  }

  Atom atom() {
    if (!at(Tok::Ident)) fail("expected predicate");
    Atom a;
    a.pred = tok.text;
    bump();
    if (at(Tok::LParen)) {
      bump();
      for (;;) {
        a.args.push_back(expr());
        if (at(Tok::Comma)) {
          bump();
          continue;
        }
        break;
      }
      expect(Tok::RParen, "')'");
    }
    return a;
  }

  AggElement element() {
    AggElement e;
    for (;;) {
      e.tuple.push_back(expr());
      if (at(Tok::Comma)) {
        bump();
        continue;
      }
      break;
    }
    if (at(Tok::Colon)) {
      bump();
      for (;;) {
        ExprPtr lhs = expr();
        auto r = rel_kind();
        if (!r) fail("expected relation in aggregate condition");
        bump();
        ExprPtr rhs = expr();
        e.conds.push_back({std::move(lhs), *r, std::move(rhs)});
        if (at(Tok::Comma)) {
          bump();
          continue;
        }
        break;
      }
    }
    return e;
  }

  Literal body_literal() {
    if (at(Tok::Not)) {
      bump();
      return Literal::not_(atom());
    }
    // Variable '=' aggregate is an assignment aggregate; anything else
    // starting with a term is a comparison; a lone atom is positive.
    if (at(Tok::Variable)) {
      Token save = tok;
      bump();
      if (at(Tok::RelEq)) {
        // peek one more: aggregate or expression
        bump();
        if (at(Tok::Aggregate)) {
          std::string kind = tok.text;
          bump();
          expect(Tok::LBrace, "'{'");
          std::vector<AggElement> es;
          if (!at(Tok::RBrace)) {
            for (;;) {
              es.push_back(element());
              if (at(Tok::Semi)) {
                bump();
                continue;
              }
              break;
            }
          }
          expect(Tok::RBrace, "'}'");
          AggKind k = kind == "sum"   ? AggKind::Sum
                      : kind == "min" ? AggKind::Min
                      : kind == "max" ? AggKind::Max
                                      : AggKind::Count;
          return Literal::agg(save.text, k, std::move(es));
        }
        ExprPtr rhs = expr();
        return Literal::cmp(Expr::var(save.text), Rel::Eq, std::move(rhs));
      }
      // Comparison with a compound left side, e.g. X != Y or X < 3.
      ExprPtr lhs = Expr::var(save.text);
      // Continue parsing the rest of an expression that started with the var.
      lhs = continue_expr(std::move(lhs));
      auto r = rel_kind();
      if (!r) fail("expected relation after expression");
      bump();
      ExprPtr rhs = expr();
      return Literal::cmp(std::move(lhs), *r, std::move(rhs));
    }
    if (at(Tok::Ident)) {
      // Could be an atom or a comparison whose lhs starts with a symbol/number.
      Atom a = atom();
      if (auto r = rel_kind()) {
        if (!a.args.empty()) fail("comparison on compound term");
        bump();
        ExprPtr rhs = expr();
        return Literal::cmp(Expr::sym(a.pred), *r, std::move(rhs));
      }
      return Literal::pos(std::move(a));
    }
    // Number- or paren-led comparison.
    ExprPtr lhs = expr();
    auto r = rel_kind();
    if (!r) fail("expected relation");
    bump();
    ExprPtr rhs = expr();
    return Literal::cmp(std::move(lhs), *r, std::move(rhs));
  }

  // Finishes an expression whose first primary was already consumed.
  ExprPtr continue_expr(ExprPtr first) {
    ExprPtr e = std::move(first);
    while (at(Tok::OpStar)) {
      bump();
      e = Expr::bin(BinOp::Mul, std::move(e), primary());
    }
    for (;;) {
      if (at(Tok::OpPlus)) {
        bump();
        e = Expr::bin(BinOp::Add, std::move(e), product());
      } else if (at(Tok::OpMinus)) {
        bump();
        e = Expr::bin(BinOp::Sub, std::move(e), product());
      } else {
        break;
      }
    }
    for (;;) {
      if (at(Tok::OpAnd)) {
        bump();
        e = Expr::bin(BinOp::BitAnd, std::move(e), additive());
      } else if (at(Tok::OpOr)) {
        bump();
        e = Expr::bin(BinOp::BitOr, std::move(e), additive());
      } else {
        break;
      }
    }
    return e;
  }

  Rule rule() {
    Rule r;
    if (!at(Tok::If)) {
      for (;;) {
        r.head.push_back(atom());
        if (at(Tok::Pipe)) {
          bump();
          continue;
        }
        break;
      }
    }
    if (at(Tok::If)) {
      bump();
      if (!at(Tok::Dot)) {
        for (;;) {
          r.body.push_back(body_literal());
          if (at(Tok::Comma)) {
            bump();
            continue;
          }
          break;
        }
      }
    }
    expect(Tok::Dot, "'.'");
    return r;
  }
};

}  // namespace

Program parse_program(const std::string& text) {
  Parser p(text);
  Program prog;
  while (!p.at(Tok::End)) prog.rules.push_back(p.rule());
  return prog;
}

}  // namespace asp
}  // namespace yadf
