#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "yadf/instance.hpp"  // Rel

namespace yadf {
namespace asp {

// Terms and arithmetic expressions. The operator set is exactly what the
// encoders emit: & ? - + *.
enum class BinOp : std::uint8_t { BitAnd, BitOr, Sub, Add, Mul };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  struct Num {
    long long value;
  };
  struct Sym {
    std::string name;
  };
  struct Var {
    std::string name;
  };
  struct Bin {
    BinOp op;
    ExprPtr lhs, rhs;
  };
  std::variant<Num, Sym, Var, Bin> node;

  static ExprPtr num(long long v) { return std::make_shared<Expr>(Expr{Num{v}}); }
  static ExprPtr sym(std::string s) { return std::make_shared<Expr>(Expr{Sym{std::move(s)}}); }
  static ExprPtr var(std::string s) { return std::make_shared<Expr>(Expr{Var{std::move(s)}}); }
  static ExprPtr bin(BinOp op, ExprPtr a, ExprPtr b) {
    return std::make_shared<Expr>(Expr{Bin{op, std::move(a), std::move(b)}});
  }
};

struct Atom {
  std::string pred;
  std::vector<ExprPtr> args;
};

enum class AggKind : std::uint8_t { Sum, Min, Max, Count };

struct AggElement {
  std::vector<ExprPtr> tuple;
  // Conditions after ':' — comparison literals in our fragment.
  struct Cond {
    ExprPtr lhs;
    Rel rel;
    ExprPtr rhs;
  };
  std::vector<Cond> conds;
};

struct Literal {
  struct Pos {
    Atom atom;
  };
  struct Not {
    Atom atom;
  };
  struct Cmp {
    ExprPtr lhs;
    Rel rel;
    ExprPtr rhs;
  };
  struct AggBind {
    std::string var;
    AggKind kind;
    std::vector<AggElement> elements;
  };
  std::variant<Pos, Not, Cmp, AggBind> node;

  static Literal pos(Atom a) { return Literal{Pos{std::move(a)}}; }
  static Literal not_(Atom a) { return Literal{Not{std::move(a)}}; }
  static Literal cmp(ExprPtr l, Rel r, ExprPtr rh) {
    return Literal{Cmp{std::move(l), r, std::move(rh)}};
  }
  static Literal agg(std::string var, AggKind k, std::vector<AggElement> es) {
    return Literal{AggBind{std::move(var), k, std::move(es)}};
  }
};

struct Rule {
  std::vector<Atom> head;  // empty = constraint, >1 = disjunctive
  std::vector<Literal> body;

  bool is_fact() const { return head.size() == 1 && body.empty(); }
  bool is_constraint() const { return head.empty(); }
  bool is_disjunctive() const { return head.size() > 1; }
};

struct Program {
  std::vector<Rule> rules;
};

// rel text in the ASP dialect: <= >= != < > =
const char* asp_rel_text(Rel r);

std::string render(const Expr& e);
std::string render(const Atom& a);
std::string render(const Literal& l);
std::string render(const Rule& r);
/// One rule per line, stable under re-rendering, no whitespace inside atoms.
std::string render(const Program& p);

/// Maximum arity over head and body atoms; comparison and aggregate
/// literals do not count.
std::size_t max_arity(const Program& p);

std::size_t count_disjunctive(const Program& p);

}  // namespace asp
}  // namespace yadf
