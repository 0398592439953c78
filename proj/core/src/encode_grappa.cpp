#include "yadf/encode_grappa.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace yadf {

using asp::AggElement;
using asp::AggKind;
using asp::Atom;
using asp::Expr;
using asp::ExprPtr;
using asp::Literal;
using asp::Program;
using asp::Rule;

namespace {

ExprPtr num(long long v) { return Expr::num(v); }
ExprPtr sym(const std::string& s) { return Expr::sym(s); }
ExprPtr var(const std::string& s) { return Expr::var(s); }

Atom atom(std::string pred, std::vector<ExprPtr> args = {}) {
  return Atom{std::move(pred), std::move(args)};
}

Rule fact(Atom a) { return Rule{{std::move(a)}, {}}; }

std::string z_var(const std::string& parent) { return "Z_" + parent; }
std::string y_var(const std::string& parent) { return "Y_" + parent; }

// Symbolic labels that are not ASP constants (like + and -) are rendered as
// string terms when they have to appear inside an aggregate tuple.
ExprPtr label_term(const Label& l) {
  if (l.numeric) return num(l.num);
  if (valid_statement_id(l.sym)) return sym(l.sym);
  return sym("\"" + l.sym + "\"");
}

// Parents of s whose in-edge carries label l, in parent order.
std::vector<std::size_t> labelled_parents(const GrappaInstance& g, std::size_t s, const Label& l) {
  std::vector<std::size_t> out;
  for (std::size_t p : g.parents(s))
    if (g.edge_label(p, s) == l) out.push_back(p);
  return out;
}

void require_numeric(const GrappaInstance& g, std::size_t s, const char* what) {
  for (std::size_t p : g.parents(s))
    if (!g.edge_label(p, s)->numeric)
      throw std::invalid_argument(std::string(what) + " at '" + g.name(s) +
                                  "' needs numeric labels");
}

long long static_label_fold(const GrappaInstance& g, std::size_t s, TermKind kind) {
  const auto& ps = g.parents(s);
  bool first = true;
  long long acc = 0;
  for (std::size_t p : ps) {
    long long v = g.edge_label(p, s)->num;
    if (kind == TermKind::SumStatic)
      acc += v;
    else if (first)
      acc = v;
    else
      acc = kind == TermKind::MinStatic ? std::min(acc, v) : std::max(acc, v);
    first = false;
  }
  return acc;
}

}  // namespace

TermAtomResult term_atom(const GrappaInstance& g, std::size_t s, const Term& t,
                         const std::string& var_name) {
  TermAtomResult out;
  out.var = var_name;
  const auto& parents = g.parents(s);

  auto constant = [&](long long n) {
    out.literals.push_back(Literal::cmp(var(var_name), Rel::Eq, num(n)));
  };
  auto guarded_elements = [&](bool with_parent, bool label_value) {
    std::vector<AggElement> es;
    for (std::size_t p : parents) {
      AggElement e;
      if (label_value)
        e.tuple.push_back(label_term(*g.edge_label(p, s)));
      else
        e.tuple.push_back(var(z_var(g.name(p))));
      if (with_parent) e.tuple.push_back(sym(g.name(p)));
      if (label_value) e.conds.push_back({var(z_var(g.name(p))), Rel::Eq, num(1)});
      es.push_back(std::move(e));
    }
    return es;
  };

  switch (t.kind) {
    case TermKind::LabelCount: {
      auto ps = labelled_parents(g, s, *t.label);
      if (ps.empty()) {
        constant(0);
        return out;
      }
      std::vector<AggElement> es;
      for (std::size_t p : ps) {
        AggElement e;
        e.tuple.push_back(var(z_var(g.name(p))));
        e.tuple.push_back(sym(g.name(p)));
        es.push_back(std::move(e));
      }
      out.literals.push_back(Literal::agg(var_name, AggKind::Sum, std::move(es)));
      return out;
    }
    case TermKind::LabelCountStatic:
      constant(static_cast<long long>(labelled_parents(g, s, *t.label).size()));
      return out;
    case TermKind::Min:
    case TermKind::Max: {
      if (parents.empty())
        throw std::invalid_argument("min/max at '" + g.name(s) +
                                    "' has no parents; the value table assigns an infinity no "
                                    "solver aggregate reproduces");
      require_numeric(g, s, "min/max");
      out.literals.push_back(Literal::agg(
          var_name, t.kind == TermKind::Min ? AggKind::Min : AggKind::Max,
          guarded_elements(false, true)));
      return out;
    }
    case TermKind::MinStatic:
    case TermKind::MaxStatic: {
      if (parents.empty())
        throw std::invalid_argument("mint/maxt at '" + g.name(s) + "' has no parents");
      require_numeric(g, s, "mint/maxt");
      constant(static_label_fold(g, s, t.kind == TermKind::MinStatic ? TermKind::MinStatic
                                                                     : TermKind::MaxStatic));
      return out;
    }
    case TermKind::Sum: {
      if (parents.empty()) {
        constant(0);
        return out;
      }
      require_numeric(g, s, "sum");
      out.literals.push_back(Literal::agg(var_name, AggKind::Sum, guarded_elements(true, true)));
      return out;
    }
    case TermKind::SumStatic:
      require_numeric(g, s, "sumt");
      constant(static_label_fold(g, s, TermKind::SumStatic));
      return out;
    case TermKind::CountDistinct: {
      if (parents.empty()) {
        constant(0);
        return out;
      }
      out.literals.push_back(Literal::agg(var_name, AggKind::Count, guarded_elements(false, true)));
      return out;
    }
    case TermKind::CountDistinctStatic: {
      std::set<Label> distinct;
      for (std::size_t p : parents) distinct.insert(*g.edge_label(p, s));
      constant(static_cast<long long>(distinct.size()));
      return out;
    }
  }
  throw std::logic_error("term_atom: bad kind");
}

namespace {

struct PatternCompiler {
  const GrappaInstance& g;
  std::size_t s;
  int basic_count = 0;
  int bool_count = 0;
  std::vector<Literal> literals;

  std::string bool_var() {
    int k = bool_count++;
    return k == 0 ? "Vp" : "Vp" + std::to_string(k);
  }

  std::string compile(const Pattern& p) {
    switch (p.kind()) {
      case Pattern::Kind::Basic: return compile_basic(p);
      case Pattern::Kind::Neg: {
        std::string v = bool_var();
        std::string sub = compile(p.sub());
        literals.push_back(
            Literal::cmp(var(v), Rel::Eq, Expr::bin(asp::BinOp::Sub, num(1), var(sub))));
        return v;
      }
      case Pattern::Kind::And:
      case Pattern::Kind::Or: {
        std::string v = bool_var();
        std::string l = compile(p.lhs());
        std::string r = compile(p.rhs());
        literals.push_back(Literal::cmp(
            var(v), Rel::Eq,
            Expr::bin(p.kind() == Pattern::Kind::And ? asp::BinOp::BitAnd : asp::BinOp::BitOr,
                      var(l), var(r))));
        return v;
      }
    }
    throw std::logic_error("pattern_body: bad kind");
  }

  // Basic pattern: summand chain evaluated last-to-first, then the 0/1
  // materialization #sum{1: Vchain R a}.
  std::string compile_basic(const Pattern& p) {
    int j = ++basic_count;
    std::string bp = "Vbp" + std::to_string(j);
    const auto& sum = p.summands();
    std::string next_chain;
    for (std::size_t i = sum.size(); i-- > 0;) {
      std::string chain = bp + "s" + std::to_string(i + 1);
      std::string term_var = chain + "t";
      TermAtomResult ta = term_atom(g, s, sum[i].term, term_var);
      literals.insert(literals.end(), ta.literals.begin(), ta.literals.end());
      ExprPtr weighted = sum[i].coeff == 1
                             ? var(term_var)
                             : Expr::bin(asp::BinOp::Mul, num(sum[i].coeff), var(term_var));
      ExprPtr rhs = i + 1 == sum.size() ? weighted
                                        : Expr::bin(asp::BinOp::Add, weighted, var(next_chain));
      literals.push_back(Literal::cmp(var(chain), Rel::Eq, std::move(rhs)));
      next_chain = chain;
    }
    AggElement e;
    e.tuple.push_back(num(1));
    e.conds.push_back({var(bp + "s1"), p.rel(), num(p.bound())});
    literals.push_back(Literal::agg(bp, AggKind::Sum, {std::move(e)}));
    return bp;
  }
};

}  // namespace

PatternBodyResult pattern_body(const GrappaInstance& g, std::size_t s) {
  PatternCompiler pc{g, s};
  std::string root = pc.compile(g.pattern(s));
  return {std::move(pc.literals), std::move(root)};
}

namespace {

void grappa_sat_rules(Program& p, const GrappaInstance& g, const std::string& asg_pred,
                      const std::string& sat_pred, const std::string& unsat_pred) {
  for (std::size_t s = 0; s < g.size(); ++s) {
    PatternBodyResult body = pattern_body(g, s);
    std::vector<Literal> prefix;
    for (std::size_t r : g.parents(s)) {
      prefix.push_back(Literal::pos(atom(asg_pred, {sym(g.name(r)), var(y_var(g.name(r)))})));
      prefix.push_back(Literal::pos(atom("lt", {var(y_var(g.name(r))), var(z_var(g.name(r)))})));
    }
    for (auto [pred, val] : {std::pair<const std::string*, int>{&sat_pred, 1}, {&unsat_pred, 0}}) {
      Rule r;
      r.head.push_back(atom(*pred, {sym(g.name(s))}));
      r.body = prefix;
      r.body.insert(r.body.end(), body.literals.begin(), body.literals.end());
      r.body.push_back(Literal::cmp(var(body.root), Rel::Eq, num(val)));
      p.rules.push_back(std::move(r));
    }
  }
}

void grappa_guess(Program& p) {
  auto value = [](const char* v) -> ExprPtr { return *v == 'u' ? sym("u") : num(*v - '0'); };
  auto rule = [&](const char* self, const char* n1, const char* n2) {
    Rule r;
    r.head.push_back(atom("asg", {var("S"), value(self)}));
    r.body.push_back(Literal::pos(atom("arg", {var("S")})));
    r.body.push_back(Literal::not_(atom("asg", {var("S"), value(n1)})));
    r.body.push_back(Literal::not_(atom("asg", {var("S"), value(n2)})));
    p.rules.push_back(std::move(r));
  };
  rule("u", "0", "1");
  rule("0", "1", "u");
  rule("1", "u", "0");
}

Rule constraint3(const char* p1, ExprPtr value, const char* p3) {
  Rule r;
  r.body.push_back(Literal::pos(atom(p1, {var("S")})));
  r.body.push_back(Literal::pos(atom("asg", {var("S"), std::move(value)})));
  r.body.push_back(Literal::pos(atom(p3, {var("S")})));
  return r;
}

}  // namespace

asp::Program encode_grappa(const GrappaInstance& g, Semantics sigma) {
  if (sigma != Semantics::Adm && sigma != Semantics::Com && sigma != Semantics::Prf)
    throw std::invalid_argument("encode_grappa: only adm/com/prf have encodings");

  Program p;
  for (const auto& s : g.statements()) p.rules.push_back(fact(atom("arg", {sym(s)})));
  p.rules.push_back(fact(atom("lt", {sym("u"), num(0)})));
  p.rules.push_back(fact(atom("lt", {sym("u"), num(1)})));
  p.rules.push_back(fact(atom("lt", {num(0), num(0)})));
  p.rules.push_back(fact(atom("lt", {num(1), num(1)})));
  grappa_guess(p);
  grappa_sat_rules(p, g, "asg", "sat", "unsat");
  p.rules.push_back(constraint3("arg", num(1), "unsat"));
  p.rules.push_back(constraint3("arg", num(0), "sat"));

  if (sigma == Semantics::Com) {
    for (const char* pred : {"unsat", "sat"}) {
      Rule r;
      r.body.push_back(Literal::pos(atom("arg", {var("S")})));
      r.body.push_back(Literal::pos(atom("asg", {var("S"), sym("u")})));
      r.body.push_back(Literal::not_(atom(pred, {var("S")})));
      p.rules.push_back(std::move(r));
    }
  }

  if (sigma == Semantics::Prf) {
    for (int v : {0, 1}) {
      Rule r;
      r.head.push_back(atom("asg2", {var("S"), num(v)}));
      r.body.push_back(Literal::pos(atom("asg", {var("S"), num(v)})));
      p.rules.push_back(std::move(r));
    }
    Rule guess2;
    guess2.head.push_back(atom("asg2", {var("S"), num(0)}));
    guess2.head.push_back(atom("asg2", {var("S"), num(1)}));
    guess2.head.push_back(atom("asg2", {var("S"), sym("u")}));
    guess2.body.push_back(Literal::pos(atom("asg", {var("S"), sym("u")})));
    p.rules.push_back(std::move(guess2));

    grappa_sat_rules(p, g, "asg2", "sat2", "unsat2");

    Rule identity;
    identity.head.push_back(atom("saturate"));
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::string x = "X" + std::to_string(i);
      identity.body.push_back(Literal::pos(atom("asg", {sym(g.name(i)), var(x)})));
      identity.body.push_back(Literal::pos(atom("asg2", {sym(g.name(i)), var(x)})));
    }
    p.rules.push_back(std::move(identity));
    for (auto [value, pred] : {std::pair<int, const char*>{0, "sat2"}, {1, "unsat2"}}) {
      Rule r;
      r.head.push_back(atom("saturate"));
      r.body.push_back(Literal::pos(atom("arg", {var("S")})));
      r.body.push_back(Literal::pos(atom("asg2", {var("S"), num(value)})));
      r.body.push_back(Literal::pos(atom(pred, {var("S")})));
      p.rules.push_back(std::move(r));
    }
    for (const char* v : {"u", "0", "1"}) {
      Rule r;
      r.head.push_back(atom("asg2", {var("S"), *v == 'u' ? sym("u") : num(*v - '0')}));
      r.body.push_back(Literal::pos(atom("asg", {var("S"), sym("u")})));
      r.body.push_back(Literal::pos(atom("saturate")));
      p.rules.push_back(std::move(r));
    }
    for (const char* pred : {"sat2", "unsat2"}) {
      Rule r;
      r.head.push_back(atom(pred, {var("S")}));
      r.body.push_back(Literal::pos(atom("arg", {var("S")})));
      r.body.push_back(Literal::pos(atom("saturate")));
      p.rules.push_back(std::move(r));
    }
    Rule guard;
    guard.body.push_back(Literal::not_(atom("saturate")));
    p.rules.push_back(std::move(guard));
  }
  return p;
}

}  // namespace yadf
