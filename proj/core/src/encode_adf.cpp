#include "yadf/encode_adf.hpp"

#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <tuple>
#include <utility>

namespace yadf {

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

void append(Program& p, Rule r) { p.rules.push_back(std::move(r)); }

void pi_arg(Program& p, const AdfInstance& d) {
  for (const auto& s : d.statements()) append(p, fact(atom("arg", {sym(s)})));
}

void pi_lt(Program& p, const std::string& pred) {
  append(p, fact(atom(pred, {sym("u"), num(0)})));
  append(p, fact(atom(pred, {sym("u"), num(1)})));
  append(p, fact(atom(pred, {num(0), num(0)})));
  append(p, fact(atom(pred, {num(1), num(1)})));
}

// Three-valued guess: one asg value per statement via mutual default negation.
void pi_guess(Program& p) {
  auto rule = [&](const char* self, const char* n1, const char* n2) {
    auto value = [](const char* v) -> ExprPtr {
      return *v == 'u' ? sym("u") : num(*v - '0');
    };
    Rule r;
    r.head.push_back(atom("asg", {var("S"), value(self)}));
    r.body.push_back(Literal::pos(atom("arg", {var("S")})));
    r.body.push_back(Literal::not_(atom("asg", {var("S"), value(n1)})));
    r.body.push_back(Literal::not_(atom("asg", {var("S"), value(n2)})));
    append(p, std::move(r));
  };
  rule("u", "0", "1");
  rule("0", "1", "u");
  rule("1", "u", "0");
}

}  // namespace

OmegaResult omega(const Formula& f, const std::vector<std::string>& parent_order,
                  const std::vector<std::string>& leaf_vars, VarCounter& nodes) {
  OmegaResult out;
  switch (f.kind()) {
    case Conn::Var: {
      for (std::size_t i = 0; i < parent_order.size(); ++i) {
        if (parent_order[i] == f.name()) {
          out.root = leaf_vars[i];
          return out;
        }
      }
      throw std::logic_error("omega: var outside parent order");
    }
    case Conn::Top:
    case Conn::Bot: {
      out.root = nodes.fresh();
      out.literals.push_back(
          Literal::cmp(var(out.root), Rel::Eq, num(f.kind() == Conn::Top ? 1 : 0)));
      return out;
    }
    case Conn::Neg: {
      OmegaResult sub = omega(f.sub(), parent_order, leaf_vars, nodes);
      out.literals = std::move(sub.literals);
      out.root = nodes.fresh();
      out.literals.push_back(
          Literal::cmp(var(out.root), Rel::Eq, Expr::bin(asp::BinOp::Sub, num(1), var(sub.root))));
      return out;
    }
    case Conn::And:
    case Conn::Or: {
      OmegaResult l = omega(f.lhs(), parent_order, leaf_vars, nodes);
      OmegaResult r = omega(f.rhs(), parent_order, leaf_vars, nodes);
      out.literals = std::move(l.literals);
      out.literals.insert(out.literals.end(), r.literals.begin(), r.literals.end());
      out.root = nodes.fresh();
      out.literals.push_back(Literal::cmp(
          var(out.root), Rel::Eq,
          Expr::bin(f.kind() == Conn::And ? asp::BinOp::BitAnd : asp::BinOp::BitOr, var(l.root),
                    var(r.root))));
      return out;
    }
    default: throw std::invalid_argument("omega: formula must be desugared");
  }
}

OmegaResult omega_body(const AdfInstance& d, std::size_t s, const std::string& asg_pred) {
  OmegaResult out;
  const auto& parents = d.parents(s);
  std::vector<std::string> parent_names;
  std::vector<std::string> leaf_vars;
  for (std::size_t j = 0; j < parents.size(); ++j) {
    std::string y = "Y" + std::to_string(j);
    std::string v = "V" + std::to_string(j);
    parent_names.push_back(d.name(parents[j]));
    leaf_vars.push_back(v);
    out.literals.push_back(Literal::pos(atom(asg_pred, {sym(d.name(parents[j])), var(y)})));
    out.literals.push_back(Literal::pos(atom("leq", {var(y), var(v)})));
  }
  VarCounter nodes("V", static_cast<int>(parents.size()));
  OmegaResult om = omega(desugar(d.condition(s)), parent_names, leaf_vars, nodes);
  out.literals.insert(out.literals.end(), om.literals.begin(), om.literals.end());
  out.root = om.root;
  return out;
}

namespace {

// sat/inv rule pairs; all sat heads first, then all inv heads.
void pi_sat(Program& p, const AdfInstance& d, const std::string& asg_pred,
            const std::string& sat_pred, const std::string& inv_pred) {
  auto rules = [&](const std::string& head_pred, int root_value) {
    for (std::size_t s = 0; s < d.size(); ++s) {
      OmegaResult body = omega_body(d, s, asg_pred);
      Rule r;
      r.head.push_back(atom(head_pred, {sym(d.name(s))}));
      r.body = std::move(body.literals);
      r.body.push_back(Literal::cmp(var(body.root), Rel::Eq, num(root_value)));
      append(p, std::move(r));
    }
  };
  rules(sat_pred, 1);
  rules(inv_pred, 0);
}

void adm_constraints(Program& p) {
  Rule r1;
  r1.body.push_back(Literal::pos(atom("arg", {var("S")})));
  r1.body.push_back(Literal::pos(atom("asg", {var("S"), num(1)})));
  r1.body.push_back(Literal::pos(atom("inv", {var("S")})));
  append(p, std::move(r1));
  Rule r2;
  r2.body.push_back(Literal::pos(atom("arg", {var("S")})));
  r2.body.push_back(Literal::pos(atom("asg", {var("S"), num(0)})));
  r2.body.push_back(Literal::pos(atom("sat", {var("S")})));
  append(p, std::move(r2));
}

}  // namespace

asp::Program encode_adm(const AdfInstance& d) {
  Program p;
  pi_arg(p, d);
  pi_lt(p, "leq");
  pi_guess(p);
  pi_sat(p, d, "asg", "sat", "inv");
  adm_constraints(p);
  return p;
}

asp::Program encode_com(const AdfInstance& d) {
  Program p = encode_adm(d);
  for (const char* pred : {"inv", "sat"}) {
    Rule r;
    r.body.push_back(Literal::pos(atom("arg", {var("S")})));
    r.body.push_back(Literal::pos(atom("asg", {var("S"), sym("u")})));
    r.body.push_back(Literal::not_(atom(pred, {var("S")})));
    append(p, std::move(r));
  }
  return p;
}

asp::Program encode_prf(const AdfInstance& d) {
  Program p = encode_adm(d);

  // Second guess extends the first w.r.t. the information order.
  for (int v : {0, 1}) {
    Rule r;
    r.head.push_back(atom("asg2", {var("S"), num(v)}));
    r.body.push_back(Literal::pos(atom("asg", {var("S"), num(v)})));
    append(p, std::move(r));
  }
  Rule guess2;
  guess2.head.push_back(atom("asg2", {var("S"), num(0)}));
  guess2.head.push_back(atom("asg2", {var("S"), num(1)}));
  guess2.head.push_back(atom("asg2", {var("S"), sym("u")}));
  guess2.body.push_back(Literal::pos(atom("asg", {var("S"), sym("u")})));
  append(p, std::move(guess2));

  pi_sat(p, d, "asg2", "sat2", "inv2");

  // saturate on identity of the two guesses, statements in declaration order.
  Rule identity;
  identity.head.push_back(atom("saturate"));
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::string x = "X" + std::to_string(i);
    identity.body.push_back(Literal::pos(atom("asg", {sym(d.name(i)), var(x)})));
    identity.body.push_back(Literal::pos(atom("asg2", {sym(d.name(i)), var(x)})));
  }
  append(p, std::move(identity));
  for (auto [value, pred] : {std::pair<int, const char*>{0, "sat2"}, {1, "inv2"}}) {
    Rule r;
    r.head.push_back(atom("saturate"));
    r.body.push_back(Literal::pos(atom("arg", {var("S")})));
    r.body.push_back(Literal::pos(atom("asg2", {var("S"), num(value)})));
    r.body.push_back(Literal::pos(atom(pred, {var("S")})));
    append(p, std::move(r));
  }

  for (const char* v : {"u", "0", "1"}) {
    Rule r;
    r.head.push_back(atom("asg2", {var("S"), *v == 'u' ? sym("u") : num(*v - '0')}));
    r.body.push_back(Literal::pos(atom("asg", {var("S"), sym("u")})));
    r.body.push_back(Literal::pos(atom("saturate")));
    append(p, std::move(r));
  }
  for (const char* pred : {"sat2", "inv2"}) {
    Rule r;
    r.head.push_back(atom(pred, {var("S")}));
    r.body.push_back(Literal::pos(atom("arg", {var("S")})));
    r.body.push_back(Literal::pos(atom("saturate")));
    append(p, std::move(r));
  }

  Rule guard;
  guard.body.push_back(Literal::not_(atom("saturate")));
  append(p, std::move(guard));
  return p;
}

namespace {

// Candidate counter-model generation shared by grd and stb: asg/lne atoms per
// statement plus the or-chain requiring at least one changed statement.
// Returns literals; appends the or-chain root comparison.
std::vector<Literal> lambda_block(const AdfInstance& d, VarCounter& evars) {
  std::vector<Literal> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::string xi = "X" + std::to_string(i);
    out.push_back(Literal::pos(atom("asg", {sym(d.name(i)), var(xi)})));
    out.push_back(Literal::pos(
        atom("lne", {var("E" + std::to_string(i)), var("Y" + std::to_string(i)), var(xi)})));
  }
  // Right-associated disjunction over all statements in declaration order.
  Formula disj = Formula::var(d.name(d.size() - 1));
  for (std::size_t i = d.size() - 1; i-- > 0;) disj = Formula::disj(Formula::var(d.name(i)), disj);
  std::vector<std::string> parent_names;
  std::vector<std::string> leaf_vars;
  for (std::size_t i = 0; i < d.size(); ++i) {
    parent_names.push_back(d.name(i));
    leaf_vars.push_back("E" + std::to_string(i));
  }
  OmegaResult om = omega(disj, parent_names, leaf_vars, evars);
  out.insert(out.end(), om.literals.begin(), om.literals.end());
  out.push_back(Literal::cmp(var(om.root), Rel::Eq, num(1)));
  return out;
}

// One condition-evaluation copy inside a kappa block. `completion_atom`
// produces the body atom binding a fresh completion value for parent slot j.
OmegaResult kappa_copy(const AdfInstance& d, std::size_t s, VarCounter& vc,
                       const std::function<Literal(std::size_t, const std::string&)>& completion_atom,
                       std::vector<Literal>& out) {
  const auto& parents = d.parents(s);
  std::vector<std::string> parent_names;
  std::vector<std::string> leaf_vars;
  for (std::size_t j = 0; j < parents.size(); ++j) {
    std::string v = vc.fresh();
    parent_names.push_back(d.name(parents[j]));
    leaf_vars.push_back(v);
    out.push_back(completion_atom(parents[j], v));
  }
  OmegaResult om = omega(desugar(d.condition(s)), parent_names, leaf_vars, vc);
  out.insert(out.end(), om.literals.begin(), om.literals.end());
  return om;
}

void ca_constraints(Program& p) {
  auto constraint = [&](ExprPtr value, const char* pred) {
    Rule r;
    r.body.push_back(Literal::pos(atom("arg", {var("S")})));
    r.body.push_back(Literal::pos(atom("asg", {var("S"), std::move(value)})));
    r.body.push_back(Literal::not_(atom(pred, {var("S")})));
    append(p, std::move(r));
  };
  constraint(num(1), "sat");
  constraint(num(0), "inv");
  constraint(sym("u"), "inv");
  constraint(sym("u"), "sat");
}

}  // namespace

asp::Program encode_grd(const AdfInstance& d) {
  Program p;
  pi_arg(p, d);
  pi_lt(p, "leq");
  // Counter-model truth values: lne(Changed, CounterValue, GuessValue).
  for (auto [e, y, x] : std::initializer_list<std::tuple<int, const char*, const char*>>{
           {1, "u", "1"}, {1, "u", "0"}, {0, "1", "1"}, {0, "0", "0"}, {0, "u", "u"}}) {
    auto tv = [](const char* v) -> ExprPtr { return *v == 'u' ? sym("u") : num(*v - '0'); };
    append(p, fact(atom("lne", {num(e), tv(y), tv(x)})));
  }
  append(p, fact(atom("prop", {num(1), num(1), num(1)})));
  append(p, fact(atom("prop", {num(0), num(0), num(0)})));
  append(p, fact(atom("prop", {sym("u"), num(0), num(1)})));
  pi_guess(p);
  pi_sat(p, d, "asg", "sat", "inv");
  ca_constraints(p);

  if (d.size() > 0) {
    Rule cm;
    cm.head.push_back(atom("cm"));
    VarCounter evars("E", static_cast<int>(d.size()));
    cm.body = lambda_block(d, evars);
    VarCounter vc("V", 1);
    for (std::size_t s = 0; s < d.size(); ++s) {
      auto completion = [&](std::size_t parent, const std::string& v) {
        return Literal::pos(atom("leq", {var("Y" + std::to_string(parent)), var(v)}));
      };
      OmegaResult c1 = kappa_copy(d, s, vc, completion, cm.body);
      OmegaResult c2 = kappa_copy(d, s, vc, completion, cm.body);
      cm.body.push_back(Literal::pos(
          atom("prop", {var("Y" + std::to_string(s)), var(c1.root), var(c2.root)})));
    }
    append(p, std::move(cm));
  }
  Rule guard;
  guard.body.push_back(Literal::pos(atom("cm")));
  append(p, std::move(guard));
  return p;
}

asp::Program encode_stb(const AdfInstance& d) {
  Program p;
  pi_arg(p, d);
  for (const char* v : {"u", "0", "1"})
    append(p, fact(atom("val", {*v == 'u' ? sym("u") : num(*v - '0')})));

  // lt2(GuessValue, CounterValue, CompletionValue): completions of a
  // counter-model inside the reduct; statements guessed 0 stay 0.
  auto tv = [](const char* v) -> ExprPtr { return *v == 'u' ? sym("u") : num(*v - '0'); };
  for (auto [x, y, z] : std::initializer_list<std::tuple<const char*, const char*, const char*>>{
           {"1", "u", "1"}, {"1", "u", "0"}, {"1", "0", "0"}, {"1", "1", "1"}}) {
    append(p, fact(atom("lt2", {tv(x), tv(y), tv(z)})));
  }
  {
    Rule r;
    r.head.push_back(atom("lt2", {num(0), var("X"), num(0)}));
    r.body.push_back(Literal::pos(atom("val", {var("X")})));
    append(p, std::move(r));
  }
  append(p, fact(atom("lne", {num(1), sym("u"), num(1)})));
  append(p, fact(atom("lne", {num(0), sym("u"), num(0)})));
  {
    Rule r;
    r.head.push_back(atom("lne", {num(0), var("X"), var("X")}));
    r.body.push_back(Literal::pos(atom("val", {var("X")})));
    append(p, std::move(r));
  }
  append(p, fact(atom("prop", {num(1), num(1), num(1), num(1)})));
  append(p, fact(atom("prop", {num(1), num(0), num(0), num(0)})));
  append(p, fact(atom("prop", {num(1), sym("u"), num(1), num(0)})));
  append(p, fact(atom("prop", {num(1), sym("u"), num(0), num(1)})));
  {
    Rule r;
    r.head.push_back(atom("prop", {num(0), var("X1"), var("X2"), var("X3")}));
    r.body.push_back(Literal::pos(atom("val", {var("X1")})));
    r.body.push_back(Literal::pos(atom("val", {var("X2")})));
    r.body.push_back(Literal::pos(atom("val", {var("X3")})));
    r.body.push_back(Literal::not_(atom("prop", {num(1), var("X1"), var("X2"), var("X3")})));
    append(p, std::move(r));
  }

  // Two-valued guess.
  for (auto [self, other] : std::initializer_list<std::pair<int, int>>{{1, 0}, {0, 1}}) {
    Rule r;
    r.head.push_back(atom("asg", {var("S"), num(self)}));
    r.body.push_back(Literal::pos(atom("arg", {var("S")})));
    r.body.push_back(Literal::not_(atom("asg", {var("S"), num(other)})));
    append(p, std::move(r));
  }

  // Model check: one constraint per statement over its own condition.
  for (std::size_t s = 0; s < d.size(); ++s) {
    const auto& parents = d.parents(s);
    std::vector<std::string> parent_names;
    std::vector<std::string> leaf_vars;
    for (std::size_t j = 0; j < parents.size(); ++j) {
      parent_names.push_back(d.name(parents[j]));
      leaf_vars.push_back("V" + std::to_string(j));
    }
    bool self_parent = false;
    std::string self_var;
    for (std::size_t j = 0; j < parents.size(); ++j)
      if (parents[j] == s) {
        self_parent = true;
        self_var = leaf_vars[j];
      }
    VarCounter nodes("V", static_cast<int>(parents.size()));
    if (!self_parent) self_var = nodes.fresh();
    Rule r;
    r.body.push_back(Literal::pos(atom("asg", {sym(d.name(s)), var(self_var)})));
    for (std::size_t j = 0; j < parents.size(); ++j) {
      if (parents[j] == s) continue;
      r.body.push_back(Literal::pos(atom("asg", {sym(d.name(parents[j])), var(leaf_vars[j])})));
    }
    OmegaResult om = omega(desugar(d.condition(s)), parent_names, leaf_vars, nodes);
    r.body.insert(r.body.end(), om.literals.begin(), om.literals.end());
    r.body.push_back(Literal::cmp(var(self_var), Rel::Ne, var(om.root)));
    append(p, std::move(r));
  }

  if (d.size() > 0) {
    Rule cm;
    cm.head.push_back(atom("cm"));
    VarCounter evars("E", static_cast<int>(d.size()));
    cm.body = lambda_block(d, evars);
    VarCounter vc("V", 1);
    for (std::size_t s = 0; s < d.size(); ++s) {
      auto completion = [&](std::size_t parent, const std::string& v) {
        return Literal::pos(atom("lt2", {var("X" + std::to_string(parent)),
                                         var("Y" + std::to_string(parent)), var(v)}));
      };
      OmegaResult c1 = kappa_copy(d, s, vc, completion, cm.body);
      OmegaResult c2 = kappa_copy(d, s, vc, completion, cm.body);
      std::string ps = "P" + std::to_string(s);
      std::string cxs = "CX" + std::to_string(s);
      std::string ors = "OR" + std::to_string(vc.next_index());
      vc.fresh();
      cm.body.push_back(Literal::pos(atom(
          "prop", {var(ps), var("Y" + std::to_string(s)), var(c1.root), var(c2.root)})));
      // Properties only need to hold where the guess is true.
      cm.body.push_back(Literal::cmp(var(cxs), Rel::Eq,
                                     Expr::bin(asp::BinOp::Sub, num(1),
                                               var("X" + std::to_string(s)))));
      cm.body.push_back(Literal::cmp(var(ors), Rel::Eq,
                                     Expr::bin(asp::BinOp::BitOr, var(ps), var(cxs))));
      cm.body.push_back(Literal::cmp(var(ors), Rel::Eq, num(1)));
    }
    append(p, std::move(cm));
  }
  Rule guard;
  guard.body.push_back(Literal::pos(atom("cm")));
  append(p, std::move(guard));
  return p;
}

asp::Program encode_adf(const AdfInstance& d, Semantics sigma) {
  switch (sigma) {
    case Semantics::Adm: return encode_adm(d);
    case Semantics::Com: return encode_com(d);
    case Semantics::Prf: return encode_prf(d);
    case Semantics::Grd: return encode_grd(d);
    case Semantics::Stb: return encode_stb(d);
    default: throw std::invalid_argument("encode_adf: no encoding for this semantics");
  }
}

asp::Program attach_query(asp::Program p, QueryMode mode, const std::string& statement,
                          const std::vector<std::string>& statements) {
  bool known = false;
  for (const auto& s : statements) known |= s == statement;
  if (!known) throw std::invalid_argument("query: unknown statement '" + statement + "'");
  Rule r;
  if (mode == QueryMode::Credulous)
    r.body.push_back(Literal::not_(atom("asg", {sym(statement), num(1)})));
  else
    r.body.push_back(Literal::pos(atom("asg", {sym(statement), num(1)})));
  p.rules.push_back(std::move(r));
  return p;
}

}  // namespace yadf
