#include "yadf/asp.hpp"

#include <algorithm>

namespace yadf {
namespace asp {

const char* asp_rel_text(Rel r) {
  switch (r) {
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
  }
  return "=";
}

static const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::BitAnd: return "&";
    case BinOp::BitOr: return "?";
    case BinOp::Sub: return "-";
    case BinOp::Add: return "+";
    case BinOp::Mul: return "*";
  }
  return "?";
}

std::string render(const Expr& e) {
  if (const auto* n = std::get_if<Expr::Num>(&e.node)) {
    // Negative constants are parenthesized so they embed in products: (-1)*V0.
    if (n->value < 0) return "(" + std::to_string(n->value) + ")";
    return std::to_string(n->value);
  }
  if (const auto* s = std::get_if<Expr::Sym>(&e.node)) return s->name;
  if (const auto* v = std::get_if<Expr::Var>(&e.node)) return v->name;
  const auto& b = std::get<Expr::Bin>(e.node);
  return render(*b.lhs) + op_text(b.op) + render(*b.rhs);
}

std::string render(const Atom& a) {
  if (a.args.empty()) return a.pred;
  std::string out = a.pred + "(";
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ",";
    out += render(*a.args[i]);
  }
  return out + ")";
}

static const char* agg_text(AggKind k) {
  switch (k) {
    case AggKind::Sum: return "#sum";
    case AggKind::Min: return "#min";
    case AggKind::Max: return "#max";
    case AggKind::Count: return "#count";
  }
  return "#sum";
}

std::string render(const Literal& l) {
  if (const auto* p = std::get_if<Literal::Pos>(&l.node)) return render(p->atom);
  if (const auto* n = std::get_if<Literal::Not>(&l.node)) return "not " + render(n->atom);
  if (const auto* c = std::get_if<Literal::Cmp>(&l.node))
    return render(*c->lhs) + asp_rel_text(c->rel) + render(*c->rhs);
  const auto& a = std::get<Literal::AggBind>(l.node);
  std::string out = a.var;
  out += "=";
  out += agg_text(a.kind);
  out += "{";
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    if (i) out += ";";
    const auto& el = a.elements[i];
    for (std::size_t j = 0; j < el.tuple.size(); ++j) {
      if (j) out += ",";
      out += render(*el.tuple[j]);
    }
    if (!el.conds.empty()) {
      out += ":";
      for (std::size_t j = 0; j < el.conds.size(); ++j) {
        if (j) out += ",";
        out += render(*el.conds[j].lhs);
        out += asp_rel_text(el.conds[j].rel);
        out += render(*el.conds[j].rhs);
      }
    }
  }
  out += "}";
  return out;
}

std::string render(const Rule& r) {
  std::string out;
  for (std::size_t i = 0; i < r.head.size(); ++i) {
    if (i) out += "|";
    out += render(r.head[i]);
  }
  if (!r.body.empty() || r.head.empty()) {
    out += r.head.empty() ? ":- " : " :- ";
    for (std::size_t i = 0; i < r.body.size(); ++i) {
      if (i) out += ",";
      out += render(r.body[i]);
    }
  }
  out += ".";
  return out;
}

std::string render(const Program& p) {
  std::string out;
  for (const Rule& r : p.rules) {
    out += render(r);
    out += "\n";
  }
  return out;
}

std::size_t max_arity(const Program& p) {
  std::size_t m = 0;
  auto visit_atom = [&m](const Atom& a) { m = std::max(m, a.args.size()); };
  for (const Rule& r : p.rules) {
    for (const Atom& a : r.head) visit_atom(a);
    for (const Literal& l : r.body) {
      if (const auto* pos = std::get_if<Literal::Pos>(&l.node)) visit_atom(pos->atom);
      if (const auto* neg = std::get_if<Literal::Not>(&l.node)) visit_atom(neg->atom);
    }
  }
  return m;
}

std::size_t count_disjunctive(const Program& p) {
  std::size_t n = 0;
  for (const Rule& r : p.rules) n += r.is_disjunctive();
  return n;
}

}  // namespace asp
}  // namespace yadf
