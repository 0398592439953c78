#include "yadf/formula.hpp"

#include <stdexcept>

namespace yadf {

Formula Formula::var(std::string name) {
  return Formula(std::make_shared<Node>(Node{Conn::Var, std::move(name), nullptr, nullptr}));
}
Formula Formula::top() { return Formula(std::make_shared<Node>(Node{Conn::Top, {}, nullptr, nullptr})); }
Formula Formula::bot() { return Formula(std::make_shared<Node>(Node{Conn::Bot, {}, nullptr, nullptr})); }
Formula Formula::neg(Formula f) {
  return Formula(std::make_shared<Node>(Node{Conn::Neg, {}, std::move(f.n_), nullptr}));
}
Formula Formula::conj(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Conn::And, {}, std::move(a.n_), std::move(b.n_)}));
}
Formula Formula::disj(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Conn::Or, {}, std::move(a.n_), std::move(b.n_)}));
}
Formula Formula::imp(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Conn::Imp, {}, std::move(a.n_), std::move(b.n_)}));
}
Formula Formula::xor_(Formula a, Formula b) {
  return Formula(std::make_shared<Node>(Node{Conn::Xor, {}, std::move(a.n_), std::move(b.n_)}));
}

bool Formula::equal(const Node& x, const Node& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Conn::Var: return x.var == y.var;
    case Conn::Top:
    case Conn::Bot: return true;
    case Conn::Neg: return equal(*x.a, *y.a);
    default: return equal(*x.a, *y.a) && equal(*x.b, *y.b);
  }
}

static void collect_vars(const Formula& f, std::vector<std::string>& out) {
  switch (f.kind()) {
    case Conn::Var:
      for (const auto& s : out)
        if (s == f.name()) return;
      out.push_back(f.name());
      return;
    case Conn::Top:
    case Conn::Bot: return;
    case Conn::Neg: collect_vars(f.sub(), out); return;
    default:
      collect_vars(f.lhs(), out);
      collect_vars(f.rhs(), out);
  }
}

std::vector<std::string> parents_of(const Formula& f) {
  std::vector<std::string> out;
  collect_vars(f, out);
  return out;
}

Formula desugar(const Formula& f) {
  switch (f.kind()) {
    case Conn::Var:
    case Conn::Top:
    case Conn::Bot: return f;
    case Conn::Neg: return Formula::neg(desugar(f.sub()));
    case Conn::And: return Formula::conj(desugar(f.lhs()), desugar(f.rhs()));
    case Conn::Or: return Formula::disj(desugar(f.lhs()), desugar(f.rhs()));
    case Conn::Imp: return Formula::disj(Formula::neg(desugar(f.lhs())), desugar(f.rhs()));
    case Conn::Xor: {
      Formula a = desugar(f.lhs()), b = desugar(f.rhs());
      return Formula::disj(Formula::conj(a, Formula::neg(b)), Formula::conj(Formula::neg(a), b));
    }
  }
  throw std::logic_error("desugar: bad connective");
}

bool eval2(const Formula& f, const std::function<bool(const std::string&)>& val) {
  switch (f.kind()) {
    case Conn::Var: return val(f.name());
    case Conn::Top: return true;
    case Conn::Bot: return false;
    case Conn::Neg: return !eval2(f.sub(), val);
    case Conn::And: return eval2(f.lhs(), val) && eval2(f.rhs(), val);
    case Conn::Or: return eval2(f.lhs(), val) || eval2(f.rhs(), val);
    case Conn::Imp: return !eval2(f.lhs(), val) || eval2(f.rhs(), val);
    case Conn::Xor: return eval2(f.lhs(), val) != eval2(f.rhs(), val);
  }
  throw std::logic_error("eval2: bad connective");
}

std::string to_prefix(const Formula& f) {
  switch (f.kind()) {
    case Conn::Var: return f.name();
    case Conn::Top: return "c(v)";
    case Conn::Bot: return "c(f)";
    case Conn::Neg: return "neg(" + to_prefix(f.sub()) + ")";
    case Conn::And: return "and(" + to_prefix(f.lhs()) + "," + to_prefix(f.rhs()) + ")";
    case Conn::Or: return "or(" + to_prefix(f.lhs()) + "," + to_prefix(f.rhs()) + ")";
    case Conn::Imp: return "imp(" + to_prefix(f.lhs()) + "," + to_prefix(f.rhs()) + ")";
    case Conn::Xor: return "xor(" + to_prefix(f.lhs()) + "," + to_prefix(f.rhs()) + ")";
  }
  throw std::logic_error("to_prefix: bad connective");
}

}  // namespace yadf
