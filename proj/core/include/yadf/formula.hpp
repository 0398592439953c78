#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace yadf {

enum class Conn : std::uint8_t { Var, Top, Bot, Neg, And, Or, Imp, Xor };

/// Immutable propositional acceptance-condition tree. Copies share nodes.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula top();
  static Formula bot();
  static Formula neg(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula xor_(Formula a, Formula b);

  Conn kind() const { return n_->kind; }
  bool is_leaf() const { return n_->kind == Conn::Var || n_->kind == Conn::Top || n_->kind == Conn::Bot; }
  const std::string& name() const { return n_->var; }
  Formula lhs() const { return Formula(n_->a); }
  Formula rhs() const { return Formula(n_->b); }
  Formula sub() const { return Formula(n_->a); }

  friend bool operator==(const Formula& a, const Formula& b) { return equal(*a.n_, *b.n_); }

 private:
  struct Node {
    Conn kind;
    std::string var;
    std::shared_ptr<const Node> a, b;
  };
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static bool equal(const Node& x, const Node& y);

  std::shared_ptr<const Node> n_;
};

/// Vars occurring in f, deduplicated, in first-occurrence order.
std::vector<std::string> parents_of(const Formula& f);

/// Rewrites imp and xor away; result uses Var/Top/Bot/Neg/And/Or only.
Formula desugar(const Formula& f);

/// Classical evaluation; `val` must cover every var of f.
bool eval2(const Formula& f, const std::function<bool(const std::string&)>& val);

/// Prefix-notation rendering in the instance file syntax (or(neg(b),b), c(v), ...).
std::string to_prefix(const Formula& f);

}  // namespace yadf
