#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "yadf/formula.hpp"

namespace yadf {

/// Statement ids must be legal ASP constants: lowercase letter then
/// alphanumerics/underscores.
bool valid_statement_id(const std::string& s);

/// ADF over named statements; the link set is implicit in the conditions.
class AdfInstance {
 public:
  AdfInstance() = default;
  /// Validates ids, condition totality and that every var names a statement.
  /// Throws std::invalid_argument on violations.
  AdfInstance(std::vector<std::string> statements, std::vector<Formula> conditions);

  std::size_t size() const { return statements_.size(); }
  const std::vector<std::string>& statements() const { return statements_; }
  const std::string& name(std::size_t i) const { return statements_[i]; }
  const Formula& condition(std::size_t i) const { return conditions_[i]; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  /// Parent indices of statement i, in first-occurrence order of the condition.
  const std::vector<std::size_t>& parents(std::size_t i) const { return parents_[i]; }

 private:
  std::vector<std::string> statements_;
  std::vector<Formula> conditions_;
  std::vector<std::vector<std::size_t>> parents_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Label {
  // Either an integer or a symbolic token (+, -, identifiers).
  bool numeric = false;
  long long num = 0;
  std::string sym;

  static Label integer(long long v) { return {true, v, {}}; }
  static Label symbol(std::string s) { return {false, 0, std::move(s)}; }

  std::string text() const { return numeric ? std::to_string(num) : sym; }
  friend bool operator==(const Label&, const Label&) = default;
  friend auto operator<=>(const Label&, const Label&) = default;
};

enum class TermKind : std::uint8_t {
  LabelCount,         // #(l): multiplicity of l among active in-edges
  LabelCountStatic,   // #t(l): number of l-labelled in-edges
  Min, MinStatic,
  Max, MaxStatic,
  Sum, SumStatic,
  CountDistinct, CountDistinctStatic,
};

struct Term {
  TermKind kind;
  std::optional<Label> label;  // set iff kind is LabelCount/LabelCountStatic

  bool active_dependent() const {
    switch (kind) {
      case TermKind::LabelCount:
      case TermKind::Min:
      case TermKind::Max:
      case TermKind::Sum:
      case TermKind::CountDistinct: return true;
      default: return false;
    }
  }
  friend bool operator==(const Term&, const Term&) = default;
};

enum class Rel : std::uint8_t { Lt, Le, Eq, Ne, Ge, Gt };

const char* rel_text(Rel r);  // GRAPPA surface syntax (<, <=, =, !=, >=, >)

/// Acceptance pattern: Boolean combination of linear constraints over terms.
class Pattern {
 public:
  enum class Kind : std::uint8_t { Basic, Neg, And, Or };
  struct Summand {
    long long coeff;
    Term term;
    friend bool operator==(const Summand&, const Summand&) = default;
  };

  static Pattern basic(std::vector<Summand> sum, Rel rel, long long bound);
  static Pattern neg(Pattern p);
  static Pattern conj(Pattern a, Pattern b);
  static Pattern disj(Pattern a, Pattern b);

  Kind kind() const { return n_->kind; }
  const std::vector<Summand>& summands() const { return n_->sum; }
  Rel rel() const { return n_->rel; }
  long long bound() const { return n_->bound; }
  Pattern lhs() const { return Pattern(n_->a); }
  Pattern rhs() const { return Pattern(n_->b); }
  Pattern sub() const { return Pattern(n_->a); }

 private:
  struct Node {
    Kind kind;
    std::vector<Summand> sum;
    Rel rel = Rel::Eq;
    long long bound = 0;
    std::shared_ptr<const Node> a, b;
  };
  explicit Pattern(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

/// Pattern surface syntax (round-trips through the parser).
std::string to_text(const Pattern& p);

struct GrappaEdge {
  std::size_t src, dst;
  Label label;
};

/// Edge-labelled statement graph with one acceptance pattern per statement.
class GrappaInstance {
 public:
  GrappaInstance() = default;
  GrappaInstance(std::vector<std::string> statements, std::vector<GrappaEdge> edges,
                 std::vector<Pattern> patterns);

  std::size_t size() const { return statements_.size(); }
  const std::vector<std::string>& statements() const { return statements_; }
  const std::string& name(std::size_t i) const { return statements_[i]; }
  const std::vector<GrappaEdge>& edges() const { return edges_; }
  const Pattern& pattern(std::size_t i) const { return patterns_[i]; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  /// In-edge sources of statement i, deduplicated, in declaration order.
  const std::vector<std::size_t>& parents(std::size_t i) const { return parents_[i]; }
  /// In-edges of statement i, in declaration order of their sources.
  const std::vector<std::size_t>& in_edges(std::size_t i) const { return in_edges_[i]; }
  /// Label of the edge parent -> s, if present.
  std::optional<Label> edge_label(std::size_t parent, std::size_t s) const;

 private:
  std::vector<std::string> statements_;
  std::vector<GrappaEdge> edges_;
  std::vector<Pattern> patterns_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> in_edges_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace yadf
