#include "yadf/instance.hpp"

#include <algorithm>
#include <stdexcept>

namespace yadf {

bool valid_statement_id(const std::string& s) {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

AdfInstance::AdfInstance(std::vector<std::string> statements, std::vector<Formula> conditions)
    : statements_(std::move(statements)), conditions_(std::move(conditions)) {
  if (statements_.size() != conditions_.size())
    throw std::invalid_argument("adf: every statement needs exactly one condition");
  for (std::size_t i = 0; i < statements_.size(); ++i) {
    if (!valid_statement_id(statements_[i]))
      throw std::invalid_argument("adf: bad statement id '" + statements_[i] + "'");
    if (!index_.emplace(statements_[i], i).second)
      throw std::invalid_argument("adf: duplicate statement '" + statements_[i] + "'");
  }
  parents_.resize(statements_.size());
  for (std::size_t i = 0; i < statements_.size(); ++i) {
    for (const std::string& p : parents_of(conditions_[i])) {
      auto it = index_.find(p);
      if (it == index_.end())
        throw std::invalid_argument("adf: condition of '" + statements_[i] +
                                    "' mentions undeclared statement '" + p + "'");
      parents_[i].push_back(it->second);
    }
  }
}

std::optional<std::size_t> AdfInstance::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const char* rel_text(Rel r) {
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

Pattern Pattern::basic(std::vector<Summand> sum, Rel rel, long long bound) {
  if (sum.empty()) throw std::invalid_argument("pattern: basic needs at least one term");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Basic;
  n->sum = std::move(sum);
  n->rel = rel;
  n->bound = bound;
  return Pattern(std::move(n));
}
Pattern Pattern::neg(Pattern p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Neg;
  n->a = std::move(p.n_);
  return Pattern(std::move(n));
}
Pattern Pattern::conj(Pattern a, Pattern b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->a = std::move(a.n_);
  n->b = std::move(b.n_);
  return Pattern(std::move(n));
}
Pattern Pattern::disj(Pattern a, Pattern b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->a = std::move(a.n_);
  n->b = std::move(b.n_);
  return Pattern(std::move(n));
}

static std::string term_text(const Term& t) {
  switch (t.kind) {
    case TermKind::LabelCount: return "#(" + t.label->text() + ")";
    case TermKind::LabelCountStatic: return "#t(" + t.label->text() + ")";
    case TermKind::Min: return "min";
    case TermKind::MinStatic: return "mint";
    case TermKind::Max: return "max";
    case TermKind::MaxStatic: return "maxt";
    case TermKind::Sum: return "sum";
    case TermKind::SumStatic: return "sumt";
    case TermKind::CountDistinct: return "count";
    case TermKind::CountDistinctStatic: return "countt";
  }
  return {};
}

static void pattern_text(const Pattern& p, std::string& out) {
  switch (p.kind()) {
    case Pattern::Kind::Basic: {
      bool first = true;
      for (const auto& [coeff, term] : p.summands()) {
        if (coeff < 0)
          out += "-";
        else if (!first)
          out += "+";
        long long mag = coeff < 0 ? -coeff : coeff;
        if (mag != 1) out += std::to_string(mag) + "*";
        out += term_text(term);
        first = false;
      }
      out += rel_text(p.rel());
      out += std::to_string(p.bound());
      return;
    }
    case Pattern::Kind::Neg:
      out += "!(";
      pattern_text(p.sub(), out);
      out += ")";
      return;
    case Pattern::Kind::And:
      out += "(";
      pattern_text(p.lhs(), out);
      out += ")&&(";
      pattern_text(p.rhs(), out);
      out += ")";
      return;
    case Pattern::Kind::Or:
      out += "(";
      pattern_text(p.lhs(), out);
      out += ")||(";
      pattern_text(p.rhs(), out);
      out += ")";
      return;
  }
}

std::string to_text(const Pattern& p) {
  std::string out;
  pattern_text(p, out);
  return out;
}

GrappaInstance::GrappaInstance(std::vector<std::string> statements, std::vector<GrappaEdge> edges,
                               std::vector<Pattern> patterns)
    : statements_(std::move(statements)), edges_(std::move(edges)), patterns_(std::move(patterns)) {
  if (statements_.size() != patterns_.size())
    throw std::invalid_argument("grappa: every statement needs exactly one pattern");
  for (std::size_t i = 0; i < statements_.size(); ++i) {
    if (!valid_statement_id(statements_[i]))
      throw std::invalid_argument("grappa: bad statement id '" + statements_[i] + "'");
    if (!index_.emplace(statements_[i], i).second)
      throw std::invalid_argument("grappa: duplicate statement '" + statements_[i] + "'");
  }
  parents_.resize(statements_.size());
  in_edges_.resize(statements_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.src >= statements_.size() || e.dst >= statements_.size())
      throw std::invalid_argument("grappa: edge endpoint out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (edges_[j].src == e.src && edges_[j].dst == e.dst)
        throw std::invalid_argument("grappa: duplicate edge " + statements_[e.src] + " -> " +
                                    statements_[e.dst]);
  }
  // Deduplicated parents and in-edges in source declaration order.
  for (std::size_t s = 0; s < statements_.size(); ++s) {
    for (std::size_t p = 0; p < statements_.size(); ++p) {
      for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
        if (edges_[ei].dst == s && edges_[ei].src == p) {
          in_edges_[s].push_back(ei);
          if (parents_[s].empty() || parents_[s].back() != p) parents_[s].push_back(p);
        }
      }
    }
  }
}

std::optional<std::size_t> GrappaInstance::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Label> GrappaInstance::edge_label(std::size_t parent, std::size_t s) const {
  for (std::size_t ei : in_edges_[s])
    if (edges_[ei].src == parent) return edges_[ei].label;
  return std::nullopt;
}

}  // namespace yadf
