#include "yadf/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace yadf {

const char* semantics_name(Semantics s) {
  switch (s) {
    case Semantics::Adm: return "adm";
    case Semantics::Com: return "com";
    case Semantics::Prf: return "prf";
    case Semantics::Grd: return "grd";
    case Semantics::Mod: return "mod";
    case Semantics::Stb: return "stb";
  }
  return "?";
}

namespace {

// Condition evaluation over a parent bitmask, compiled once per statement.
struct CompiledCondition {
  enum class Op : std::uint8_t { PushVar, PushTrue, PushFalse, Neg, And, Or };
  struct Step {
    Op op;
    std::size_t slot = 0;  // parent slot for PushVar
  };
  std::vector<Step> steps;

  static CompiledCondition compile(const Formula& f, const AdfInstance& d, std::size_t s) {
    CompiledCondition cc;
    cc.build(desugar(f), d, s);
    return cc;
  }

  bool eval(std::uint64_t parent_bits) const {
    bool stack[64];
    std::size_t top = 0;
    for (const Step& st : steps) {
      switch (st.op) {
        case Op::PushVar: stack[top++] = (parent_bits >> st.slot) & 1; break;
        case Op::PushTrue: stack[top++] = true; break;
        case Op::PushFalse: stack[top++] = false; break;
        case Op::Neg: stack[top - 1] = !stack[top - 1]; break;
        case Op::And:
          --top;
          stack[top - 1] = stack[top - 1] && stack[top];
          break;
        case Op::Or:
          --top;
          stack[top - 1] = stack[top - 1] || stack[top];
          break;
      }
    }
    return stack[0];
  }

 private:
  void build(const Formula& f, const AdfInstance& d, std::size_t s) {
    switch (f.kind()) {
      case Conn::Var: {
        std::size_t idx = *d.index_of(f.name());
        const auto& ps = d.parents(s);
        for (std::size_t slot = 0; slot < ps.size(); ++slot) {
          if (ps[slot] == idx) {
            steps.push_back({Op::PushVar, slot});
            return;
          }
        }
        throw std::logic_error("compile: var outside parent set");
      }
      case Conn::Top: steps.push_back({Op::PushTrue, 0}); return;
      case Conn::Bot: steps.push_back({Op::PushFalse, 0}); return;
      case Conn::Neg:
        build(f.sub(), d, s);
        steps.push_back({Op::Neg, 0});
        return;
      case Conn::And:
      case Conn::Or:
        build(f.lhs(), d, s);
        build(f.rhs(), d, s);
        steps.push_back({f.kind() == Conn::And ? Op::And : Op::Or, 0});
        return;
      default: throw std::logic_error("compile: not desugared");
    }
  }
};

std::vector<CompiledCondition> compile_all(const AdfInstance& d) {
  std::vector<CompiledCondition> cc;
  cc.reserve(d.size());
  for (std::size_t s = 0; s < d.size(); ++s)
    cc.push_back(CompiledCondition::compile(d.condition(s), d, s));
  return cc;
}

// Truth of statement s under gamma: quantify over completions of v restricted
// to par(s). Free positions are the parents mapped to u by v.
Tv gamma_statement(const AdfInstance& d, const CompiledCondition& cc, const Interpretation3& v,
                   std::size_t s) {
  const auto& ps = d.parents(s);
  if (ps.size() > 25) throw std::invalid_argument("gamma: too many parents for enumeration");
  std::uint64_t fixed = 0;
  std::vector<std::size_t> free_slots;
  for (std::size_t slot = 0; slot < ps.size(); ++slot) {
    switch (v[ps[slot]]) {
      case Tv::True: fixed |= std::uint64_t{1} << slot; break;
      case Tv::False: break;
      case Tv::Undec: free_slots.push_back(slot); break;
    }
  }
  bool all_true = true, all_false = true;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << free_slots.size()); ++i) {
    std::uint64_t bits = fixed;
    for (std::size_t j = 0; j < free_slots.size(); ++j)
      if ((i >> j) & 1) bits |= std::uint64_t{1} << free_slots[j];
    if (cc.eval(bits))
      all_false = false;
    else
      all_true = false;
    if (!all_true && !all_false) return Tv::Undec;
  }
  return all_true ? Tv::True : Tv::False;
}

}  // namespace

namespace {

// enumerate/grounded share one compilation of the conditions
struct CompiledAdf {
  const AdfInstance& d;
  std::vector<CompiledCondition> cc;

  explicit CompiledAdf(const AdfInstance& inst) : d(inst), cc(compile_all(inst)) {}

  Interpretation3 gamma(const Interpretation3& v) const {
    Interpretation3 out(d.size());
    for (std::size_t s = 0; s < d.size(); ++s) out[s] = gamma_statement(d, cc[s], v, s);
    return out;
  }
};

}  // namespace

Interpretation3 gamma_adf(const AdfInstance& d, const Interpretation3& v) {
  if (v.size() != d.size()) throw std::invalid_argument("gamma_adf: domain mismatch");
  return CompiledAdf(d).gamma(v);
}

bool holds(const AdfInstance& d, const Interpretation3& v, Semantics sigma) {
  switch (sigma) {
    case Semantics::Adm: return leq_i(v, gamma_adf(d, v));
    case Semantics::Com: return v == gamma_adf(d, v);
    case Semantics::Mod: {
      if (!v.two_valued()) throw std::invalid_argument("holds(mod): interpretation not 2-valued");
      for (std::size_t s = 0; s < d.size(); ++s) {
        bool cond = eval2(d.condition(s), [&](const std::string& name) {
          return v[*d.index_of(name)] == Tv::True;
        });
        if (cond != (v[s] == Tv::True)) return false;
      }
      return true;
    }
    default: throw std::invalid_argument("holds: only adm/com/mod are definitional checks");
  }
}

Interpretation3 grounded(const AdfInstance& d) {
  CompiledAdf ca(d);
  Interpretation3 v(d.size());
  for (;;) {
    Interpretation3 next = ca.gamma(v);
    if (next == v) return v;
    v = next;
  }
}

AdfInstance reduct(const AdfInstance& d, const Interpretation3& v) {
  if (!holds(d, v, Semantics::Mod)) throw std::invalid_argument("reduct: v is not a model");
  std::vector<std::string> statements;
  std::vector<Formula> conditions;
  // phi[b/bot : v(b)=f], applied to the conditions of the true statements.
  std::function<Formula(const Formula&)> subst = [&](const Formula& f) -> Formula {
    switch (f.kind()) {
      case Conn::Var: return v[*d.index_of(f.name())] == Tv::False ? Formula::bot() : f;
      case Conn::Top:
      case Conn::Bot: return f;
      case Conn::Neg: return Formula::neg(subst(f.sub()));
      case Conn::And: return Formula::conj(subst(f.lhs()), subst(f.rhs()));
      case Conn::Or: return Formula::disj(subst(f.lhs()), subst(f.rhs()));
      case Conn::Imp: return Formula::imp(subst(f.lhs()), subst(f.rhs()));
      case Conn::Xor: return Formula::xor_(subst(f.lhs()), subst(f.rhs()));
    }
    throw std::logic_error("reduct: bad connective");
  };
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (v[s] == Tv::True) {
      statements.push_back(d.name(s));
      conditions.push_back(subst(d.condition(s)));
    }
  }
  return AdfInstance(std::move(statements), std::move(conditions));
}

namespace {

bool is_stable(const AdfInstance& d, const Interpretation3& v) {
  if (!holds(d, v, Semantics::Mod)) return false;
  AdfInstance red = reduct(d, v);
  Interpretation3 g = grounded(red);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] != Tv::True) return false;
  return true;
}

template <typename Fn>
void for_each_interpretation(std::size_t n, bool two_valued, Fn&& fn) {
  if (n > 20) throw std::invalid_argument("enumerate: instance too large");
  std::size_t base = two_valued ? 2 : 3;
  std::size_t count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= base;
  static const Tv two[] = {Tv::False, Tv::True};
  static const Tv three[] = {Tv::Undec, Tv::False, Tv::True};
  for (std::size_t code = 0; code < count; ++code) {
    Interpretation3 v(n);
    std::size_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = two_valued ? two[c % 2] : three[c % 3];
      c /= base;
    }
    fn(v);
  }
}

}  // namespace

std::set<Interpretation3> maximal_elements(const std::set<Interpretation3>& xs) {
  std::set<Interpretation3> out;
  for (const auto& v : xs) {
    bool maximal = true;
    for (const auto& w : xs)
      if (lt_i(v, w)) {
        maximal = false;
        break;
      }
    if (maximal) out.insert(v);
  }
  return out;
}

std::set<Interpretation3> enumerate_adf(const AdfInstance& d, Semantics sigma) {
  std::set<Interpretation3> out;
  switch (sigma) {
    case Semantics::Adm:
    case Semantics::Com: {
      CompiledAdf ca(d);
      for_each_interpretation(d.size(), false, [&](const Interpretation3& v) {
        Interpretation3 g = ca.gamma(v);
        bool keep = sigma == Semantics::Adm ? leq_i(v, g) : v == g;
        if (keep) out.insert(v);
      });
      return out;
    }
    case Semantics::Prf: return maximal_elements(enumerate_adf(d, Semantics::Adm));
    case Semantics::Grd: {
      // <=_i-minimal complete interpretations (the unique grounded one).
      auto com = enumerate_adf(d, Semantics::Com);
      for (const auto& v : com) {
        bool minimal = true;
        for (const auto& w : com)
          if (lt_i(w, v)) {
            minimal = false;
            break;
          }
        if (minimal) out.insert(v);
      }
      return out;
    }
    case Semantics::Mod:
      for_each_interpretation(d.size(), true, [&](const Interpretation3& v) {
        if (holds(d, v, Semantics::Mod)) out.insert(v);
      });
      return out;
    case Semantics::Stb:
      for_each_interpretation(d.size(), true, [&](const Interpretation3& v) {
        if (is_stable(d, v)) out.insert(v);
      });
      return out;
  }
  return out;
}

// ---- GRAPPA ----------------------------------------------------------------

std::map<Label, long long> active_multiset(const GrappaInstance& g, const Interpretation3& w,
                                           std::size_t s) {
  std::map<Label, long long> m;
  for (std::size_t ei : g.in_edges(s)) {
    const auto& e = g.edges()[ei];
    if (w[e.src] == Tv::True) ++m[e.label];
  }
  return m;
}

namespace {

void require_numeric_in_edges(const GrappaInstance& g, std::size_t s, const char* what) {
  for (std::size_t ei : g.in_edges(s))
    if (!g.edges()[ei].label.numeric)
      throw std::invalid_argument(std::string(what) + " at '" + g.name(s) +
                                  "' needs numeric labels");
}

}  // namespace

ExtInt eval_term(const GrappaInstance& g, std::size_t s, const std::map<Label, long long>& m,
                 const Term& t) {
  switch (t.kind) {
    case TermKind::LabelCount: {
      auto it = m.find(*t.label);
      return ExtInt::fin(it == m.end() ? 0 : it->second);
    }
    case TermKind::LabelCountStatic: {
      long long n = 0;
      for (std::size_t ei : g.in_edges(s)) n += g.edges()[ei].label == *t.label;
      return ExtInt::fin(n);
    }
    case TermKind::Min:
    case TermKind::Max: {
      require_numeric_in_edges(g, s, "min/max");
      bool any = false;
      long long best = 0;
      for (const auto& [label, cnt] : m) {
        if (cnt <= 0) continue;
        long long v = label.num;
        if (!any)
          best = v;
        else
          best = t.kind == TermKind::Min ? std::min(best, v) : std::max(best, v);
        any = true;
      }
      if (!any) return t.kind == TermKind::Min ? ExtInt::pos_inf() : ExtInt::neg_inf();
      return ExtInt::fin(best);
    }
    case TermKind::MinStatic:
    case TermKind::MaxStatic: {
      require_numeric_in_edges(g, s, "mint/maxt");
      bool any = false;
      long long best = 0;
      for (std::size_t ei : g.in_edges(s)) {
        long long v = g.edges()[ei].label.num;
        if (!any)
          best = v;
        else
          best = t.kind == TermKind::MinStatic ? std::min(best, v) : std::max(best, v);
        any = true;
      }
      if (!any) return t.kind == TermKind::MinStatic ? ExtInt::pos_inf() : ExtInt::neg_inf();
      return ExtInt::fin(best);
    }
    case TermKind::Sum: {
      require_numeric_in_edges(g, s, "sum");
      long long total = 0;
      for (const auto& [label, cnt] : m) total += label.num * cnt;
      return ExtInt::fin(total);
    }
    case TermKind::SumStatic: {
      require_numeric_in_edges(g, s, "sumt");
      long long total = 0;
      for (std::size_t ei : g.in_edges(s)) total += g.edges()[ei].label.num;
      return ExtInt::fin(total);
    }
    case TermKind::CountDistinct: {
      long long n = 0;
      for (const auto& [label, cnt] : m) n += cnt > 0;
      return ExtInt::fin(n);
    }
    case TermKind::CountDistinctStatic: {
      std::set<Label> distinct;
      for (std::size_t ei : g.in_edges(s)) distinct.insert(g.edges()[ei].label);
      return ExtInt::fin(static_cast<long long>(distinct.size()));
    }
  }
  throw std::logic_error("eval_term: bad kind");
}

bool ext_compare(const ExtInt& lhs, Rel rel, long long rhs) {
  int cmp;  // -1, 0, 1 against rhs in the extended order
  switch (lhs.kind) {
    case ExtInt::Kind::NegInf: cmp = -1; break;
    case ExtInt::Kind::PosInf: cmp = 1; break;
    default: cmp = lhs.value < rhs ? -1 : lhs.value > rhs ? 1 : 0;
  }
  switch (rel) {
    case Rel::Lt: return cmp < 0;
    case Rel::Le: return cmp <= 0;
    case Rel::Eq: return cmp == 0;
    case Rel::Ne: return cmp != 0;
    case Rel::Ge: return cmp >= 0;
    case Rel::Gt: return cmp > 0;
  }
  return false;
}

bool eval_pattern(const GrappaInstance& g, std::size_t s, const std::map<Label, long long>& m,
                  const Pattern& p) {
  switch (p.kind()) {
    case Pattern::Kind::Basic: {
      // An infinite summand only propagates alone with coefficient 1; the
      // paper never adds infinities to anything else.
      long long total = 0;
      for (const auto& [coeff, term] : p.summands()) {
        ExtInt v = eval_term(g, s, m, term);
        if (!v.finite()) {
          if (p.summands().size() != 1 || coeff != 1)
            throw std::invalid_argument("pattern: arithmetic over an infinite term value");
          return ext_compare(v, p.rel(), p.bound());
        }
        total += coeff * v.value;
      }
      return ext_compare(ExtInt::fin(total), p.rel(), p.bound());
    }
    case Pattern::Kind::Neg: return !eval_pattern(g, s, m, p.sub());
    case Pattern::Kind::And: return eval_pattern(g, s, m, p.lhs()) && eval_pattern(g, s, m, p.rhs());
    case Pattern::Kind::Or: return eval_pattern(g, s, m, p.lhs()) || eval_pattern(g, s, m, p.rhs());
  }
  throw std::logic_error("eval_pattern: bad kind");
}

Interpretation3 gamma_grappa(const GrappaInstance& g, const Interpretation3& v) {
  if (v.size() != g.size()) throw std::invalid_argument("gamma_grappa: domain mismatch");
  Interpretation3 out(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) {
    // Completions restricted to the parents of s; m_s only reads those.
    const auto& ps = g.parents(s);
    std::vector<std::size_t> free_ps;
    for (std::size_t p : ps)
      if (v[p] == Tv::Undec) free_ps.push_back(p);
    if (free_ps.size() > 25) throw std::invalid_argument("gamma_grappa: too many parents");
    bool all_true = true, all_false = true;
    Interpretation3 w = v;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << free_ps.size()); ++i) {
      for (std::size_t j = 0; j < free_ps.size(); ++j)
        w[free_ps[j]] = (i >> j) & 1 ? Tv::True : Tv::False;
      bool val = eval_pattern(g, s, active_multiset(g, w, s), g.pattern(s));
      (val ? all_false : all_true) = false;
      if (!all_true && !all_false) break;
    }
    out[s] = all_true ? Tv::True : all_false ? Tv::False : Tv::Undec;
  }
  return out;
}

bool holds(const GrappaInstance& g, const Interpretation3& v, Semantics sigma) {
  switch (sigma) {
    case Semantics::Adm: return leq_i(v, gamma_grappa(g, v));
    case Semantics::Com: return v == gamma_grappa(g, v);
    default: throw std::invalid_argument("holds(grappa): only adm/com are definitional checks");
  }
}

std::set<Interpretation3> enumerate_grappa(const GrappaInstance& g, Semantics sigma) {
  if (sigma == Semantics::Prf) return maximal_elements(enumerate_grappa(g, Semantics::Adm));
  if (sigma != Semantics::Adm && sigma != Semantics::Com)
    throw std::invalid_argument("enumerate_grappa: only adm/com/prf are defined");
  std::set<Interpretation3> out;
  for_each_interpretation(g.size(), false, [&](const Interpretation3& v) {
    if (holds(g, v, sigma)) out.insert(v);
  });
  return out;
}

std::string format_interpretation(const std::vector<std::string>& statements,
                                  const Interpretation3& v) {
  std::string out;
  for (std::size_t i = 0; i < statements.size(); ++i) {
    if (i) out += ' ';
    out += statements[i];
    out += '=';
    out += to_char(v[i]);
  }
  return out;
}

}  // namespace yadf
