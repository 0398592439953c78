#include "yadf/asp_eval.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "yadf/asp_read.hpp"

namespace yadf {
namespace aspeval {
namespace {

using asp::AggKind;
using asp::BinOp;
using yadf::Rel;

[[noreturn]] void unsupported(const std::string& msg) {
  throw std::runtime_error("aspeval: " + msg);
}

// ---- values -----------------------------------------------------------------

struct Val {
  enum class K : std::uint8_t { Inf, Num, Sym, Sup } kind = K::Num;
  long long num = 0;  // value for Num
  int sym = 0;        // interned id for Sym

  static Val number(long long v) { return {K::Num, v, 0}; }
  static Val symbol(int id) { return {K::Sym, 0, id}; }
  static Val sup() { return {K::Sup, 0, 0}; }
  static Val inf() { return {K::Inf, 0, 0}; }

  friend bool operator==(const Val&, const Val&) = default;
  // Term order: #inf < numbers < symbols < #sup. Symbols order by intern id,
  // which our fragment only ever uses for equality.
  friend bool operator<(const Val& a, const Val& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    if (a.kind == K::Num) return a.num < b.num;
    if (a.kind == K::Sym) return a.sym < b.sym;
    return false;
  }
};

struct ValHash {
  std::size_t operator()(const Val& v) const {
    return std::hash<long long>()(v.num * 4 + v.sym * 2 + static_cast<int>(v.kind));
  }
};

using Tuple = std::vector<Val>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const {
    std::size_t h = 1469598103934665603ull;
    for (const Val& v : t) {
      h ^= ValHash()(v);
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct Interner {
  std::vector<std::string> names;
  std::unordered_map<std::string, int> ids;

  int intern(const std::string& s) {
    auto it = ids.find(s);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(names.size());
    names.push_back(s);
    ids.emplace(s, id);
    return id;
  }
};

// ---- compiled rules ---------------------------------------------------------

struct CExpr {
  struct Op {
    enum class K : std::uint8_t { Const, Var, Bin } k;
    Val c;
    int var = 0;
    BinOp op = BinOp::Add;
  };
  std::vector<Op> post;  // postfix程序 evaluated on a small stack

  std::optional<Val> eval(const std::vector<Val>& vals, const std::vector<bool>& bound) const {
    Val stack[32];
    int top = 0;
    for (const Op& o : post) {
      switch (o.k) {
        case Op::K::Const: stack[top++] = o.c; break;
        case Op::K::Var:
          if (!bound[o.var]) return std::nullopt;
          stack[top++] = vals[o.var];
          break;
        case Op::K::Bin: {
          Val b = stack[--top];
          Val a = stack[--top];
          if (a.kind != Val::K::Num || b.kind != Val::K::Num) return std::nullopt;
          long long r = 0;
          switch (o.op) {
            case BinOp::Add: r = a.num + b.num; break;
            case BinOp::Sub: r = a.num - b.num; break;
            case BinOp::Mul: r = a.num * b.num; break;
            case BinOp::BitAnd: r = a.num & b.num; break;
            case BinOp::BitOr: r = a.num | b.num; break;
          }
          stack[top++] = Val::number(r);
          break;
        }
      }
      if (top >= 31) unsupported("expression too deep");
    }
    if (top != 1) unsupported("malformed expression");
    return stack[0];
  }

  // The single variable if this expression is exactly one variable.
  std::optional<int> bare_var() const {
    if (post.size() == 1 && post[0].k == Op::K::Var) return post[0].var;
    return std::nullopt;
  }
};

struct CArg {
  bool is_var = false;
  int var = 0;
  Val val;
};

struct CAtom {
  int pred = -1;
  std::vector<CArg> args;
};

struct CCmp {
  CExpr lhs, rhs;
  Rel rel;
};

struct CAggEl {
  std::vector<CExpr> tuple;
  std::vector<CCmp> conds;
};

struct CLit {
  enum class K : std::uint8_t { Pos, Not, Cmp, Agg } k = K::Pos;
  CAtom atom;          // Pos / Not
  CCmp cmp;            // Cmp
  int agg_var = 0;     // Agg target
  AggKind agg_kind = AggKind::Sum;
  std::vector<CAggEl> elements;
};

struct CRule {
  std::vector<CAtom> head;
  std::vector<CLit> body;
  int nvars = 0;
  std::vector<std::string> var_names;
  std::vector<std::vector<int>> lit_vars;  // variables per body literal
  std::size_t source_index = 0;            // rule order in the input program
};

void collect_lit_vars(const CLit& lit, std::vector<int>& out) {
  auto from_expr = [&](const CExpr& e) {
    for (const auto& op : e.post)
      if (op.k == CExpr::Op::K::Var) out.push_back(op.var);
  };
  switch (lit.k) {
    case CLit::K::Pos:
    case CLit::K::Not:
      for (const CArg& a : lit.atom.args)
        if (a.is_var) out.push_back(a.var);
      return;
    case CLit::K::Cmp:
      from_expr(lit.cmp.lhs);
      from_expr(lit.cmp.rhs);
      return;
    case CLit::K::Agg:
      out.push_back(lit.agg_var);
      for (const CAggEl& el : lit.elements) {
        for (const CExpr& e : el.tuple) from_expr(e);
        for (const CCmp& c : el.conds) {
          from_expr(c.lhs);
          from_expr(c.rhs);
        }
      }
      return;
  }
}

bool cmp_vals(const Val& a, Rel rel, const Val& b) {
  switch (rel) {
    case Rel::Lt: return a < b;
    case Rel::Le: return a < b || a == b;
    case Rel::Eq: return a == b;
    case Rel::Ne: return !(a == b);
    case Rel::Ge: return b < a || a == b;
    case Rel::Gt: return b < a;
  }
  return false;
}

// ---- database ---------------------------------------------------------------

struct Relation {
  std::vector<Tuple> tuples;
  std::unordered_set<Tuple, TupleHash> index;

  bool contains(const Tuple& t) const { return index.count(t) > 0; }
  bool insert(const Tuple& t) {
    if (!index.insert(t).second) return false;
    tuples.push_back(t);
    return true;
  }
};

struct Database {
  std::vector<Relation> rels;  // by pred id

  Relation& rel(int pred) {
    if (pred >= static_cast<int>(rels.size())) rels.resize(pred + 1);
    return rels[pred];
  }
  const Relation* find(int pred) const {
    if (pred < 0 || pred >= static_cast<int>(rels.size())) return nullptr;
    return &rels[pred];
  }
  bool contains(int pred, const Tuple& t) const {
    const Relation* r = find(pred);
    return r && r->contains(t);
  }
  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& r : rels) n += r.tuples.size();
    return n;
  }
};

struct GroundAtom {
  int pred;
  Tuple args;
  friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
};

// ---- the evaluator ----------------------------------------------------------

struct Engine {
  Interner preds;
  Interner syms;
  std::vector<CRule> rules;

  // classification
  Database facts_db;                    // facts + stabilized base layer
  std::vector<CRule*> base_rules;       // evaluated once, before guessing
  std::vector<CRule*> derived_rules;    // normal rules re-run per guess
  std::vector<CRule*> disjunctive_rules;
  std::vector<CRule*> constraints;

  struct Clique {
    int pred;
    std::vector<CLit> context;              // positive context of the rules
    std::vector<CArg> head_template;        // args with the value position blank
    std::size_t value_pos = 0;
    std::vector<Val> values;                // in rule order
    std::vector<std::string> var_names;
    int nvars = 0;
  };
  std::vector<Clique> cliques;
  std::vector<bool> is_choice_pred;
  std::vector<bool> is_base_pred;

  // ---- loading --------------------------------------------------------------

  CExpr compile_expr(const asp::Expr& e, std::unordered_map<std::string, int>& vars,
                     std::vector<std::string>& names) {
    CExpr out;
    std::function<void(const asp::Expr&)> walk = [&](const asp::Expr& x) {
      if (const auto* n = std::get_if<asp::Expr::Num>(&x.node)) {
        out.post.push_back({CExpr::Op::K::Const, Val::number(n->value), 0, BinOp::Add});
      } else if (const auto* s = std::get_if<asp::Expr::Sym>(&x.node)) {
        out.post.push_back({CExpr::Op::K::Const, Val::symbol(syms.intern(s->name)), 0, BinOp::Add});
      } else if (const auto* v = std::get_if<asp::Expr::Var>(&x.node)) {
        auto it = vars.find(v->name);
        int id;
        if (it == vars.end()) {
          id = static_cast<int>(names.size());
          vars.emplace(v->name, id);
          names.push_back(v->name);
        } else {
          id = it->second;
        }
        out.post.push_back({CExpr::Op::K::Var, Val{}, id, BinOp::Add});
      } else {
        const auto& b = std::get<asp::Expr::Bin>(x.node);
        walk(*b.lhs);
        walk(*b.rhs);
        out.post.push_back({CExpr::Op::K::Bin, Val{}, 0, b.op});
      }
    };
    walk(e);
    return out;
  }

  CAtom compile_atom(const asp::Atom& a, std::unordered_map<std::string, int>& vars,
                     std::vector<std::string>& names) {
    CAtom out;
    out.pred = preds.intern(a.pred);
    for (const auto& arg : a.args) {
      CExpr ce = compile_expr(*arg, vars, names);
      if (auto v = ce.bare_var()) {
        out.args.push_back({true, *v, Val{}});
      } else if (ce.post.size() == 1 && ce.post[0].k == CExpr::Op::K::Const) {
        out.args.push_back({false, 0, ce.post[0].c});
      } else {
        unsupported("atom arguments must be constants or variables");
      }
    }
    return out;
  }

  void load(const asp::Program& p) {
    rules.reserve(p.rules.size());
    for (std::size_t ri = 0; ri < p.rules.size(); ++ri) {
      const asp::Rule& r = p.rules[ri];
      CRule cr;
      cr.source_index = ri;
      std::unordered_map<std::string, int> vars;
      for (const auto& h : r.head) cr.head.push_back(compile_atom(h, vars, cr.var_names));
      for (const auto& l : r.body) {
        CLit cl;
        if (const auto* pos = std::get_if<asp::Literal::Pos>(&l.node)) {
          cl.k = CLit::K::Pos;
          cl.atom = compile_atom(pos->atom, vars, cr.var_names);
        } else if (const auto* neg = std::get_if<asp::Literal::Not>(&l.node)) {
          cl.k = CLit::K::Not;
          cl.atom = compile_atom(neg->atom, vars, cr.var_names);
        } else if (const auto* cmp = std::get_if<asp::Literal::Cmp>(&l.node)) {
          cl.k = CLit::K::Cmp;
          cl.cmp.lhs = compile_expr(*cmp->lhs, vars, cr.var_names);
          cl.cmp.rhs = compile_expr(*cmp->rhs, vars, cr.var_names);
          cl.cmp.rel = cmp->rel;
        } else {
          const auto& agg = std::get<asp::Literal::AggBind>(l.node);
          cl.k = CLit::K::Agg;
          cl.agg_kind = agg.kind;
          CExpr tv = compile_expr(asp::Expr{asp::Expr::Var{agg.var}}, vars, cr.var_names);
          cl.agg_var = *tv.bare_var();
          for (const auto& el : agg.elements) {
            CAggEl ce;
            for (const auto& t : el.tuple) ce.tuple.push_back(compile_expr(*t, vars, cr.var_names));
            for (const auto& c : el.conds) {
              CCmp cc;
              cc.lhs = compile_expr(*c.lhs, vars, cr.var_names);
              cc.rhs = compile_expr(*c.rhs, vars, cr.var_names);
              cc.rel = c.rel;
              ce.conds.push_back(std::move(cc));
            }
            cl.elements.push_back(std::move(ce));
          }
        }
        cr.body.push_back(std::move(cl));
      }
      cr.nvars = static_cast<int>(cr.var_names.size());
      for (const CLit& l : cr.body) {
        std::vector<int> lv;
        collect_lit_vars(l, lv);
        cr.lit_vars.push_back(std::move(lv));
      }
      rules.push_back(std::move(cr));
    }
  }

  // ---- query engine ---------------------------------------------------------

  struct Binding {
    std::vector<Val> vals;
    std::vector<bool> bound;
    explicit Binding(int n) : vals(n), bound(n, false) {}
  };

  std::optional<Val> eval_agg(const CLit& lit, const Binding& b) const {
    std::set<Tuple> tuples;
    for (const CAggEl& el : lit.elements) {
      bool ok = true;
      for (const CCmp& c : el.conds) {
        auto l = c.lhs.eval(b.vals, b.bound);
        auto r = c.rhs.eval(b.vals, b.bound);
        if (!l || !r) return std::nullopt;  // condition not yet evaluable
        if (!cmp_vals(*l, c.rel, *r)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Tuple t;
      for (const CExpr& e : el.tuple) {
        auto v = e.eval(b.vals, b.bound);
        if (!v) return std::nullopt;
        t.push_back(*v);
      }
      tuples.insert(std::move(t));
    }
    switch (lit.agg_kind) {
      case AggKind::Count: return Val::number(static_cast<long long>(tuples.size()));
      case AggKind::Sum: {
        long long total = 0;
        for (const Tuple& t : tuples) {
          if (t.empty() || t[0].kind != Val::K::Num) unsupported("#sum over non-integer weight");
          total += t[0].num;
        }
        return Val::number(total);
      }
      case AggKind::Min:
      case AggKind::Max: {
        if (tuples.empty()) return lit.agg_kind == AggKind::Min ? Val::sup() : Val::inf();
        std::optional<Val> best;
        for (const Tuple& t : tuples) {
          if (t.empty()) unsupported("empty aggregate tuple");
          Val v = t[0];
          if (!best)
            best = v;
          else if (lit.agg_kind == AggKind::Min ? v < *best : *best < v)
            best = v;
        }
        return best;
      }
    }
    return std::nullopt;
  }

  // Literal readiness and branching estimate; smaller is scheduled first.
  static constexpr long long kNotReady = -1;

  long long literal_cost(const CLit& lit, const Binding& b, const Database& pos_db,
                         const Database& neg_db) const {
    switch (lit.k) {
      case CLit::K::Pos: {
        const Relation* rel = pos_db.find(lit.atom.pred);
        if (!rel) return 0;  // empty relation: fails immediately
        bool all_bound = true;
        for (const CArg& a : lit.atom.args)
          if (a.is_var && !b.bound[a.var]) all_bound = false;
        if (all_bound) return 0;  // containment test
        return static_cast<long long>(rel->tuples.size()) + 1;
      }
      case CLit::K::Not:
        for (const CArg& a : lit.atom.args)
          if (a.is_var && !b.bound[a.var]) return kNotReady;
        (void)neg_db;
        return 0;
      case CLit::K::Cmp: {
        bool l = c_evaluable(lit.cmp.lhs, b), r = c_evaluable(lit.cmp.rhs, b);
        if (l && r) return 0;
        if (lit.cmp.rel == Rel::Eq) {
          auto lv = lit.cmp.lhs.bare_var(), rv = lit.cmp.rhs.bare_var();
          if (l && rv && !b.bound[*rv]) return 1;
          if (r && lv && !b.bound[*lv]) return 1;
        }
        return kNotReady;
      }
      case CLit::K::Agg: {
        for (const CAggEl& el : lit.elements) {
          for (const CExpr& e : el.tuple)
            if (!c_evaluable(e, b)) return kNotReady;
          for (const CCmp& c : el.conds)
            if (!c_evaluable(c.lhs, b) || !c_evaluable(c.rhs, b)) return kNotReady;
        }
        return 2;
      }
    }
    return kNotReady;
  }

  static bool c_evaluable(const CExpr& e, const Binding& b) {
    for (const auto& op : e.post)
      if (op.k == CExpr::Op::K::Var && !b.bound[op.var]) return false;
    return true;
  }

  // Splits the unprocessed literals into variable-disjoint components and
  // reduces every component that cannot influence a needed variable to an
  // existence check; the long bodies fall apart into one block per statement
  // once the shared variables are bound, and joining those blocks would
  // enumerate the cross product of their solutions.
  // Returns true when it handled the subtree (result in keep_going).
  bool decompose(const CRule& r, Binding& b, const Database& pos_db, const Database& neg_db,
                 const std::function<bool(const Binding&)>& on_solution, std::vector<bool>& done,
                 const std::vector<bool>& needed, const std::function<bool(const Binding&)>* prune,
                 bool& keep_going) const {
    const std::vector<CLit>& body = r.body;
    std::size_t n = body.size();
    static thread_local std::vector<int> comp_of, var_home;
    static thread_local std::vector<int> stack_buf;
    comp_of.assign(n, -1);
    var_home.assign(b.vals.size(), -1);
    int ncomps = 0;

    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || comp_of[i] >= 0) continue;
      int comp = ncomps++;
      stack_buf.clear();
      stack_buf.push_back(static_cast<int>(i));
      comp_of[i] = comp;
      while (!stack_buf.empty()) {
        int li = stack_buf.back();
        stack_buf.pop_back();
        for (int v : r.lit_vars[li]) {
          if (b.bound[v] || var_home[v] == comp) continue;
          var_home[v] = comp;
          for (std::size_t j = 0; j < n; ++j) {
            if (done[j] || comp_of[j] >= 0) continue;
            for (int w : r.lit_vars[j])
              if (w == v && !b.bound[w]) {
                comp_of[j] = comp;
                stack_buf.push_back(static_cast<int>(j));
                break;
              }
          }
        }
      }
    }
    if (ncomps < 2) return false;

    static thread_local std::vector<char> comp_needed;
    comp_needed.assign(ncomps, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      for (int v : r.lit_vars[i])
        if (!b.bound[v] && needed[v]) comp_needed[comp_of[i]] = 1;
    }

    std::vector<std::size_t> collapsed;
    for (int comp = 0; comp < ncomps; ++comp) {
      if (comp_needed[comp]) continue;
      std::vector<bool> sub_done(n, true);
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && comp_of[i] == comp) sub_done[i] = false;
      bool found = false;
      std::function<bool(const Binding&)> probe = [&](const Binding&) {
        found = true;
        return false;
      };
      solve_body(r, b, pos_db, neg_db, probe, sub_done, needed, nullptr);
      if (!found) {
        for (std::size_t li : collapsed) done[li] = false;
        keep_going = true;  // this branch has no solutions
        return true;
      }
      for (std::size_t i = 0; i < n; ++i)
        if (!done[i] && comp_of[i] == comp) {
          done[i] = true;
          collapsed.push_back(i);
        }
    }
    if (collapsed.empty()) return false;
    keep_going = solve_body(r, b, pos_db, neg_db, on_solution, done, needed, prune);
    for (std::size_t li : collapsed) done[li] = false;
    return true;
  }

  // Enumerates bindings satisfying the body. `pos_db` backs positive atoms,
  // `neg_db` backs default negation (per the reduct being evaluated).
  // `needed` marks variables the callback depends on; `prune` (optional)
  // cuts subtrees that can no longer contribute. Returns false if the
  // callback requested a stop.
  bool solve_body(const CRule& r, Binding& b, const Database& pos_db, const Database& neg_db,
                  const std::function<bool(const Binding&)>& on_solution, std::vector<bool>& done,
                  const std::vector<bool>& needed,
                  const std::function<bool(const Binding&)>* prune) const {
    const std::vector<CLit>& body = r.body;
    if (prune && (*prune)(b)) return true;

    std::size_t open_count = 0;
    for (std::size_t i = 0; i < body.size(); ++i) open_count += !done[i];

    if (open_count >= 10) {
      bool keep_going = true;
      if (decompose(r, b, pos_db, neg_db, on_solution, done, needed, prune, keep_going))
        return keep_going;
    }

    // pick the cheapest ready literal
    int best = -1;
    long long best_cost = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (done[i]) continue;
      long long c = literal_cost(body[i], b, pos_db, neg_db);
      if (c == kNotReady) continue;
      if (best < 0 || c < best_cost) {
        best = static_cast<int>(i);
        best_cost = c;
      }
      if (c == 0) break;
    }
    if (best < 0) {
      if (open_count > 0) unsupported("unsafe rule body (unbound variables remain)");
      return on_solution(b);
    }
    done[best] = true;
    const CLit& lit = body[best];
    bool keep_going = true;
    switch (lit.k) {
      case CLit::K::Pos: {
        const Relation* rel = pos_db.find(lit.atom.pred);
        bool all_bound = true;
        for (const CArg& a : lit.atom.args)
          if (a.is_var && !b.bound[a.var]) all_bound = false;
        if (all_bound) {
          Tuple t;
          for (const CArg& a : lit.atom.args) t.push_back(a.is_var ? b.vals[a.var] : a.val);
          if (rel && rel->contains(t))
            keep_going = solve_body(r, b, pos_db, neg_db, on_solution, done, needed, prune);
          break;
        }
        if (rel) {
          for (const Tuple& t : rel->tuples) {
            if (t.size() != lit.atom.args.size()) continue;
            // match against bound args, bind the rest
            std::vector<int> newly;
            bool ok = true;
            for (std::size_t j = 0; j < t.size() && ok; ++j) {
              const CArg& a = lit.atom.args[j];
              if (a.is_var) {
                if (b.bound[a.var]) {
                  ok = b.vals[a.var] == t[j];
                } else {
                  b.vals[a.var] = t[j];
                  b.bound[a.var] = true;
                  newly.push_back(a.var);
                }
              } else {
                ok = a.val == t[j];
              }
            }
            if (ok) keep_going = solve_body(r, b, pos_db, neg_db, on_solution, done, needed, prune);
            for (int v : newly) b.bound[v] = false;
            if (!keep_going) break;
          }
        }
        break;
      }
      case CLit::K::Not: {
        Tuple t;
        bool ok = true;
        for (const CArg& a : lit.atom.args) {
          if (a.is_var) {
            t.push_back(b.vals[a.var]);
          } else {
            t.push_back(a.val);
          }
        }
        ok = !neg_db.contains(lit.atom.pred, t);
        if (ok) keep_going = solve_body(r, b, pos_db, neg_db, on_solution, done, needed, prune);
        break;
      }
      case CLit::K::Cmp: {
        auto lval = lit.cmp.lhs.eval(b.vals, b.bound);
        auto rval = lit.cmp.rhs.eval(b.vals, b.bound);
        if (lval && rval) {
          if (cmp_vals(*lval, lit.cmp.rel, *rval))
            keep_going = solve_body(r, b, pos_db, neg_db, on_solution, done, needed, prune);
        } else if (lit.cmp.rel == Rel::Eq) {
          // assignment: exactly one side is an unbound variable
          auto lv = lit.cmp.lhs.bare_var(), rv = lit.cmp.rhs.bare_var();
          int target;
          std::optional<Val> value;
          if (rval && lv && !b.bound[*lv]) {
            target = *lv;
            value = rval;
          } else if (lval && rv && !b.bound[*rv]) {
            target = *rv;
            value = lval;
          } else {
            break;  // not evaluable: arithmetic over an undefined term fails
          }
          b.vals[target] = *value;
          b.bound[target] = true;
          keep_going = solve_body(r, b, pos_db, neg_db, on_solution, done, needed, prune);
          b.bound[target] = false;
        }
        break;
      }
      case CLit::K::Agg: {
        auto v = eval_agg(lit, b);
        if (v) {
          if (b.bound[lit.agg_var]) {
            if (b.vals[lit.agg_var] == *v)
              keep_going = solve_body(r, b, pos_db, neg_db, on_solution, done, needed, prune);
          } else {
            b.vals[lit.agg_var] = *v;
            b.bound[lit.agg_var] = true;
            keep_going = solve_body(r, b, pos_db, neg_db, on_solution, done, needed, prune);
            b.bound[lit.agg_var] = false;
          }
        }
        break;
      }
    }
    done[best] = false;
    return keep_going;
  }

  // `needed` defaults to the rule's head variables.
  bool for_each_solution(const CRule& r, const Database& pos_db, const Database& neg_db,
                         const std::function<bool(const Binding&)>& on_solution,
                         const std::vector<bool>* needed = nullptr,
                         const std::function<bool(const Binding&)>* prune = nullptr) const {
    Binding b(r.nvars);
    std::vector<bool> done(r.body.size(), false);
    std::vector<bool> head_vars;
    if (!needed) {
      head_vars.assign(r.nvars, false);
      for (const CAtom& h : r.head)
        for (const CArg& a : h.args)
          if (a.is_var) head_vars[a.var] = true;
      needed = &head_vars;
    }
    return solve_body(r, b, pos_db, neg_db, on_solution, done, *needed, prune);
  }

  // Derives every head instance the rule supports; branches whose head atoms
  // are all present already are cut. Returns whether anything new appeared.
  bool derive_rule(const CRule& r, Database& pos_db, const Database& neg_db) const {
    bool added = false;
    std::function<bool(const Binding&)> prune = [&](const Binding& b) {
      if (r.head.empty()) return false;
      for (const CAtom& h : r.head)
        for (const CArg& a : h.args)
          if (a.is_var && !b.bound[a.var]) return false;
      for (const CAtom& h : r.head) {
        GroundAtom g = instantiate(h, b);
        if (!pos_db.contains(g.pred, g.args)) return false;
      }
      return true;
    };
    for_each_solution(
        r, pos_db, neg_db,
        [&](const Binding& b) {
          for (const CAtom& h : r.head) {
            GroundAtom g = instantiate(h, b);
            added |= pos_db.rel(g.pred).insert(g.args);
          }
          return true;
        },
        nullptr, &prune);
    return added;
  }

  GroundAtom instantiate(const CAtom& a, const Binding& b) const {
    GroundAtom g;
    g.pred = a.pred;
    for (const CArg& arg : a.args) {
      if (arg.is_var) {
        if (!b.bound[arg.var]) unsupported("unbound variable in rule head");
        g.args.push_back(b.vals[arg.var]);
      } else {
        g.args.push_back(arg.val);
      }
    }
    return g;
  }

  // ---- classification -------------------------------------------------------

  void classify() {
    int npreds = static_cast<int>(preds.names.size());
    is_choice_pred.assign(npreds, false);
    is_base_pred.assign(npreds, false);

    std::vector<std::vector<CRule*>> by_head(npreds);
    std::vector<CRule*> facts;
    for (CRule& r : rules) {
      if (r.head.size() == 1 && r.body.empty()) {
        facts.push_back(&r);
        continue;
      }
      if (r.head.size() == 1) by_head[r.head[0].pred].push_back(&r);
    }

    for (CRule* f : facts) {
      Binding b(0);
      facts_db.rel(f->head[0].pred).insert(instantiate(f->head[0], b).args);
    }

    // choice cliques: k>=2 rules whose bodies negate exactly the other heads
    for (int p = 0; p < npreds; ++p) {
      auto& group = by_head[p];
      if (group.size() < 2) continue;
      bool self_negating = false;
      for (CRule* r : group)
        for (const CLit& l : r->body)
          if (l.k == CLit::K::Not && l.atom.pred == p) self_negating = true;
      if (!self_negating) continue;
      if (!try_clique(p, group)) unsupported("negative cycle that is not a choice clique");
    }

    // dependency closure from choice preds
    std::vector<std::vector<int>> head_deps(npreds);
    for (CRule& r : rules) {
      for (const CAtom& h : r.head) {
        for (const CLit& l : r.body)
          if (l.k == CLit::K::Pos || l.k == CLit::K::Not) head_deps[h.pred].push_back(l.atom.pred);
      }
    }
    std::vector<bool> depends_on_choice(npreds, false);
    for (int p = 0; p < npreds; ++p) depends_on_choice[p] = is_choice_pred[p];
    bool changed = true;
    while (changed) {
      changed = false;
      for (int p = 0; p < npreds; ++p) {
        if (depends_on_choice[p]) continue;
        for (int q : head_deps[p]) {
          if (depends_on_choice[q]) {
            depends_on_choice[p] = true;
            changed = true;
            break;
          }
        }
      }
    }

    for (CRule& r : rules) {
      if (r.head.empty()) {
        constraints.push_back(&r);
        continue;
      }
      if (r.head.size() == 1 && r.body.empty()) continue;  // facts
      int hp = r.head[0].pred;
      if (is_choice_pred[hp] && r.head.size() == 1) continue;  // clique rules handled separately
      if (r.head.size() > 1) {
        disjunctive_rules.push_back(&r);
        continue;
      }
      if (depends_on_choice[hp])
        derived_rules.push_back(&r);
      else
        base_rules.push_back(&r);
    }
    for (CRule* r : base_rules) is_base_pred[r->head[0].pred] = true;

    // deriving rules may only negate atoms whose extension is fixed before
    // the closure runs (facts, base layer, choices)
    for (const CRule* r : derived_rules)
      for (const CLit& l : r->body)
        if (l.k == CLit::K::Not && depends_on_choice[l.atom.pred] && !is_choice_pred[l.atom.pred])
          unsupported("negation on a choice-dependent predicate outside constraints");
    for (const CRule* r : disjunctive_rules)
      for (const CLit& l : r->body)
        if (l.k == CLit::K::Not) unsupported("negation in a disjunctive rule body");
    for (const Clique& cl : cliques)
      for (const CLit& l : cl.context)
        if (depends_on_choice[l.atom.pred])
          unsupported("choice context depends on another choice");

    // base layer: fixpoint with negation-as-failure, then stability recheck
    evaluate_base();
  }

  bool try_clique(int pred, std::vector<CRule*>& group) {
    std::size_t k = group.size();
    std::size_t arity = group[0]->head[0].args.size();
    // find the value position: a constant position where heads differ
    std::size_t vpos = arity;
    for (std::size_t j = 0; j < arity; ++j) {
      bool all_const = true;
      std::set<std::pair<int, long long>> distinct;
      for (CRule* r : group) {
        const CArg& a = r->head[0].args[j];
        if (a.is_var) {
          all_const = false;
          break;
        }
        distinct.insert({a.val.sym * 2 + static_cast<int>(a.val.kind), a.val.num});
      }
      if (all_const && distinct.size() == k) {
        vpos = j;
        break;
      }
    }
    if (vpos == arity) return false;
    // heads must agree (by variable name) outside the value position
    for (CRule* r : group) {
      for (std::size_t j = 0; j < arity; ++j) {
        if (j == vpos) continue;
        const CArg& x = r->head[0].args[j];
        const CArg& y = group[0]->head[0].args[j];
        if (x.is_var != y.is_var) return false;
        if (x.is_var ? r->var_names[x.var] != group[0]->var_names[y.var] : !(x.val == y.val))
          return false;
      }
    }

    Clique cl;
    cl.pred = pred;
    cl.value_pos = vpos;
    cl.head_template = group[0]->head[0].args;
    cl.var_names = group[0]->var_names;
    cl.nvars = group[0]->nvars;
    for (CRule* r : group) cl.values.push_back(r->head[0].args[vpos].val);

    // every rule: positives identical, nots = the other values
    for (std::size_t i = 0; i < k; ++i) {
      CRule* r = group[i];
      std::set<std::size_t> seen_values;
      std::vector<const CLit*> positives;
      for (const CLit& l : r->body) {
        if (l.k == CLit::K::Pos) {
          positives.push_back(&l);
          if (l.atom.pred == pred) return false;
          continue;
        }
        if (l.k != CLit::K::Not || l.atom.pred != pred) return false;
        if (l.atom.args.size() != arity) return false;
        for (std::size_t j = 0; j < arity; ++j) {
          if (j == vpos) continue;
          const CArg& ha = r->head[0].args[j];
          const CArg& na = l.atom.args[j];
          if (ha.is_var != na.is_var) return false;
          if (ha.is_var ? ha.var != na.var : !(ha.val == na.val)) return false;
        }
        const CArg& va = l.atom.args[vpos];
        if (va.is_var) return false;
        bool found = false;
        for (std::size_t vi = 0; vi < k; ++vi) {
          if (vi != i && cl.values[vi] == va.val) {
            seen_values.insert(vi);
            found = true;
          }
        }
        if (!found) return false;
      }
      if (seen_values.size() != k - 1) return false;
      if (i == 0) {
        for (const CLit* l : positives) cl.context.push_back(*l);
      } else {
        if (positives.size() != cl.context.size()) return false;
        for (std::size_t j = 0; j < positives.size(); ++j) {
          if (positives[j]->atom.pred != cl.context[j].atom.pred) return false;
          if (positives[j]->atom.args.size() != cl.context[j].atom.args.size()) return false;
          for (std::size_t a = 0; a < cl.context[j].atom.args.size(); ++a) {
            const CArg& x = positives[j]->atom.args[a];
            const CArg& y = cl.context[j].atom.args[a];
            if (x.is_var != y.is_var) return false;
            // variable identity must match through the head template
            if (x.is_var ? group[i]->var_names[x.var] != group[0]->var_names[y.var]
                         : !(x.val == y.val))
              return false;
          }
        }
      }
    }
    is_choice_pred[pred] = true;
    cliques.push_back(std::move(cl));
    return true;
  }

  void evaluate_base() {
    // fixpoint with negation evaluated against the current set
    bool grew = true;
    while (grew) {
      grew = false;
      for (CRule* r : base_rules) grew |= derive_rule(*r, facts_db, facts_db);
    }
    // stability: re-derivation against the final set must reproduce it
    Database check;
    for (CRule& r : rules) {
      if (r.head.size() == 1 && r.body.empty()) {
        Binding b(0);
        GroundAtom g = instantiate(r.head[0], b);
        check.rel(g.pred).insert(g.args);
      }
    }
    bool grew2 = true;
    while (grew2) {
      grew2 = false;
      for (CRule* r : base_rules) grew2 |= derive_rule(*r, check, facts_db);
    }
    if (!db_equal(check, facts_db)) unsupported("base layer is not stratified");
  }

  // ---- per-guess evaluation ---------------------------------------------------

  struct ChoiceInstance {
    int pred;
    Tuple prefix_args;  // template args with context binding applied
    std::size_t value_pos;
    const std::vector<Val>* values;
  };

  std::vector<ChoiceInstance> choice_instances() {
    std::vector<ChoiceInstance> out;
    for (Clique& cl : cliques) {
      CRule ctx;
      ctx.body = cl.context;
      ctx.nvars = cl.nvars;
      ctx.var_names = cl.var_names;
      std::vector<bool> needed(cl.nvars, false);
      for (const CArg& a : cl.head_template)
        if (a.is_var) needed[a.var] = true;
      std::set<Tuple> seen;
      for_each_solution(
          ctx, facts_db, facts_db,
          [&](const Binding& b) {
            Tuple args;
            for (const CArg& a : cl.head_template) args.push_back(a.is_var ? b.vals[a.var] : a.val);
            if (seen.insert(args).second) out.push_back({cl.pred, args, cl.value_pos, &cl.values});
            return true;
          },
          &needed);
    }
    return out;
  }

  // closure of derived rules; disjunctive heads derive every disjunct
  void closure(Database& db) const {
    bool grew = true;
    while (grew) {
      grew = false;
      for (const CRule* r : derived_rules) grew |= derive_rule(*r, db, db);
      for (const CRule* r : disjunctive_rules) grew |= derive_rule(*r, db, db);
    }
  }

  bool violates_constraints(const Database& db) const {
    for (const CRule* r : constraints) {
      bool violated = false;
      for_each_solution(*r, db, db, [&](const Binding&) {
        violated = true;
        return false;
      });
      if (violated) return true;
    }
    return false;
  }

  // lfp of the GL-reduct w.r.t. `model`; all rules participate.
  Database reduct_lfp(const Database& model) const {
    Database db;
    for (const CRule& r : rules) {
      if (r.head.size() == 1 && r.body.empty()) {
        Binding b(0);
        GroundAtom g = instantiate(r.head[0], b);
        db.rel(g.pred).insert(g.args);
      }
    }
    bool grew = true;
    while (grew) {
      grew = false;
      for (const CRule& r : rules) {
        if (r.head.empty() || (r.head.size() == 1 && r.body.empty())) continue;
        if (r.head.size() > 1) continue;  // handled by the disjunctive path
        grew |= derive_rule(r, db, model);
      }
    }
    return db;
  }

  bool db_equal(const Database& a, const Database& b) const {
    if (a.total() != b.total()) return false;
    for (std::size_t p = 0; p < a.rels.size(); ++p) {
      for (const Tuple& t : a.rels[p].tuples)
        if (!b.contains(static_cast<int>(p), t)) return false;
    }
    return true;
  }

  // Every rule must hold in `db` (negation w.r.t. `model`).
  bool is_model_of_reduct(const Database& db, const Database& model) const {
    for (const CRule& r : rules) {
      bool violated = false;
      // branches whose (fully bound) head is already satisfied cannot violate
      std::function<bool(const Binding&)> prune = [&](const Binding& b) {
        if (r.head.empty()) return false;
        for (const CAtom& h : r.head) {
          bool bound = true;
          for (const CArg& a : h.args) bound &= !a.is_var || b.bound[a.var];
          if (bound && db.contains(instantiate(h, b).pred, instantiate(h, b).args)) return true;
        }
        return false;
      };
      for_each_solution(
          r, db, model,
          [&](const Binding& b) {
            for (const CAtom& h : r.head) {
              GroundAtom g = instantiate(h, b);
              if (db.contains(g.pred, g.args)) return true;  // satisfied, next solution
            }
            violated = true;
            return false;
          },
          nullptr, &prune);
      if (violated) return false;
    }
    return true;
  }

  // Disjunctive minimality: search selection closures for a proper submodel.
  bool has_proper_submodel(const Database& model, const Database& guess_db) const {
    struct Fired {
      std::vector<GroundAtom> alternatives;
    };
    std::vector<Fired> fired;
    std::set<std::vector<std::string>> fired_keys;
    for (const CRule* r : disjunctive_rules) {
      auto key_of = [&](const Binding& b) {
        std::vector<std::string> key;
        for (const CAtom& h : r->head) {
          GroundAtom g = instantiate(h, b);
          key.push_back(render_atom(g.pred, g.args));
        }
        return key;
      };
      std::function<bool(const Binding&)> prune = [&](const Binding& b) {
        for (const CAtom& h : r->head)
          for (const CArg& a : h.args)
            if (a.is_var && !b.bound[a.var]) return false;
        return fired_keys.count(key_of(b)) > 0;
      };
      for_each_solution(
          *r, model, model,
          [&](const Binding& b) {
            if (!fired_keys.insert(key_of(b)).second) return true;
            Fired f;
            for (const CAtom& h : r->head) f.alternatives.push_back(instantiate(h, b));
            fired.push_back(std::move(f));
            return true;
          },
          nullptr, &prune);
    }
    if (fired.empty()) return false;

    std::vector<std::size_t> pick(fired.size(), 0);
    for (;;) {
      Database c = guess_db;  // facts + base + choices
      for (std::size_t i = 0; i < fired.size(); ++i) {
        const GroundAtom& g = fired[i].alternatives[pick[i]];
        c.rel(g.pred).insert(g.args);
      }
      bool grew = true;
      while (grew) {
        grew = false;
        for (const CRule* r : derived_rules) grew |= derive_rule(*r, c, model);
      }
      if (!db_equal(c, model) && is_model_of_reduct(c, model)) return true;

      // odometer
      std::size_t i = 0;
      while (i < fired.size()) {
        if (++pick[i] < fired[i].alternatives.size()) break;
        pick[i] = 0;
        ++i;
      }
      if (i == fired.size()) return false;
    }
  }

  std::string render_atom(int pred, const Tuple& args) const {
    std::string out = preds.names[pred];
    if (!args.empty()) {
      out += "(";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ",";
        const Val& v = args[i];
        switch (v.kind) {
          case Val::K::Num: out += std::to_string(v.num); break;
          case Val::K::Sym: out += syms.names[v.sym]; break;
          case Val::K::Sup: out += "#sup"; break;
          case Val::K::Inf: out += "#inf"; break;
        }
      }
      out += ")";
    }
    return out;
  }

  Result run(long long max_models) {
    classify();
    Result res;
    std::vector<ChoiceInstance> instances = choice_instances();
    std::vector<std::size_t> pick(instances.size(), 0);
    long long emitted = 0;

    for (;;) {
      Database db = facts_db;
      for (std::size_t i = 0; i < instances.size(); ++i) {
        Tuple args = instances[i].prefix_args;
        args[instances[i].value_pos] = (*instances[i].values)[pick[i]];
        db.rel(instances[i].pred).insert(args);
      }
      Database guess_db = db;
      closure(db);
      if (!violates_constraints(db)) {
        bool stable;
        if (disjunctive_rules.empty()) {
          stable = db_equal(reduct_lfp(db), db);
          if (!stable)
            unsupported("candidate failed reduct certification; program outside supported class");
        } else {
          if (!is_model_of_reduct(db, db))
            unsupported("saturation candidate does not satisfy the program");
          stable = !has_proper_submodel(db, guess_db);
        }
        if (stable) {
          std::vector<std::string> atoms;
          for (std::size_t p = 0; p < db.rels.size(); ++p) {
            for (const Tuple& t : db.rels[p].tuples)
              atoms.push_back(render_atom(static_cast<int>(p), t));
          }
          std::sort(atoms.begin(), atoms.end());
          res.models.push_back(std::move(atoms));
          ++emitted;
          if (max_models > 0 && emitted >= max_models) {
            res.satisfiable = true;
            res.exhausted = false;
            // exhausted only if this was the last combination
            std::vector<std::size_t> probe = pick;
            std::size_t j = 0;
            while (j < instances.size()) {
              if (++probe[j] < instances[j].values->size()) break;
              probe[j] = 0;
              ++j;
            }
            res.exhausted = j == instances.size();
            return res;
          }
        }
      }
      std::size_t i = 0;
      while (i < instances.size()) {
        if (++pick[i] < instances[i].values->size()) break;
        pick[i] = 0;
        ++i;
      }
      if (i == instances.size()) break;
    }
    res.satisfiable = !res.models.empty();
    res.exhausted = true;
    return res;
  }
};

}  // namespace

Result evaluate(const asp::Program& program, long long max_models) {
  Engine e;
  e.load(program);
  return e.run(max_models);
}

Result evaluate_text(const std::string& program_text, long long max_models) {
  return evaluate(asp::parse_program(program_text), max_models);
}

}  // namespace aspeval
}  // namespace yadf
