#pragma once

#include <map>
#include <set>
#include <string>

#include "yadf/instance.hpp"
#include "yadf/truth.hpp"

namespace yadf {

enum class Semantics : std::uint8_t { Adm, Com, Prf, Grd, Mod, Stb };

const char* semantics_name(Semantics s);

// ---- ADF ------------------------------------------------------------------

/// Characteristic operator: per statement, quantify the condition over all
/// completions of v restricted to the statement's parents.
Interpretation3 gamma_adf(const AdfInstance& d, const Interpretation3& v);

/// Definitional check for adm / com / mod (mod requires v 2-valued).
bool holds(const AdfInstance& d, const Interpretation3& v, Semantics sigma);

/// Kleene iteration of gamma_adf from the all-undecided interpretation.
Interpretation3 grounded(const AdfInstance& d);

/// Reduct D^v for a 2-valued model v: true statements keep their conditions
/// with false statements replaced by bot. Throws if v is not a model.
AdfInstance reduct(const AdfInstance& d, const Interpretation3& v);

/// Exhaustive enumeration (3^|S|, or 2^|S| for mod/stb).
std::set<Interpretation3> enumerate_adf(const AdfInstance& d, Semantics sigma);

// ---- GRAPPA ----------------------------------------------------------------

/// Multiset of labels on in-edges of s whose source is true under w.
std::map<Label, long long> active_multiset(const GrappaInstance& g, const Interpretation3& w,
                                           std::size_t s);

/// Three-case extended integer for min/max over empty active sets.
struct ExtInt {
  enum class Kind : std::uint8_t { NegInf, Fin, PosInf } kind = Kind::Fin;
  long long value = 0;

  static ExtInt neg_inf() { return {Kind::NegInf, 0}; }
  static ExtInt pos_inf() { return {Kind::PosInf, 0}; }
  static ExtInt fin(long long v) { return {Kind::Fin, v}; }
  bool finite() const { return kind == Kind::Fin; }
  friend bool operator==(const ExtInt&, const ExtInt&) = default;
};

bool ext_compare(const ExtInt& lhs, Rel rel, long long rhs);

/// Value function over the active-label multiset m at statement s.
/// Numeric terms over symbolic labels throw std::invalid_argument.
ExtInt eval_term(const GrappaInstance& g, std::size_t s, const std::map<Label, long long>& m,
                 const Term& t);

bool eval_pattern(const GrappaInstance& g, std::size_t s, const std::map<Label, long long>& m,
                  const Pattern& p);

Interpretation3 gamma_grappa(const GrappaInstance& g, const Interpretation3& v);

bool holds(const GrappaInstance& g, const Interpretation3& v, Semantics sigma);

/// Exhaustive enumeration for adm / com / prf.
std::set<Interpretation3> enumerate_grappa(const GrappaInstance& g, Semantics sigma);

// ---- shared helpers ---------------------------------------------------------

/// ">= max" filter used for preferred: the <=_i-maximal elements of a set.
std::set<Interpretation3> maximal_elements(const std::set<Interpretation3>& xs);

std::string format_interpretation(const std::vector<std::string>& statements,
                                  const Interpretation3& v);

}  // namespace yadf
