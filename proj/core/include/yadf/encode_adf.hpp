#pragma once

#include <string>
#include <vector>

#include "yadf/asp.hpp"
#include "yadf/instance.hpp"
#include "yadf/oracle.hpp"  // Semantics

namespace yadf {

/// Names the variables of one condition-evaluation block: leaf variables for
/// the parents come first (V0..Vk-1 in parent order), operator and constant
/// nodes are numbered children-first from there.
class VarCounter {
 public:
  explicit VarCounter(std::string prefix, int start = 0) : prefix_(std::move(prefix)), next_(start) {}
  std::string fresh() { return prefix_ + std::to_string(next_++); }
  std::string at(int i) const { return prefix_ + std::to_string(i); }
  int next_index() const { return next_; }

 private:
  std::string prefix_;
  int next_;
};

struct OmegaResult {
  std::vector<asp::Literal> literals;
  std::string root;
};

/// Truth propagation literals for a desugared condition: one comparison per
/// operator node (& ? 1-), constants bind V=1 / V=0, var leaves contribute
/// nothing and use the pre-assigned leaf variable.
OmegaResult omega(const Formula& desugared, const std::vector<std::string>& parent_order,
                  const std::vector<std::string>& leaf_vars, VarCounter& nodes);

/// Per parent t of s: asg(t,Yi), leq(Yi,Vi); then the omega literals.
OmegaResult omega_body(const AdfInstance& d, std::size_t s, const std::string& asg_pred);

asp::Program encode_adm(const AdfInstance& d);
asp::Program encode_com(const AdfInstance& d);
asp::Program encode_prf(const AdfInstance& d);
asp::Program encode_grd(const AdfInstance& d);
asp::Program encode_stb(const AdfInstance& d);

asp::Program encode_adf(const AdfInstance& d, Semantics sigma);

enum class QueryMode : std::uint8_t { Credulous, Skeptical };

/// Appends the query constraint: credulous ":- not asg(s,1).", skeptical
/// ":- asg(s,1).". Throws std::invalid_argument for unknown statements.
asp::Program attach_query(asp::Program p, QueryMode mode, const std::string& statement,
                          const std::vector<std::string>& statements);

}  // namespace yadf
