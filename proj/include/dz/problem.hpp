#ifndef DZ_PROBLEM_HPP
#define DZ_PROBLEM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dz/ast.hpp"

namespace dz {

using VarId = int;

struct VarInfo {
  std::string name;
  std::optional<Int> lb, ub;  // declared bounds; defaults applied at solve time
  bool internal = false;      // introduced by decomposition/reification
  bool is_guard = false;      // 0/1 indicator controlling other constraints
};

class VarRegistry {
 public:
  VarId intern(const std::string& name, std::optional<Int> lb = {},
               std::optional<Int> ub = {}, bool internal = false,
               bool is_guard = false);
  VarId fresh(const std::string& prefix, std::optional<Int> lb,
              std::optional<Int> ub, bool is_guard = false);
  VarId id(const std::string& name) const;  // throws if unknown
  std::optional<VarId> find(const std::string& name) const;
  const VarInfo& operator[](VarId v) const { return vars_[v]; }
  size_t size() const { return vars_.size(); }

 private:
  std::vector<VarInfo> vars_;
  std::map<std::string, VarId> index_;
  int fresh_ctr_ = 0;
};

/// sum of coeff * var, plus a constant.
struct LinearExpr {
  std::vector<std::pair<VarId, Int>> terms;  // sorted by VarId, coeffs nonzero
  Int constant = 0;
};

/// Flatten a pair-free term into a linear expression; every variable must
/// already be registered.
LinearExpr linearize(const TermPtr& t, const VarRegistry& vars);

/// A table cell: constant, variable, or variable-plus-constant.
struct Cell {
  enum class Kind { Const, Var, VarPlus };
  Kind kind = Kind::Const;
  VarId var = -1;
  Int c = 0;

  static Cell constant(Int v) { return {Kind::Const, -1, v}; }
  static Cell variable(VarId v) { return {Kind::Var, v, 0}; }
  static Cell var_plus(VarId v, Int c) { return {Kind::VarPlus, v, c}; }
};

/// Witness row (x_1..x_k) constrained to equal, column-wise, some row of a
/// finite table. When `guard` is set, the constraint applies only if the
/// guard variable is 1.
struct MembershipConstraint {
  std::vector<VarId> witness;
  std::vector<std::vector<Cell>> rows;  // l rows of k cells
  std::optional<VarId> guard;
};

/// A conjunction of a table-free arithmetic formula and (conditional)
/// membership constraints, plus bounds and an optional linear objective.
struct DecomposedProblem {
  VarRegistry vars;
  FormulaPtr qflia;  // pair- and table-free
  std::vector<MembershipConstraint> memberships;
  std::optional<std::pair<bool /*maximize*/, LinearExpr>> objective;
};

}  // namespace dz

#endif
