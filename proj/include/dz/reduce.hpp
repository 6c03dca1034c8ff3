#ifndef DZ_REDUCE_HPP
#define DZ_REDUCE_HPP

#include <memory>
#include <vector>

#include "dz/ast.hpp"

namespace dz {

/// A row term together with the condition under which it is present in the
/// table being reduced.
struct GuardedRow {
  TermPtr row;
  FormulaPtr guard;
};

/// Materialize a table expression into guarded rows. Duplicates are kept;
/// union is concatenation. Throws Error when the number of produced rows
/// would exceed `max_rows`.
std::vector<GuardedRow> reduce_table(const TablePtr& d,
                                     size_t max_rows = SIZE_MAX);

/// Reduce a full formula to quantifier- and table-free linear arithmetic:
/// each nonemptiness atom becomes the disjunction of its table's guards,
/// and all pair constructors/accessors are eliminated.
FormulaPtr reduce_formula(const FormulaPtr& f, size_t max_rows = SIZE_MAX);

/// Rewrite fst((a, b)) -> a and snd((a, b)) -> b to fixpoint. Throws on an
/// accessor that does not resolve (cannot happen on typed, table-free input).
TermPtr eliminate_pairs(const TermPtr& t);
FormulaPtr eliminate_pairs(const FormulaPtr& f);

// ---- QBF encoding ----------------------------------------------------------

struct QbfExpr;
using QbfExprPtr = std::shared_ptr<const QbfExpr>;

struct QbfExpr {
  enum class Kind { Var, Not, And, Or };
  Kind kind;
  int var = 0;
  QbfExprPtr a, b;

  static QbfExprPtr mk_var(int v);
  static QbfExprPtr mk_not(QbfExprPtr x);
  static QbfExprPtr mk_and(QbfExprPtr x, QbfExprPtr y);
  static QbfExprPtr mk_or(QbfExprPtr x, QbfExprPtr y);
};

/// Closed prenex QBF: prefix of (is_forall, variable index) pairs, matrix
/// over those variables.
struct Qbf {
  std::vector<std::pair<bool, int>> prefix;
  QbfExprPtr matrix;
};

/// Encode a QBF into a formula over the two-row input table {0, 1}:
/// exists x. phi -> (exists (sel x enc(phi) B)), forall x. phi ->
/// (not (exists (sel x (not enc(phi)) B))); literals map to x = 1 / x = 0.
/// The result is satisfiable iff the QBF is true. Throws on free variables.
FormulaPtr encode_qbf(const Qbf& q);

}  // namespace dz

#endif
