#ifndef DZ_DECOMPOSE_HPP
#define DZ_DECOMPOSE_HPP

#include "dz/problem.hpp"

namespace dz {

/// Transform an existential-fragment problem into decomposed form. Every
/// nonemptiness atom gets a fresh 0/1 guard g and is replaced by the atom
/// 1 <= g; the witnessed table membership is rewritten to (conditional)
/// membership constraints over input tables:
///   (x, y) in D x E   ->  x in D and y in E
///   x in D union E    ->  guards b1, b2 with b1 + b2 >= 1
///   x in sel(y, F, D) ->  F[y/x] and x in D
/// Witness rows are flattened to tuples of fresh int variables; cell terms
/// outside {c, v, v+c} are abstracted by a fresh variable plus a defining
/// equality. Throws Error when the formula is not in the fragment.
DecomposedProblem decompose(const SourceProblem& problem);

/// The defining expansion of a membership constraint:
/// OR over rows of (AND over columns of x_i = cell_{j,i}). The guard is not
/// included.
FormulaPtr membership_to_disjunction(const MembershipConstraint& m,
                                     const VarRegistry& vars);

/// Classify a pair-free term as a table cell if it has the shape c, v, or
/// v + c; returns nullopt otherwise.
std::optional<Cell> cell_of_term(const TermPtr& t, const VarRegistry& vars);

}  // namespace dz

#endif
