#ifndef DZ_ANALYSIS_HPP
#define DZ_ANALYSIS_HPP

#include "dz/ast.hpp"

namespace dz {

/// Number of input tables that can participate in a cross product below
/// this node. Input table -> 1; selection -> rank of condition + rank of
/// table; product -> sum; union and disjunction -> max; atoms -> 0;
/// negation and nonemptiness pass through.
int rank(const FormulaPtr& f);
int rank(const TablePtr& d);

/// True iff every table-nonemptiness operator occurs below an even number
/// of negations, counting negations inside selection conditions along the
/// path as well.
bool is_existential(const FormulaPtr& f);

}  // namespace dz

#endif
