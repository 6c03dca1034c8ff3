#ifndef DZ_TYPECHECK_HPP
#define DZ_TYPECHECK_HPP

#include <unordered_map>

#include "dz/ast.hpp"

namespace dz {

/// Types computed for each node. Keyed by node identity; valid as long as
/// the checked AST is alive.
struct TypeAnnotations {
  std::unordered_map<const Term*, DType> term_type;
  std::unordered_map<const Table*, DType> schema;

  DType of(const TermPtr& t) const { return term_type.at(t.get()); }
  DType of(const TablePtr& d) const { return schema.at(d.get()); }
};

/// Check the whole problem: assertion, objective, declared tables.
/// Throws Error on ill-typed input (accessor on int, arithmetic on pairs,
/// union schema mismatch, heterogeneous input rows).
TypeAnnotations typecheck(const SourceProblem& problem);

/// Recompute the schema of a table expression structurally. Free variables
/// are assumed int; binders get the schema of their table. Useful after
/// substitution invalidates node-keyed annotations.
DType schema_of(const TablePtr& d);

}  // namespace dz

#endif
