#ifndef DZ_PARSER_HPP
#define DZ_PARSER_HPP

#include <string>

#include "dz/ast.hpp"

namespace dz {

/// Parse a problem in the s-expression surface syntax.
///
///   (declare-int x)           (declare-int x lo hi)
///   (table T csv "rows.csv")  (table T ((1 2) (?a 4)))
///   (assert F)                (minimize t) / (maximize t)
///
/// `base_dir` resolves relative CSV paths. Derived formula operators
/// (and, =, <, >, >=) are desugared into {<=, not, or} during parsing.
SourceProblem parse(const std::string& text, const std::string& base_dir = ".");

/// Read a CSV file into an input table. Cell tokens: integer literal,
/// `?v`, `?v+3`, `?v-2`. Lines starting with '#' are skipped.
TablePtr ingest_csv(const std::string& path, const std::string& name);

/// Same, from an in-memory string (used by tests and generators).
TablePtr ingest_csv_text(const std::string& text, const std::string& name);

/// Render a problem back into surface syntax. parse(print_problem(p))
/// yields a problem structurally equal to p.
std::string print_problem(const SourceProblem& p);

}  // namespace dz

#endif
