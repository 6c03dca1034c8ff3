#ifndef DZ_SMTLIB_HPP
#define DZ_SMTLIB_HPP

#include <string>

#include "dz/problem.hpp"

namespace dz {

/// Render a pair- and table-free formula as an SMT-LIB 2 QF_LIA script:
/// logic header, one declaration per registered variable, bound assertions,
/// the formula, `(check-sat)`, and optionally `(get-model)`. Negative
/// literals use unary minus `(- k)`; no let-sharing.
std::string emit_smtlib(const FormulaPtr& f, const VarRegistry& vars,
                        bool get_model = false);

/// Minimal independent SMT-LIB 2 reader: tokenizes and parses the script,
/// checks command shapes, that every symbol in an assertion is a declared
/// constant or a QF_LIA operator, and that declarations are unique. Throws
/// Error on any violation.
void check_smtlib_grammar(const std::string& script);

}  // namespace dz

#endif
