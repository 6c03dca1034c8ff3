#ifndef DZ_SOLVER_HPP
#define DZ_SOLVER_HPP

#include <map>
#include <optional>
#include <string>

#include "dz/membership.hpp"
#include "dz/simplex.hpp"

namespace dz {

struct SolveLimits {
  std::optional<double> time_limit_s;
  std::optional<size_t> node_limit;
  Int default_bound = Int(1) << 30;  // box for variables with no declared bound
};

enum class SolveStatus { Sat, Unsat, Optimal, Infeasible, ResourceLimit };

struct SolveStats {
  size_t nodes = 0;        // search nodes explored
  size_t decisions = 0;    // branching decisions taken
  size_t propagations = 0; // bound updates from either propagator
  size_t equality_splits = 0;
  size_t lp_calls = 0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  std::map<std::string, Int> model;      // user (non-internal) variables
  std::map<std::string, Int> full_model; // every variable, on sat
  std::optional<Int> objective;
  SolveStats stats;
  std::vector<PropEvent> trace;  // propagation events, when requested
};

/// Branch-and-bound over the arithmetic part with the membership engine as a
/// theory procedure: propagate to fixpoint, fix guards, solve the exact LP
/// relaxation, split on fractional values, and repair membership violations
/// with data-driven splits. Every accepted model is re-checked by direct
/// evaluation.
SolveResult solve(const DecomposedProblem& p, const SolveLimits& limits = {},
                  bool collect_trace = false);

/// Exhaustive oracle. Enumerates user variables over their declared bounds,
/// guard bits, and one row choice per active membership (witness values
/// follow from the chosen rows), then evaluates the arithmetic part
/// directly. Throws when the space exceeds ~1e7 assignments, a variable to
/// enumerate has no finite bounds, or a table cell references an internal
/// variable.
SolveResult solve_bruteforce(const DecomposedProblem& p);

/// Decompose and solve a source problem on the lazy path.
SolveResult solve_lazy(const SourceProblem& p, const SolveLimits& limits = {},
                       bool collect_trace = false);

/// Reduce the assertion to plain linear arithmetic (materializing every
/// table) and solve the result. `max_rows` caps the materialization.
SolveResult solve_eager(const SourceProblem& p, const SolveLimits& limits = {},
                        size_t max_rows = SIZE_MAX);

}  // namespace dz

#endif
