#ifndef DZ_LIA_HPP
#define DZ_LIA_HPP

#include <vector>

#include "dz/bounds.hpp"
#include "dz/problem.hpp"

namespace dz {

/// sum of coeff * var <= rhs.
struct LinearAtom {
  std::vector<std::pair<VarId, Int>> terms;
  Int rhs = 0;
};

/// A linear atom that applies only while its guard variable (if any) is
/// fixed to 1.
struct GuardedLinearConstraint {
  std::optional<VarId> guard;
  LinearAtom atom;
};

LinearAtom atom_from_le(const TermPtr& lhs, const TermPtr& rhs,
                        const VarRegistry& vars);

/// Polarity-based (implication-only) reification of a pair- and table-free
/// formula in negation-free context. Atoms in purely conjunctive position
/// become unguarded constraints; each disjunct gets a fresh 0/1 indicator
/// b_i, a clause sum b_i >= 1, and its constraints guarded by b_i.
/// Negated atoms use the integer-tight rewrite not(t <= c) -> -t <= -c-1.
std::vector<GuardedLinearConstraint> reify(const FormulaPtr& f, VarRegistry& vars);

struct PropEvent {
  enum class Source { Lia, Membership, UniqueFix };
  Source source;
  VarId var;
  std::optional<Int> lb, ub;  // bounds after the update
};

enum class PropResult { Fixpoint, Conflict };

/// Interval propagation over the active constraints: for each constraint
/// tighten every variable using the extreme values of the others; a guard
/// whose constraint cannot hold is fixed to 0. Sweeps are capped; the LP
/// relaxation backs up completeness.
PropResult propagate_bounds(BoundsStore& bounds,
                            const std::vector<GuardedLinearConstraint>& constraints,
                            int max_sweeps = 20,
                            std::vector<PropEvent>* trace = nullptr,
                            size_t* prop_count = nullptr);

/// True when the constraint participates: no guard, or guard fixed to 1.
bool constraint_active(const BoundsStore& bounds, const GuardedLinearConstraint& c);

}  // namespace dz

#endif
