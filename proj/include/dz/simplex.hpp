#ifndef DZ_SIMPLEX_HPP
#define DZ_SIMPLEX_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "dz/lia.hpp"

namespace dz {

using Rational = boost::multiprecision::cpp_rational;

struct LpResult {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Infeasible;
  std::vector<Rational> values;  // indexed by VarId; lb for untouched vars
  Rational objective = 0;        // value of the given objective (0 if none)
};

/// Exact LP relaxation of the active constraints over box bounds. Every
/// variable must have finite bounds (apply_default_bounds first). Two-phase
/// full-tableau simplex with Bland's rule, so it terminates without
/// numerical tolerance games. `objective` is minimized; pass negated
/// coefficients to maximize.
LpResult lp_check(const BoundsStore& bounds,
                  const std::vector<GuardedLinearConstraint>& constraints,
                  const std::vector<std::pair<VarId, Int>>* objective = nullptr);

/// Lowest-id variable with a fractional LP value, with the floor of that
/// value; nullopt when the solution is integral.
std::optional<std::pair<VarId, Int>> first_fractional(const LpResult& r);

}  // namespace dz

#endif
