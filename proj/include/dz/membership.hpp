#ifndef DZ_MEMBERSHIP_HPP
#define DZ_MEMBERSHIP_HPP

#include <map>
#include <vector>

#include "dz/lia.hpp"

namespace dz {

/// Identity of an asserted (dis)equality between a witness component and a
/// symbolic cell: x ?= v + c.
struct EqKey {
  VarId x = -1;
  VarId v = -1;
  Int c = 0;
  bool operator<(const EqKey& o) const {
    if (x != o.x) return x < o.x;
    if (v != o.v) return v < o.v;
    return c < o.c;
  }
};

enum class EqStatus { Undecided, Eq, Neq };

/// One child of a branching decision: atoms to assert locally, plus an
/// optional equality-status update for the engine.
struct BranchOption {
  std::vector<LinearAtom> atoms;
  std::optional<std::pair<EqKey, EqStatus>> status;
};

struct Branch {
  std::vector<BranchOption> options;
};

/// Theory procedure for conditional row-membership constraints. Candidate
/// rows are recomputed from the current bounds (interval overlap per column,
/// filtered by asserted disequalities); propagation projects the candidate
/// hull onto the witness, fixes witness components on a unique candidate,
/// and fixes a guard to 0 when its candidate set empties.
class MembershipEngine {
 public:
  MembershipEngine(const VarRegistry& vars,
                   std::vector<MembershipConstraint> ms);

  struct Mark {
    size_t eq = 0, em = 0;
  };
  Mark mark() const { return {eq_trail_.size(), em_trail_.size()}; }
  void undo_to(Mark m);

  EqStatus status(const EqKey& k) const;
  void set_status(const EqKey& k, EqStatus s);  // trailed

  /// Tighten witness bounds from candidate hulls; unique-candidate symbolic
  /// cells emit equality atoms into `learned` (once per path). Conflict when
  /// an unconditionally active constraint has no candidates.
  PropResult propagate(BoundsStore& bounds, std::vector<LinearAtom>& learned,
                       std::vector<PropEvent>* trace = nullptr,
                       size_t* prop_count = nullptr);

  /// True when every active constraint has a row agreeing with `values`
  /// (indexed by VarId) on all columns.
  bool check_model(const std::vector<Int>& values) const;

  /// Data-driven split. With a model, target a constraint the model violates:
  /// an undecided symbolic cell yields a three-way <,=,> split, a constant
  /// cell a two-way bound split that strictly shrinks the witness box.
  /// Without a model, split the first multi-candidate column at the median
  /// distinct constant, else on an undecided symbolic cell.
  std::optional<Branch> suggest_branch(const BoundsStore& bounds,
                                       const std::vector<Int>* model = nullptr);

  /// Candidate row indices of constraint `ci` under `bounds` (test hook).
  std::vector<size_t> candidates(size_t ci, const BoundsStore& bounds) const;

  size_t size() const { return ms_.size(); }
  const MembershipConstraint& constraint(size_t ci) const { return ms_[ci]; }

 private:
  enum class Activity { Off, Unfixed, On };
  Activity activity(const MembershipConstraint& m, const BoundsStore& b) const;
  bool row_is_candidate(const MembershipConstraint& m, size_t r,
                        const BoundsStore& b) const;

  const VarRegistry& vars_;
  std::vector<MembershipConstraint> ms_;
  std::map<EqKey, EqStatus> eq_;
  std::vector<std::pair<EqKey, EqStatus>> eq_trail_;  // old values
  std::vector<bool> emitted_;                         // unique-fix done for ci
  std::vector<size_t> em_trail_;
};

}  // namespace dz

#endif
