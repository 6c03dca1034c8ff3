#ifndef DZ_BOUNDS_HPP
#define DZ_BOUNDS_HPP

#include <optional>
#include <vector>

#include "dz/problem.hpp"

namespace dz {

/// Per-variable integer bounds with +-infinity (nullopt) and a trail for
/// exact backtracking.
class BoundsStore {
 public:
  void init(const VarRegistry& vars);
  /// Replace missing bounds with +-magnitude (finite search space).
  void apply_default_bounds(Int magnitude);

  size_t size() const { return lb_.size(); }
  std::optional<Int> lb(VarId v) const { return lb_[v]; }
  std::optional<Int> ub(VarId v) const { return ub_[v]; }
  bool is_fixed(VarId v) const { return lb_[v] && ub_[v] && *lb_[v] == *ub_[v]; }
  bool fixed_at(VarId v, Int x) const { return is_fixed(v) && *lb_[v] == x; }

  enum class Tighten { NoChange, Changed, Conflict };
  Tighten tighten_lb(VarId v, Int x);
  Tighten tighten_ub(VarId v, Int x);

  size_t mark() const { return trail_.size(); }
  void undo_to(size_t mark);

  bool operator==(const BoundsStore& o) const {
    return lb_ == o.lb_ && ub_ == o.ub_;
  }

 private:
  std::vector<std::optional<Int>> lb_, ub_;
  struct Change {
    VarId var;
    bool upper;
    std::optional<Int> old;
  };
  std::vector<Change> trail_;
};

}  // namespace dz

#endif
