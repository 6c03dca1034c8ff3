#include "dz/bounds.hpp"

namespace dz {

void BoundsStore::init(const VarRegistry& vars) {
  lb_.clear();
  ub_.clear();
  trail_.clear();
  lb_.resize(vars.size());
  ub_.resize(vars.size());
  for (size_t i = 0; i < vars.size(); i++) {
    lb_[i] = vars[static_cast<VarId>(i)].lb;
    ub_[i] = vars[static_cast<VarId>(i)].ub;
  }
}

void BoundsStore::apply_default_bounds(Int magnitude) {
  for (size_t i = 0; i < lb_.size(); i++) {
    if (!lb_[i]) lb_[i] = -magnitude;
    if (!ub_[i]) ub_[i] = magnitude;
  }
}

BoundsStore::Tighten BoundsStore::tighten_lb(VarId v, Int x) {
  if (lb_[v] && *lb_[v] >= x) return Tighten::NoChange;
  trail_.push_back({v, false, lb_[v]});
  lb_[v] = x;
  if (ub_[v] && *ub_[v] < x) return Tighten::Conflict;
  return Tighten::Changed;
}

BoundsStore::Tighten BoundsStore::tighten_ub(VarId v, Int x) {
  if (ub_[v] && *ub_[v] <= x) return Tighten::NoChange;
  trail_.push_back({v, true, ub_[v]});
  ub_[v] = x;
  if (lb_[v] && *lb_[v] > x) return Tighten::Conflict;
  return Tighten::Changed;
}

void BoundsStore::undo_to(size_t mark) {
  while (trail_.size() > mark) {
    const Change& c = trail_.back();
    if (c.upper)
      ub_[c.var] = c.old;
    else
      lb_[c.var] = c.old;
    trail_.pop_back();
  }
}

}  // namespace dz
