#include "dz/membership.hpp"

#include <algorithm>
#include <limits>

namespace dz {

namespace {

using I128 = __int128;

Int clamp_i64(I128 x) {
  if (x > std::numeric_limits<Int>::max()) return std::numeric_limits<Int>::max();
  if (x < std::numeric_limits<Int>::min()) return std::numeric_limits<Int>::min();
  return static_cast<Int>(x);
}

std::optional<Int> cell_lo(const Cell& c, const BoundsStore& b) {
  if (c.kind == Cell::Kind::Const) return c.c;
  auto l = b.lb(c.var);
  if (!l) return std::nullopt;
  return clamp_i64(static_cast<I128>(*l) + static_cast<I128>(c.c));
}

std::optional<Int> cell_hi(const Cell& c, const BoundsStore& b) {
  if (c.kind == Cell::Kind::Const) return c.c;
  auto u = b.ub(c.var);
  if (!u) return std::nullopt;
  return clamp_i64(static_cast<I128>(*u) + static_cast<I128>(c.c));
}

Int cell_value(const Cell& c, const std::vector<Int>& values) {
  if (c.kind == Cell::Kind::Const) return c.c;
  return checked_add(values[c.var], c.c);
}

LinearAtom diff_le(VarId x, VarId v, Int rhs) {  // x - v <= rhs
  LinearAtom a;
  a.terms.emplace_back(x, 1);
  a.terms.emplace_back(v, -1);
  a.rhs = rhs;
  std::sort(a.terms.begin(), a.terms.end());
  return a;
}

LinearAtom var_le(VarId x, Int rhs, Int coeff) {  // coeff*x <= rhs
  LinearAtom a;
  a.terms.emplace_back(x, coeff);
  a.rhs = rhs;
  return a;
}

}  // namespace

MembershipEngine::MembershipEngine(const VarRegistry& vars,
                                   std::vector<MembershipConstraint> ms)
    : vars_(vars), ms_(std::move(ms)), emitted_(ms_.size(), false) {}

void MembershipEngine::undo_to(Mark m) {
  while (eq_trail_.size() > m.eq) {
    auto& [k, old] = eq_trail_.back();
    if (old == EqStatus::Undecided)
      eq_.erase(k);
    else
      eq_[k] = old;
    eq_trail_.pop_back();
  }
  while (em_trail_.size() > m.em) {
    emitted_[em_trail_.back()] = false;
    em_trail_.pop_back();
  }
}

EqStatus MembershipEngine::status(const EqKey& k) const {
  auto it = eq_.find(k);
  return it == eq_.end() ? EqStatus::Undecided : it->second;
}

void MembershipEngine::set_status(const EqKey& k, EqStatus s) {
  eq_trail_.emplace_back(k, status(k));
  eq_[k] = s;
}

MembershipEngine::Activity MembershipEngine::activity(
    const MembershipConstraint& m, const BoundsStore& b) const {
  if (!m.guard) return Activity::On;
  auto gl = b.lb(*m.guard);
  auto gu = b.ub(*m.guard);
  if (gu && *gu <= 0) return Activity::Off;
  if (gl && *gl >= 1) return Activity::On;
  return Activity::Unfixed;
}

bool MembershipEngine::row_is_candidate(const MembershipConstraint& m, size_t r,
                                        const BoundsStore& b) const {
  for (size_t j = 0; j < m.witness.size(); j++) {
    const Cell& cell = m.rows[r][j];
    if (cell.kind != Cell::Kind::Const &&
        status({m.witness[j], cell.var, cell.c}) == EqStatus::Neq)
      return false;
    auto wl = b.lb(m.witness[j]);
    auto wu = b.ub(m.witness[j]);
    auto cl = cell_lo(cell, b);
    auto ch = cell_hi(cell, b);
    if (wl && ch && *wl > *ch) return false;
    if (wu && cl && *cl > *wu) return false;
  }
  return true;
}

std::vector<size_t> MembershipEngine::candidates(size_t ci,
                                                 const BoundsStore& b) const {
  std::vector<size_t> out;
  for (size_t r = 0; r < ms_[ci].rows.size(); r++)
    if (row_is_candidate(ms_[ci], r, b)) out.push_back(r);
  return out;
}

PropResult MembershipEngine::propagate(BoundsStore& bounds,
                                       std::vector<LinearAtom>& learned,
                                       std::vector<PropEvent>* trace,
                                       size_t* prop_count) {
  auto record = [&](PropEvent::Source src, VarId v) {
    if (prop_count) (*prop_count)++;
    if (trace) trace->push_back({src, v, bounds.lb(v), bounds.ub(v)});
  };

  for (int sweep = 0; sweep < 20; sweep++) {
    bool changed = false;
    for (size_t ci = 0; ci < ms_.size(); ci++) {
      const MembershipConstraint& m = ms_[ci];
      Activity act = activity(m, bounds);
      if (act == Activity::Off) continue;

      std::vector<size_t> cands = candidates(ci, bounds);
      if (cands.empty()) {
        if (act == Activity::Unfixed) {
          auto t = bounds.tighten_ub(*m.guard, 0);
          if (t == BoundsStore::Tighten::Conflict) return PropResult::Conflict;
          if (t == BoundsStore::Tighten::Changed) {
            record(PropEvent::Source::Membership, *m.guard);
            changed = true;
          }
          continue;
        }
        return PropResult::Conflict;
      }
      if (act == Activity::Unfixed) continue;

      bool unique = cands.size() == 1;
      auto src = unique ? PropEvent::Source::UniqueFix
                        : PropEvent::Source::Membership;
      for (size_t j = 0; j < m.witness.size(); j++) {
        // hull of the candidate cells in this column
        std::optional<Int> lo, hi;
        bool lo_inf = false, hi_inf = false;
        for (size_t r : cands) {
          auto cl = cell_lo(m.rows[r][j], bounds);
          auto ch = cell_hi(m.rows[r][j], bounds);
          if (!cl) lo_inf = true;
          else if (!lo || *cl < *lo) lo = cl;
          if (!ch) hi_inf = true;
          else if (!hi || *ch > *hi) hi = ch;
        }
        if (!lo_inf && lo) {
          auto t = bounds.tighten_lb(m.witness[j], *lo);
          if (t != BoundsStore::Tighten::NoChange) {
            record(src, m.witness[j]);
            if (t == BoundsStore::Tighten::Conflict) return PropResult::Conflict;
            changed = true;
          }
        }
        if (!hi_inf && hi) {
          auto t = bounds.tighten_ub(m.witness[j], *hi);
          if (t != BoundsStore::Tighten::NoChange) {
            record(src, m.witness[j]);
            if (t == BoundsStore::Tighten::Conflict) return PropResult::Conflict;
            changed = true;
          }
        }
      }

      if (unique && !emitted_[ci]) {
        emitted_[ci] = true;
        em_trail_.push_back(ci);
        for (size_t j = 0; j < m.witness.size(); j++) {
          const Cell& cell = m.rows[cands[0]][j];
          if (cell.kind == Cell::Kind::Const) continue;
          learned.push_back(diff_le(m.witness[j], cell.var, cell.c));
          learned.push_back(diff_le(cell.var, m.witness[j], -cell.c));
          EqKey k{m.witness[j], cell.var, cell.c};
          if (status(k) == EqStatus::Undecided) set_status(k, EqStatus::Eq);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return PropResult::Fixpoint;
}

bool MembershipEngine::check_model(const std::vector<Int>& values) const {
  for (const auto& m : ms_) {
    if (m.guard && values[*m.guard] < 1) continue;
    bool found = false;
    for (const auto& row : m.rows) {
      bool all = true;
      for (size_t j = 0; j < m.witness.size(); j++) {
        if (values[m.witness[j]] != cell_value(row[j], values)) {
          all = false;
          break;
        }
      }
      if (all) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::optional<Branch> MembershipEngine::suggest_branch(
    const BoundsStore& bounds, const std::vector<Int>* model) {
  if (model) {
    for (size_t ci = 0; ci < ms_.size(); ci++) {
      const MembershipConstraint& m = ms_[ci];
      if (m.guard && (*model)[*m.guard] < 1) continue;
      bool sat = false;
      for (const auto& row : m.rows) {
        bool all = true;
        for (size_t j = 0; j < m.witness.size(); j++)
          if ((*model)[m.witness[j]] != cell_value(row[j], *model)) {
            all = false;
            break;
          }
        if (all) {
          sat = true;
          break;
        }
      }
      if (sat) continue;

      for (size_t r : candidates(ci, bounds)) {
        for (size_t j = 0; j < m.witness.size(); j++) {
          const Cell& cell = m.rows[r][j];
          VarId x = m.witness[j];
          Int wv = (*model)[x];
          Int cv = cell_value(cell, *model);
          if (wv == cv) continue;
          if (cell.kind == Cell::Kind::Const) {
            // split strictly inside the witness box: both children shrink it
            Int s = std::max(cell.c, wv);
            Branch b;
            b.options.push_back({{var_le(x, s - 1, 1)}, std::nullopt});
            b.options.push_back({{var_le(x, -s, -1)}, std::nullopt});
            return b;
          }
          EqKey k{x, cell.var, cell.c};
          if (status(k) != EqStatus::Undecided) continue;
          Branch b;
          b.options.push_back(
              {{diff_le(x, cell.var, cell.c - 1)}, {{k, EqStatus::Neq}}});
          b.options.push_back({{diff_le(x, cell.var, cell.c),
                                diff_le(cell.var, x, -cell.c)},
                               {{k, EqStatus::Eq}}});
          b.options.push_back(
              {{diff_le(cell.var, x, -cell.c - 1)}, {{k, EqStatus::Neq}}});
          return b;
        }
      }
    }
    return std::nullopt;
  }

  for (size_t ci = 0; ci < ms_.size(); ci++) {
    const MembershipConstraint& m = ms_[ci];
    if (activity(m, bounds) != Activity::On) continue;
    std::vector<size_t> cands = candidates(ci, bounds);
    if (cands.size() <= 1) continue;
    // bound split on the column with the most distinct constants (ties by
    // lowest index), at their median
    size_t best_col = m.witness.size();
    std::vector<Int> best_consts;
    for (size_t j = 0; j < m.witness.size(); j++) {
      if (bounds.is_fixed(m.witness[j])) continue;
      std::vector<Int> consts;
      for (size_t r : cands)
        if (m.rows[r][j].kind == Cell::Kind::Const)
          consts.push_back(m.rows[r][j].c);
      std::sort(consts.begin(), consts.end());
      consts.erase(std::unique(consts.begin(), consts.end()), consts.end());
      if (consts.size() >= 2 && consts.size() > best_consts.size()) {
        best_col = j;
        best_consts = std::move(consts);
      }
    }
    if (best_col < m.witness.size()) {
      Int c = best_consts[best_consts.size() / 2];
      Branch b;
      b.options.push_back({{var_le(m.witness[best_col], c - 1, 1)}, std::nullopt});
      b.options.push_back({{var_le(m.witness[best_col], -c, -1)}, std::nullopt});
      return b;
    }
    for (size_t r : cands) {
      for (size_t j = 0; j < m.witness.size(); j++) {
        const Cell& cell = m.rows[r][j];
        if (cell.kind == Cell::Kind::Const) continue;
        EqKey k{m.witness[j], cell.var, cell.c};
        if (status(k) != EqStatus::Undecided) continue;
        Branch b;
        b.options.push_back(
            {{diff_le(k.x, k.v, k.c - 1)}, {{k, EqStatus::Neq}}});
        b.options.push_back(
            {{diff_le(k.x, k.v, k.c), diff_le(k.v, k.x, -k.c)},
             {{k, EqStatus::Eq}}});
        b.options.push_back(
            {{diff_le(k.v, k.x, -k.c - 1)}, {{k, EqStatus::Neq}}});
        return b;
      }
    }
  }
  return std::nullopt;
}

}  // namespace dz
