#include "dz/lia.hpp"

#include <limits>

namespace dz {

namespace {

using I128 = __int128;

Int clamp_i64(I128 x) {
  if (x > std::numeric_limits<Int>::max()) return std::numeric_limits<Int>::max();
  if (x < std::numeric_limits<Int>::min()) return std::numeric_limits<Int>::min();
  return static_cast<Int>(x);
}

Int floor_div(I128 a, I128 b) {
  I128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q--;
  return clamp_i64(q);
}

Int ceil_div(I128 a, I128 b) {
  I128 q = a / b;
  if ((a % b != 0) && ((a < 0) == (b < 0))) q++;
  return clamp_i64(q);
}

}  // namespace

LinearAtom atom_from_le(const TermPtr& lhs, const TermPtr& rhs,
                        const VarRegistry& vars) {
  LinearExpr l = linearize(lhs, vars);
  LinearExpr r = linearize(rhs, vars);
  std::map<VarId, Int> coeffs;
  for (auto& [v, c] : l.terms) coeffs[v] = checked_add(coeffs[v], c);
  for (auto& [v, c] : r.terms) coeffs[v] = checked_add(coeffs[v], -c);
  LinearAtom a;
  for (auto& [v, c] : coeffs)
    if (c != 0) a.terms.emplace_back(v, c);
  a.rhs = checked_add(r.constant, -l.constant);
  return a;
}

static LinearAtom negate_atom(const LinearAtom& a) {
  LinearAtom n;
  n.terms.reserve(a.terms.size());
  for (auto& [v, c] : a.terms) n.terms.emplace_back(v, -c);
  n.rhs = checked_add(-a.rhs, -1);
  return n;
}

namespace {

struct Reifier {
  VarRegistry& vars;
  std::vector<GuardedLinearConstraint> out;

  void atom(const FormulaPtr& f, bool neg, std::optional<VarId> guard) {
    LinearAtom a = atom_from_le(f->lhs, f->rhs, vars);
    if (neg) a = negate_atom(a);
    out.push_back({guard, std::move(a)});
  }

  void contradiction(std::optional<VarId> guard) {
    out.push_back({guard, LinearAtom{{}, -1}});  // 0 <= -1
  }

  void collect_disjuncts(const FormulaPtr& f, bool neg,
                         std::vector<std::pair<FormulaPtr, bool>>& lits) {
    if (f->kind == Formula::Kind::Not) {
      collect_disjuncts(f->f, !neg, lits);
    } else if (f->kind == Formula::Kind::Or && !neg) {
      collect_disjuncts(f->f, neg, lits);
      collect_disjuncts(f->g, neg, lits);
    } else {
      lits.emplace_back(f, neg);
    }
  }

  void emit(const FormulaPtr& f, bool neg, std::optional<VarId> guard) {
    switch (f->kind) {
      case Formula::Kind::True:
        if (neg) contradiction(guard);
        return;
      case Formula::Kind::Le: atom(f, neg, guard); return;
      case Formula::Kind::Not: emit(f->f, !neg, guard); return;
      case Formula::Kind::Or: {
        if (neg) {  // conjunction
          emit(f->f, true, guard);
          emit(f->g, true, guard);
          return;
        }
        std::vector<std::pair<FormulaPtr, bool>> lits;
        collect_disjuncts(f, false, lits);
        // a one-literal "disjunction" cannot arise here, but conjunctive
        // literals can after the Not-collection above
        LinearAtom clause;
        std::vector<VarId> inds;
        inds.reserve(lits.size());
        for (size_t i = 0; i < lits.size(); i++) {
          VarId b = vars.fresh("r", 0, 1, true);
          inds.push_back(b);
          clause.terms.emplace_back(b, -1);
        }
        clause.rhs = -1;  // sum b_i >= 1
        out.push_back({guard, std::move(clause)});
        for (size_t i = 0; i < lits.size(); i++)
          emit(lits[i].first, lits[i].second, inds[i]);
        return;
      }
      case Formula::Kind::Exists:
        throw Error("internal: reify on a formula with tables");
    }
  }
};

}  // namespace

std::vector<GuardedLinearConstraint> reify(const FormulaPtr& f, VarRegistry& vars) {
  Reifier r{vars};
  r.emit(f, false, std::nullopt);
  return std::move(r.out);
}

bool constraint_active(const BoundsStore& bounds, const GuardedLinearConstraint& c) {
  if (!c.guard) return true;
  auto l = bounds.lb(*c.guard);
  return l && *l >= 1;
}

PropResult propagate_bounds(BoundsStore& bounds,
                            const std::vector<GuardedLinearConstraint>& constraints,
                            int max_sweeps,
                            std::vector<PropEvent>* trace,
                            size_t* prop_count) {
  auto record = [&](VarId v) {
    if (prop_count) (*prop_count)++;
    if (trace)
      trace->push_back({PropEvent::Source::Lia, v, bounds.lb(v), bounds.ub(v)});
  };

  for (int sweep = 0; sweep < max_sweeps; sweep++) {
    bool changed = false;
    for (const auto& c : constraints) {
      bool guard_off = false, guard_unfixed = false;
      if (c.guard) {
        auto gl = bounds.lb(*c.guard);
        auto gu = bounds.ub(*c.guard);
        if (gu && *gu <= 0) guard_off = true;
        else if (!(gl && *gl >= 1)) guard_unfixed = true;
      }
      if (guard_off) continue;

      // minimum activity of each term; -inf tracked explicitly
      I128 total_min = 0;
      int inf_count = 0;
      std::vector<I128> contrib(c.atom.terms.size(), 0);
      std::vector<bool> contrib_inf(c.atom.terms.size(), false);
      for (size_t i = 0; i < c.atom.terms.size(); i++) {
        auto [v, a] = c.atom.terms[i];
        std::optional<Int> e = (a > 0) ? bounds.lb(v) : bounds.ub(v);
        if (!e) {
          contrib_inf[i] = true;
          inf_count++;
        } else {
          contrib[i] = static_cast<I128>(a) * static_cast<I128>(*e);
          total_min += contrib[i];
        }
      }

      if (inf_count == 0 && total_min > c.atom.rhs) {
        if (guard_unfixed) {
          auto t = bounds.tighten_ub(*c.guard, 0);
          if (t == BoundsStore::Tighten::Conflict) return PropResult::Conflict;
          if (t == BoundsStore::Tighten::Changed) {
            record(*c.guard);
            changed = true;
          }
          continue;
        }
        return PropResult::Conflict;
      }
      if (guard_unfixed) continue;  // only participates once fixed to 1
      if (inf_count >= 2) continue;

      for (size_t i = 0; i < c.atom.terms.size(); i++) {
        auto [v, a] = c.atom.terms[i];
        if (inf_count == 1 && !contrib_inf[i]) continue;
        I128 rest = contrib_inf[i] ? total_min : total_min - contrib[i];
        I128 room = static_cast<I128>(c.atom.rhs) - rest;
        BoundsStore::Tighten t;
        if (a > 0) {
          t = bounds.tighten_ub(v, floor_div(room, a));
        } else {
          t = bounds.tighten_lb(v, ceil_div(room, a));
        }
        if (t == BoundsStore::Tighten::Conflict) {
          record(v);
          return PropResult::Conflict;
        }
        if (t == BoundsStore::Tighten::Changed) {
          record(v);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return PropResult::Fixpoint;
}

}  // namespace dz
