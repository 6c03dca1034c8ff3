#include "dz/decompose.hpp"

#include <map>

#include "dz/analysis.hpp"
#include "dz/reduce.hpp"
#include "dz/typecheck.hpp"

namespace dz {

// ---- VarRegistry / linearize ------------------------------------------------

VarId VarRegistry::intern(const std::string& name, std::optional<Int> lb,
                          std::optional<Int> ub, bool internal, bool is_guard) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  VarId v = static_cast<VarId>(vars_.size());
  vars_.push_back(VarInfo{name, lb, ub, internal, is_guard});
  index_[name] = v;
  return v;
}

VarId VarRegistry::fresh(const std::string& prefix, std::optional<Int> lb,
                         std::optional<Int> ub, bool is_guard) {
  std::string name = "%" + prefix + std::to_string(fresh_ctr_++);
  return intern(name, lb, ub, true, is_guard);
}

VarId VarRegistry::id(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw Error("unregistered variable '" + name + "'");
  return it->second;
}

std::optional<VarId> VarRegistry::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

void lin(const TermPtr& t, Int mult, std::map<VarId, Int>& coeffs, Int& constant,
         const VarRegistry& vars) {
  switch (t->kind) {
    case Term::Kind::Const:
      constant = checked_add(constant, checked_mul(mult, t->value));
      return;
    case Term::Kind::Var: {
      VarId v = vars.id(t->var);
      coeffs[v] = checked_add(coeffs[v], mult);
      return;
    }
    case Term::Kind::Add:
      lin(t->a, mult, coeffs, constant, vars);
      lin(t->b, mult, coeffs, constant, vars);
      return;
    case Term::Kind::Mul:
      lin(t->a, checked_mul(mult, t->value), coeffs, constant, vars);
      return;
    case Term::Kind::Pair:
    case Term::Kind::Fst:
    case Term::Kind::Snd:
      throw Error("internal: pair construct in linear term");
  }
}

}  // namespace

LinearExpr linearize(const TermPtr& t, const VarRegistry& vars) {
  std::map<VarId, Int> coeffs;
  LinearExpr e;
  lin(t, 1, coeffs, e.constant, vars);
  for (auto& [v, c] : coeffs)
    if (c != 0) e.terms.emplace_back(v, c);
  return e;
}

std::optional<Cell> cell_of_term(const TermPtr& t, const VarRegistry& vars) {
  LinearExpr e;
  try {
    e = linearize(t, vars);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (e.terms.empty()) return Cell::constant(e.constant);
  if (e.terms.size() == 1 && e.terms[0].second == 1) {
    if (e.constant == 0) return Cell::variable(e.terms[0].first);
    return Cell::var_plus(e.terms[0].first, e.constant);
  }
  return std::nullopt;
}

// ---- decomposition ----------------------------------------------------------

namespace {

FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  if (a->kind == Formula::Kind::True) return b;
  if (b->kind == Formula::Kind::True) return a;
  return f_and(std::move(a), std::move(b));
}

FormulaPtr guard_atom(const VarRegistry& vars, VarId g) {
  return f_le(t_const(1), t_var(vars[g].name));
}

void flatten_by_schema(const TermPtr& t, const DType& s,
                       std::vector<TermPtr>& out) {
  if (s.is_int()) {
    out.push_back(t);
    return;
  }
  if (t->kind != Term::Kind::Pair)
    throw Error("internal: row term does not match schema");
  flatten_by_schema(t->a, s.left(), out);
  flatten_by_schema(t->b, s.right(), out);
}

struct Dec {
  DecomposedProblem p;
  std::vector<FormulaPtr> side;

  TermPtr make_witness(const DType& s, std::vector<VarId>& flat) {
    if (s.is_int()) {
      VarId v = p.vars.fresh("w", {}, {});
      flat.push_back(v);
      return t_var(p.vars[v].name);
    }
    TermPtr a = make_witness(s.left(), flat);
    TermPtr b = make_witness(s.right(), flat);
    return t_pair(a, b);
  }

  void member(const TermPtr& witness, const DType& schema, const TablePtr& d,
              VarId guard) {
    switch (d->kind) {
      case Table::Kind::Input: {
        MembershipConstraint m;
        m.guard = guard;
        std::vector<TermPtr> wflat;
        flatten_by_schema(witness, schema, wflat);
        for (auto& wt : wflat) {
          if (wt->kind != Term::Kind::Var)
            throw Error("internal: witness component is not a variable");
          m.witness.push_back(p.vars.id(wt->var));
        }
        for (auto& rt : d->rows) {
          std::vector<TermPtr> comps;
          flatten_by_schema(eliminate_pairs(rt), schema, comps);
          std::vector<Cell> row;
          for (auto& ct : comps) {
            if (auto c = cell_of_term(ct, p.vars)) {
              row.push_back(*c);
            } else {
              // variable abstraction: fresh a with a = cell expression
              VarId a = p.vars.fresh("a", {}, {});
              side.push_back(f_eq(t_var(p.vars[a].name), ct));
              row.push_back(Cell::variable(a));
            }
          }
          m.rows.push_back(std::move(row));
        }
        p.memberships.push_back(std::move(m));
        return;
      }
      case Table::Kind::Sel: {
        FormulaPtr cond = substitute(d->cond, d->binder, witness);
        FormulaPtr dc = formula(cond, false);
        side.push_back(f_or(f_not(guard_atom(p.vars, guard)), dc));
        member(witness, schema, d->left, guard);
        return;
      }
      case Table::Kind::Prod: {
        if (witness->kind != Term::Kind::Pair)
          throw Error("internal: product witness is not a pair");
        member(witness->a, schema.left(), d->left, guard);
        member(witness->b, schema.right(), d->right, guard);
        return;
      }
      case Table::Kind::Union: {
        VarId b1 = p.vars.fresh("u", 0, 1, true);
        VarId b2 = p.vars.fresh("u", 0, 1, true);
        FormulaPtr one_of =
            f_le(t_const(1), t_add(t_var(p.vars[b1].name), t_var(p.vars[b2].name)));
        side.push_back(f_or(f_not(guard_atom(p.vars, guard)), one_of));
        member(witness, schema, d->left, b1);
        member(witness, schema, d->right, b2);
        return;
      }
    }
  }

  FormulaPtr formula(const FormulaPtr& f, bool odd) {
    switch (f->kind) {
      case Formula::Kind::True:
      case Formula::Kind::Le: return f;
      case Formula::Kind::Not: return f_not(formula(f->f, !odd), f->pos);
      case Formula::Kind::Or:
        return f_or(formula(f->f, odd), formula(f->g, odd), f->pos);
      case Formula::Kind::Exists: {
        if (odd) throw Error("formula is not in the existential fragment");
        VarId g = p.vars.fresh("g", 0, 1, true);
        DType schema = schema_of(f->table);
        std::vector<VarId> flat;
        TermPtr witness = make_witness(schema, flat);
        member(witness, schema, f->table, g);
        return guard_atom(p.vars, g);
      }
    }
    throw Error("bad formula");
  }
};

}  // namespace

DecomposedProblem decompose(const SourceProblem& problem) {
  typecheck(problem);
  if (!is_existential(problem.assertion))
    throw Error("formula is not in the existential fragment");

  Dec d;
  for (auto& decl : problem.decls) d.p.vars.intern(decl.name, decl.lo, decl.hi);

  FormulaPtr main = d.formula(problem.assertion, false);
  for (auto& s : d.side) main = conj(main, s);
  d.p.qflia = eliminate_pairs(main);

  if (problem.objective) {
    d.p.objective = {problem.objective->maximize,
                     linearize(eliminate_pairs(problem.objective->term), d.p.vars)};
  }
  return std::move(d.p);
}

FormulaPtr membership_to_disjunction(const MembershipConstraint& m,
                                     const VarRegistry& vars) {
  FormulaPtr out;
  for (auto& row : m.rows) {
    FormulaPtr rowf = f_true();
    for (size_t i = 0; i < row.size(); i++) {
      TermPtr x = t_var(vars[m.witness[i]].name);
      TermPtr cell;
      switch (row[i].kind) {
        case Cell::Kind::Const: cell = t_const(row[i].c); break;
        case Cell::Kind::Var: cell = t_var(vars[row[i].var].name); break;
        case Cell::Kind::VarPlus:
          cell = t_add(t_var(vars[row[i].var].name), t_const(row[i].c));
          break;
      }
      rowf = conj(rowf, f_eq(x, cell));
    }
    out = out ? f_or(out, rowf) : rowf;
  }
  if (!out) throw Error("membership constraint with no rows");
  return out;
}

}  // namespace dz
