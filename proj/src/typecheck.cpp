#include "dz/typecheck.hpp"

#include <map>

namespace dz {

namespace {

struct Checker {
  TypeAnnotations out;
  std::map<std::string, std::vector<DType>> scope;  // binder stack per name

  DType var_type(const std::string& name) {
    auto it = scope.find(name);
    if (it != scope.end() && !it->second.empty()) return it->second.back();
    return DType::integer();  // non-binder variables are int
  }

  DType term(const TermPtr& t) {
    DType ty;
    switch (t->kind) {
      case Term::Kind::Const: ty = DType::integer(); break;
      case Term::Kind::Var: ty = var_type(t->var); break;
      case Term::Kind::Add: {
        DType a = term(t->a), b = term(t->b);
        if (!a.is_int() || !b.is_int())
          throw Error("'+' applied to pair-typed term", t->pos);
        ty = DType::integer();
        break;
      }
      case Term::Kind::Mul: {
        DType a = term(t->a);
        if (!a.is_int()) throw Error("'*' applied to pair-typed term", t->pos);
        ty = DType::integer();
        break;
      }
      case Term::Kind::Pair: ty = DType::pair(term(t->a), term(t->b)); break;
      case Term::Kind::Fst: {
        DType a = term(t->a);
        if (a.is_int()) throw Error("accessor 'fst' applied to int", t->pos);
        ty = a.left();
        break;
      }
      case Term::Kind::Snd: {
        DType a = term(t->a);
        if (a.is_int()) throw Error("accessor 'snd' applied to int", t->pos);
        ty = a.right();
        break;
      }
    }
    out.term_type[t.get()] = ty;
    return ty;
  }

  DType table(const TablePtr& d) {
    DType sc;
    switch (d->kind) {
      case Table::Kind::Input: {
        if (d->rows.empty()) throw Error("input table has no rows", d->pos);
        sc = term(d->rows[0]);
        for (size_t i = 1; i < d->rows.size(); i++) {
          if (term(d->rows[i]) != sc)
            throw Error("input table rows have heterogeneous types", d->pos);
        }
        break;
      }
      case Table::Kind::Sel: {
        sc = table(d->left);
        scope[d->binder].push_back(sc);
        formula(d->cond);
        scope[d->binder].pop_back();
        break;
      }
      case Table::Kind::Prod:
        sc = DType::pair(table(d->left), table(d->right));
        break;
      case Table::Kind::Union: {
        sc = table(d->left);
        if (table(d->right) != sc)
          throw Error("union of tables with different schemas", d->pos);
        break;
      }
    }
    out.schema[d.get()] = sc;
    return sc;
  }

  void formula(const FormulaPtr& f) {
    switch (f->kind) {
      case Formula::Kind::True: return;
      case Formula::Kind::Le: {
        if (!term(f->lhs).is_int() || !term(f->rhs).is_int())
          throw Error("'<=' applied to pair-typed term", f->pos);
        return;
      }
      case Formula::Kind::Not: formula(f->f); return;
      case Formula::Kind::Or:
        formula(f->f);
        formula(f->g);
        return;
      case Formula::Kind::Exists: table(f->table); return;
    }
  }
};

}  // namespace

TypeAnnotations typecheck(const SourceProblem& problem) {
  Checker c;
  for (auto& [name, t] : problem.tables) c.table(t);
  c.formula(problem.assertion);
  if (problem.objective) {
    if (!c.term(problem.objective->term).is_int())
      throw Error("objective term must be int-typed");
  }
  return std::move(c.out);
}

DType schema_of(const TablePtr& d) {
  Checker c;
  return c.table(d);
}

}  // namespace dz
