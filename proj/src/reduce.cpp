#include "dz/reduce.hpp"

#include <map>
#include <set>

namespace dz {

namespace {

using Env = std::map<std::string, TermPtr>;

FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  if (a->kind == Formula::Kind::True) return b;
  if (b->kind == Formula::Kind::True) return a;
  return f_and(std::move(a), std::move(b));
}

TermPtr apply_env(const TermPtr& t, const Env& env) {
  switch (t->kind) {
    case Term::Kind::Const: return t;
    case Term::Kind::Var: {
      auto it = env.find(t->var);
      return it == env.end() ? t : it->second;
    }
    case Term::Kind::Add: return t_add(apply_env(t->a, env), apply_env(t->b, env), t->pos);
    case Term::Kind::Mul: return t_mul(t->value, apply_env(t->a, env), t->pos);
    case Term::Kind::Pair:
      return t_pair(apply_env(t->a, env), apply_env(t->b, env), t->pos);
    case Term::Kind::Fst: return t_fst(apply_env(t->a, env), t->pos);
    case Term::Kind::Snd: return t_snd(apply_env(t->a, env), t->pos);
  }
  return t;
}

struct Reducer {
  size_t max_rows;
  size_t produced = 0;

  void charge(size_t n) {
    produced += n;
    if (produced > max_rows)
      throw Error("eager reduction exceeds row limit (" +
                  std::to_string(max_rows) + ")");
  }

  std::vector<GuardedRow> table(const TablePtr& d, const Env& env) {
    switch (d->kind) {
      case Table::Kind::Input: {
        std::vector<GuardedRow> out;
        charge(d->rows.size());
        out.reserve(d->rows.size());
        for (auto& r : d->rows) out.push_back({apply_env(r, env), f_true()});
        return out;
      }
      case Table::Kind::Sel: {
        std::vector<GuardedRow> rows = table(d->left, env);
        for (auto& gr : rows) {
          Env env2 = env;
          env2[d->binder] = gr.row;
          gr.guard = conj(gr.guard, formula(d->cond, env2));
        }
        return rows;
      }
      case Table::Kind::Prod: {
        std::vector<GuardedRow> ls = table(d->left, env);
        std::vector<GuardedRow> rs = table(d->right, env);
        charge(ls.size() * rs.size());
        std::vector<GuardedRow> out;
        out.reserve(ls.size() * rs.size());
        for (auto& l : ls)
          for (auto& r : rs)
            out.push_back({t_pair(l.row, r.row), conj(l.guard, r.guard)});
        return out;
      }
      case Table::Kind::Union: {
        std::vector<GuardedRow> out = table(d->left, env);
        std::vector<GuardedRow> rs = table(d->right, env);
        out.insert(out.end(), rs.begin(), rs.end());
        return out;
      }
    }
    throw Error("bad table");
  }

  FormulaPtr formula(const FormulaPtr& f, const Env& env) {
    switch (f->kind) {
      case Formula::Kind::True: return f;
      case Formula::Kind::Le:
        return f_le(apply_env(f->lhs, env), apply_env(f->rhs, env), f->pos);
      case Formula::Kind::Not: return f_not(formula(f->f, env), f->pos);
      case Formula::Kind::Or:
        return f_or(formula(f->f, env), formula(f->g, env), f->pos);
      case Formula::Kind::Exists: {
        std::vector<GuardedRow> rows = table(f->table, env);
        FormulaPtr out;
        for (auto& gr : rows) {
          if (gr.guard->kind == Formula::Kind::True) return f_true();
          out = out ? f_or(out, gr.guard) : gr.guard;
        }
        return out;
      }
    }
    throw Error("bad formula");
  }
};

}  // namespace

std::vector<GuardedRow> reduce_table(const TablePtr& d, size_t max_rows) {
  Reducer r{max_rows};
  return r.table(d, {});
}

FormulaPtr reduce_formula(const FormulaPtr& f, size_t max_rows) {
  Reducer r{max_rows};
  return eliminate_pairs(r.formula(f, {}));
}

TermPtr eliminate_pairs(const TermPtr& t) {
  switch (t->kind) {
    case Term::Kind::Const:
    case Term::Kind::Var: return t;
    case Term::Kind::Add: return t_add(eliminate_pairs(t->a), eliminate_pairs(t->b), t->pos);
    case Term::Kind::Mul: return t_mul(t->value, eliminate_pairs(t->a), t->pos);
    case Term::Kind::Pair:
      return t_pair(eliminate_pairs(t->a), eliminate_pairs(t->b), t->pos);
    case Term::Kind::Fst: {
      TermPtr a = eliminate_pairs(t->a);
      if (a->kind != Term::Kind::Pair)
        throw Error("internal: 'fst' applied to non-pair term");
      return a->a;
    }
    case Term::Kind::Snd: {
      TermPtr a = eliminate_pairs(t->a);
      if (a->kind != Term::Kind::Pair)
        throw Error("internal: 'snd' applied to non-pair term");
      return a->b;
    }
  }
  return t;
}

FormulaPtr eliminate_pairs(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True: return f;
    case Formula::Kind::Le:
      return f_le(eliminate_pairs(f->lhs), eliminate_pairs(f->rhs), f->pos);
    case Formula::Kind::Not: return f_not(eliminate_pairs(f->f), f->pos);
    case Formula::Kind::Or:
      return f_or(eliminate_pairs(f->f), eliminate_pairs(f->g), f->pos);
    case Formula::Kind::Exists:
      throw Error("internal: pair elimination on a formula with tables");
  }
  return f;
}

// ---- QBF encoding ----------------------------------------------------------

QbfExprPtr QbfExpr::mk_var(int v) {
  auto e = std::make_shared<QbfExpr>();
  e->kind = Kind::Var;
  e->var = v;
  return e;
}

QbfExprPtr QbfExpr::mk_not(QbfExprPtr x) {
  auto e = std::make_shared<QbfExpr>();
  e->kind = Kind::Not;
  e->a = std::move(x);
  return e;
}

QbfExprPtr QbfExpr::mk_and(QbfExprPtr x, QbfExprPtr y) {
  auto e = std::make_shared<QbfExpr>();
  e->kind = Kind::And;
  e->a = std::move(x);
  e->b = std::move(y);
  return e;
}

QbfExprPtr QbfExpr::mk_or(QbfExprPtr x, QbfExprPtr y) {
  auto e = std::make_shared<QbfExpr>();
  e->kind = Kind::Or;
  e->a = std::move(x);
  e->b = std::move(y);
  return e;
}

namespace {

std::string qvar(int v) { return "q" + std::to_string(v); }

FormulaPtr enc_matrix(const QbfExprPtr& e, const std::set<int>& bound) {
  switch (e->kind) {
    case QbfExpr::Kind::Var: {
      if (!bound.count(e->var))
        throw Error("free Boolean variable q" + std::to_string(e->var));
      return f_eq(t_var(qvar(e->var)), t_const(1));
    }
    case QbfExpr::Kind::Not: {
      if (e->a->kind == QbfExpr::Kind::Var) {
        if (!bound.count(e->a->var))
          throw Error("free Boolean variable q" + std::to_string(e->a->var));
        return f_eq(t_var(qvar(e->a->var)), t_const(0));
      }
      return f_not(enc_matrix(e->a, bound));
    }
    case QbfExpr::Kind::And:
      return f_and(enc_matrix(e->a, bound), enc_matrix(e->b, bound));
    case QbfExpr::Kind::Or:
      return f_or(enc_matrix(e->a, bound), enc_matrix(e->b, bound));
  }
  throw Error("bad QBF expression");
}

}  // namespace

FormulaPtr encode_qbf(const Qbf& q) {
  TablePtr bools = tb_input("", {t_const(0), t_const(1)});
  std::set<int> bound;
  for (auto& [forall, v] : q.prefix) {
    (void)forall;
    bound.insert(v);
  }
  FormulaPtr body = enc_matrix(q.matrix, bound);
  for (size_t i = q.prefix.size(); i-- > 0;) {
    auto [forall, v] = q.prefix[i];
    if (forall) {
      body = f_not(f_exists(tb_sel(qvar(v), f_not(body), bools)));
    } else {
      body = f_exists(tb_sel(qvar(v), body, bools));
    }
  }
  return body;
}

}  // namespace dz
