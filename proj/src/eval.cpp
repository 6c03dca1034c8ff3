#include "dz/eval.hpp"

namespace dz {

bool Value::operator==(const Value& o) const {
  if (is_int_ != o.is_int_) return false;
  if (is_int_) return i_ == o.i_;
  return *a_ == *o.a_ && *b_ == *o.b_;
}

std::string Value::str() const {
  if (is_int_) return std::to_string(i_);
  return "(" + a_->str() + ", " + b_->str() + ")";
}

namespace {

using Env = std::map<std::string, const Value*>;

Value ev_term(const TermPtr& t, const Assignment& a, const Env& env) {
  switch (t->kind) {
    case Term::Kind::Const: return Value::integer(t->value);
    case Term::Kind::Var: {
      auto it = env.find(t->var);
      if (it != env.end()) return *it->second;
      auto jt = a.find(t->var);
      if (jt == a.end()) throw Error("unassigned variable '" + t->var + "'");
      return Value::integer(jt->second);
    }
    case Term::Kind::Add:
      return Value::integer(checked_add(ev_term(t->a, a, env).as_int(),
                                        ev_term(t->b, a, env).as_int()));
    case Term::Kind::Mul:
      return Value::integer(checked_mul(t->value, ev_term(t->a, a, env).as_int()));
    case Term::Kind::Pair:
      return Value::pair(ev_term(t->a, a, env), ev_term(t->b, a, env));
    case Term::Kind::Fst: return ev_term(t->a, a, env).left();
    case Term::Kind::Snd: return ev_term(t->a, a, env).right();
  }
  throw Error("bad term");
}

bool ev_formula(const FormulaPtr& f, const Assignment& a, const Env& env);

std::vector<Value> ev_table(const TablePtr& d, const Assignment& a, const Env& env) {
  switch (d->kind) {
    case Table::Kind::Input: {
      std::vector<Value> rows;
      rows.reserve(d->rows.size());
      for (auto& r : d->rows) rows.push_back(ev_term(r, a, env));
      return rows;
    }
    case Table::Kind::Sel: {
      std::vector<Value> rows = ev_table(d->left, a, env);
      std::vector<Value> out;
      for (auto& r : rows) {
        Env env2 = env;
        env2[d->binder] = &r;
        if (ev_formula(d->cond, a, env2)) out.push_back(r);
      }
      return out;
    }
    case Table::Kind::Prod: {
      std::vector<Value> ls = ev_table(d->left, a, env);
      std::vector<Value> rs = ev_table(d->right, a, env);
      std::vector<Value> out;
      out.reserve(ls.size() * rs.size());
      for (auto& l : ls)
        for (auto& r : rs) out.push_back(Value::pair(l, r));
      return out;
    }
    case Table::Kind::Union: {
      std::vector<Value> out = ev_table(d->left, a, env);
      std::vector<Value> rs = ev_table(d->right, a, env);
      out.insert(out.end(), rs.begin(), rs.end());
      return out;
    }
  }
  throw Error("bad table");
}

bool ev_formula(const FormulaPtr& f, const Assignment& a, const Env& env) {
  switch (f->kind) {
    case Formula::Kind::True: return true;
    case Formula::Kind::Le:
      return ev_term(f->lhs, a, env).as_int() <= ev_term(f->rhs, a, env).as_int();
    case Formula::Kind::Not: return !ev_formula(f->f, a, env);
    case Formula::Kind::Or:
      return ev_formula(f->f, a, env) || ev_formula(f->g, a, env);
    case Formula::Kind::Exists: return !ev_table(f->table, a, env).empty();
  }
  throw Error("bad formula");
}

}  // namespace

Value eval_term(const TermPtr& t, const Assignment& a) {
  return ev_term(t, a, {});
}

std::vector<Value> eval_table(const TablePtr& d, const Assignment& a) {
  return ev_table(d, a, {});
}

bool eval_formula(const FormulaPtr& f, const Assignment& a) {
  return ev_formula(f, a, {});
}

}  // namespace dz
