#include "gen.hpp"

#include <functional>
#include <map>

#include "dz/eval.hpp"

namespace dztest {

using namespace dz;

namespace {

struct Gen {
  Rng& rng;
  SourceProblem p;
  int nvars = 0;
  int leaves_left = 3;  // input-table occurrences across the assertion

  std::string var(int i) { return "v" + std::to_string(i); }
  TermPtr rand_var() { return t_var(var(static_cast<int>(rng.uniform(0, nvars - 1)))); }

  TermPtr cell() {
    if (rng.chance(30)) {
      TermPtr v = rand_var();
      if (rng.chance(50)) return t_add(v, t_const(rng.uniform(-3, 3)));
      return v;
    }
    return t_const(rng.uniform(-10, 10));
  }

  TermPtr row(int cols) {
    TermPtr t = cell();
    for (int i = 1; i < cols; i++) t = t_pair(cell(), t);
    return t;
  }

  void make_tables() {
    int n = static_cast<int>(rng.uniform(1, 3));
    for (int t = 0; t < n; t++) {
      int cols = static_cast<int>(rng.uniform(1, 3));
      int rows = static_cast<int>(rng.uniform(1, 8));
      std::vector<TermPtr> rs;
      for (int r = 0; r < rows; r++) rs.push_back(row(cols));
      std::string name = "t" + std::to_string(t);
      p.tables.emplace_back(name, tb_input(name, std::move(rs)));
    }
  }

  /// Accessor term for a random int leaf of `s` starting from `base`.
  TermPtr leaf_access(TermPtr base, const DType& s) {
    const DType* cur = &s;
    TermPtr t = std::move(base);
    while (cur->is_pair()) {
      if (rng.chance(50)) {
        t = t_fst(t);
        cur = &cur->left();
      } else {
        t = t_snd(t);
        cur = &cur->right();
      }
    }
    return t;
  }

  FormulaPtr atom(TermPtr lhs, TermPtr rhs) {
    switch (rng.uniform(0, 3)) {
      case 0: return f_le(lhs, rhs);
      case 1: return f_le(rhs, lhs);
      case 2: return f_eq(lhs, rhs);
      default: return f_not(f_eq(lhs, rhs));
    }
  }

  FormulaPtr sel_cond(const std::string& binder, const DType& s) {
    int n = static_cast<int>(rng.uniform(1, 2));
    FormulaPtr out;
    for (int i = 0; i < n; i++) {
      TermPtr acc = leaf_access(t_var(binder), s);
      TermPtr rhs = rng.chance(50) ? rand_var() : t_const(rng.uniform(-10, 10));
      FormulaPtr a = atom(acc, rhs);
      out = out ? f_and(out, a) : a;
    }
    return out;
  }

  TablePtr maybe_sel(TablePtr d, const DType& s) {
    if (!rng.chance(65)) return d;
    std::string b = "r" + std::to_string(rng.uniform(0, 9));
    return tb_sel(b, sel_cond(b, s), d);
  }

  std::pair<TablePtr, DType> table_expr(bool simple) {
    auto pick = [&]() {
      auto& tab =
          p.tables[static_cast<size_t>(rng.uniform(
                       0, static_cast<Int>(p.tables.size()) - 1))]
              .second;
      leaves_left--;
      // recover the schema from the first row's pair shape
      std::function<DType(const Term*)> sh = [&](const Term* t) -> DType {
        if (t->kind == Term::Kind::Pair)
          return DType::pair(sh(t->a.get()), sh(t->b.get()));
        return DType::integer();
      };
      return std::pair<TablePtr, DType>{tab, sh(tab->rows[0].get())};
    };
    if (!simple && leaves_left >= 2 && rng.chance(25)) {  // product
      auto [a, sa] = pick();
      auto [b, sb] = pick();
      DType s = DType::pair(sa, sb);
      return {maybe_sel(tb_prod(a, b), s), s};
    }
    if (!simple && leaves_left >= 2 && rng.chance(25)) {
      // union of two selected views of the same table; costs two leaves
      // because both sides become their own membership constraint
      auto [a, s] = pick();
      leaves_left--;
      return {maybe_sel(tb_union(maybe_sel(a, s), maybe_sel(a, s)), s), s};
    }
    auto [a, s] = pick();
    return {maybe_sel(a, s), s};
  }

  FormulaPtr exists_atom(bool simple = false) {
    auto [d, s] = table_expr(simple);
    FormulaPtr e = f_exists(d);
    if (rng.chance(10)) e = f_not(f_not(e));
    return e;
  }

  FormulaPtr arith_atom() {
    TermPtr lhs = t_mul(rng.chance(50) ? 1 : rng.uniform(-3, 3), rand_var());
    if (rng.chance(50)) lhs = t_add(lhs, rand_var());
    return atom(lhs, t_const(rng.uniform(-15, 15)));
  }

  SourceProblem run() {
    nvars = rng.chance(75) ? 2 : 3;
    if (nvars == 3) leaves_left = 1;
    for (int i = 0; i < nvars; i++)
      p.decls.push_back({var(i), -10, 10, {}});
    make_tables();

    FormulaPtr f = exists_atom();
    if (leaves_left >= 1 && rng.chance(40)) {
      // a disjunction takes two table atoms, so both sides stay single-leaf
      FormulaPtr g = rng.chance(30) && leaves_left >= 2
                         ? f_or(exists_atom(true), exists_atom(true))
                         : exists_atom(true);
      f = f_and(f, g);
    }
    int na = static_cast<int>(rng.uniform(0, 2));
    for (int i = 0; i < na; i++) f = f_and(f, arith_atom());
    p.assertion = f;
    return std::move(p);
  }
};

}  // namespace

SourceProblem random_existential(Rng& rng) {
  Gen g{rng};
  return g.run();
}

SolveResult oracle_solve(const SourceProblem& p) {
  double space = 1;
  for (auto& d : p.decls) {
    if (!d.lo || !d.hi) throw Error("oracle: unbounded variable");
    space *= static_cast<double>(*d.hi - *d.lo) + 1;
  }
  if (space > 1e7) throw Error("oracle: search space too large");

  Assignment a;
  SolveResult res;
  std::optional<Int> best;
  std::map<std::string, Int> best_model;
  bool found = false;

  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == p.decls.size()) {
      if (!eval_formula(p.assertion, a)) return;
      if (p.objective) {
        Int obj = eval_term(p.objective->term, a).as_int();
        bool better =
            !best || (p.objective->maximize ? obj > *best : obj < *best);
        if (!better) return;
        best = obj;
      } else if (found) {
        return;
      }
      found = true;
      best_model = a;
      return;
    }
    for (Int x = *p.decls[i].lo; x <= *p.decls[i].hi; x++) {
      a[p.decls[i].name] = x;
      rec(i + 1);
    }
  };
  rec(0);

  if (p.objective) {
    res.status = best ? SolveStatus::Optimal : SolveStatus::Infeasible;
    res.objective = best;
  } else {
    res.status = found ? SolveStatus::Sat : SolveStatus::Unsat;
  }
  res.model = std::move(best_model);
  return res;
}

Qbf random_qbf(Rng& rng, int max_vars, int max_conn) {
  Qbf q;
  int n = static_cast<int>(rng.uniform(1, max_vars));
  for (int i = 0; i < n; i++) q.prefix.emplace_back(rng.chance(50), i);
  int conn = static_cast<int>(rng.uniform(0, max_conn));
  std::function<QbfExprPtr(int)> build = [&](int budget) -> QbfExprPtr {
    if (budget <= 0) {
      QbfExprPtr v = QbfExpr::mk_var(static_cast<int>(rng.uniform(0, n - 1)));
      return rng.chance(40) ? QbfExpr::mk_not(v) : v;
    }
    if (rng.chance(25)) return QbfExpr::mk_not(build(budget - 1));
    int l = static_cast<int>(rng.uniform(0, budget - 1));
    QbfExprPtr a = build(l), b = build(budget - 1 - l);
    return rng.chance(50) ? QbfExpr::mk_and(a, b) : QbfExpr::mk_or(a, b);
  };
  q.matrix = build(conn);
  return q;
}

namespace {

bool qbf_eval(const QbfExprPtr& e, const std::vector<bool>& env) {
  switch (e->kind) {
    case QbfExpr::Kind::Var: return env[static_cast<size_t>(e->var)];
    case QbfExpr::Kind::Not: return !qbf_eval(e->a, env);
    case QbfExpr::Kind::And: return qbf_eval(e->a, env) && qbf_eval(e->b, env);
    case QbfExpr::Kind::Or: return qbf_eval(e->a, env) || qbf_eval(e->b, env);
  }
  return false;
}

bool qbf_rec(const Qbf& q, size_t i, std::vector<bool>& env) {
  if (i == q.prefix.size()) return qbf_eval(q.matrix, env);
  auto [forall, v] = q.prefix[i];
  bool r0, r1;
  env[static_cast<size_t>(v)] = false;
  r0 = qbf_rec(q, i + 1, env);
  env[static_cast<size_t>(v)] = true;
  r1 = qbf_rec(q, i + 1, env);
  return forall ? (r0 && r1) : (r0 || r1);
}

}  // namespace

std::optional<Int> portfolio_best(const PortfolioData& d, size_t picks) {
  Int total = 0;
  for (Int ai : d.a) total += ai;
  Int cap3 = total / 3, cap4 = total / 4;
  size_t R = d.stocks.size();
  std::optional<Int> best;
  std::vector<size_t> choice(picks);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == picks) {
      std::vector<Int> sector_load(7, 0);
      Int small = 0, payoff = 0;
      for (size_t j = 0; j < picks; j++) {
        const auto& s = d.stocks[choice[j]];
        sector_load[static_cast<size_t>(s[2])] += d.a[j];
        if (s[1] == 1) small += d.a[j];
        payoff += d.a[j] * d.quotes[choice[j]][1];
      }
      for (Int s = 1; s <= 6; s++)
        if (sector_load[static_cast<size_t>(s)] > cap3) return;
      if (small > cap4) return;
      if (!best || payoff > *best) best = payoff;
      return;
    }
    for (size_t r = 0; r < R; r++) {
      bool used = false;
      for (size_t j = 0; j < i; j++)
        if (choice[j] == r) used = true;
      if (used) continue;
      choice[i] = r;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

bool qbf_truth(const Qbf& q) {
  size_t n = 0;
  for (auto& [fa, v] : q.prefix) n = std::max(n, static_cast<size_t>(v) + 1);
  std::vector<bool> env(n, false);
  return qbf_rec(q, 0, env);
}

}  // namespace dztest
