#include "dz/solver.hpp"

#include <algorithm>
#include <chrono>

#include "dz/decompose.hpp"
#include "dz/eval.hpp"
#include "dz/reduce.hpp"
#include "dz/typecheck.hpp"

namespace dz {

namespace {

struct Searcher {
  DecomposedProblem prob;  // owned copy: reification adds indicator variables
  const SolveLimits& limits;
  bool collect_trace;

  SolveResult res;
  BoundsStore bounds;
  std::unique_ptr<MembershipEngine> engine;
  std::vector<GuardedLinearConstraint> pool;  // reified qflia + cut + locals
  std::optional<size_t> cut_index;

  // objective in minimize orientation; empty when the problem is decision-only
  std::vector<std::pair<VarId, Int>> obj_terms;
  Int obj_const = 0;
  bool maximize = false;
  std::optional<Int> best_min;

  std::chrono::steady_clock::time_point start;
  bool limit_hit = false;
  bool found = false;

  Searcher(const DecomposedProblem& p, const SolveLimits& lim, bool trace)
      : prob(p), limits(lim), collect_trace(trace) {
    pool = reify(prob.qflia, prob.vars);
    bounds.init(prob.vars);
    bounds.apply_default_bounds(limits.default_bound);
    engine = std::make_unique<MembershipEngine>(prob.vars, prob.memberships);
    if (prob.objective) {
      // permanent slot for the incumbent cut, below the node-local pool
      // region so backtracking truncation never removes it; 0 <= 0 until the
      // first incumbent arrives
      cut_index = pool.size();
      pool.push_back({std::nullopt, LinearAtom{{}, 0}});
      maximize = prob.objective->first;
      Int s = maximize ? -1 : 1;
      for (auto& [v, c] : prob.objective->second.terms)
        obj_terms.emplace_back(v, checked_mul(s, c));
      obj_const = checked_mul(s, prob.objective->second.constant);
    }
    start = std::chrono::steady_clock::now();
  }

  bool out_of_budget() {
    if (limits.node_limit && res.stats.nodes > *limits.node_limit) return true;
    if (limits.time_limit_s) {
      double el = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
      if (el > *limits.time_limit_s) return true;
    }
    return false;
  }

  std::vector<PropEvent>* trace_ptr() {
    return collect_trace ? &res.trace : nullptr;
  }

  /// Alternate the two propagators until neither changes anything. Equality
  /// atoms learned by the membership engine join the pool as path-local
  /// constraints (the caller truncates on exit).
  PropResult fixpoint() {
    while (true) {
      size_t m0 = bounds.mark();
      if (propagate_bounds(bounds, pool, 20, trace_ptr(),
                           &res.stats.propagations) == PropResult::Conflict)
        return PropResult::Conflict;
      std::vector<LinearAtom> learned;
      if (engine->propagate(bounds, learned, trace_ptr(),
                            &res.stats.propagations) == PropResult::Conflict)
        return PropResult::Conflict;
      for (auto& a : learned) pool.push_back({std::nullopt, std::move(a)});
      if (learned.empty() && bounds.mark() == m0) return PropResult::Fixpoint;
    }
  }

  void accept(const std::vector<Int>& values) {
    // independent re-check before trusting the search
    Assignment a;
    for (size_t v = 0; v < prob.vars.size(); v++)
      a[prob.vars[static_cast<VarId>(v)].name] = values[v];
    if (!eval_formula(prob.qflia, a))
      throw Error("internal: model failed direct re-evaluation");

    res.full_model.clear();
    res.model.clear();
    for (size_t v = 0; v < prob.vars.size(); v++) {
      const VarInfo& vi = prob.vars[static_cast<VarId>(v)];
      res.full_model[vi.name] = values[v];
      if (!vi.internal) res.model[vi.name] = values[v];
    }
    if (!prob.objective) {
      found = true;
      return;
    }
    Int val = obj_const;
    for (auto& [v, c] : obj_terms) val = checked_add(val, checked_mul(c, values[v]));
    best_min = val;
    res.objective = maximize ? -val : val;
    LinearAtom cut;
    cut.terms = obj_terms;
    std::sort(cut.terms.begin(), cut.terms.end());
    cut.rhs = checked_add(checked_add(val, -obj_const), -1);
    pool[*cut_index].atom = std::move(cut);  // globally valid: tighten in place
  }

  /// Returns true to stop the whole search (decision sat or budget).
  bool try_options(const std::vector<BranchOption>& options) {
    for (const auto& opt : options) {
      res.stats.decisions++;
      size_t p0 = pool.size();
      size_t b0 = bounds.mark();
      MembershipEngine::Mark e0 = engine->mark();
      for (const auto& a : opt.atoms) pool.push_back({std::nullopt, a});
      if (opt.status) engine->set_status(opt.status->first, opt.status->second);
      bool stop = node();
      pool.resize(p0);
      bounds.undo_to(b0);
      engine->undo_to(e0);
      if (stop) return true;
    }
    return false;
  }

  bool node() {
    res.stats.nodes++;
    if (out_of_budget()) {
      limit_hit = true;
      return true;
    }
    size_t p0 = pool.size();
    size_t b0 = bounds.mark();
    MembershipEngine::Mark e0 = engine->mark();
    bool stop = node_body();
    pool.resize(p0);
    bounds.undo_to(b0);
    engine->undo_to(e0);
    return stop;
  }

  bool node_body() {
    if (fixpoint() == PropResult::Conflict) return false;

    res.stats.lp_calls++;
    LpResult lp =
        lp_check(bounds, pool, obj_terms.empty() ? nullptr : &obj_terms);
    if (lp.status == LpResult::Status::Infeasible) return false;

    if (auto fr = first_fractional(lp)) {
      auto [v, fl] = *fr;
      std::vector<BranchOption> opts;
      opts.push_back({{LinearAtom{{{v, 1}}, fl}}, std::nullopt});
      opts.push_back({{LinearAtom{{{v, -1}}, -(fl + 1)}}, std::nullopt});
      return try_options(opts);
    }

    std::vector<Int> values(prob.vars.size());
    for (size_t v = 0; v < values.size(); v++)
      values[v] = static_cast<Int>(numerator(lp.values[v]));

    // A guard the model turns on must be bounds-fixed, or its guarded
    // constraints were invisible to the LP.
    for (size_t v = 0; v < values.size(); v++) {
      VarId id = static_cast<VarId>(v);
      if (!prob.vars[id].is_guard || values[v] < 1 || bounds.is_fixed(id))
        continue;
      std::vector<BranchOption> opts;
      opts.push_back({{LinearAtom{{{id, -1}}, -1}}, std::nullopt});  // on
      opts.push_back({{LinearAtom{{{id, 1}}, 0}}, std::nullopt});    // off
      return try_options(opts);
    }

    if (!engine->check_model(values)) {
      auto br = engine->suggest_branch(bounds, &values);
      if (!br) throw Error("internal: violated membership with no split");
      if (br->options.size() == 3) res.stats.equality_splits++;
      return try_options(br->options);
    }

    accept(values);
    return found;  // optimization keeps searching under the new cut
  }

  SolveResult run() {
    node();
    if (limit_hit) {
      res.status = SolveStatus::ResourceLimit;
    } else if (prob.objective) {
      res.status = best_min ? SolveStatus::Optimal : SolveStatus::Infeasible;
    } else {
      res.status = found ? SolveStatus::Sat : SolveStatus::Unsat;
    }
    return std::move(res);
  }
};

}  // namespace

SolveResult solve(const DecomposedProblem& p, const SolveLimits& limits,
                  bool collect_trace) {
  Searcher s(p, limits, collect_trace);
  return s.run();
}

namespace {

struct Brute {
  const DecomposedProblem& p;
  std::vector<Int> values;
  std::vector<bool> assigned;
  std::vector<VarId> enumerated;  // user + non-witness internal, finite bounds
  std::vector<VarId> guards;
  Assignment assign;
  std::vector<Int*> slot;

  bool found = false;
  std::optional<Int> best;  // objective in original orientation
  std::map<std::string, Int> best_model, best_full;

  explicit Brute(const DecomposedProblem& prob) : p(prob) {
    size_t n = p.vars.size();
    values.assign(n, 0);
    assigned.assign(n, false);
    std::vector<bool> is_witness(n, false);
    for (const auto& m : p.memberships) {
      for (VarId w : m.witness) is_witness[w] = true;
      for (const auto& row : m.rows)
        for (const auto& cell : row)
          if (cell.kind != Cell::Kind::Const && p.vars[cell.var].internal)
            throw Error("brute force: table cell uses an internal variable");
    }
    double space = 1;
    for (size_t v = 0; v < n; v++) {
      VarId id = static_cast<VarId>(v);
      if (p.vars[id].is_guard) {
        guards.push_back(id);
        space *= 2;
        continue;
      }
      if (is_witness[v]) continue;
      auto lo = p.vars[id].lb, hi = p.vars[id].ub;
      if (!lo || !hi) throw Error("brute force: unbounded variable '" +
                                  p.vars[id].name + "'");
      enumerated.push_back(id);
      space *= static_cast<double>(*hi - *lo) + 1;
    }
    for (const auto& m : p.memberships) space *= m.rows.size();
    if (space > 1e7) throw Error("brute force: search space too large");
    for (size_t v = 0; v < n; v++) assign[p.vars[static_cast<VarId>(v)].name] = 0;
    slot.resize(n);
    for (size_t v = 0; v < n; v++)
      slot[v] = &assign[p.vars[static_cast<VarId>(v)].name];
  }

  Int cell_val(const Cell& c) const {
    if (c.kind == Cell::Kind::Const) return c.c;
    return checked_add(values[c.var], c.c);
  }

  void leaf() {
    for (size_t v = 0; v < values.size(); v++) *slot[v] = values[v];
    if (!eval_formula(p.qflia, assign)) return;
    Int obj = 0;
    if (p.objective) {
      obj = p.objective->second.constant;
      for (auto& [v, c] : p.objective->second.terms)
        obj = checked_add(obj, checked_mul(c, values[v]));
      bool better = !best || (p.objective->first ? obj > *best : obj < *best);
      if (!better) return;
      best = obj;
    }
    if (found && !p.objective) return;
    found = true;
    best_model.clear();
    best_full.clear();
    for (size_t v = 0; v < values.size(); v++) {
      const VarInfo& vi = p.vars[static_cast<VarId>(v)];
      best_full[vi.name] = values[v];
      if (!vi.internal) best_model[vi.name] = values[v];
    }
  }

  void rec_rows(size_t mi) {
    if (found && !p.objective) return;
    if (mi == p.memberships.size()) {
      leaf();
      return;
    }
    const MembershipConstraint& m = p.memberships[mi];
    if (m.guard && values[*m.guard] < 1) {
      rec_rows(mi + 1);
      return;
    }
    for (const auto& row : m.rows) {
      std::vector<VarId> fresh;
      bool ok = true;
      for (size_t j = 0; j < m.witness.size() && ok; j++) {
        Int cv = cell_val(row[j]);
        VarId w = m.witness[j];
        if (assigned[w]) {
          ok = values[w] == cv;
        } else {
          assigned[w] = true;
          values[w] = cv;
          fresh.push_back(w);
        }
      }
      if (ok) rec_rows(mi + 1);
      for (VarId w : fresh) assigned[w] = false;
    }
  }

  void rec_guard(size_t gi) {
    if (found && !p.objective) return;
    if (gi == guards.size()) {
      rec_rows(0);
      return;
    }
    for (Int b = 0; b <= 1; b++) {
      values[guards[gi]] = b;
      rec_guard(gi + 1);
    }
  }

  void rec_enum(size_t i) {
    if (found && !p.objective) return;
    if (i == enumerated.size()) {
      rec_guard(0);
      return;
    }
    VarId v = enumerated[i];
    for (Int x = *p.vars[v].lb; x <= *p.vars[v].ub; x++) {
      values[v] = x;
      rec_enum(i + 1);
    }
  }

  SolveResult run() {
    rec_enum(0);
    SolveResult res;
    if (p.objective) {
      res.status = best ? SolveStatus::Optimal : SolveStatus::Infeasible;
      res.objective = best;
    } else {
      res.status = found ? SolveStatus::Sat : SolveStatus::Unsat;
    }
    res.model = std::move(best_model);
    res.full_model = std::move(best_full);
    return res;
  }
};

}  // namespace

SolveResult solve_bruteforce(const DecomposedProblem& p) {
  Brute b(p);
  return b.run();
}

SolveResult solve_lazy(const SourceProblem& p, const SolveLimits& limits,
                       bool collect_trace) {
  return solve(decompose(p), limits, collect_trace);
}

SolveResult solve_eager(const SourceProblem& p, const SolveLimits& limits,
                        size_t max_rows) {
  typecheck(p);
  DecomposedProblem dp;
  for (auto& d : p.decls) dp.vars.intern(d.name, d.lo, d.hi);
  dp.qflia = reduce_formula(p.assertion, max_rows);
  if (p.objective)
    dp.objective = {p.objective->maximize,
                    linearize(eliminate_pairs(p.objective->term), dp.vars)};
  return solve(dp, limits, false);
}

}  // namespace dz
