#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dz/decompose.hpp"
#include "dz/eval.hpp"
#include "dz/parser.hpp"
#include "dz/solver.hpp"
#include "support/gen.hpp"

using namespace dz;

namespace {

const char* kDoubling =
    "(declare-int x -100 100)(declare-int y -100 100)"
    "(table t ((1 2) (2 4) (3 6) (4 8)))"
    "(assert (and (= x y)"
    " (exists (sel r (and (= (fst r) x) (= (snd r) y)) t))))";

}  // namespace

TEST_CASE("equality against a doubling table is refuted without branching") {
  SolveResult r = solve_lazy(parse(kDoubling));
  CHECK(r.status == SolveStatus::Unsat);
  CHECK(r.stats.decisions == 0);
}

TEST_CASE("plain satisfiable membership with model check") {
  SourceProblem p = parse(
      "(declare-int x 0 100)"
      "(table t ((3) (7)))"
      "(assert (and (exists (sel r (= r x) t)) (<= 5 x)))");
  SolveResult r = solve_lazy(p);
  REQUIRE(r.status == SolveStatus::Sat);
  CHECK(r.model.at("x") == 7);
  Assignment a;
  for (auto& [k, v] : r.model) a[k] = v;
  CHECK(eval_formula(p.assertion, a));
  // the full model covers the internal variables too
  CHECK(r.full_model.size() > r.model.size());
}

TEST_CASE("optimization over table picks") {
  SourceProblem p = parse(
      "(declare-int x 0 100)"
      "(table t ((3) (7) (11)))"
      "(assert (and (exists (sel r (= r x) t)) (not (= x 11))))"
      "(maximize x)");
  SolveResult r = solve_lazy(p);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(*r.objective == 7);
  CHECK(r.model.at("x") == 7);

  p.objective->maximize = false;
  r = solve_lazy(p);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(*r.objective == 3);

  SourceProblem q = parse(
      "(declare-int x 0 5)(assert (<= 10 x))(maximize x)");
  CHECK(solve_lazy(q).status == SolveStatus::Infeasible);
}

TEST_CASE("default bound boxes undeclared ranges") {
  SourceProblem p = parse(
      "(declare-int x)(assert (<= 3 x))(minimize x)");
  SolveResult r = solve_lazy(p);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(*r.objective == 3);
}

TEST_CASE("resource limits surface as ResourceLimit") {
  SolveLimits limits;
  limits.node_limit = 0;
  CHECK(solve_lazy(parse(kDoubling), limits).status ==
        SolveStatus::ResourceLimit);
  SolveLimits tl;
  tl.time_limit_s = 0.0;
  CHECK(solve_lazy(parse(kDoubling), tl).status == SolveStatus::ResourceLimit);
}

TEST_CASE("eager path agrees on the worked examples") {
  CHECK(solve_eager(parse(kDoubling)).status == SolveStatus::Unsat);
  SourceProblem p = parse(
      "(declare-int x 0 100)"
      "(table t ((3) (7)))"
      "(assert (exists (sel r (= r x) t)))"
      "(maximize x)");
  SolveResult r = solve_eager(p);
  REQUIRE(r.status == SolveStatus::Optimal);
  CHECK(*r.objective == 7);
}

TEST_CASE("solving is deterministic") {
  SourceProblem p = parse(
      "(declare-int x 0 20)(declare-int y 0 20)"
      "(table t ((1 2) (2 3) (3 2) (?x 5)))"
      "(assert (exists (sel r (and (= (fst r) x) (= (snd r) y)) t)))"
      "(maximize (+ x y))");
  SolveResult a = solve_lazy(p), b = solve_lazy(p);
  CHECK(a.status == b.status);
  CHECK(a.model == b.model);
  CHECK(a.objective == b.objective);
  CHECK(a.stats.nodes == b.stats.nodes);
  CHECK(a.stats.decisions == b.stats.decisions);
  CHECK(a.stats.lp_calls == b.stats.lp_calls);
}

TEST_CASE("symbolic rows participate in models") {
  SourceProblem p = parse(
      "(declare-int a 0 10)(declare-int x 0 10)"
      "(table t ((1) (?a+2)))"
      "(assert (and (exists (sel r (= r x) t)) (<= 8 x)))");
  SolveResult r = solve_lazy(p);
  REQUIRE(r.status == SolveStatus::Sat);
  Assignment m;
  for (auto& [k, v] : r.model) m[k] = v;
  CHECK(eval_formula(p.assertion, m));
  CHECK(m["x"] == m["a"] + 2);
}

TEST_CASE("differential: lazy, eager, brute force, and oracle all agree") {
  dztest::Rng rng(5150);
  int sat = 0, unsat = 0, optimal = 0;
  for (int iter = 0; iter < 250; iter++) {
    SourceProblem p = dztest::random_existential(rng);
    if (rng.chance(30)) {
      // attach a small linear objective over the declared variables
      TermPtr t = t_const(0);
      for (auto& d : p.decls)
        t = t_add(t, t_mul(rng.uniform(-2, 2), t_var(d.name)));
      p.objective = Objective{rng.chance(50), t};
    }
    CAPTURE(iter);
    SolveResult want = dztest::oracle_solve(p);
    SolveResult lazy = solve_lazy(p);
    SolveResult eager = solve_eager(p);
    SolveResult brute = solve_bruteforce(decompose(p));
    REQUIRE(lazy.status == want.status);
    REQUIRE(eager.status == want.status);
    REQUIRE(brute.status == want.status);
    switch (want.status) {
      case SolveStatus::Sat: sat++; break;
      case SolveStatus::Unsat: unsat++; break;
      case SolveStatus::Optimal: optimal++; break;
      default: break;
    }
    if (want.status == SolveStatus::Optimal) {
      REQUIRE(*lazy.objective == *want.objective);
      REQUIRE(*eager.objective == *want.objective);
      REQUIRE(*brute.objective == *want.objective);
    }
    if (want.status == SolveStatus::Sat || want.status == SolveStatus::Optimal) {
      // each solver's model must satisfy the original assertion directly
      for (const SolveResult* r : {&lazy, &eager, &brute}) {
        Assignment a;
        for (auto& [k, v] : r->model) a[k] = v;
        for (auto& d : p.decls)
          REQUIRE(a.count(d.name));
        REQUIRE(eval_formula(p.assertion, a));
      }
    }
  }
  CHECK(sat >= 30);
  CHECK(unsat >= 30);
  CHECK(optimal >= 20);
}
