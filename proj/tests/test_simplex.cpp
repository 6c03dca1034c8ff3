#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>

#include "dz/simplex.hpp"
#include "support/gen.hpp"

using namespace dz;

namespace {

Rational activity(const LinearAtom& a, const std::vector<Rational>& vals) {
  Rational s = 0;
  for (auto& [v, c] : a.terms) s += Rational(c) * vals[static_cast<size_t>(v)];
  return s;
}

}  // namespace

TEST_CASE("fractional vertex is found exactly") {
  VarRegistry vars;
  VarId x = vars.intern("x", 0, 10);
  BoundsStore b;
  b.init(vars);
  // 2x <= 1 and -2x <= -1, i.e. 2x = 1
  std::vector<GuardedLinearConstraint> cs{
      {{}, LinearAtom{{{x, 2}}, 1}}, {{}, LinearAtom{{{x, -2}}, -1}}};
  LpResult r = lp_check(b, cs);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.values[static_cast<size_t>(x)] == Rational(1, 2));
  auto frac = first_fractional(r);
  REQUIRE(frac);
  CHECK(frac->first == x);
  CHECK(frac->second == 0);  // floor(1/2)

  // negative fractional value floors downwards
  VarRegistry vars2;
  VarId y = vars2.intern("y", -10, 10);
  BoundsStore b2;
  b2.init(vars2);
  std::vector<GuardedLinearConstraint> cs2{
      {{}, LinearAtom{{{y, 2}}, -3}}, {{}, LinearAtom{{{y, -2}}, 3}}};
  LpResult r2 = lp_check(b2, cs2);
  REQUIRE(r2.status == LpResult::Status::Optimal);
  CHECK(r2.values[static_cast<size_t>(y)] == Rational(-3, 2));
  CHECK(first_fractional(r2)->second == -2);  // floor(-3/2)
}

TEST_CASE("infeasibility over the box is detected") {
  VarRegistry vars;
  VarId x = vars.intern("x", 0, 1), y = vars.intern("y", 0, 1);
  BoundsStore b;
  b.init(vars);
  // x + y <= 1, x >= 1, y >= 1
  std::vector<GuardedLinearConstraint> cs{
      {{}, LinearAtom{{{x, 1}, {y, 1}}, 1}},
      {{}, LinearAtom{{{x, -1}}, -1}},
      {{}, LinearAtom{{{y, -1}}, -1}}};
  CHECK(lp_check(b, cs).status == LpResult::Status::Infeasible);
}

TEST_CASE("objective minimization and guard activity") {
  VarRegistry vars;
  VarId x = vars.intern("x", 0, 10);
  VarId g = vars.intern("g", 0, 1, false, true);
  BoundsStore b;
  b.init(vars);
  std::vector<GuardedLinearConstraint> cs{
      {g, LinearAtom{{{x, -2}}, -3}}};  // when g: x >= 3/2
  std::vector<std::pair<VarId, Int>> obj{{x, 1}};

  // guard unfixed: the constraint is ignored, minimum is the lower bound
  LpResult r = lp_check(b, cs, &obj);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.objective == 0);

  // guard fixed on: minimum moves to 3/2
  REQUIRE(b.tighten_lb(g, 1) == BoundsStore::Tighten::Changed);
  r = lp_check(b, cs, &obj);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(r.objective == Rational(3, 2));
}

TEST_CASE("whole-number solutions report no fractional variable") {
  VarRegistry vars;
  VarId x = vars.intern("x", 2, 7);
  BoundsStore b;
  b.init(vars);
  std::vector<GuardedLinearConstraint> cs{{{}, LinearAtom{{{x, 1}}, 5}}};
  LpResult r = lp_check(b, cs);
  REQUIRE(r.status == LpResult::Status::Optimal);
  CHECK(!first_fractional(r));
}

TEST_CASE("random LPs: exact re-substitution and integer soundness") {
  dztest::Rng rng(2718);
  int feasible = 0, infeasible = 0;
  for (int iter = 0; iter < 600; iter++) {
    VarRegistry vars;
    int n = static_cast<int>(rng.uniform(1, 3));
    std::vector<std::pair<Int, Int>> box;
    for (int i = 0; i < n; i++) {
      Int lo = rng.uniform(-6, 2);
      Int hi = lo + rng.uniform(0, 8);
      vars.intern("v" + std::to_string(i), lo, hi);
      box.emplace_back(lo, hi);
    }
    BoundsStore b;
    b.init(vars);
    std::vector<GuardedLinearConstraint> cs;
    int nc = static_cast<int>(rng.uniform(1, 5));
    for (int i = 0; i < nc; i++) {
      LinearAtom a;
      for (int v = 0; v < n; v++) {
        Int c = rng.uniform(-4, 4);
        if (c != 0) a.terms.emplace_back(v, c);
      }
      a.rhs = rng.uniform(-15, 15);
      cs.push_back({{}, a});
    }
    std::vector<std::pair<VarId, Int>> obj;
    for (int v = 0; v < n; v++) obj.emplace_back(v, rng.uniform(-3, 3));

    LpResult r = lp_check(b, cs, &obj);

    // does any integer point satisfy everything?
    bool any_int = false;
    std::vector<Rational> pt(static_cast<size_t>(n));
    std::vector<Int> vals(static_cast<size_t>(n));
    std::function<void(int)> rec = [&](int i) {
      if (any_int) return;
      if (i == n) {
        for (auto& c : cs) {
          Int s = 0;
          for (auto& [v, cf] : c.atom.terms)
            s += cf * vals[static_cast<size_t>(v)];
          if (s > c.atom.rhs) return;
        }
        any_int = true;
        return;
      }
      for (Int x = box[static_cast<size_t>(i)].first;
           x <= box[static_cast<size_t>(i)].second; x++) {
        vals[static_cast<size_t>(i)] = x;
        rec(i + 1);
      }
    };
    rec(0);

    if (r.status == LpResult::Status::Infeasible) {
      infeasible++;
      CHECK(!any_int);  // an integer point is also a rational point
      continue;
    }
    feasible++;
    // exact re-substitution: every constraint and bound holds with no slack
    // tolerance, and the reported objective is the exact dot product
    Rational objval = 0;
    for (int v = 0; v < n; v++) {
      const Rational& x = r.values[static_cast<size_t>(v)];
      CHECK(x >= Rational(box[static_cast<size_t>(v)].first));
      CHECK(x <= Rational(box[static_cast<size_t>(v)].second));
      objval += Rational(obj[static_cast<size_t>(v)].second) * x;
    }
    for (auto& c : cs) CHECK(activity(c.atom, r.values) <= Rational(c.atom.rhs));
    CHECK(objval == r.objective);

    // optimality against every integer point: none can beat the LP minimum
    std::function<void(int, Rational)> rec2 = [&](int i, Rational acc) {
      if (i == n) {
        for (auto& c : cs) {
          Int s = 0;
          for (auto& [v, cf] : c.atom.terms)
            s += cf * vals[static_cast<size_t>(v)];
          if (s > c.atom.rhs) return;
        }
        CHECK(acc >= r.objective);
        return;
      }
      for (Int x = box[static_cast<size_t>(i)].first;
           x <= box[static_cast<size_t>(i)].second; x++) {
        vals[static_cast<size_t>(i)] = x;
        rec2(i + 1, acc + Rational(obj[static_cast<size_t>(i)].second) * x);
      }
    };
    rec2(0, 0);
  }
  CHECK(feasible >= 100);
  CHECK(infeasible >= 50);
}
