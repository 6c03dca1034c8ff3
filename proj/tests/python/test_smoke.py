import pytest

import dzsolver as dz

DOUBLING = (
    "(declare-int x -100 100)(declare-int y -100 100)"
    "(table t ((1 2) (2 4) (3 6) (4 8)))"
    "(assert (and (= x y)"
    " (exists (sel r (and (= (fst r) x) (= (snd r) y)) t))))"
)


def test_parse_and_repr():
    p = dz.parse(DOUBLING)
    assert "2 vars" in repr(p)
    assert "declare-int x" in dz.print_problem(p)


def test_solve_unsat_without_branching():
    r = dz.solve(dz.parse(DOUBLING))
    assert r["status"] == "unsat"
    assert r["stats"]["decisions"] == 0


def test_solve_sat_with_model():
    p = dz.parse(
        "(declare-int x 0 100)(table t ((3) (7)))"
        "(assert (and (exists (sel r (= r x) t)) (<= 5 x)))"
    )
    r = dz.solve(p)
    assert r["status"] == "sat"
    assert r["model"]["x"] == 7


def test_optimize():
    p = dz.parse(
        "(declare-int x 0 100)(table t ((3) (7) (11)))"
        "(assert (exists (sel r (= r x) t)))(maximize x)"
    )
    r = dz.solve(p)
    assert r["status"] == "optimal"
    assert r["objective"] == 11


def test_eager_agrees():
    assert dz.solve_eager(dz.parse(DOUBLING))["status"] == "unsat"


def test_rank_and_fragment():
    p = dz.parse(DOUBLING)
    assert dz.rank(p) == 1
    assert dz.is_existential(p)
    q = dz.parse("(table t ((1)))(assert (not (exists t)))")
    assert not dz.is_existential(q)


def test_emit_smtlib():
    s = dz.emit_smtlib(dz.parse(DOUBLING))
    assert s.startswith("(set-logic QF_LIA)")
    assert "(check-sat)" in s


def test_bench_gen_roundtrip():
    text = dz.bench_gen("portfolio", rows=6, picks=2, seed=5)
    assert text == dz.bench_gen("portfolio", rows=6, picks=2, seed=5)
    p = dz.parse(text)
    assert dz.is_existential(p)


def test_errors_raise():
    with pytest.raises(dz.SolverError):
        dz.parse("(assert (<= x 1))")  # undeclared variable
    with pytest.raises(dz.SolverError):
        dz.bench_gen("nope")


def test_node_limit():
    p = dz.parse(DOUBLING)
    assert dz.solve(p, node_limit=0)["status"] == "resource-limit"
