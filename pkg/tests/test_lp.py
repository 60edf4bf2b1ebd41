import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from momentext import LinearProgram, lp_solve
from oracles import lp_status


def test_single_bound():
    r = lp_solve(LinearProgram((1.0,), (((1.0,), "<=", 1.0),), "max"))
    assert r.status == "optimal" and r.optimum == 1.0
    np.testing.assert_allclose(r.solution, [1.0])


def test_unconstrained_is_unbounded():
    assert lp_solve(LinearProgram((1.0,), (), "max")).status == "unbounded"


def test_two_dimensional_polytope():
    lp = LinearProgram((2.0, 1.0), (((1.0, 1.0), "<=", 1.0), ((1.0, 0.0), "<=", 0.5)), "max",
                       ((0.0, math.inf), (0.0, math.inf)))
    r = lp_solve(lp)
    assert r.optimum == pytest.approx(1.5, abs=1e-12)
    np.testing.assert_allclose(r.solution, [0.5, 0.5], atol=1e-12)
    status, value = lp_status(lp.objective, lp.rows, lp.sense, lp.bounds)
    assert status == "optimal" and value == pytest.approx(1.5)


def test_infeasible():
    lp = LinearProgram((1.0,), (((1.0,), ">=", 2.0), ((1.0,), "<=", 1.0)))
    assert lp_solve(lp).status == "infeasible"


def test_equality_and_min():
    lp = LinearProgram((1.0, 1.0), (((1.0, -1.0), "==", 1.0),), "min",
                       ((0.0, 10.0), (0.0, 10.0)))
    r = lp_solve(lp)
    assert r.optimum == pytest.approx(1.0, abs=1e-12)


def test_validation():
    with pytest.raises(ValueError):
        LinearProgram((1.0,), (((1.0, 2.0), "<=", 1.0),))
    with pytest.raises(ValueError):
        LinearProgram((1.0,), (((1.0,), "<", 1.0),))
    with pytest.raises(ValueError):
        LinearProgram((1.0,), (), "maximize")


def test_degenerate_cycling_example():
    # Beale's example cycles under the textbook Dantzig rule without an anti-cycling fallback
    lp = LinearProgram(
        (0.75, -150.0, 0.02, -6.0),
        (((0.25, -60.0, -0.04, 9.0), "<=", 0.0),
         ((0.5, -90.0, -0.02, 3.0), "<=", 0.0),
         ((0.0, 0.0, 1.0, 0.0), "<=", 1.0)),
        "max", tuple((0.0, math.inf) for _ in range(4)))
    r = lp_solve(lp)
    assert r.status == "optimal"
    assert r.optimum == pytest.approx(0.05, abs=1e-12)


def test_agrees_with_highs(rng):
    from scipy.optimize import linprog
    for _ in range(40):
        n, k = 4, 10
        A = rng.uniform(-5, 5, (k, n))
        b = rng.uniform(1, 10, k)
        c = rng.uniform(-5, 5, n)
        lp = LinearProgram(tuple(c), tuple((tuple(a), "<=", float(v)) for a, v in zip(A, b)),
                           "max", tuple((-3.0, 3.0) for _ in range(n)))
        ref = linprog(-c, A_ub=A, b_ub=b, bounds=[(-3, 3)] * n, method="highs",
                      options={"primal_feasibility_tolerance": 1e-10,
                               "dual_feasibility_tolerance": 1e-10})
        r = lp_solve(lp)
        assert r.status == "optimal"
        assert r.optimum == pytest.approx(-ref.fun, abs=1e-9)
        assert np.all(A @ r.solution <= b + 1e-9)


rows = st.lists(st.tuples(st.lists(st.integers(-5, 5), min_size=2, max_size=2),
                          st.sampled_from(["<=", ">=", "=="]), st.integers(-8, 8)), max_size=5)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2), rows,
       st.sampled_from(["max", "min"]), st.sampled_from([None, "nonneg", "box"]))
def test_matches_vertex_enumeration(obj, rs, sense, kind):
    rows_ = tuple((tuple(map(float, a)), rel, float(b)) for a, rel, b in rs)
    bounds = {None: None, "nonneg": ((0.0, math.inf),) * 2, "box": ((-4.0, 4.0),) * 2}[kind]
    lp = LinearProgram(tuple(map(float, obj)), rows_, sense, bounds)
    status, value = lp_status(lp.objective, lp.rows, sense, bounds)
    r = lp_solve(lp)
    assert r.status == status
    if status == "optimal":
        assert r.optimum == pytest.approx(value, abs=1e-9)
