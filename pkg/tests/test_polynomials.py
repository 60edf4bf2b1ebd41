import cmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from momentext import NonConvergence, Polynomial, poly_arith, poly_eval, poly_roots
from oracles import naive_eval

coeff = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@pytest.mark.parametrize("coeffs, x, expected", [
    ([1, 0, 1], 2, 5.0),
    ([], 7, 0.0),
    ([0.5, -1, 0.25], 3, 0.5 - 3 + 2.25),
])
def test_eval_examples(coeffs, x, expected):
    assert poly_eval(Polynomial(coeffs), x) == pytest.approx(expected, abs=1e-15)


def test_eval_arrays_and_complex():
    p = Polynomial((1.0, 0.0, 1.0))
    np.testing.assert_allclose(poly_eval(p, np.array([0.0, 1.0, 2.0])), [1, 2, 5])
    assert abs(poly_eval(p, 1j)) == 0.0


@pytest.mark.parametrize("p, q, op, expected", [
    ([1, 1], [1, -1], "add", (2.0,)),
    ([0, 1], [0, 1], "mul", (0.0, 0.0, 1.0)),
    ([1, 1], [1, -1], "mul", (1.0, 0.0, -1.0)),
    ([1, 2], [1, 2], "sub", ()),
])
def test_arith_examples(p, q, op, expected):
    assert poly_arith(Polynomial(p), Polynomial(q), op).coeffs == expected


def test_scale_and_operators():
    p = Polynomial((1.0, -2.0))
    assert poly_arith(p, None, "scale", 3.0).coeffs == (3.0, -6.0)
    assert (2 * p).coeffs == (p + p).coeffs
    assert (-p).coeffs == (-1.0, 2.0)
    with pytest.raises(ValueError):
        poly_arith(p, p, "div")


def test_canonical_form():
    assert Polynomial((1.0, 0.0, 0.0)).coeffs == (1.0,)
    assert Polynomial((0.0, -0.0)).is_zero()
    assert Polynomial(()).degree() == -np.inf
    assert str(Polynomial((-0.0, 1.0)).coeffs[0]) == "0.0"


def test_roots_examples():
    r = poly_roots(Polynomial((1.0, 0.0, 1.0)))
    assert sorted(r.roots, key=lambda z: z.imag) == [-1j, 1j]
    assert r.leading == 1.0
    assert poly_roots(Polynomial((0.0, 0.0, 1.0))).roots == (0.0, 0.0)
    r4 = poly_roots(Polynomial((1.0, 0, 0, 0, 1.0)))
    assert len(r4.roots) == 4
    for z in r4.roots:
        assert abs(z ** 4 + 1) <= 1e-10
    expected = [cmath.exp(1j * cmath.pi * k / 4) for k in (1, 3, 5, 7)]
    for e in expected:
        assert min(abs(z - e) for z in r4.roots) <= 1e-10


def test_roots_need_degree_one():
    with pytest.raises(ValueError):
        poly_roots(Polynomial((3.0,)))


def test_roots_iteration_cap():
    with pytest.raises(NonConvergence):
        poly_roots(Polynomial(tuple(np.poly(np.arange(1, 12))[::-1])), max_iter=3)


@settings(max_examples=200, deadline=None)
@given(st.lists(coeff, min_size=1, max_size=10), st.floats(-3, 3))
def test_horner_matches_naive_sum(coeffs, x):
    got = poly_eval(Polynomial(coeffs), x)
    scale = sum(abs(c) * abs(x) ** j for j, c in enumerate(coeffs)) + 1.0
    assert abs(got - naive_eval(coeffs, x)) <= 1e-12 * scale


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-4, 4), min_size=1, max_size=6),
       st.lists(st.tuples(st.floats(-4, 4), st.floats(0.3, 4)), max_size=3),
       st.floats(0.5, 5) | st.floats(-5, -0.5))
def test_reconstruction_separated_roots(reals, pairs, lead):
    zs = list(reals) + [complex(a, b) for a, b in pairs] + [complex(a, -b) for a, b in pairs]
    if len(zs) > 12:
        return
    pts = np.array(zs)
    gaps = np.abs(pts[:, None] - pts[None, :]) + np.eye(len(pts)) * 10
    if gaps.min() < 0.3:
        return
    coeffs = lead * np.real(np.poly(pts))[::-1]
    r = poly_roots(Polynomial(tuple(coeffs)))
    back = r.expand()
    assert np.max(np.abs(back - coeffs)) <= 1e-8 * np.max(np.abs(coeffs))


@settings(max_examples=150, deadline=None)
@given(st.lists(coeff, min_size=2, max_size=13))
def test_conjugate_closure(coeffs):
    p = Polynomial(coeffs)
    if p.degree() < 1:
        return
    try:
        r = poly_roots(p)
    except NonConvergence:
        return
    roots = list(r.roots)
    assert len(roots) == p.degree()
    for z in roots:
        if z.imag != 0.0:
            assert roots.count(z.conjugate()) == roots.count(z)
