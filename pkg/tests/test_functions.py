import math

import numpy as np
import pytest

from momentext import EvaluationOutsideDomain, FunctionSpec
from momentext.functions import trunc_monomial


def test_builtins():
    xs = np.array([-1.0, 0.0, 2.0])
    np.testing.assert_allclose(FunctionSpec.builtin("abs")(xs), [1, 0, 2])
    np.testing.assert_allclose(FunctionSpec.builtin("gaussian_bump")(xs), np.exp(-xs ** 2))
    np.testing.assert_allclose(FunctionSpec.builtin("sine")(xs), np.sin(xs))
    np.testing.assert_allclose(FunctionSpec.builtin("constant", c=2.5)(xs), [2.5] * 3)
    assert FunctionSpec.builtin("abs")(-3.0) == 3.0


def test_trunc_monomial_shape():
    # x^n inside [-k, k], zero beyond k+1, linear in between
    assert trunc_monomial(1.5, 2, 2) == 2.25
    assert trunc_monomial(3.5, 2, 2) == 0.0
    assert trunc_monomial(2.5, 2, 2) == pytest.approx(2.0)
    assert trunc_monomial(-2.5, 3, 2) == pytest.approx(-4.0)
    assert trunc_monomial(0.5, 3, 0) == pytest.approx(0.0)
    assert trunc_monomial(10.0, 0, 20) == 1.0
    xs = np.linspace(-6, 6, 1201)
    ys = trunc_monomial(xs, 3, 2)
    assert np.max(np.abs(np.diff(ys))) < 0.2  # slope <= 12 on a 0.01 step, no jumps


def test_sampled_interp_and_domain():
    g = FunctionSpec.sampled([0, 1, 2], [0, 2, 0])
    assert g(0.5) == 1.0
    assert g.domain == (0.0, 2.0)
    with pytest.raises(EvaluationOutsideDomain):
        g(2.5)
    with pytest.raises(ValueError):
        FunctionSpec.sampled([0, 0], [1, 1])


def test_json_roundtrip():
    g = FunctionSpec.builtin("trunc_monomial", (-4, 4), n=2, k=2)
    assert FunctionSpec.from_json(g.to_json()) == g
    h = FunctionSpec.builtin("abs")
    assert h.to_json()["domain"] == [None, None]
    assert FunctionSpec.from_json(h.to_json()).domain == (-math.inf, math.inf)
    s = FunctionSpec.sampled([0, 1], [2, 2])
    assert FunctionSpec.from_json(s.to_json()) == s


def test_unknown_builtin():
    with pytest.raises(ValueError):
        FunctionSpec.builtin("cosh")
