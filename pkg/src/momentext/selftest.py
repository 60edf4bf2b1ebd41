"""Randomized property checks behind the ``selftest`` subcommand.

Each check returns a :class:`Check`; none of them raise on a failed property.
Trial counts are smaller than the full test suite so the command stays quick.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .extension import extend, trunc_monomial_limit
from .functions import FunctionSpec
from .lp import EQ, GE, LE, LinearProgram, lp_solve
from .measures import AtomicMeasure, moments_of, recover_measure, verify_moments
from .moments import build_hankel, hamburger_check, quadratic_form
from .polynomials import Polynomial, poly_eval
from .sos import NegativityWitness, SosCertificate, sos_decompose, verify_certificate


@dataclass
class Check:
    name: str
    passed: bool
    trials: int
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "trials": self.trials,
                "detail": self.detail}


def random_measure(rng, max_atoms: int, lo=-5.0, hi=5.0, min_gap=0.5) -> AtomicMeasure:
    n = int(rng.integers(1, max_atoms + 1))
    while True:
        x = np.sort(rng.uniform(lo, hi, n))
        if n == 1 or np.min(np.diff(x)) > min_gap:
            break
    return AtomicMeasure(tuple(x), tuple(rng.uniform(0.1, 2.0, n)))


def check_hamburger_forward(rng, trials=50) -> Check:
    bad = 0
    for _ in range(trials):
        s = moments_of(random_measure(rng, 5), 10)
        bad += not hamburger_check(s, 1e-9).is_psd
    return Check("hamburger_forward", bad == 0, trials, f"{bad} valid sequences rejected")


def check_hamburger_witness(rng, trials=50) -> Check:
    bad = 0
    for _ in range(trials):
        s = np.array(moments_of(random_measure(rng, 5), 10).moments)
        i = int(rng.integers(1, 6))
        s[2 * i] -= s[2 * i] * (1.0 + rng.uniform(0.01, 1.0))
        v = hamburger_check(s)
        H = build_hankel(s, 5)
        bad += v.is_psd or quadratic_form(H, v.witness) >= 0.0
    return Check("hamburger_witness", bad == 0, trials, f"{bad} perturbations missed")


def check_sos(rng, trials=100) -> Check:
    bad = 0
    for _ in range(trials):
        p = Polynomial(tuple(rng.uniform(-3, 3, int(rng.integers(1, 8)))))
        q = Polynomial(tuple(rng.uniform(-3, 3, int(rng.integers(1, 8)))))
        f = p * p + q * q
        if f.is_zero():
            continue
        cert = sos_decompose(f)
        bad += not (isinstance(cert, SosCertificate) and verify_certificate(f, cert, 1e-7))
    for _ in range(trials // 4):
        f = Polynomial(tuple(rng.uniform(-3, 3, 2 * int(rng.integers(1, 4)))))  # odd degree
        w = sos_decompose(f)
        bad += not (isinstance(w, NegativityWitness) and poly_eval(f, w.x0) < 0.0)
    return Check("sos_certificates", bad == 0, trials + trials // 4, f"{bad} failures")


def check_roundtrip(rng, trials=30) -> Check:
    worst = 0.0
    for _ in range(trials):
        mu = random_measure(rng, 6)
        got = recover_measure(moments_of(mu, 2 * len(mu)))
        if len(got) != len(mu):
            worst = math.inf
            continue
        worst = max(worst, np.max(np.abs(np.subtract(got.nodes, mu.nodes))),
                    np.max(np.abs(np.subtract(got.weights, mu.weights))))
    return Check("measure_roundtrip", bool(worst <= 1e-6), trials, f"max abs error {worst:.3e}")


def check_gauss_exactness(rng, trials=30) -> Check:
    fails_low = 0
    misses_top = 0
    for _ in range(trials):
        mu = random_measure(rng, 6)
        while len(mu) < 2:
            mu = random_measure(rng, 6)
        N = int(rng.integers(1, len(mu)))
        s = moments_of(mu, 2 * N)
        rep = verify_moments(recover_measure(s), s, 2 * N, 1e-8)
        fails_low += not all(rep.passed[: 2 * N])
        misses_top += rep.passed[2 * N]
    ok = fails_low == 0 and misses_top <= trials // 20
    return Check("gauss_exactness", ok, trials,
                 f"{fails_low} low-degree failures, {misses_top} unexpected passes at 2N")


_GAUSS = (1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0)


def _sandwich_functions():
    return [FunctionSpec.builtin("abs", (-4, 4)),
            FunctionSpec.builtin("gaussian_bump", (-4, 4)),
            FunctionSpec.builtin("trunc_monomial", (-4, 4), n=2, k=2)]


def check_sandwich(rng=None) -> Check:
    mu = recover_measure(_GAUSS)
    problems = []
    for g in _sandwich_functions():
        widths = []
        for d in (0, 2, 4):
            r = extend(_GAUSS, g, d, 201)
            widths.append(r.upper - r.lower)
            val = float(np.dot(mu.weights, g(np.asarray(mu.nodes))))
            if not (r.lower <= val <= r.upper + 1e-8) or r.e < 0.0:
                problems.append(f"{g.name} degree {d}")
        if any(b > a + 1e-8 for a, b in zip(widths, widths[1:])):
            problems.append(f"{g.name} widths {widths}")
    return Check("sandwich", not problems, 9, "; ".join(problems))


def check_positivity(rng, trials=50) -> Check:
    g = FunctionSpec.builtin("abs", (-4, 4))
    r = extend(_GAUSS, g, 4, 201, pick="lower")
    grid = np.asarray(r.grid)
    gv = g(grid)
    worst = math.inf
    for sign in (0, 1, -1):
        for _ in range(trials):
            h = Polynomial(tuple(rng.uniform(-3, 3, 5)))
            hv = poly_eval(h, grid)
            # convex mixing with the optimal bound polynomial drives cases onto the boundary
            lam = float(rng.choice([0.0, rng.uniform(), 0.999, 1.0]))
            if sign == 0:
                f, d = h - Polynomial((float(np.min(hv)),)), 0.0
            elif sign > 0:
                d = float(rng.uniform(0.1, 5))
                h = h - Polynomial((float(np.max(hv - gv)),))  # h <= g on the grid
                f = -d * (lam * r.minorant + (1.0 - lam) * h)
            else:
                d = -float(rng.uniform(0.1, 5))
                h = h + Polynomial((float(np.max(gv - hv)),))  # h >= g on the grid
                f = -d * (lam * r.majorant + (1.0 - lam) * h)
            worst = min(worst, r.extended_value(_GAUSS, f, d))
    return Check("positivity_three_cases", worst >= -1e-7, 3 * trials,
                 f"smallest extended value {worst:.3e}")


def check_trunc_limit(rng=None) -> Check:
    vals = trunc_monomial_limit((1.0, 0.0, 1.0, 0.0), 2, [1, 2, 3, 5])
    err = max(abs(v - 1.0) for v in vals)
    return Check("trunc_monomial_limit", err <= 1e-12, len(vals), f"max deviation {err:.3e}")


def brute_force_lp(lp: LinearProgram, box: float = 1e6):
    """Vertex enumeration over the LP intersected with |x_j| <= box."""
    n = lp.n_vars
    planes = []
    for a, rel, b in lp.rows:
        a = np.asarray(a, dtype=float)
        if rel == LE:
            planes.append((a, b, False))
        elif rel == GE:
            planes.append((-a, -b, False))
        else:
            planes.append((a, b, True))
    for j, (lo, hi) in enumerate(lp.var_bounds()):
        e = np.eye(n)[j]
        planes.append((e, min(hi, box), False))
        planes.append((-e, -max(lo, -box), False))
    sgn = 1.0 if lp.sense == "max" else -1.0
    best = None
    for idx in itertools.combinations(range(len(planes)), n):
        M = np.array([planes[i][0] for i in idx])
        if abs(np.linalg.det(M)) < 1e-9:
            continue
        x = np.linalg.solve(M, np.array([planes[i][1] for i in idx]))
        ok = all(abs(a @ x - b) <= 1e-9 if eq else a @ x <= b + 1e-9 for a, b, eq in planes)
        if ok:
            v = sgn * float(np.dot(lp.objective, x))
            best = v if best is None else max(best, v)
    return None if best is None else sgn * best


def lp_oracle(lp: LinearProgram):
    a = brute_force_lp(lp, 1e6)
    if a is None:
        return "infeasible", None
    if abs(brute_force_lp(lp, 2e6) - a) > 1e-6:
        return "unbounded", None
    return "optimal", a


def random_lp(rng) -> LinearProgram:
    n = int(rng.integers(1, 4))
    k = int(rng.integers(0, 9))
    rows = tuple(
        (tuple(np.round(rng.uniform(-5, 5, n), 1)), str(rng.choice([LE, GE, EQ], p=[.45, .45, .1])),
         float(np.round(rng.uniform(-10, 10), 1)))
        for _ in range(k))
    kind = int(rng.integers(0, 3))
    bounds = (None if kind == 0 else
              tuple((0.0, math.inf) for _ in range(n)) if kind == 1 else
              tuple((-5.0, 5.0) for _ in range(n)))
    return LinearProgram(tuple(np.round(rng.uniform(-5, 5, n), 1)), rows,
                         str(rng.choice(["max", "min"])), bounds)


def check_lp(rng, trials=100) -> Check:
    bad = 0
    for _ in range(trials):
        lp = random_lp(rng)
        res = lp_solve(lp)
        status, value = lp_oracle(lp)
        bad += res.status != status or (status == "optimal" and abs(res.optimum - value) > 1e-9)
    return Check("lp_vertex_oracle", bad == 0, trials, f"{bad} mismatches")


CHECKS = (check_hamburger_forward, check_hamburger_witness, check_sos, check_roundtrip,
          check_gauss_exactness, check_sandwich, check_positivity, check_trunc_limit, check_lp)


def run_all(seed: int = 0) -> list[Check]:
    out = []
    for fn in CHECKS:
        # one stream per check so results do not depend on check order
        rng = np.random.default_rng([seed, len(out)])
        out.append(fn(rng))
    return out
