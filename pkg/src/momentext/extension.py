"""One-step positive extension of a moment functional to a bounded continuous g.

Given L on polynomials (through its moments) and a function g, the best
polynomial minorant and majorant of degree <= d on a grid give

    lower = sup { L(f1) : f1 <= g },   upper = inf { L(f2) : g <= f2 },

and any e in [lower, upper] defines a positive extension L(f + t g) = L(f) + t e
on span(polynomials, g). Both bounds are linear programs in the coefficients.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import (DegreeTooHigh, EnvelopeViolation, EvaluationOutsideDomain, GridTooCoarse,
                     Infeasible, NotAMomentSequence, OutOfExactnessRange, SandwichEmpty, Unbounded)
from .functions import FunctionSpec
from .lp import GE, LE, LP_TOL, LinearProgram, lp_solve
from .measures import AtomicMeasure, exactness_degree, integrate, recover_measure
from .moments import DEFAULT_TOL, _as_sequence, functional_apply, hamburger_check
from .polynomials import Polynomial, poly_eval

log = logging.getLogger(__name__)

PICKS = ("midpoint", "lower", "upper")
FINE_FACTOR = 10


@dataclass(frozen=True)
class SandwichResult:
    lower: float
    upper: float
    e: float
    minorant: Polynomial
    majorant: Polynomial
    degree: int
    grid_size: int
    grid: tuple[float, ...] = ()
    diagnostics: dict = field(default_factory=dict)

    def extended_value(self, s, f: Polynomial, d: float) -> float:
        """The extended functional on f + d*g: L(f) + d*e."""
        return functional_apply(s, f) + d * self.e

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "e": self.e,
            "minorant": self.minorant.to_json(),
            "majorant": self.majorant.to_json(),
            "degree": self.degree,
            "grid_size": self.grid_size,
            "diagnostics": self.diagnostics,
        }


def envelope_check(g: FunctionSpec, a: Polynomial, probe_count: int) -> bool:
    """Is |g| <= (a^2 + 1)/2 at probe_count evenly spaced points of g's domain (endpoints included)?"""
    if probe_count < 2:
        raise ValueError("probe_count must be at least 2")
    if not g.bounded_domain:
        raise EvaluationOutsideDomain("envelope probing needs a bounded domain")
    xs = np.linspace(g.domain[0], g.domain[1], probe_count)
    av = poly_eval(a, xs)
    return bool(np.all(np.abs(g(xs)) <= 0.5 * (av * av + 1.0)))


def sandwich_grid(g: FunctionSpec, grid_size: int, nodes=()) -> np.ndarray:
    """Uniform grid over g's domain merged with every measure node inside it."""
    if not g.bounded_domain:
        raise EvaluationOutsideDomain("a sandwich grid needs a bounded domain")
    xs = np.linspace(g.domain[0], g.domain[1], grid_size)
    inside = [x for x in nodes if g.domain[0] <= x <= g.domain[1]]
    return np.unique(np.concatenate([xs, np.asarray(inside, dtype=float)]))


def coeff_cap(g_values) -> float:
    return 1e3 * (1.0 + float(np.max(np.abs(g_values))))


def build_sandwich_lp(s, g: FunctionSpec, degree: int, grid, side: str,
                      cap: float | None = None) -> LinearProgram:
    """Coefficient LP for the best degree-``degree`` minorant or majorant of g on ``grid``."""
    s = _as_sequence(s)
    if side not in ("minorant", "majorant"):
        raise ValueError(f"side must be 'minorant' or 'majorant', got {side!r}")
    if degree < 0 or degree > s.m:
        raise DegreeTooHigh(f"degree {degree} outside 0..{s.m}")
    grid = np.asarray(grid, dtype=float)
    if len(grid) < degree + 1:
        raise GridTooCoarse(f"{len(grid)} grid points cannot pin down degree {degree}")
    gv = np.asarray(g(grid), dtype=float)
    if cap is None:
        cap = coeff_cap(gv)
    V = np.vander(grid, degree + 1, increasing=True)
    rel = LE if side == "minorant" else GE
    rows = tuple((tuple(V[i]), rel, float(gv[i])) for i in range(len(grid)))
    return LinearProgram(
        objective=tuple(s.moments[: degree + 1]),
        rows=rows,
        sense="max" if side == "minorant" else "min",
        bounds=tuple((-cap, cap) for _ in range(degree + 1)),
    )


def _solve_side(lp: LinearProgram, side: str) -> np.ndarray:
    res = lp_solve(lp)
    if res.status == "infeasible":
        raise Infeasible(f"{side} LP is infeasible")
    if res.status == "unbounded":
        raise Unbounded(f"{side} LP is unbounded")
    return res.solution


def _tighten(coeffs: np.ndarray, grid: np.ndarray, gv: np.ndarray, s, side: str) -> Polynomial:
    """Make the LP vertex exactly grid-feasible, then compare with the constant candidate.

    Shifting by the worst grid violation removes simplex roundoff; the
    constant min g (or max g) is always feasible and wins when the vertex
    stopped short of it.
    """
    c = np.asarray(coeffs, dtype=float).copy()
    sign = 1.0 if side == "minorant" else -1.0
    for _ in range(4):
        # re-evaluate with Horner after each shift; the final rounding can leave a last ulp
        worst = float(np.max(sign * (poly_eval(Polynomial(tuple(c)), grid) - gv)))
        if worst <= 0.0:
            break
        c[0] -= sign * worst * (1.0 + 1e-12)
    poly = Polynomial(tuple(c))
    if side == "minorant":
        const = Polynomial((float(np.min(gv)),))
        return const if functional_apply(s, const) > functional_apply(s, poly) else poly
    const = Polynomial((float(np.max(gv)),))
    return const if functional_apply(s, const) < functional_apply(s, poly) else poly


def _fine_violation(g: FunctionSpec, poly: Polynomial, n: int, side: str) -> float:
    xs = np.linspace(g.domain[0], g.domain[1], n)
    gap = poly_eval(poly, xs) - g(xs)
    worst = gap.max() if side == "minorant" else (-gap).max()
    return float(max(worst, 0.0))


def extend(s, g: FunctionSpec, degree: int, grid_size: int, pick: str = "midpoint",
           lp_tol: float = LP_TOL, tol: float = DEFAULT_TOL,
           envelope: Polynomial | None = None) -> SandwichResult:
    """Sandwich bounds for L(g) and the chosen extension value e."""
    s = _as_sequence(s)
    if pick not in PICKS:
        raise ValueError(f"pick must be one of {PICKS}")
    verdict = hamburger_check(s, tol)
    if not verdict.is_psd:
        raise NotAMomentSequence(
            f"Hankel matrix has eigenvalue {verdict.min_eigenvalue:.6g} < 0", verdict)
    if degree < 0 or degree > s.m:
        raise DegreeTooHigh(f"degree {degree} outside 0..{s.m}")

    mu = recover_measure(s, tol)
    grid = sandwich_grid(g, grid_size, mu.nodes)
    gv = np.asarray(g(grid), dtype=float)
    if envelope is None:
        # any bounded g sits under the constant envelope a = max|g|
        envelope = Polynomial((float(np.max(np.abs(gv))),))
    if not envelope_check(g, envelope, max(grid_size, 2)):
        raise EnvelopeViolation("g exceeds (a^2 + 1)/2 for the supplied envelope polynomial a")

    cap = coeff_cap(gv)
    minorant = _tighten(_solve_side(
        build_sandwich_lp(s, g, degree, grid, "minorant", cap), "minorant"), grid, gv, s, "minorant")
    majorant = _tighten(_solve_side(
        build_sandwich_lp(s, g, degree, grid, "majorant", cap), "majorant"), grid, gv, s, "majorant")
    lower = functional_apply(s, minorant)
    upper = functional_apply(s, majorant)

    n_fine = FINE_FACTOR * (grid_size - 1) + 1
    outside = [x for x in mu.nodes if not g.contains(x)]
    diagnostics = {
        "grid_points": len(grid),
        "coeff_cap": cap,
        "nodes": list(mu.nodes),
        "nodes_outside_domain": outside,
        "exactness_degree": exactness_degree(s, mu),
        "fine_grid_size": n_fine,
        "minorant_fine_violation": _fine_violation(g, minorant, n_fine, "minorant"),
        "majorant_fine_violation": _fine_violation(g, majorant, n_fine, "majorant"),
    }
    if outside:
        log.warning("%d measure nodes fall outside the domain of g", len(outside))
    if lower > upper + lp_tol:
        raise SandwichEmpty(lower, upper, diagnostics)

    if pick == "lower":
        e = lower
    elif pick == "upper":
        e = upper
    else:
        e = 0.5 * (lower + upper)
    return SandwichResult(lower, upper, e, minorant, majorant, degree, grid_size,
                          tuple(float(x) for x in grid), diagnostics)


def trunc_monomial_limit(s, n: int, k_values, tol: float = DEFAULT_TOL) -> list[float]:
    """Integrals of g_{n,k} against the recovered measure, one per k."""
    s = _as_sequence(s)
    if n < 0 or n > s.m:
        raise DegreeTooHigh(f"monomial degree {n} outside 0..{s.m}")
    mu: AtomicMeasure = recover_measure(s, tol)
    if n > exactness_degree(s, mu):
        raise OutOfExactnessRange(
            f"recovered measure reproduces moments only through degree {exactness_degree(s, mu)}")
    ks = list(k_values)
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError("k_values must be increasing")
    return [integrate(mu, FunctionSpec.builtin("trunc_monomial", n=n, k=k)) for k in ks]
