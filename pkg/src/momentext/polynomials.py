"""Dense univariate real polynomials and complex root finding."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import NonConvergence

STRIP_TOL = 1e-13
ROOT_TOL = 1e-10
REAL_TOL = 1e-7
MAX_ITER = 500
# irrational starting angle so initial guesses avoid symmetric fixed points
_ANGLE_OFFSET = math.sqrt(2.0) - 1.0
_POLISH_STEPS = 8


def _canonical(coeffs) -> tuple[float, ...]:
    c = [float(v) + 0.0 for v in coeffs]
    if not c:
        return ()
    scale = max(abs(v) for v in c)
    if scale == 0.0:
        return ()
    while c and abs(c[-1]) <= STRIP_TOL * scale:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial c0 + c1 x + ... + cd x^d in canonical form.

    The zero polynomial has no coefficients and degree ``-inf``.
    """

    coeffs: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _canonical(self.coeffs))

    @classmethod
    def from_json(cls, doc: dict) -> Polynomial:
        return cls(tuple(doc["coeffs"]))

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> float:
        return self.coeffs[-1] if self.coeffs else 0.0

    def array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    def __call__(self, x):
        return poly_eval(self, x)

    def __add__(self, other: Polynomial) -> Polynomial:
        return poly_arith(self, other, "add")

    def __sub__(self, other: Polynomial) -> Polynomial:
        return poly_arith(self, other, "sub")

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return poly_arith(self, other, "mul")
        return poly_arith(self, None, "scale", float(other))

    __rmul__ = __mul__

    def __neg__(self) -> Polynomial:
        return poly_arith(self, None, "scale", -1.0)


def poly_eval(p: Polynomial, x):
    """Horner evaluation; ``x`` may be a scalar (real or complex) or an array."""
    if np.ndim(x) == 0:
        acc = 0.0 * x
        for c in reversed(p.coeffs):
            acc = acc * x + c
        return acc
    x = np.asarray(x)
    acc = np.zeros_like(x, dtype=np.result_type(x, float))
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def _padded(a: Sequence[float], n: int) -> np.ndarray:
    out = np.zeros(n)
    out[: len(a)] = a
    return out


def poly_arith(p: Polynomial, q: Polynomial | None, op: str, scale: float = 1.0) -> Polynomial:
    """Algebra operations: ``add``, ``sub``, ``mul`` or ``scale`` (by ``scale``, q ignored)."""
    if op == "scale":
        return Polynomial(tuple(scale * c for c in p.coeffs))
    if op in ("add", "sub"):
        n = max(len(p.coeffs), len(q.coeffs))
        a, b = _padded(p.coeffs, n), _padded(q.coeffs, n)
        return Polynomial(tuple(a + b if op == "add" else a - b))
    if op == "mul":
        if p.is_zero() or q.is_zero():
            return Polynomial()
        return Polynomial(tuple(np.convolve(p.array(), q.array())))
    raise ValueError(f"unknown polynomial operation {op!r}")


@dataclass(frozen=True)
class ComplexRootSet:
    roots: tuple[complex, ...]
    leading: float
    residual: float

    def real_roots(self) -> list[float]:
        return sorted(z.real for z in self.roots if z.imag == 0.0)

    def expand(self) -> np.ndarray:
        """Coefficients (ascending) of leading * prod(x - z)."""
        c = np.array([1.0 + 0j])
        for z in self.roots:
            c = np.convolve(c, [-z, 1.0])
        return self.leading * c.real


def _normalized_residual(a: np.ndarray, z: np.ndarray) -> np.ndarray:
    # |f(z)| / (||a||_inf * sum |z|^j): scale-free in both coefficients and root size
    val = np.zeros_like(z)
    for c in a[::-1]:
        val = val * z + c
    az = np.abs(z)
    powsum = np.zeros_like(az)
    for _ in range(len(a)):
        powsum = powsum * az + 1.0
    return np.abs(val) / (np.max(np.abs(a)) * powsum)


def _durand_kerner(monic: np.ndarray, root_tol: float, max_iter: int) -> tuple[np.ndarray, float]:
    d = len(monic) - 1
    if d == 1:
        z = np.array([-monic[0] + 0j])
        return z, float(_normalized_residual(monic, z).max())
    radius = 1.0 + np.max(np.abs(monic[:-1]))
    angles = 2.0 * np.pi * np.arange(d) / d + _ANGLE_OFFSET
    z = radius * np.exp(1j * angles)
    polish = 0
    res = np.inf
    for _ in range(max_iter):
        val = np.zeros_like(z)
        for c in monic[::-1]:
            val = val * z + c
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = diff.prod(axis=1)
        step = np.where(denom != 0, val / np.where(denom != 0, denom, 1.0), 0.0)
        z = z - step
        res = float(_normalized_residual(monic, z).max())
        if res <= root_tol:
            polish += 1
            tiny = np.all(np.abs(step) <= 4 * np.finfo(float).eps * (1.0 + np.abs(z)))
            if tiny or polish >= _POLISH_STEPS:
                break
    if res > root_tol:
        raise NonConvergence(
            f"root iteration stalled at normalized residual {res:.3e} after {max_iter} iterations"
        )
    return z, res


def _pair_conjugates(z: np.ndarray) -> list[complex]:
    real = [complex(v.real, 0.0) for v in z if v.imag == 0.0]
    upper = [v for v in z if v.imag > 0.0]
    lower = [v for v in z if v.imag < 0.0]
    # a multiple real root splits into a small star whose imaginary signs need not balance;
    # the surplus members closest to the axis belong to the real cluster
    if len(upper) > len(lower):
        upper.sort(key=lambda v: v.imag)
        real += [complex(v.real, 0.0) for v in upper[: len(upper) - len(lower)]]
        upper = upper[len(upper) - len(lower):]
    elif len(lower) > len(upper):
        lower.sort(key=lambda v: -v.imag)
        real += [complex(v.real, 0.0) for v in lower[: len(lower) - len(upper)]]
        lower = lower[len(lower) - len(upper):]
    out = real
    remaining = list(lower)
    for u in sorted(upper, key=lambda v: (v.real, v.imag)):
        k = min(range(len(remaining)), key=lambda i: abs(remaining[i].conjugate() - u))
        w = remaining.pop(k)
        avg = 0.5 * (u + w.conjugate())
        out.extend([complex(avg), complex(avg).conjugate()])
    return out


def poly_roots(p: Polynomial, root_tol: float = ROOT_TOL, real_tol: float = REAL_TOL,
               max_iter: int = MAX_ITER) -> ComplexRootSet:
    """All complex roots of ``p`` by Weierstrass (Durand-Kerner) iteration.

    Exact zero roots are deflated first. Near-real roots are snapped onto the
    axis and the remaining ones are symmetrized into exact conjugate pairs.
    """
    if p.is_zero() or p.degree() < 1:
        raise ValueError("poly_roots needs a polynomial of degree >= 1")
    a = p.array()
    nzero = int(np.argmax(a != 0.0))
    core = a[nzero:]
    roots: list[complex] = [0j] * nzero
    residual = 0.0
    if len(core) > 1:
        z, residual = _durand_kerner(core / core[-1], root_tol, max_iter)
        snap = np.abs(z.imag) <= real_tol * (1.0 + np.abs(z.real))
        z = np.where(snap, z.real + 0j, z)
        roots.extend(_pair_conjugates(z))
    roots.sort(key=lambda v: (v.real, v.imag))
    return ComplexRootSet(tuple(roots), p.leading, residual)
