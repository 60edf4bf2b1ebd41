"""Atomic representing measures from truncated moment data (Gauss quadrature).

The Cholesky factor of the Hankel matrix encodes the three-term recurrence
of the orthonormal polynomials of the moment functional. The eigenvalues of
the resulting Jacobi matrix are the nodes; the squared first components of
its eigenvectors, times s0, are the weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotAMomentSequence, RankDeficient
from .functions import FunctionSpec
from .linalg import tridiag_ql
from .moments import DEFAULT_TOL, MomentSequence, _as_sequence, hamburger_check
from .polynomials import Polynomial

RANK_TOL = 1e-10
MOMENT_TOL = 1e-8


@dataclass(frozen=True)
class AtomicMeasure:
    nodes: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        nodes = tuple(float(v) for v in self.nodes)
        weights = tuple(float(v) for v in self.weights)
        if len(nodes) != len(weights) or not nodes:
            raise ValueError("a measure needs matching, nonempty node and weight lists")
        if any(w <= 0.0 for w in weights):
            raise ValueError("atom weights must be positive")
        if any(b <= a for a, b in zip(nodes, nodes[1:])):
            raise ValueError("atom nodes must be strictly increasing")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_atoms(cls, atoms) -> AtomicMeasure:
        atoms = sorted((float(x), float(w)) for x, w in atoms)
        return cls(tuple(a[0] for a in atoms), tuple(a[1] for a in atoms))

    @classmethod
    def from_json(cls, doc: dict) -> AtomicMeasure:
        return cls.from_atoms((a["node"], a["weight"]) for a in doc["atoms"])

    def to_json(self) -> dict:
        return {"atoms": [{"node": x, "weight": w} for x, w in zip(self.nodes, self.weights)]}

    def __len__(self):
        return len(self.nodes)

    @property
    def mass(self) -> float:
        return math.fsum(self.weights)

    def moments(self, k_max: int) -> np.ndarray:
        x = np.asarray(self.nodes)
        w = np.asarray(self.weights)
        return np.array([np.dot(w, x ** k) for k in range(k_max + 1)])


@dataclass(frozen=True)
class JacobiMatrix:
    diag: tuple[float, ...]
    offdiag: tuple[float, ...]

    @property
    def size(self) -> int:
        return len(self.diag)

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def _scale(s: MomentSequence, n: int) -> float:
    # x -> x / c with c the root-mean-power of the largest even moment used;
    # balances the Hankel entries so the Cholesky factor loses fewer digits
    top = 2 * (n - 1)
    if top <= 0 or s.moments[top] <= 0.0:
        return 1.0
    c = (s.moments[top] / s.moments[0]) ** (1.0 / top)
    return c if np.isfinite(c) and c > 0.0 else 1.0


def _partial_cholesky(s: MomentSequence, n: int, rank_tol: float, c: float = 1.0):
    """Rows 0..r-1 of the upper Cholesky factor of the n x (n+1) Hankel block.

    Entries with row k < n and column j <= n only touch s_0..s_{2n-1}. The
    moments are those of the measure pushed forward by x -> x / c.
    Returns ``(R, r)`` where r < n signals a negligible pivot at row r.
    """
    s_arr = s.array()[: 2 * n] / c ** np.arange(min(2 * n, len(s)))
    R = np.zeros((n, n + 1))
    top = 0.0
    for k in range(n):
        pivot = s_arr[2 * k] - np.dot(R[:k, k], R[:k, k])
        top = max(top, pivot)
        if pivot <= rank_tol * top:
            return R[:k], k
        R[k, k] = math.sqrt(pivot)
        for j in range(k + 1, n + 1):
            R[k, j] = (s_arr[k + j] - np.dot(R[:k, k], R[:k, j])) / R[k, k]
    return R, n


def _recurrence(R: np.ndarray, r: int, c: float = 1.0) -> JacobiMatrix:
    diag = []
    for k in range(r):
        a = R[k, k + 1] / R[k, k]
        if k > 0:
            a -= R[k - 1, k] / R[k - 1, k - 1]
        diag.append(c * a)
    off = [c * R[k, k] / R[k - 1, k - 1] for k in range(1, r)]
    return JacobiMatrix(tuple(float(v) for v in diag), tuple(float(v) for v in off))


def atom_count(s) -> int:
    """Number of Gauss atoms the data determine: floor((m + 1) / 2)."""
    return (_as_sequence(s).m + 1) // 2


def jacobi_from_moments(s, rank_tol: float = RANK_TOL) -> JacobiMatrix:
    """Recurrence coefficients alpha_k, beta_k from the Cholesky factor of the Hankel matrix.

    Raises RankDeficient(r) when the data come from an r-atom measure with
    r smaller than the requested size.
    """
    s = _as_sequence(s)
    n = atom_count(s)
    if n == 0:
        raise RankDeficient(0, "need at least s0 and s1 to form a Jacobi matrix")
    c = _scale(s, n)
    R, r = _partial_cholesky(s, n, rank_tol, c)
    if r < n:
        raise RankDeficient(r)
    return _recurrence(R, n, c)


def recover_measure(s, tol: float = DEFAULT_TOL, rank_tol: float = RANK_TOL) -> AtomicMeasure:
    """Gauss quadrature measure reproducing s_k for k <= 2N - 1.

    Rank-deficient data yield the exact r-atom measure, which then
    reproduces every available moment.
    """
    s = _as_sequence(s)
    verdict = hamburger_check(s, tol)
    if not verdict.is_psd:
        raise NotAMomentSequence(
            f"Hankel matrix has eigenvalue {verdict.min_eigenvalue:.6g} < 0", verdict)
    n = atom_count(s)
    if n == 0:
        # s0 alone: a single atom at the origin carries the mass
        return AtomicMeasure((0.0,), (s.moments[0],))
    c = _scale(s, n)
    R, r = _partial_cholesky(s, n, rank_tol, c)
    if r == 0:
        raise NotAMomentSequence("s0 is negligible")
    jac = _recurrence(R, r, c)
    nodes, first = tridiag_ql(jac.diag, jac.offdiag)
    weights = s.moments[0] * first ** 2
    return _merge_atoms(nodes, weights)


def _merge_atoms(nodes: np.ndarray, weights: np.ndarray) -> AtomicMeasure:
    # coincident eigenvalues cannot occur for an unreduced Jacobi matrix; guard against roundoff ties
    out_x: list[float] = []
    out_w: list[float] = []
    for x, w in zip(nodes, weights):
        if out_x and x <= out_x[-1]:
            total = out_w[-1] + w
            out_x[-1] = (out_x[-1] * out_w[-1] + x * w) / total
            out_w[-1] = total
        elif w > 0.0:
            out_x.append(float(x))
            out_w.append(float(w))
    return AtomicMeasure(tuple(out_x), tuple(out_w))


def exactness_degree(s, mu: AtomicMeasure) -> int:
    """Highest k for which mu is guaranteed to reproduce s_k.

    A full Gauss rule is exact through 2N - 1; a rank-truncated (exactly
    atomic) recovery reproduces every available moment.
    """
    s = _as_sequence(s)
    if s.m == 0:
        return 0
    if len(mu) < atom_count(s):
        return s.m
    return min(s.m, 2 * len(mu) - 1)


def integrate(mu: AtomicMeasure, g) -> float:
    """Sum of weight_i * g(node_i); g is a FunctionSpec, Polynomial or any vectorized callable."""
    x = np.asarray(mu.nodes)
    vals = np.asarray(g(x), dtype=float)
    return math.fsum(np.asarray(mu.weights) * vals)


@dataclass(frozen=True)
class MomentReport:
    errors: tuple[float, ...]
    relative: tuple[float, ...]
    passed: tuple[bool, ...]
    tol: float

    @property
    def all_passed(self) -> bool:
        return all(self.passed)

    def to_json(self) -> dict:
        return {
            "k": list(range(len(self.errors))),
            "abs_error": list(self.errors),
            "rel_error": list(self.relative),
            "passed": list(self.passed),
            "all_passed": self.all_passed,
            "tol": self.tol,
        }


def verify_moments(mu: AtomicMeasure, s, k_max: int, tol: float = MOMENT_TOL) -> MomentReport:
    """Per-k errors |sum w_i x_i^k - s_k| for k = 0..k_max.

    A moment passes when its error is within ``tol`` times the scale
    max(1, |s_k|, sum w_i |x_i|^k), the size of the terms being summed.
    """
    s = _as_sequence(s)
    if k_max > s.m:
        raise ValueError(f"k_max={k_max} exceeds last moment index {s.m}")
    x = np.asarray(mu.nodes)
    w = np.asarray(mu.weights)
    errs, rels, ok = [], [], []
    for k in range(k_max + 1):
        terms = w * x ** k
        err = abs(math.fsum(terms) - s.moments[k])
        scale = max(1.0, abs(s.moments[k]), float(np.sum(np.abs(terms))))
        errs.append(err)
        rels.append(err / scale)
        ok.append(err <= tol * scale)
    return MomentReport(tuple(errs), tuple(rels), tuple(ok), tol)


def moments_of(mu: AtomicMeasure, k_max: int) -> MomentSequence:
    return MomentSequence(tuple(mu.moments(k_max)))


def polynomial_integral(mu: AtomicMeasure, f: Polynomial) -> float:
    return integrate(mu, f)
