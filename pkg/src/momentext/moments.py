"""Hankel positivity test for truncated Hamburger moment data.

A real sequence s_0..s_m is (the truncation of) a moment sequence on the
line only if every quadratic form sum_{k,l} s_{k+l} c_k c_l is nonnegative,
i.e. the Hankel matrix H[i, j] = s_{i+j} is positive semidefinite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegreeTooHigh, InsufficientMoments, InvalidMoments
from .linalg import jacobi_eigh
from .polynomials import Polynomial

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class MomentSequence:
    moments: tuple[float, ...]

    def __post_init__(self):
        m = tuple(float(v) for v in self.moments)
        if not m:
            raise InvalidMoments("a moment sequence needs at least s0")
        if not m[0] > 0.0:
            raise InvalidMoments(f"s0 must be positive, got {m[0]!r}")
        object.__setattr__(self, "moments", m)

    @classmethod
    def from_json(cls, doc: dict) -> MomentSequence:
        return cls(tuple(doc["moments"]))

    def to_json(self) -> dict:
        return {"moments": list(self.moments)}

    @property
    def m(self) -> int:
        """Index of the last available moment."""
        return len(self.moments) - 1

    def array(self) -> np.ndarray:
        return np.asarray(self.moments)

    def __len__(self):
        return len(self.moments)


@dataclass(frozen=True)
class HankelMatrix:
    entries: np.ndarray

    @property
    def order(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class PsdVerdict:
    is_psd: bool
    min_eigenvalue: float
    witness: Optional[np.ndarray] = None
    max_eigenvalue: float = 0.0

    def to_json(self) -> dict:
        return {
            "is_psd": self.is_psd,
            "min_eigenvalue": self.min_eigenvalue,
            "witness": None if self.witness is None else list(self.witness),
        }


def _as_sequence(s) -> MomentSequence:
    return s if isinstance(s, MomentSequence) else MomentSequence(tuple(s))


def build_hankel(s, N: int) -> HankelMatrix:
    s = _as_sequence(s)
    if N < 0 or 2 * N > s.m:
        raise InsufficientMoments(f"order {N + 1} Hankel needs s_0..s_{2 * N}, have s_0..s_{s.m}")
    idx = np.add.outer(np.arange(N + 1), np.arange(N + 1))
    return HankelMatrix(s.array()[idx])


def psd_check(H, tol: float = DEFAULT_TOL) -> PsdVerdict:
    """PSD test lambda_min >= -tol * max(1, lambda_max), with an eigenvector witness on failure."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    entries = H.entries if isinstance(H, HankelMatrix) else np.asarray(H, dtype=float)
    w, v = jacobi_eigh(entries)
    lo, hi = float(w[0]), float(w[-1])
    if lo >= -tol * max(1.0, hi):
        return PsdVerdict(True, lo, None, hi)
    c = v[:, 0] / np.linalg.norm(v[:, 0])
    return PsdVerdict(False, lo, c, hi)


def hamburger_check(s, tol: float = DEFAULT_TOL) -> PsdVerdict:
    """Hankel PSD test at the largest order the data admit, N = floor(m/2)."""
    s = _as_sequence(s)
    return psd_check(build_hankel(s, s.m // 2), tol)


def quadratic_form(H, c) -> float:
    """c^T H c, i.e. L applied to the square of sum_k c_k x^k."""
    entries = H.entries if isinstance(H, HankelMatrix) else np.asarray(H)
    c = np.asarray(c, dtype=float)
    return float(c @ entries @ c)


def functional_apply(s, f: Polynomial) -> float:
    """L(f) = sum_j c_j s_j, the Riesz functional of the sequence."""
    s = _as_sequence(s)
    if f.is_zero():
        return 0.0
    if f.degree() > s.m:
        raise DegreeTooHigh(f"degree {f.degree()} exceeds last moment index {s.m}")
    return float(np.dot(f.array(), s.array()[: len(f.coeffs)]))
