"""Bounded continuous test functions on an interval of the real line."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EvaluationOutsideDomain

BUILTINS = ("constant", "abs", "gaussian_bump", "sine", "trunc_monomial")


def trunc_monomial(x, n: int, k: float):
    """x^n on [-k, k], zero outside [-(k+1), k+1], linear on the two bands in between."""
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    edge = np.sign(x) ** n * k ** n if n else np.ones_like(x)
    inner = x ** n
    band = edge * (k + 1.0 - ax)
    return np.where(ax <= k, inner, np.where(ax < k + 1.0, band, 0.0))


@dataclass(frozen=True)
class FunctionSpec:
    """Either a named builtin with parameters or a piecewise-linear table.

    ``domain`` bounds may be infinite for builtins; sampled functions always
    live on the span of their grid.
    """

    kind: str
    name: str = ""
    params: dict = field(default_factory=dict)
    grid: tuple[float, ...] = ()
    values: tuple[float, ...] = ()
    domain: tuple[float, float] = (-math.inf, math.inf)

    def __post_init__(self):
        lo, hi = (float(v) for v in self.domain)
        if not lo <= hi:
            raise ValueError(f"empty domain [{lo}, {hi}]")
        object.__setattr__(self, "domain", (lo, hi))
        if self.kind == "builtin":
            if self.name not in BUILTINS:
                raise ValueError(f"unknown builtin {self.name!r}; choose from {BUILTINS}")
        elif self.kind == "sampled":
            grid = tuple(float(v) for v in self.grid)
            values = tuple(float(v) for v in self.values)
            if len(grid) < 2 or len(grid) != len(values):
                raise ValueError("sampled function needs >= 2 grid points and matching values")
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ValueError("sampled grid must be strictly increasing")
            if lo < grid[0] or hi > grid[-1]:
                raise ValueError("domain of a sampled function must lie inside its grid")
            object.__setattr__(self, "grid", grid)
            object.__setattr__(self, "values", values)
        else:
            raise ValueError(f"unknown function kind {self.kind!r}")

    @classmethod
    def builtin(cls, name: str, domain=(-math.inf, math.inf), **params) -> FunctionSpec:
        return cls("builtin", name=name, params=params, domain=tuple(domain))

    @classmethod
    def sampled(cls, grid, values, domain=None) -> FunctionSpec:
        grid = tuple(grid)
        return cls("sampled", grid=grid, values=tuple(values),
                   domain=tuple(domain) if domain is not None else (grid[0], grid[-1]))

    @classmethod
    def from_json(cls, doc: dict) -> FunctionSpec:
        dom = doc.get("domain")
        if dom is None:
            dom = [None, None]
        lo = -math.inf if dom[0] is None else dom[0]
        hi = math.inf if dom[1] is None else dom[1]
        if doc["kind"] == "sampled":
            return cls.sampled(doc["grid"], doc["values"],
                               None if doc.get("domain") is None else (lo, hi))
        return cls("builtin", name=doc["name"], params=dict(doc.get("params", {})), domain=(lo, hi))

    def to_json(self) -> dict:
        dom = [None if math.isinf(v) else v for v in self.domain]
        if self.kind == "sampled":
            return {"kind": "sampled", "grid": list(self.grid), "values": list(self.values),
                    "domain": dom}
        return {"kind": "builtin", "name": self.name, "params": dict(self.params), "domain": dom}

    @property
    def bounded_domain(self) -> bool:
        return all(math.isfinite(v) for v in self.domain)

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (x >= self.domain[0]) & (x <= self.domain[1])

    def __call__(self, x):
        scalar = np.ndim(x) == 0
        x = np.asarray(x, dtype=float)
        if not np.all(self.contains(x)):
            bad = x[~self.contains(x)] if x.ndim else x
            raise EvaluationOutsideDomain(
                f"evaluation at {np.ravel(bad)[0]!r} outside domain {list(self.domain)}")
        y = self._eval(x)
        return float(y) if scalar else y

    def _eval(self, x: np.ndarray) -> np.ndarray:
        if self.kind == "sampled":
            return np.interp(x, self.grid, self.values)
        p = self.params
        if self.name == "constant":
            return np.full_like(x, float(p.get("c", 1.0)))
        if self.name == "abs":
            return np.abs(x)
        if self.name == "gaussian_bump":
            return np.exp(-x * x)
        if self.name == "sine":
            return np.sin(x)
        return trunc_monomial(x, int(p["n"]), float(p["k"]))
