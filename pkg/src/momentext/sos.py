"""Two-square certificates for polynomials nonnegative on the real line.

If f >= 0 on R, its real roots have even multiplicity and its other roots
come in conjugate pairs. Collecting one root of every pair (and half of
every real bundle) into a complex polynomial w gives f = lead * w * conj(w),
so f = p^2 + q^2 with p = sqrt(lead) Re(w), q = sqrt(lead) Im(w). When that
fails, a real point with f(x0) < 0 is located instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence, ZeroPolynomial
from .polynomials import ComplexRootSet, Polynomial, poly_eval, poly_roots

SOS_TOL = 1e-7
CLUSTER_TOL = 1e-6


@dataclass(frozen=True)
class SosCertificate:
    p: Polynomial
    q: Polynomial
    residual: float

    def to_json(self) -> dict:
        return {"p": self.p.to_json(), "q": self.q.to_json(), "residual": self.residual}


@dataclass(frozen=True)
class NegativityWitness:
    x0: float
    value: float

    def to_json(self) -> dict:
        return {"witness": {"x0": self.x0, "value": self.value}}


def certificate_residual(f: Polynomial, p: Polynomial, q: Polynomial) -> float:
    """Max-norm coefficient distance between p^2 + q^2 and f, relative to max |f_j|."""
    g = (p * p + q * q).array()
    a = f.array()
    n = max(len(a), len(g))
    diff = np.zeros(n)
    diff[: len(a)] += a
    diff[: len(g)] -= g
    scale = np.max(np.abs(a)) if len(a) else 1.0
    return float(np.max(np.abs(diff)) / scale) if n else 0.0


def verify_certificate(f: Polynomial, cert: SosCertificate, tol: float = SOS_TOL) -> bool:
    return certificate_residual(f, cert.p, cert.q) <= tol


def _cluster_real(roots: list[float]) -> list[list[float]]:
    clusters: list[list[float]] = []
    for r in sorted(roots):
        if clusters and r - clusters[-1][-1] <= CLUSTER_TOL * (1.0 + abs(r)):
            clusters[-1].append(r)
        else:
            clusters.append([r])
    return clusters


def _probe_near(f: Polynomial, r: float) -> NegativityWitness | None:
    eps = 1e-9 * (1.0 + abs(r))
    for _ in range(90):
        for x in (r - eps, r + eps):
            v = poly_eval(f, x)
            if v < 0.0:
                return NegativityWitness(float(x), float(v))
        eps *= 2.0
    return None


def _probe_far(f: Polynomial) -> NegativityWitness | None:
    for k in range(0, 40):
        for x in (-(10.0 ** k), 10.0 ** k):
            v = poly_eval(f, x)
            if np.isfinite(v) and v < 0.0:
                return NegativityWitness(float(x), float(v))
    return None


def _scan(f: Polynomial, roots: ComplexRootSet | None) -> NegativityWitness | None:
    radius = 1.0 + max((abs(z) for z in roots.roots), default=0.0) if roots else 10.0
    xs = np.linspace(-2 * radius, 2 * radius, 4001)
    vals = poly_eval(f, xs)
    i = int(np.argmin(vals))
    if vals[i] < 0.0:
        return NegativityWitness(float(xs[i]), float(vals[i]))
    return None


def _from_half_roots(lead: float, half: list[complex]) -> tuple[Polynomial, Polynomial]:
    w = np.array([1.0 + 0j])
    for z in half:
        w = np.convolve(w, [-z, 1.0])
    scale = math.sqrt(lead)
    p = Polynomial(tuple(scale * w.real))
    q = Polynomial(tuple(scale * w.imag))
    # q -> -q leaves p^2 + q^2 unchanged; fix the sign so q has a positive leading coefficient
    if q.leading < 0.0:
        q = -q
    return p, q


def sos_decompose(f: Polynomial) -> SosCertificate | NegativityWitness:
    """Certificate f = p^2 + q^2, or a point where f is negative."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no nontrivial decomposition")
    d = f.degree()
    lead = f.leading
    if d == 0:
        if lead > 0:
            return SosCertificate(Polynomial((math.sqrt(lead),)), Polynomial(), 0.0)
        return NegativityWitness(0.0, lead)
    if lead < 0.0 or d % 2 == 1:
        w = _probe_far(f) or _scan(f, None)
        if w is None:
            raise NonConvergence("odd degree or negative leading term, yet no negative sample found")
        return w

    roots = poly_roots(f)
    real = [z.real for z in roots.roots if z.imag == 0.0]
    upper = [z for z in roots.roots if z.imag > 0.0]
    clusters = _cluster_real(real)
    odd = [c for c in clusters if len(c) % 2 == 1]
    for c in odd:
        w = _probe_near(f, float(np.mean(c)))
        if w is not None:
            return w
    if odd:
        w = _scan(f, roots)
        if w is not None:
            return w
        # no sign change found anywhere: odd clusters are split even bundles, merge neighbours
        merged: list[list[float]] = [c for c in clusters if len(c) % 2 == 0]
        for a, b in zip(odd[0::2], odd[1::2]):
            merged.append(a + b)
        clusters = merged

    half: list[complex] = list(upper)
    for c in clusters:
        c = sorted(c)
        centre = float(np.mean(c))
        half.extend([complex(centre, 0.0)] * (len(c) // 2))
    p, q = _from_half_roots(lead, half)
    return SosCertificate(p, q, certificate_residual(f, p, q))
