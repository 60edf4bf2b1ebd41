"""Exception hierarchy shared by every module.

Each class carries a ``kind`` used by the CLI's machine-readable error block.
"""


class MomentExtError(Exception):
    """Base class for all library errors."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class NonConvergence(MomentExtError):
    pass


class ZeroPolynomial(MomentExtError):
    pass


class InsufficientMoments(MomentExtError):
    pass


class DegreeTooHigh(MomentExtError):
    pass


class InvalidMoments(MomentExtError):
    """Raised when a moment sequence violates its type invariants (empty, s0 <= 0)."""


class RankDeficient(MomentExtError):
    """Cholesky of the Hankel matrix hit a negligible pivot.

    ``rank`` is the detected numerical rank: the data come from a measure
    with exactly that many atoms.
    """

    def __init__(self, rank: int, detail: str = ""):
        self.rank = rank
        super().__init__(detail or f"Hankel matrix has numerical rank {rank}")


class NotAMomentSequence(MomentExtError):
    def __init__(self, detail: str = "", verdict=None):
        self.verdict = verdict
        super().__init__(detail or "sequence fails the Hankel positivity test")


class EvaluationOutsideDomain(MomentExtError):
    pass


class GridTooCoarse(MomentExtError):
    pass


class EnvelopeViolation(MomentExtError):
    pass


class Infeasible(MomentExtError):
    pass


class Unbounded(MomentExtError):
    pass


class SandwichEmpty(MomentExtError):
    def __init__(self, lower: float, upper: float, diagnostics: dict | None = None):
        self.lower = lower
        self.upper = upper
        self.diagnostics = diagnostics or {}
        super().__init__(f"minorant bound {lower!r} exceeds majorant bound {upper!r}")


class OutOfExactnessRange(MomentExtError):
    pass
