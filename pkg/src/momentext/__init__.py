"""Truncated Hamburger moment problems, made constructive.

Hankel positivity tests, two-square certificates for nonnegative univariate
polynomials, Gauss-quadrature representing measures, and one-step positive
extensions of moment functionals by polynomial minorants and majorants.
"""

from .errors import (DegreeTooHigh, EnvelopeViolation, EvaluationOutsideDomain, GridTooCoarse,
                     Infeasible, InsufficientMoments, InvalidMoments, MomentExtError,
                     NonConvergence, NotAMomentSequence, OutOfExactnessRange, RankDeficient,
                     SandwichEmpty, Unbounded, ZeroPolynomial)
from .extension import (SandwichResult, build_sandwich_lp, envelope_check, extend,
                        sandwich_grid, trunc_monomial_limit)
from .functions import FunctionSpec
from .lp import LinearProgram, LPResult, lp_solve
from .measures import (AtomicMeasure, JacobiMatrix, MomentReport, exactness_degree, integrate,
                       jacobi_from_moments, moments_of, recover_measure, verify_moments)
from .moments import (HankelMatrix, MomentSequence, PsdVerdict, build_hankel, functional_apply,
                      hamburger_check, psd_check, quadratic_form)
from .polynomials import ComplexRootSet, Polynomial, poly_arith, poly_eval, poly_roots
from .sos import NegativityWitness, SosCertificate, sos_decompose, verify_certificate

__version__ = "0.1.0"
