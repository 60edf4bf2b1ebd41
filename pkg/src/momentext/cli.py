"""Command line interface: every operation as a subcommand with JSON in and out.

Exit codes: 0 affirmative result, 1 sound negative verdict (non-PSD data,
negativity witness, empty sandwich, failed self-test), 2 operational error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field

from . import jsonio
from .errors import MomentExtError, NotAMomentSequence, SandwichEmpty
from .extension import PICKS, extend
from .functions import FunctionSpec
from .lp import LP_TOL
from .measures import (MOMENT_TOL, AtomicMeasure, exactness_degree, integrate, recover_measure,
                       verify_moments)
from .moments import DEFAULT_TOL, MomentSequence, functional_apply, hamburger_check
from .polynomials import Polynomial
from .selftest import run_all
from .sos import SOS_TOL, SosCertificate, sos_decompose

log = logging.getLogger("momentext")

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2

# errors that are verdicts about the input rather than failures of the tool
NEGATIVE = (NotAMomentSequence, SandwichEmpty)


@dataclass
class RunConfig:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    params: dict = field(default_factory=dict)
    output: str | None = None
    seed: int = 0


def _tolerances(args) -> dict:
    tols = {
        "tol": args.tol,
        "lp_tol": args.lp_tol,
        "sos_tol": args.sos_tol,
        "moment_tol": args.moment_tol,
    }
    for name, value in tols.items():
        if not value > 0:
            raise ValueError(f"tolerance {name} must be positive, got {value!r}")
    return tols


def _load_inputs(args) -> dict:
    """Parse every referenced file before any computation starts."""
    docs = {}
    if getattr(args, "moments", None):
        docs["moments"] = MomentSequence.from_json(jsonio.load(args.moments))
    if getattr(args, "poly", None):
        docs["poly"] = Polynomial.from_json(jsonio.load(args.poly))
    if getattr(args, "function", None):
        docs["function"] = FunctionSpec.from_json(jsonio.load(args.function))
    if getattr(args, "measure", None):
        docs["measure"] = AtomicMeasure.from_json(jsonio.load(args.measure))
    return docs


def _require(inputs: dict, *names):
    missing = [n for n in names if n not in inputs]
    if missing:
        raise ValueError("missing required input(s): " + ", ".join("--" + n for n in missing))


def _recover_report(s: MomentSequence, tols: dict):
    mu = recover_measure(s, tols["tol"])
    k_max = exactness_degree(s, mu)
    report = verify_moments(mu, s, k_max, tols["moment_tol"])
    return mu, report


def cmd_check(cfg: RunConfig, inputs: dict):
    _require(inputs, "moments")
    v = hamburger_check(inputs["moments"], cfg.tolerances["tol"])
    return v.to_json(), EXIT_OK if v.is_psd else EXIT_NEGATIVE


def cmd_sos(cfg: RunConfig, inputs: dict):
    _require(inputs, "poly")
    res = sos_decompose(inputs["poly"])
    if isinstance(res, SosCertificate):
        doc = res.to_json()
        doc["verified"] = res.residual <= cfg.tolerances["sos_tol"]
        return doc, EXIT_OK if doc["verified"] else EXIT_ERROR
    return res.to_json(), EXIT_NEGATIVE


def cmd_recover(cfg: RunConfig, inputs: dict):
    _require(inputs, "moments")
    mu, report = _recover_report(inputs["moments"], cfg.tolerances)
    doc = {"measure": mu.to_json(), "verify_moments": report.to_json()}
    return doc, EXIT_OK if report.all_passed else EXIT_ERROR


def cmd_apply(cfg: RunConfig, inputs: dict):
    _require(inputs, "moments", "poly")
    return {"value": functional_apply(inputs["moments"], inputs["poly"])}, EXIT_OK


def cmd_integrate(cfg: RunConfig, inputs: dict):
    _require(inputs, "measure", "function")
    return {"value": integrate(inputs["measure"], inputs["function"])}, EXIT_OK


def _extend(cfg: RunConfig, inputs: dict):
    p = cfg.params
    return extend(inputs["moments"], inputs["function"], p["degree"], p["grid_size"],
                  p["pick"], lp_tol=cfg.tolerances["lp_tol"], tol=cfg.tolerances["tol"])


def cmd_extend(cfg: RunConfig, inputs: dict):
    _require(inputs, "moments", "function")
    return _extend(cfg, inputs).to_json(), EXIT_OK


class StageFailure(Exception):
    def __init__(self, stage: str, cause: Exception, partial: dict):
        self.stage = stage
        self.cause = cause
        self.partial = partial
        super().__init__(f"{stage}: {cause}")


def cmd_pipeline(cfg: RunConfig, inputs: dict):
    """check -> recover -> verify -> extend -> cross-check, keeping every intermediate."""
    _require(inputs, "moments", "function")
    s, g, tols = inputs["moments"], inputs["function"], cfg.tolerances
    report: dict = {}
    verdict = hamburger_check(s, tols["tol"])
    report["hamburger_check"] = verdict.to_json()
    if not verdict.is_psd:
        raise StageFailure("hamburger_check", NotAMomentSequence("Hankel matrix is not PSD"), report)
    try:
        mu, moments_report = _recover_report(s, tols)
    except MomentExtError as exc:
        raise StageFailure("recover_measure", exc, report) from exc
    report["recover_measure"] = mu.to_json()
    report["verify_moments"] = moments_report.to_json()
    if not moments_report.all_passed:
        raise StageFailure("verify_moments",
                           MomentExtError("recovered measure misses moments in its exactness range"),
                           report)
    try:
        sandwich = _extend(cfg, inputs)
    except MomentExtError as exc:
        raise StageFailure("extend", exc, report) from exc
    report["extend"] = sandwich.to_json()
    value = integrate(mu, g)
    ok = sandwich.lower <= value + tols["lp_tol"] and value <= sandwich.upper + tols["lp_tol"]
    report["cross_check"] = {"integral": value, "lower": sandwich.lower,
                             "upper": sandwich.upper, "passed": ok}
    if not ok:
        raise StageFailure("cross_check",
                           MomentExtError("integral of g against the recovered measure lies "
                                          "outside the sandwich"), report)
    return report, EXIT_OK


def cmd_selftest(cfg: RunConfig, inputs: dict):
    checks = run_all(cfg.seed)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<24} {c.trials:>5}  {c.detail}",
              file=sys.stderr)
    passed = all(c.passed for c in checks)
    return {"checks": [c.to_json() for c in checks], "all_passed": passed}, \
        EXIT_OK if passed else EXIT_NEGATIVE


COMMANDS = {
    "check": cmd_check,
    "sos": cmd_sos,
    "recover": cmd_recover,
    "apply": cmd_apply,
    "integrate": cmd_integrate,
    "extend": cmd_extend,
    "pipeline": cmd_pipeline,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="relative PSD tolerance")
    common.add_argument("--lp-tol", type=float, default=LP_TOL)
    common.add_argument("--sos-tol", type=float, default=SOS_TOL)
    common.add_argument("--moment-tol", type=float, default=MOMENT_TOL)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", "-o", help="write JSON here instead of standard output")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="momentext",
        description="Hamburger moment checks, two-square certificates, Gauss measures and "
                    "positive extensions of moment functionals.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, help_, *flags):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for flag in flags:
            sp.add_argument(f"--{flag}", metavar="FILE")
        return sp

    add("check", "Hankel positivity test of a moment sequence", "moments")
    add("sos", "two-square certificate or negativity witness", "poly")
    add("recover", "atomic measure reproducing a moment sequence", "moments")
    add("apply", "evaluate L(f) = sum c_j s_j", "moments", "poly")
    add("integrate", "integrate a function against an atomic measure", "measure", "function")
    for name, help_ in (("extend", "sandwich bounds and extension value for L(g)"),
                        ("pipeline", "check, recover, verify, extend and cross-check")):
        sp = add(name, help_, "moments", "function")
        sp.add_argument("--degree", type=int, required=True)
        sp.add_argument("--grid-size", type=int, required=True)
        sp.add_argument("--pick", choices=PICKS, default="midpoint")
    add("selftest", "run the randomized property checks")
    return parser


def _echo(inputs: dict, params: dict) -> dict:
    echo = {k: v.to_json() for k, v in inputs.items()}
    echo.update(params)
    return echo


def run(cfg: RunConfig, inputs: dict) -> tuple[dict, int]:
    doc = {"command": cfg.subcommand, "inputs_echo": _echo(inputs, cfg.params),
           "tolerances": cfg.tolerances}
    if cfg.subcommand == "selftest":
        doc["inputs_echo"]["seed"] = cfg.seed
    try:
        result, code = COMMANDS[cfg.subcommand](cfg, inputs)
        doc["result"] = result
        return doc, code
    except StageFailure as exc:
        negative = isinstance(exc.cause, NEGATIVE)
        doc["result"] = exc.partial
        doc["error"] = {"kind": getattr(exc.cause, "kind", type(exc.cause).__name__),
                        "stage": exc.stage, "detail": str(exc.cause)}
        return doc, EXIT_NEGATIVE if negative else EXIT_ERROR
    except NEGATIVE as exc:
        doc["error"] = {"kind": exc.kind, "detail": str(exc)}
        if isinstance(exc, SandwichEmpty):
            doc["error"].update(lower=exc.lower, upper=exc.upper, diagnostics=exc.diagnostics)
        return doc, EXIT_NEGATIVE
    except (MomentExtError, ValueError) as exc:
        kind = exc.kind if isinstance(exc, MomentExtError) else type(exc).__name__
        doc["error"] = {"kind": kind, "detail": str(exc)}
        return doc, EXIT_ERROR


def _emit(doc: dict, output: str | None):
    text = jsonio.dumps(doc)
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        tols = _tolerances(args)
        inputs = _load_inputs(args)
    except (OSError, ValueError, KeyError, TypeError, MomentExtError) as exc:
        kind = exc.kind if isinstance(exc, MomentExtError) else type(exc).__name__
        _emit({"command": args.subcommand, "error": {"kind": kind, "detail": str(exc)}},
              args.output)
        return EXIT_ERROR
    params = {}
    if args.subcommand in ("extend", "pipeline"):
        params = {"degree": args.degree, "grid_size": args.grid_size, "pick": args.pick}
    paths = {k: getattr(args, k) for k in ("moments", "poly", "function", "measure")
             if getattr(args, k, None)}
    cfg = RunConfig(args.subcommand, inputs=paths, tolerances=tols, params=params,
                    output=args.output, seed=args.seed)
    doc, code = run(cfg, inputs)
    _emit(doc, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
