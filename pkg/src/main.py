#!/usr/bin/env python3

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
import yaml

# Add src directory to Python path
sys.path.append(str(Path(__file__).parent.parent))

from src.harness.generate import KINDS, GeneratorSpec
from src.harness.matrix_io import format_complex, parse_complex_literal, parse_matrix
from src.harness.sweep import SweepRunner
from src.hypotheses.fitting import fit_disk, fit_lambda, fit_segment
from src.hypotheses.models import (
    CombinationParams,
    DiskParams,
    LambdaRadius,
    ParamSet,
    PriorParams,
    SegmentParams,
)
from src.ledger.catalog import InequalityId, parse_id
from src.ledger.engine import CertificateEngine, Verdict
from src.ledger.serialize import write_certificates, write_frame
from src.linalg.core import operator_norm
from src.numerical_range.radius import range_boundary, spectral_radius
from src.utils.config import load_config
from src.utils.errors import CertificationError, Singular, UsageError, WrongParamKind
from src.utils.logger import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_HYPOTHESIS = 2
EXIT_INPUT = 3

DEFAULT_TOL = 1e-8


class _ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as exceptions so they map to the input-error exit code."""

    def error(self, message: str):
        raise UsageError(message)


def _complex_arg(text: str) -> complex:
    value = parse_complex_literal(text)
    if value is not None:
        return value
    try:
        return complex(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a complex literal like 0+1i, got {text!r}")


def _seed_arg(text: str) -> int:
    seed = int(text)
    if not 0 <= seed < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return seed


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    common = _ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("-c", "--config", default=None, help="Path to configuration file")
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help=(
            "Numerical-radius enclosure width (default: numerical_radius.tol from the config, 1e-9) "
            f"and analyze identity-residual tolerance (default {DEFAULT_TOL})"
        ),
    )
    common.add_argument("--out", default=None, help="Output file (default stdout)")
    common.add_argument("--seed", type=_seed_arg, default=0, help="Unsigned 64-bit seed")
    common.add_argument("--log-level", default=None, help="Logging level (default from config)")
    common.add_argument("-v", "--verbose", action="store_true", help="Enable verbose logging")
    common.add_argument("--json-logs", action="store_true", help="Emit log records as JSON")
    common.add_argument("-q", "--quiet", action="store_true", help="Only log warnings and errors")

    parser = _ArgumentParser(description="Normal-matrix numerical-radius certification", allow_abbrev=False)
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", parents=[common], allow_abbrev=False, help="Spectral report")
    analyze.add_argument("--in", dest="input", required=True, help="Matrix file (cmat or .mtx)")

    certify = commands.add_parser("certify", parents=[common], allow_abbrev=False, help="Certify inequalities")
    certify.add_argument("--in", dest="input", required=True, help="Matrix file (cmat or .mtx)")
    certify.add_argument("--lambda", dest="lam", type=_complex_arg, help="Defect multiplier, e.g. 0+1i")
    certify.add_argument("--r", type=float, help="Defect radius r > 0")
    certify.add_argument("--gamma", dest="gamma", type=_complex_arg, help="Disk endpoint gamma")
    certify.add_argument("--Gamma", dest="Gamma", type=_complex_arg, help="Disk endpoint Gamma")
    certify.add_argument("--m", dest="m", type=float, help="Segment lower end m > 0")
    certify.add_argument("--M", dest="M", type=float, help="Segment upper end M >= m")
    certify.add_argument("--alpha", type=_complex_arg, help="Combination coefficient alpha")
    certify.add_argument("--beta", type=_complex_arg, help="Combination coefficient beta")
    certify.add_argument("--rho", type=float, help="Prior exponent rho > 0")
    certify.add_argument("--ids", default="all", help="Comma-separated inequality ids, or 'all'")
    certify.add_argument(
        "--strict-hyp", action="store_true", help="Exit 2 when any hypothesis fails"
    )

    fit = commands.add_parser("fit", parents=[common], allow_abbrev=False, help="Fit theorem parameters")
    fit.add_argument("--in", dest="input", required=True, help="Matrix file (cmat or .mtx)")

    sweep = commands.add_parser("sweep", parents=[common], allow_abbrev=False, help="Randomized ensemble sweep")
    sweep.add_argument("--n", type=int, required=True, help="Matrix dimension")
    sweep.add_argument("--trials", type=int, default=100, help="Number of trials")
    sweep.add_argument("--kind", choices=KINDS, default=None, help="Ensemble kind (default from config)")
    sweep.add_argument("--eps", type=float, default=0.0, help="Perturbation for near-normal ensembles")
    sweep.add_argument("--workers", type=int, default=None, help="Worker threads (default from config)")
    sweep.add_argument("--vector-trials", type=int, default=None, help="Vector-lemma instances per trial")
    sweep.add_argument("--metrics-file", default=None, help="Write Prometheus text-format metrics here")

    boundary = commands.add_parser("range", parents=[common], allow_abbrev=False, help="Numerical-range boundary")
    boundary.add_argument("--in", dest="input", required=True, help="Matrix file (cmat or .mtx)")
    boundary.add_argument("--points", type=int, default=360, help="Number of boundary points (>= 3)")

    return parser.parse_args(argv)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.info(f"wrote {out}")


def _yaml(report: Dict[str, Any]) -> str:
    return yaml.safe_dump(report, sort_keys=False, default_flow_style=False)


def cmd_analyze(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    """Print the spectral quantities of a matrix as YAML."""
    engine = CertificateEngine(config)
    profile = engine.profile(parse_matrix(args.input))
    tol = args.tol if args.tol is not None else DEFAULT_TOL

    normal = profile.normality_defect <= engine.normality_tol
    norm = profile.norm
    w = profile.w
    rho = spectral_radius(profile.A)
    mu_est, delta_est = profile.mu, profile.delta

    report: Dict[str, Any] = {
        "n": profile.n,
        "normal": bool(normal),
        "normality_defect": float(profile.normality_defect),
        "norm": float(norm),
        "numerical_radius": {"value": float(w.value), "upper": float(w.upper)},
        "spectral_radius": float(rho),
        "xi": float(profile.xi.value),
        "mu": {"value": float(mu_est.value), "upper": mu_est.upper, "certified": bool(mu_est.certified)},
        "delta": {"value": float(delta_est.value), "certified": bool(delta_est.certified)},
    }
    if mu_est.upper is not None:
        report["mu"]["upper"] = float(mu_est.upper)

    if normal:
        residuals = {
            "numerical_radius_vs_norm": abs(w.value - norm),
            "spectral_radius_vs_norm": abs(rho - norm),
            "square_norm_vs_norm_squared": abs(operator_norm(profile.square) - norm * norm),
        }
        report["identity_residuals"] = {name: float(value) for name, value in residuals.items()}
        scale = max(1.0, norm * norm)
        report["identities_hold"] = all(value <= tol * scale for value in residuals.values())
        if not report["identities_hold"]:
            logger.warning(f"normal-matrix identities exceed tolerance {tol:.1e}: {residuals}")
    else:
        logger.warning(f"input is not normal (defect {profile.normality_defect:.3e})")
        report["identity_residuals"] = None

    _emit(_yaml(report), args.out)
    return EXIT_OK


def _paired(first: Any, second: Any, names: str) -> bool:
    if (first is None) != (second is None):
        raise UsageError(f"{names} must be given together")
    return first is not None


def build_params(args: argparse.Namespace) -> ParamSet:
    """Collect the parameter kinds given on the command line into a ParamSet."""
    bundle: Dict[str, Any] = {}
    if _paired(args.lam, args.r, "--lambda and --r"):
        bundle["lambda_radius"] = LambdaRadius(lam=args.lam, r=args.r)
    if _paired(args.gamma, args.Gamma, "--gamma and --Gamma"):
        bundle["disk"] = DiskParams(gamma=args.gamma, Gamma=args.Gamma)
    if _paired(args.m, args.M, "--m and --M"):
        bundle["segment"] = SegmentParams(m=args.m, M=args.M)
    if _paired(args.alpha, args.beta, "--alpha and --beta"):
        bundle["combination"] = CombinationParams(alpha=args.alpha, beta=args.beta)
    if args.rho is not None:
        bundle["prior"] = PriorParams(rho=args.rho)
    return ParamSet(**bundle)


def cmd_certify(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    """Write the certificate CSV; the exit code reflects the verdicts."""
    A = parse_matrix(args.input)
    params = build_params(args)
    ids: Optional[List[InequalityId]] = None
    if args.ids.strip().lower() != "all":
        ids = [parse_id(part) for part in args.ids.split(",") if part.strip()]
        vector_ids = [i.value for i in ids if i.is_vector]
        if vector_ids:
            raise WrongParamKind(f"vector inequalities cannot be certified on a matrix: {', '.join(vector_ids)}")

    engine = CertificateEngine(config)
    certificates = engine.evaluate_all(A, params, ids=ids)
    _emit(write_certificates(certificates), args.out)

    verdicts = [cert.verdict for cert in certificates]
    logger.info(
        f"certified {len(certificates)} inequalities: "
        + ", ".join(f"{v.value}={verdicts.count(v)}" for v in Verdict if verdicts.count(v))
    )
    if Verdict.VIOLATED in verdicts:
        return EXIT_VIOLATION
    if args.strict_hyp and Verdict.HYPOTHESIS_FAILED in verdicts:
        return EXIT_HYPOTHESIS
    return EXIT_OK


def cmd_fit(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    """Print fitted (lambda, r), disk and segment parameters as YAML."""
    A = parse_matrix(args.input)
    fit_cfg = config["fitting"]
    normality_tol = config["tolerances"]["normality"]

    report: Dict[str, Any] = {"lambda": {}}
    for objective in ("min-defect", "min-ratio"):
        try:
            result = fit_lambda(
                A,
                objective=objective,
                grid_points=fit_cfg["grid_points"],
                xatol=fit_cfg["simplex_xatol"],
                fatol=fit_cfg["simplex_fatol"],
                maxiter=fit_cfg["simplex_maxiter"],
                lambda_floor=fit_cfg["lambda_floor"],
                normality_tol=normality_tol,
            )
        except Singular as e:
            report["lambda"][objective] = {"feasible": False, "reason": str(e)}
            continue
        report["lambda"][objective] = {
            "feasible": True,
            "lambda": format_complex(result.params.lam),
            "r": float(result.params.r),
            "achieved": float(result.achieved),
            "non_attained": result.non_attained,
        }

    try:
        disk = fit_disk(A, normality_tol)
        report["disk"] = {
            "feasible": disk.feasible,
            "gamma": format_complex(disk.params.gamma),
            "Gamma": format_complex(disk.params.Gamma),
        }
        segment = fit_segment(A, normality_tol)
        report["segment"] = {"feasible": segment.feasible}
        if segment.params is not None:
            report["segment"].update({"m": float(segment.params.m), "M": float(segment.params.M)})
    except Singular as e:
        report["disk"] = {"feasible": False, "reason": str(e)}
        report["segment"] = {"feasible": False, "reason": str(e)}

    _emit(_yaml(report), args.out)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    """Run a seeded ensemble sweep and write its report CSV."""
    if args.trials < 0:
        raise UsageError(f"--trials must be non-negative, got {args.trials}")
    if args.workers is not None:
        if args.workers < 1:
            raise UsageError(f"--workers must be positive, got {args.workers}")
        config["sweep"]["workers"] = args.workers

    spec = GeneratorSpec(
        kind=args.kind or config["sweep"]["kind"],
        n=args.n,
        seed=args.seed,
        perturbation=args.eps,
    )
    show_progress = not args.quiet and logging.getLogger().getEffectiveLevel() < logging.WARNING
    runner = SweepRunner(config, show_progress=show_progress)
    report = runner.run(spec, args.trials, vector_trials=args.vector_trials, metrics_file=args.metrics_file)

    _emit(report.to_csv(), args.out)
    if report.violations or report.relation_failures:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_range(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    """Write (theta, re, im) boundary points of the numerical range."""
    A = parse_matrix(args.input)
    boundary = range_boundary(A, args.points)
    frame = pd.DataFrame(
        {
            "theta": boundary.thetas,
            "re": np.real(boundary.points),
            "im": np.imag(boundary.points),
        }
    )
    _emit(write_frame(frame), args.out)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "certify": cmd_certify,
    "fit": cmd_fit,
    "sweep": cmd_sweep,
    "range": cmd_range,
}


def _log_level(args: argparse.Namespace, config: Dict[str, Any]) -> str:
    if args.verbose:
        return "DEBUG"
    if args.quiet:
        return "WARNING"
    return args.log_level or config["logging"]["level"]


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    try:
        args = parse_arguments(argv)
        config = load_config(args.config)
        setup_logging(
            _log_level(args, config),
            log_file=config["logging"]["file"],
            use_json=args.json_logs or config["logging"]["json"],
            static_fields={"command": args.command},
        )
        if args.tol is not None:
            if not args.tol > 0:
                raise UsageError(f"--tol must be positive, got {args.tol}")
            config["numerical_radius"]["tol"] = args.tol

        logger.info(f"{args.command} started")
        code = COMMANDS[args.command](args, config)
        logger.info(f"{args.command} finished with exit code {code}")
        return code
    except (CertificationError, OSError, yaml.YAMLError) as e:
        # logging may not be configured yet when argument parsing fails
        if not logging.getLogger().handlers:
            setup_logging(logging.WARNING)
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
