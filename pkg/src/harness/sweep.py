"""Randomized ensemble sweeps over the inequality catalog.

Each trial draws a matrix from the generator stream ``seed ^ trial``, fits the
theorem parameters, evaluates every operator inequality and the cross
relations, and optionally a batch of random vector-lemma instances. Trials run
on a thread pool; their outcomes are merged in trial order, so the report does
not depend on the number of workers.
"""
import math
import sys
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Any, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from prometheus_client import CollectorRegistry, Counter, Gauge, write_to_textfile
from tqdm import tqdm

from src.harness.generate import GeneratorSpec, generate, rng_for
from src.hypotheses.fitting import fit_disk, fit_lambda, fit_segment
from src.hypotheses.models import (
    CombinationParams,
    DiskParams,
    LambdaRadius,
    ParamSet,
)
from src.ledger.catalog import OPERATOR_IDS, VECTOR_IDS, InequalityId
from src.ledger.engine import (
    Certificate,
    CertificateEngine,
    RelationReport,
    Verdict,
    inputs_digest,
)
from src.ledger.serialize import write_frame
from src.utils.config import DEFAULT_CONFIG
from src.utils.errors import InvalidParameters, Singular
from src.utils.logger import get_logger

logger = get_logger(__name__)

REPORT_COLUMNS = [
    "id",
    "instances",
    "verified",
    "violated",
    "hypothesis_failed",
    "not_applicable",
    "worst_slack",
    "witness_digests",
]
WITNESS_DIGEST_LIMIT = 8
PRIOR_IDS = (InequalityId.I_1_3A, InequalityId.I_1_3B)
NAN = float("nan")


@dataclass
class IdSummary:
    """Aggregated verdicts of one inequality id (or one cross relation) over a sweep."""

    id: str
    instances: int = 0
    verified: int = 0
    violated: int = 0
    hypothesis_failed: int = 0
    not_applicable: int = 0
    worst_slack: float = NAN
    witness_digests: List[str] = field(default_factory=list)

    def add(self, cert: Certificate) -> None:
        self.instances += 1
        if cert.verdict is Verdict.VERIFIED:
            self.verified += 1
        elif cert.verdict is Verdict.VIOLATED:
            self.violated += 1
            if len(self.witness_digests) < WITNESS_DIGEST_LIMIT:
                self.witness_digests.append(cert.inputs_digest)
        elif cert.verdict is Verdict.HYPOTHESIS_FAILED:
            self.hypothesis_failed += 1
        else:
            self.not_applicable += 1

        # worst slack only over instances whose hypothesis holds
        if cert.verdict in (Verdict.VERIFIED, Verdict.VIOLATED):
            if math.isnan(self.worst_slack) or cert.slack < self.worst_slack:
                self.worst_slack = cert.slack

    def add_relations(self, holds: bool, skipped: bool, digest: str) -> None:
        self.instances += 1
        if skipped:
            self.not_applicable += 1
        elif holds:
            self.verified += 1
        else:
            self.violated += 1
            if len(self.witness_digests) < WITNESS_DIGEST_LIMIT:
                self.witness_digests.append(digest)

    def as_row(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "instances": self.instances,
            "verified": self.verified,
            "violated": self.violated,
            "hypothesis_failed": self.hypothesis_failed,
            "not_applicable": self.not_applicable,
            "worst_slack": self.worst_slack,
            "witness_digests": ";".join(self.witness_digests),
        }


@dataclass(frozen=True)
class TrialOutcome:
    trial: int
    digest: str
    certificates: Tuple[Certificate, ...]
    relations: Optional[RelationReport]


@dataclass(frozen=True)
class SweepReport:
    """
    Result of a sweep.

    Attributes:
        ensemble: One-line echo of the generator spec
        trials: Number of trials run
        vector_trials: Random vector-lemma instances per id and trial
        rows: Per-id summaries in catalog order, then one row per cross relation
    """

    ensemble: str
    trials: int
    vector_trials: int
    rows: Tuple[IdSummary, ...]

    @property
    def violations(self) -> int:
        return sum(row.violated for row in self.rows if not row.id.startswith("relation/"))

    @property
    def relation_failures(self) -> int:
        return sum(row.violated for row in self.rows if row.id.startswith("relation/"))

    def row(self, identifier: str) -> IdSummary:
        for summary in self.rows:
            if summary.id == identifier:
                return summary
        raise KeyError(identifier)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.as_row() for row in self.rows], columns=REPORT_COLUMNS)

    def to_csv(self, out: Optional[Union[str, Path, IO[str]]] = None) -> Optional[str]:
        """
        Render the report: '#' header lines echoing the ensemble, then the CSV table.

        Returns:
            The text if ``out`` is None, otherwise None
        """
        header = (
            f"# ensemble: {self.ensemble}\n"
            f"# trials: {self.trials}\n"
            f"# vector_trials: {self.vector_trials}\n"
        )
        text = header + write_frame(self.frame())
        if out is None:
            return text
        if isinstance(out, (str, Path)):
            with open(out, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
        else:
            out.write(text)
        return None


def _prior_id(rho: float) -> InequalityId:
    return InequalityId.I_1_3A if rho >= 1.0 else InequalityId.I_1_3B


def _unit_circle(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * np.pi * rng.random()))


def _random_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


def _unit_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    v = _random_vector(rng, n)
    return v / np.linalg.norm(v)


class SweepRunner:
    """Runs seeded trial ensembles through the certificate engine."""

    def __init__(self, config: Optional[Dict[str, Any]] = None, show_progress: bool = True):
        """
        Initialize the sweep runner.

        Args:
            config: Full configuration dictionary; its ``sweep`` section sets
                the worker count, the prior exponents and the vector trials
            show_progress: Whether to draw a tqdm progress bar on stderr
        """
        self.config = config if config is not None else DEFAULT_CONFIG
        sweep_cfg = self.config["sweep"]
        self.workers = max(1, int(sweep_cfg["workers"]))
        self.rhos = tuple(float(rho) for rho in sweep_cfg["rhos"])
        self.vector_trials = int(sweep_cfg["vector_trials"])
        self.fit_cfg = self.config["fitting"]
        self.normality_tol = self.config["tolerances"]["normality"]
        # trials already run in parallel, so each one certifies its ids serially
        self.engine = CertificateEngine(self.config, workers=1)
        self.show_progress = show_progress

    # ------------------------------------------------------------- parameters

    def _fit_params(self, A: np.ndarray, rng: np.random.Generator) -> ParamSet:
        lam_fit = fit_lambda(
            A,
            objective="min-defect",
            grid_points=self.fit_cfg["grid_points"],
            xatol=self.fit_cfg["simplex_xatol"],
            fatol=self.fit_cfg["simplex_fatol"],
            maxiter=self.fit_cfg["simplex_maxiter"],
            lambda_floor=self.fit_cfg["lambda_floor"],
            normality_tol=self.normality_tol,
        )
        disk, segment = None, None
        try:
            disk = fit_disk(A, self.normality_tol).params
            segment = fit_segment(A, self.normality_tol).params
        except Singular:
            logger.debug("singular trial matrix: disk and segment parameters skipped")

        combination = CombinationParams(alpha=_unit_circle(rng), beta=_unit_circle(rng))
        return ParamSet(
            lambda_radius=lam_fit.params,
            disk=disk,
            segment=segment,
            combination=combination,
        )

    # ------------------------------------------------------------------ trials

    def _rejected(self, identifier: InequalityId, n: int, digest: str) -> Certificate:
        return Certificate(
            id=identifier,
            n=n,
            hypothesis=None,
            lhs=NAN,
            rhs=NAN,
            slack=NAN,
            verdict=Verdict.HYPOTHESIS_FAILED,
            inputs_digest=digest,
            note="matrix is not normal",
        )

    def _prior_instances(self, A, params: ParamSet, profile) -> List[Certificate]:
        certificates = []
        for rho in self.rhos:
            identifier = _prior_id(rho)
            certificates.extend(
                self.engine.evaluate_all(A, params.with_prior(rho), ids=[identifier], profile=profile)
            )
        return certificates

    def _vector_instances(self, rng: np.random.Generator, n: int, count: int) -> List[Certificate]:
        """Random instances built to satisfy the ball and disk conditions of the vector lemmas."""
        certificates = []
        for _ in range(count):
            a = _random_vector(rng, n)
            r = float(np.linalg.norm(a) * rng.uniform(0.05, 1.0))
            y = a + r * rng.random() * _unit_vector(rng, n)
            ball = ParamSet(lambda_radius=LambdaRadius(lam=1.0, r=r))
            for identifier in (InequalityId.V_2_16A, InequalityId.V_2_18SRC, InequalityId.V_2_20SRC):
                certificates.append(self.engine.evaluate_vector(identifier, y, a, ball))

            c = complex(rng.standard_normal(), rng.standard_normal())
            rho = abs(c) * rng.uniform(0.05, 1.5)
            tilt = _unit_circle(rng)
            disk = ParamSet(disk=DiskParams(gamma=c - rho * tilt, Gamma=c + rho * tilt))
            y = _random_vector(rng, n)
            z = c * y + rho * np.linalg.norm(y) * rng.random() * _unit_vector(rng, n)
            for identifier in (InequalityId.V_3_2A, InequalityId.V_3_5, InequalityId.V_3_8):
                certificates.append(self.engine.evaluate_vector(identifier, y, z, disk))
        return certificates

    def run_trial(self, spec: GeneratorSpec, trial: int, vector_trials: int = 0) -> TrialOutcome:
        """
        Run one trial on the stream ``spec.seed ^ trial``.

        A matrix that fails the normality check is evaluated for the one
        inequality that holds for every matrix; every other operator id is
        recorded as hypothesis_failed.
        """
        trial_seed = spec.seed ^ trial
        trial_spec = spec.model_copy(update={"seed": trial_seed})
        A = generate(trial_spec)
        # independent stream for everything drawn after the matrix
        rng = np.random.Generator(rng_for(trial_seed).bit_generator.jumped())
        profile = self.engine.profile(A)

        if profile.normality_defect > self.normality_tol:
            digest = inputs_digest([profile.A], None)
            logger.debug(f"trial {trial}: normality defect {profile.normality_defect:.3e}, rejected")
            certificates = self.engine.evaluate_all(A, ParamSet(), ids=[InequalityId.I_2_13], profile=profile)
            for identifier in OPERATOR_IDS:
                if identifier is InequalityId.I_2_13:
                    continue
                copies = 1
                if identifier in PRIOR_IDS:
                    copies = sum(1 for rho in self.rhos if _prior_id(rho) is identifier)
                certificates.extend(self._rejected(identifier, profile.n, digest) for _ in range(copies))
            certificates.extend(self._vector_instances(rng, spec.n, vector_trials))
            return TrialOutcome(trial=trial, digest=digest, certificates=tuple(certificates), relations=None)

        params = self._fit_params(profile.A, rng)
        ids = [i for i in OPERATOR_IDS if i not in PRIOR_IDS]
        certificates = self.engine.evaluate_all(A, params, ids=ids, profile=profile)
        relations = self.engine.cross_relations(certificates)
        certificates.extend(self._prior_instances(A, params, profile))
        certificates.extend(self._vector_instances(rng, spec.n, vector_trials))

        digest = inputs_digest([profile.A], params)
        return TrialOutcome(trial=trial, digest=digest, certificates=tuple(certificates), relations=relations)

    # --------------------------------------------------------------- aggregate

    def _merge(self, outcomes: List[TrialOutcome]) -> Tuple[IdSummary, ...]:
        summaries: "OrderedDict[str, IdSummary]" = OrderedDict()
        relation_rows: "OrderedDict[str, IdSummary]" = OrderedDict()
        if outcomes:
            for identifier in OPERATOR_IDS:
                summaries[identifier.value] = IdSummary(identifier.value)
            if any(cert.id.is_vector for outcome in outcomes for cert in outcome.certificates):
                for identifier in VECTOR_IDS:
                    summaries[identifier.value] = IdSummary(identifier.value)

        for outcome in outcomes:
            for cert in outcome.certificates:
                summaries[cert.id.value].add(cert)
            if outcome.relations is None:
                continue
            for check in outcome.relations.checks:
                name = f"relation/{check.name}"
                row = relation_rows.setdefault(name, IdSummary(name))
                row.add_relations(check.holds, check.skipped, outcome.digest)

        return tuple(summaries.values()) + tuple(relation_rows.values())

    def _write_metrics(self, report: SweepReport, path: Union[str, Path]) -> None:
        registry = CollectorRegistry()
        certificates = Counter(
            "certificates",
            "Certificates evaluated, by inequality id and verdict",
            ["id", "verdict"],
            registry=registry,
        )
        worst = Gauge(
            "certificate_worst_slack",
            "Smallest slack over hypothesis-satisfying instances",
            ["id"],
            registry=registry,
        )
        trials = Counter("sweep_trials", "Trials run", registry=registry)

        trials.inc(report.trials)
        for row in report.rows:
            for verdict in Verdict:
                count = getattr(row, verdict.value)
                if count:
                    certificates.labels(id=row.id, verdict=verdict.value).inc(count)
            if not math.isnan(row.worst_slack):
                worst.labels(id=row.id).set(row.worst_slack)

        write_to_textfile(str(path), registry)
        logger.info(f"metrics written to {path}")

    def run(
        self,
        spec: GeneratorSpec,
        trials: int,
        vector_trials: Optional[int] = None,
        metrics_file: Optional[Union[str, Path]] = None,
    ) -> SweepReport:
        """
        Run ``trials`` seeded trials of the ensemble ``spec``.

        Args:
            spec: Ensemble description; trial t uses seed ``spec.seed ^ t``
            trials: Number of trials (0 gives an empty report)
            vector_trials: Vector-lemma instances per trial; defaults to the config
            metrics_file: Optional path for a Prometheus text-format metrics file

        Returns:
            SweepReport with per-id verdict counts and worst slacks
        """
        if trials < 0:
            raise InvalidParameters(f"trials must be non-negative, got {trials}")
        vector_trials = self.vector_trials if vector_trials is None else vector_trials

        logger.info(f"sweep started: {spec.echo()} trials={trials} workers={self.workers}")
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            outcomes = list(
                tqdm(
                    executor.map(lambda t: self.run_trial(spec, t, vector_trials), range(trials)),
                    total=trials,
                    desc="sweep",
                    file=sys.stderr,
                    disable=not self.show_progress,
                )
            )

        report = SweepReport(
            ensemble=spec.echo(),
            trials=trials,
            vector_trials=vector_trials,
            rows=self._merge(outcomes),
        )
        for row in report.rows:
            if row.id.startswith("relation/"):
                continue
            logger.info(
                f"{row.id}: worst slack {row.worst_slack:.3e}, {row.violated} violated of {row.instances}"
            )
        if report.violations or report.relation_failures:
            logger.warning(
                f"sweep found {report.violations} violations and {report.relation_failures} failed relations"
            )
        logger.info(f"sweep finished: {trials} trials")

        if metrics_file is not None:
            self._write_metrics(report, metrics_file)
        return report
