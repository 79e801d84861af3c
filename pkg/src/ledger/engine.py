"""Certificate engine: evaluates catalog inequalities on a matrix and parameters.

Every certificate records lhs, rhs and slack = rhs - lhs. Numerical radii
enter through the certified upper end of their enclosure and mu(T) through
its certified lower bound; with those substitutions a violated verdict holds
for every value inside the enclosures.
"""
import hashlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from src.hypotheses.checks import (
    HypothesisReport,
    check_ball,
    check_c_cc,
    check_d_dd_ddd,
    check_defect,
    check_segment,
    check_vector_disk,
)
from src.hypotheses.models import ParamSet
from src.ledger.catalog import (
    CATALOG,
    OPERATOR_IDS,
    Hypothesis,
    InequalityId,
    parse_id,
)
from src.linalg.core import (
    ComplexMatrix,
    ComplexVector,
    adjoint,
    as_matrix,
    as_vector,
    hermitian_part,
    inner,
    normality_defect,
    svd_extremes,
    vector_norm,
)
from src.numerical_range.radius import RadiusResult, numerical_radius
from src.sphere.functionals import InfimumEstimate, delta, mu, xi
from src.utils.config import DEFAULT_CONFIG
from src.utils.errors import DimensionMismatch, MissingCertificate, NotNormal, WrongParamKind
from src.utils.logger import get_logger

logger = get_logger(__name__)

NAN = float("nan")


class Verdict(str, Enum):
    VERIFIED = "verified"
    VIOLATED = "violated"
    HYPOTHESIS_FAILED = "hypothesis_failed"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class Certificate:
    """One checked inequality instance."""

    id: InequalityId
    n: int
    hypothesis: Optional[HypothesisReport]
    lhs: float
    rhs: float
    slack: float
    verdict: Verdict
    inputs_digest: str
    witness: Optional[ComplexVector] = None
    note: str = ""

    @property
    def hyp_status(self) -> str:
        if self.hypothesis is None:
            return "not_required"
        return self.hypothesis.status

    @property
    def witness_available(self) -> bool:
        return self.witness is not None


@dataclass(frozen=True)
class RelationCheck:
    name: str
    holds: bool
    detail: str = ""
    skipped: bool = False


@dataclass(frozen=True)
class RelationReport:
    checks: Tuple[RelationCheck, ...] = field(default_factory=tuple)

    @property
    def all_hold(self) -> bool:
        return all(check.holds for check in self.checks)

    @property
    def failures(self) -> List[RelationCheck]:
        return [check for check in self.checks if not check.holds]


def inputs_digest(arrays: Iterable[np.ndarray], params: Optional[ParamSet]) -> str:
    """SHA-256 over the raw complex128 bytes of the inputs and the canonical parameter JSON."""
    h = hashlib.sha256()
    for array in arrays:
        h.update(np.ascontiguousarray(array, dtype=np.complex128).tobytes())
    h.update((params.canonical_json() if params is not None else "null").encode("utf-8"))
    return h.hexdigest()


class MatrixProfile:
    """Lazily computed spectral quantities of one matrix, shared across certificates."""

    def __init__(self, A: ComplexMatrix, config: Dict[str, Any]):
        self.A = A
        self.n = A.shape[0]
        self._radius_cfg = config["numerical_radius"]
        self._sphere_cfg = config["sphere"]

    def _radius(self, M: ComplexMatrix) -> RadiusResult:
        return numerical_radius(
            M,
            tol=self._radius_cfg["tol"],
            initial_grid=self._radius_cfg["initial_grid"],
            max_points=self._radius_cfg["max_points"],
        )

    @cached_property
    def adjoint(self) -> ComplexMatrix:
        return adjoint(self.A)

    @cached_property
    def square(self) -> ComplexMatrix:
        return self.A @ self.A

    @cached_property
    def svd(self):
        return svd_extremes(self.A)

    @cached_property
    def norm(self) -> float:
        return self.svd.sigma_max

    @cached_property
    def w(self) -> RadiusResult:
        return self._radius(self.A)

    @cached_property
    def w_square(self) -> RadiusResult:
        return self._radius(self.square)

    @cached_property
    def xi(self) -> InfimumEstimate:
        return xi(self.A)

    @cached_property
    def mu(self) -> InfimumEstimate:
        return mu(self.A, tol=self._sphere_cfg["mu_tol"])

    @cached_property
    def delta(self) -> InfimumEstimate:
        return delta(
            self.A,
            restarts=self._sphere_cfg["delta_restarts"],
            seed=self._sphere_cfg["seed"],
            max_iter=self._sphere_cfg["descent_max_iter"],
            step_tol=self._sphere_cfg["descent_step_tol"],
        )

    @cached_property
    def normality_defect(self) -> float:
        return normality_defect(self.A)


def _top_singular_vector(M: ComplexMatrix) -> ComplexVector:
    return svd_extremes(M).v_max


# (lhs, rhs, witness factory); None means the parameter domain excludes the instance
Evaluation = Optional[Tuple[float, float, Callable[[], ComplexVector]]]


class CertificateEngine:
    """Evaluates catalog inequalities with tolerances taken from the configuration."""

    def __init__(self, config: Optional[Dict[str, Any]] = None, workers: Optional[int] = None):
        """
        Initialize the engine.

        Args:
            config: Full configuration dictionary (see ``load_config``); the
                built-in defaults are used when omitted
            workers: Threads used by ``evaluate_all``; overrides ``ledger.workers``
        """
        self.config = config if config is not None else DEFAULT_CONFIG
        tolerances = self.config["tolerances"]
        self.psd_tol = tolerances["psd"]
        self.normality_tol = tolerances["normality"]
        self.slack_tol = tolerances["slack"]
        self.vector_tol = tolerances["vector"]
        self.unit_modulus_tol = tolerances["unit_modulus"]
        self.hermitian_tol = tolerances["hermitian"]
        self.workers = max(1, int(workers if workers is not None else self.config["ledger"]["workers"]))

    def profile(self, A: ComplexMatrix) -> MatrixProfile:
        return MatrixProfile(as_matrix(A), self.config)

    # ------------------------------------------------------------------ verdicts

    def _verdict(self, hypothesis: Optional[HypothesisReport], rhs: float, slack: float) -> Verdict:
        if hypothesis is not None and not hypothesis.satisfied:
            return Verdict.HYPOTHESIS_FAILED
        if slack >= -self.slack_tol * max(1.0, abs(rhs)):
            return Verdict.VERIFIED
        return Verdict.VIOLATED

    def _not_applicable(
        self, identifier: InequalityId, n: int, digest: str, note: str
    ) -> Certificate:
        return Certificate(
            id=identifier,
            n=n,
            hypothesis=None,
            lhs=NAN,
            rhs=NAN,
            slack=NAN,
            verdict=Verdict.NOT_APPLICABLE,
            inputs_digest=digest,
            note=note,
        )

    def _finish(
        self,
        identifier: InequalityId,
        n: int,
        hypothesis: Optional[HypothesisReport],
        lhs: float,
        rhs: float,
        witness: Callable[[], ComplexVector],
        digest: str,
    ) -> Certificate:
        slack = rhs - lhs
        verdict = self._verdict(hypothesis, rhs, slack)
        witness_vector = None
        if verdict is Verdict.VIOLATED:
            witness_vector = witness()
            logger.warning(f"{identifier.value} violated: lhs={lhs:.17g} rhs={rhs:.17g} slack={slack:.3e}")
        return Certificate(
            id=identifier,
            n=n,
            hypothesis=hypothesis,
            lhs=float(lhs),
            rhs=float(rhs),
            slack=float(slack),
            verdict=verdict,
            inputs_digest=digest,
            witness=witness_vector,
        )

    # ------------------------------------------------------------ operator ids

    def _hypothesis(
        self, kind: Hypothesis, profile: MatrixProfile, params: ParamSet
    ) -> Optional[HypothesisReport]:
        A = profile.A
        if kind is Hypothesis.NONE:
            return None
        if kind is Hypothesis.DEFECT:
            return check_defect(A, params.lambda_radius, self.psd_tol)
        if kind is Hypothesis.DEFECT_GAIN:
            return check_c_cc(A, params.lambda_radius, self.psd_tol, self.normality_tol)
        if kind is Hypothesis.DISK:
            return check_d_dd_ddd(A, params.disk, self.psd_tol)
        if kind is Hypothesis.SEGMENT:
            return check_segment(A, params.segment, self.psd_tol, self.normality_tol, self.hermitian_tol)
        raise WrongParamKind(f"hypothesis {kind.value} does not apply to a matrix")

    def _operator_terms(self, identifier: InequalityId, p: MatrixProfile, params: ParamSet) -> Evaluation:
        """lhs, rhs and witness factory for an operator inequality."""
        A = p.A
        top = lambda: p.svd.v_max  # noqa: E731
        nrm = p.norm
        nrm2 = nrm * nrm
        w2 = p.w_square.upper

        lam_abs, r = NAN, NAN
        if params.lambda_radius is not None:
            lam_abs, r = abs(params.lambda_radius.lam), params.lambda_radius.r

        if identifier is InequalityId.I_1_2:
            return nrm2 - w2, 2 * r * r / (1 + lam_abs) ** 2, top
        if identifier in (InequalityId.I_1_3A, InequalityId.I_1_3B):
            rho = params.prior.rho
            if lam_abs > 1.0 + self.unit_modulus_tol:
                return None
            if (identifier is InequalityId.I_1_3A) != (rho >= 1.0):
                return None
            lam = params.lambda_radius.lam
            defect2 = svd_extremes(A - lam * p.adjoint).sigma_max ** 2
            coeff = rho * rho if rho >= 1.0 else lam_abs ** (2 * rho - 2)
            lhs = (1 + lam_abs ** (2 * rho)) * nrm2
            return lhs, 2 * lam_abs ** rho * w2 + coeff * defect2, top
        if identifier is InequalityId.I_1_4:
            return nrm2 * nrm2 - w2 * w2, r * r * nrm2 / lam_abs ** 2, top
        if identifier is InequalityId.I_2_2:
            lhs = (1 + lam_abs ** 2) / (2 * lam_abs) * nrm2
            return lhs, w2 + r * r / (2 * lam_abs), top
        if identifier is InequalityId.I_2_6:
            return nrm2 - w2, r * r / (2 * lam_abs), top
        if identifier is InequalityId.I_2_7:
            if abs(lam_abs - 1.0) > self.unit_modulus_tol:
                return None
            return nrm2 - w2, r * r / 2, top
        if identifier is InequalityId.I_2_8A:
            return nrm2 - w2, r * r / (1 + lam_abs ** 2), top
        if identifier is InequalityId.I_2_8B:
            return nrm2 - w2, 2 * r * r / (1 + lam_abs) ** 2, top
        if identifier is InequalityId.I_2_9:
            delta_est = p.delta
            delta_safe = delta_est.value if delta_est.certified else 0.0
            mu_low = p.mu.value
            return nrm2 - w2, r * r - 2 * lam_abs * delta_safe * mu_low, top
        if identifier is InequalityId.I_2_9_FALLBACK:
            return nrm2 - w2, r * r, top

        if identifier in (InequalityId.I_2_11, InequalityId.I_2_11A):
            alpha, beta = params.combination.alpha, params.combination.beta
            weight = abs(alpha) ** 2 + abs(beta) ** 2
            cross = 2 * abs(alpha * beta) * w2
            if identifier is InequalityId.I_2_11:
                M = alpha * A + beta * p.adjoint
                return svd_extremes(M).sigma_max ** 2, weight * nrm2 + cross, lambda: _top_singular_vector(M)
            M = alpha * A - beta * p.adjoint
            return weight * nrm2, svd_extremes(M).sigma_max ** 2 + cross, top

        if identifier in (InequalityId.I_2_13, InequalityId.I_2_14):
            H = hermitian_part(A)
            lhs = svd_extremes(H).sigma_max ** 2
            rhs = nrm2 if identifier is InequalityId.I_2_13 else (nrm2 + w2) / 2
            return lhs, rhs, lambda: _top_singular_vector(H)

        if identifier is InequalityId.I_2_15:
            return nrm2 * nrm2 - w2 * w2, r * r * nrm2, top
        if identifier is InequalityId.I_2_16:
            gain = p.xi.value
            lhs = float(np.sqrt(max(0.0, gain * gain - r * r / lam_abs ** 2)))
            return lhs, w2 / nrm if nrm > 0 else 0.0, lambda: p.xi.witness
        if identifier is InequalityId.I_2_20:
            gain = p.xi.value
            root = float(np.sqrt(max(0.0, lam_abs ** 2 * gain * gain - r * r)))
            return nrm2 * nrm2 - w2 * w2, 2 * p.w.upper * nrm * (lam_abs * nrm - root), top

        if identifier in (InequalityId.I_3_1A, InequalityId.I_3_4, InequalityId.I_3_7):
            disk = params.disk
            plus = abs(disk.Gamma + disk.gamma)
            minus = abs(disk.Gamma - disk.gamma)
            if identifier is InequalityId.I_3_1A:
                if plus == 0.0:
                    return None
                return nrm2 - w2, minus * minus / (4 * plus) * nrm2, top
            if disk.re_product <= 0.0:
                return None
            root = np.sqrt(disk.re_product)
            if identifier is InequalityId.I_3_4:
                return nrm2, plus / (2 * root) * w2, top
            return nrm2 * nrm2 - w2 * w2, (plus - 2 * root) * w2 * nrm2, top

        m, M = params.segment.m, params.segment.M
        if identifier is InequalityId.I_3_14:
            return nrm2 - w2, (M - m) ** 2 / (4 * (M + m)) * nrm2, top
        if identifier is InequalityId.I_3_15:
            return nrm2, (M + m) / (2 * np.sqrt(m * M)) * w2, top
        if identifier is InequalityId.I_3_16:
            return nrm2 - w2, (np.sqrt(M) - np.sqrt(m)) ** 2 / (2 * np.sqrt(m * M)) * w2, top
        if identifier is InequalityId.I_3_17:
            return nrm2 * nrm2 - w2 * w2, (np.sqrt(M) - np.sqrt(m)) ** 2 * w2 * nrm2, top
        raise WrongParamKind(f"{identifier.value} is not an operator inequality")

    def _missing_params(self, identifier: InequalityId, params: ParamSet) -> List[str]:
        return [name for name in CATALOG[identifier].params if getattr(params, name) is None]

    def _require_normal(self, profile: MatrixProfile) -> None:
        if profile.normality_defect > self.normality_tol:
            raise NotNormal(profile.normality_defect, self.normality_tol)

    def _check_normal(self, identifier: InequalityId, profile: MatrixProfile) -> None:
        if CATALOG[identifier].requires_normal:
            self._require_normal(profile)

    def _evaluate_profile(
        self, identifier: InequalityId, profile: MatrixProfile, params: ParamSet, digest: str
    ) -> Certificate:
        entry = CATALOG[identifier]
        self._check_normal(identifier, profile)

        terms = self._operator_terms(identifier, profile, params)
        if terms is None:
            return self._not_applicable(identifier, profile.n, digest, "parameter domain excludes this instance")

        hypothesis = self._hypothesis(entry.hypothesis, profile, params)
        lhs, rhs, witness = terms
        return self._finish(identifier, profile.n, hypothesis, lhs, rhs, witness, digest)

    def evaluate(self, identifier, A: ComplexMatrix, params: ParamSet) -> Certificate:
        """
        Evaluate one operator inequality.

        Args:
            identifier: Catalog id (string or InequalityId)
            A: Square complex matrix
            params: Parameter bundle holding the kinds the id needs

        Returns:
            Certificate with verdict verified, violated, hypothesis_failed or not_applicable

        Raises:
            UnknownInequality: If the id is not in the catalog
            WrongParamKind: If the id is a vector inequality or a needed parameter is absent
            NotNormal: If the id requires normality and A is not normal
        """
        identifier = parse_id(identifier)
        if identifier.is_vector:
            raise WrongParamKind(f"{identifier.value} is a vector inequality; use evaluate_vector")
        missing = self._missing_params(identifier, params)
        if missing:
            raise WrongParamKind(f"{identifier.value} needs parameters: {', '.join(missing)}")

        profile = self.profile(A)
        digest = inputs_digest([profile.A], params)
        return self._evaluate_profile(identifier, profile, params, digest)

    def evaluate_all(
        self,
        A: ComplexMatrix,
        params: ParamSet,
        ids: Optional[Iterable] = None,
        profile: Optional[MatrixProfile] = None,
    ) -> List[Certificate]:
        """
        Evaluate every operator inequality (or the given subset) in catalog order.

        Ids whose parameters are absent come back not_applicable; hypothesis
        failures are verdicts. The only error is NotNormal for a non-normal
        matrix when any selected id requires normality.

        With more than one worker the ids are evaluated on a thread pool that
        shares the matrix profile; results are merged in catalog order.
        """
        selected = OPERATOR_IDS if ids is None else tuple(parse_id(i) for i in ids)
        selected = [i for i in OPERATOR_IDS if i in selected]
        profile = profile if profile is not None else self.profile(A)
        digest = inputs_digest([profile.A], params)

        if any(CATALOG[i].requires_normal for i in selected):
            self._require_normal(profile)

        def certify(identifier: InequalityId) -> Certificate:
            missing = self._missing_params(identifier, params)
            if missing:
                return self._not_applicable(
                    identifier, profile.n, digest, f"missing parameters: {', '.join(missing)}"
                )
            return self._evaluate_profile(identifier, profile, params, digest)

        workers = min(self.workers, len(selected))
        if workers <= 1:
            return [certify(identifier) for identifier in selected]

        logger.debug(f"evaluating {len(selected)} inequalities on {workers} threads")
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(certify, selected))

    # -------------------------------------------------------------- vector ids

    def evaluate_vector(
        self, identifier, y: ComplexVector, a: ComplexVector, params: ParamSet
    ) -> Certificate:
        """
        Evaluate a vector-level reverse Schwarz inequality.

        The ball lemmas read r from ``params.lambda_radius`` (lambda is unused);
        the disk lemmas read (gamma, Gamma) from ``params.disk`` and take ``a``
        as the vector z.

        Raises:
            DimensionMismatch: If y and a differ in dimension
            WrongParamKind: If the id is not a vector inequality or parameters are absent
        """
        identifier = parse_id(identifier)
        if not identifier.is_vector:
            raise WrongParamKind(f"{identifier.value} is an operator inequality; use evaluate")
        y, a = as_vector(y), as_vector(a)
        if y.shape != a.shape:
            raise DimensionMismatch(f"vectors must share a dimension, got {y.shape} and {a.shape}")
        missing = self._missing_params(identifier, params)
        if missing:
            raise WrongParamKind(f"{identifier.value} needs parameters: {', '.join(missing)}")

        n = y.shape[0]
        digest = inputs_digest([y, a], params)
        ny, na = vector_norm(y), vector_norm(a)
        ya = inner(y, a)
        witness = lambda: y  # noqa: E731

        if CATALOG[identifier].hypothesis is Hypothesis.BALL:
            r = params.lambda_radius.r
            hypothesis = check_ball(y, a, r, self.vector_tol)
            root = float(np.sqrt(max(0.0, na * na - r * r)))
            if identifier is InequalityId.V_2_16A:
                lhs, rhs = ny * ny * na * na - ya.real ** 2, r * r * ny * ny
            elif identifier is InequalityId.V_2_18SRC:
                lhs, rhs = ny * root, ya.real
            else:
                lhs, rhs = ny * ny * na * na - abs(ya) ** 2, 2 * abs(ya) * na * (na - root)
            return self._finish(identifier, n, hypothesis, lhs, rhs, witness, digest)

        disk = params.disk
        z = a
        plus = abs(disk.Gamma + disk.gamma)
        zy = inner(z, y)
        nz = na
        if identifier is InequalityId.V_3_2A:
            if plus == 0.0:
                return self._not_applicable(identifier, n, digest, "Gamma = -gamma")
        elif disk.re_product <= 0.0:
            return self._not_applicable(identifier, n, digest, "Re(Gamma conj(gamma)) <= 0")

        hypothesis = check_vector_disk(y, z, disk, self.vector_tol)
        if identifier is InequalityId.V_3_2A:
            minus = abs(disk.Gamma - disk.gamma)
            lhs = nz * ny - (np.conj(disk.Gamma + disk.gamma) * zy).real / plus
            rhs = minus * minus / (4 * plus) * ny * ny
        elif identifier is InequalityId.V_3_5:
            lhs, rhs = nz * ny, plus / (2 * np.sqrt(disk.re_product)) * abs(zy)
        else:
            lhs = nz * nz * ny * ny - abs(zy) ** 2
            rhs = (plus - 2 * np.sqrt(disk.re_product)) * abs(zy) * ny * ny
        return self._finish(identifier, n, hypothesis, float(lhs), float(rhs), witness, digest)

    # --------------------------------------------------------- cross relations

    def cross_relations(self, certificates: Iterable[Certificate]) -> RelationReport:
        """
        Check orderings that must hold between certificates of one run.

        Relations involving a not_applicable certificate are reported as skipped.

        Raises:
            MissingCertificate: If a certificate needed by a relation is absent
        """
        by_id = {cert.id: cert for cert in certificates}
        needed = (
            InequalityId.I_1_2,
            InequalityId.I_2_2,
            InequalityId.I_2_6,
            InequalityId.I_2_8A,
            InequalityId.I_2_8B,
            InequalityId.I_2_13,
            InequalityId.I_2_14,
            InequalityId.I_3_15,
            InequalityId.I_3_16,
        )
        missing = [i.value for i in needed if i not in by_id]
        if missing:
            raise MissingCertificate(f"cross relations need certificates: {', '.join(missing)}")

        def tol(value: float) -> float:
            return self.slack_tol * max(1.0, abs(value))

        def relation(name: str, ids: Tuple[InequalityId, ...], test: Callable[[], Tuple[bool, str]]):
            if any(by_id[i].verdict is Verdict.NOT_APPLICABLE for i in ids):
                return RelationCheck(name=name, holds=True, detail="not applicable", skipped=True)
            holds, detail = test()
            return RelationCheck(name=name, holds=bool(holds), detail=detail)

        a, b, c = by_id[InequalityId.I_2_8A].rhs, by_id[InequalityId.I_2_8B].rhs, by_id[InequalityId.I_1_2].rhs
        six = by_id[InequalityId.I_2_6].rhs
        h13, h14 = by_id[InequalityId.I_2_13].rhs, by_id[InequalityId.I_2_14].rhs
        s22, s26 = by_id[InequalityId.I_2_2].slack, by_id[InequalityId.I_2_6].slack
        v15, v16 = by_id[InequalityId.I_3_15].verdict, by_id[InequalityId.I_3_16].verdict

        checks = (
            relation(
                "corollary-ordering",
                (InequalityId.I_2_8A, InequalityId.I_2_8B, InequalityId.I_1_2),
                lambda: (a <= b + tol(b) and abs(b - c) <= tol(c), f"{a:.17g} <= {b:.17g} = {c:.17g}"),
            ),
            relation(
                "coarsening-rhs",
                (InequalityId.I_2_8A, InequalityId.I_2_6),
                lambda: (a <= six + tol(six), f"{a:.17g} <= {six:.17g}"),
            ),
            relation(
                "segment-rearrangement",
                (InequalityId.I_3_15, InequalityId.I_3_16),
                lambda: (v15 == v16, f"{v15.value} vs {v16.value}"),
            ),
            relation(
                "refinement",
                (InequalityId.I_2_14, InequalityId.I_2_13),
                lambda: (h14 <= h13 + tol(h13), f"{h14:.17g} <= {h13:.17g}"),
            ),
            relation(
                "coarsening-slack",
                (InequalityId.I_2_2, InequalityId.I_2_6),
                lambda: (s22 < 0 or s26 >= -tol(six), f"slack {s22:.3e} -> {s26:.3e}"),
            ),
        )
        for check in checks:
            if not check.holds:
                logger.warning(f"cross relation {check.name} failed: {check.detail}")
        return RelationReport(checks=checks)


_DEFAULT_ENGINE: Optional[CertificateEngine] = None


def _default_engine() -> CertificateEngine:
    global _DEFAULT_ENGINE
    if _DEFAULT_ENGINE is None:
        _DEFAULT_ENGINE = CertificateEngine()
    return _DEFAULT_ENGINE


def evaluate(identifier, A: ComplexMatrix, params: ParamSet) -> Certificate:
    return _default_engine().evaluate(identifier, A, params)


def evaluate_all(
    A: ComplexMatrix, params: ParamSet, ids: Optional[Iterable] = None
) -> List[Certificate]:
    return _default_engine().evaluate_all(A, params, ids=ids)


def evaluate_vector(identifier, y: ComplexVector, a: ComplexVector, params: ParamSet) -> Certificate:
    return _default_engine().evaluate_vector(identifier, y, a, params)


def cross_relations(certificates: Iterable[Certificate]) -> RelationReport:
    return _default_engine().cross_relations(certificates)
