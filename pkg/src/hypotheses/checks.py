"""Hypothesis predicates, each checked through its equivalent formulations.

Every "for all unit x" condition is reduced to a PSD test of an explicitly
formed Hermitian matrix, so no sampling is involved. A route holds when its
margin (smallest eigenvalue, or norm slack) is above minus a tolerance scaled
by the size of the matrix being tested.
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from src.hypotheses.models import DiskParams, LambdaRadius, SegmentParams
from src.linalg.core import (
    ComplexMatrix,
    ComplexVector,
    HERMITIAN_TOL,
    NORMALITY_TOL,
    adjoint,
    as_vector,
    hermitian_defect,
    min_gain,
    normality_defect,
    operator_norm,
    psd_margin,
    vector_norm,
)
from src.utils.errors import DimensionMismatch, InvalidSegment, NotNormal
from src.utils.logger import get_logger

logger = get_logger(__name__)

PSD_TOL = 1e-10
VECTOR_TOL = 1e-12


@dataclass(frozen=True)
class RouteResult:
    """One formulation of a hypothesis with its margin (>= 0 means it holds outright)."""

    name: str
    holds: bool
    margin: float
    detail: str = ""


@dataclass(frozen=True)
class HypothesisReport:
    """
    Outcome of a hypothesis check.

    Attributes:
        satisfied: Whether the hypothesis holds
        routes: Per-formulation results
        agreement: Whether equivalent formulations concur
        implication: For (e)/(ee) checks, False only if (e) holds while (d) does not
        notes: Free-text remarks (e.g. a product that is not self-adjoint)
    """

    satisfied: bool
    routes: Tuple[RouteResult, ...]
    agreement: bool
    implication: Optional[bool] = None
    notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def status(self) -> str:
        return "satisfied" if self.satisfied else "failed"

    @property
    def min_margin(self) -> float:
        return min(route.margin for route in self.routes)

    def route(self, name: str) -> RouteResult:
        for result in self.routes:
            if result.name == name:
                return result
        raise KeyError(name)


def _require_normal(A: ComplexMatrix, tol: float) -> None:
    defect = normality_defect(A)
    if defect > tol:
        raise NotNormal(defect, tol)


def _psd_route(name: str, M: ComplexMatrix, tol: float, detail: str = "") -> RouteResult:
    margin = psd_margin(M)
    scale = max(1.0, operator_norm(M))
    return RouteResult(name=name, holds=margin >= -tol * scale, margin=margin, detail=detail)


def _norm_route(name: str, slack: float, scale: float, tol: float, detail: str = "") -> RouteResult:
    return RouteResult(name=name, holds=slack >= -tol * max(1.0, scale), margin=slack, detail=detail)


def check_c_cc(
    A: ComplexMatrix,
    p: LambdaRadius,
    tol: float = PSD_TOL,
    normality_tol: float = NORMALITY_TOL,
) -> HypothesisReport:
    """
    Check the defect-and-gain hypothesis (c), equivalently (cc).

    (cc) reads ||A - lambda A*|| <= r and xi(A) >= r/|lambda|; (c) is the
    same pair as PSD conditions r^2 I - D*D >= 0 and |lambda|^2 AA* - r^2 I >= 0
    with D = A - lambda A*.

    Raises:
        NotNormal: If A is not normal within normality_tol
    """
    _require_normal(A, normality_tol)

    n = A.shape[0]
    lam, r = p.lam, p.r
    D = A - lam * adjoint(A)
    eye = np.eye(n)

    defect = operator_norm(D)
    gain = min_gain(A)
    routes = (
        _norm_route("cc-defect", r - defect, r, tol, f"||A - lambda A*|| = {defect:.6g}"),
        _norm_route("cc-gain", gain - r / abs(lam), r / abs(lam), tol, f"xi(A) = {gain:.6g}"),
        _psd_route("c-defect", r * r * eye - adjoint(D) @ D, tol),
        _psd_route("c-gain", abs(lam) ** 2 * (A @ adjoint(A)) - r * r * eye, tol),
    )

    cc = routes[0].holds and routes[1].holds
    c = routes[2].holds and routes[3].holds
    return HypothesisReport(satisfied=cc and c, routes=routes, agreement=cc == c)


def _accretive_product(A: ComplexMatrix, p: DiskParams) -> ComplexMatrix:
    """(A* - conj(gamma) A)(Gamma A* - A)."""
    A_star = adjoint(A)
    return (A_star - np.conj(p.gamma) * A) @ (p.Gamma * A_star - A)


def check_d_dd_ddd(A: ComplexMatrix, p: DiskParams, tol: float = PSD_TOL) -> HypothesisReport:
    """
    Check the disk hypothesis through its accretive form (ddd) and its ball form (dd).

    (ddd): the Hermitian part of (A* - conj(gamma) A)(Gamma A* - A) is PSD.
    (dd): ||Ax - cA*x|| <= rho ||A*x|| for every x, i.e.
    rho^2 AA* - (A - cA*)*(A - cA*) >= 0 with c = (gamma + Gamma)/2 and
    rho = |Gamma - gamma|/2. No normality is needed.
    """
    A_star = adjoint(A)
    c, rho = p.center, p.radius
    E = A - c * A_star

    routes = (
        _psd_route("ddd", _accretive_product(A, p), tol),
        _psd_route("dd", rho * rho * (A @ A_star) - adjoint(E) @ E, tol),
    )
    satisfied = routes[0].holds and routes[1].holds
    return HypothesisReport(
        satisfied=satisfied,
        routes=routes,
        agreement=routes[0].holds == routes[1].holds,
    )


def check_e_ee(
    A: ComplexMatrix,
    p: DiskParams,
    tol: float = PSD_TOL,
    normality_tol: float = NORMALITY_TOL,
    hermitian_tol: float = HERMITIAN_TOL,
) -> HypothesisReport:
    """
    Check the positivity hypothesis (e) and its expanded form (ee).

    P = (A* - conj(gamma) A)(Gamma A* - A) and
    Q = Gamma (A*)^2 - (conj(gamma) Gamma + 1) A*A + conj(gamma) A^2 must be
    Hermitian within ``hermitian_tol`` (relative to its Frobenius norm) and PSD.
    A product that is not self-adjoint is reported in the notes rather than
    raised; only the accretive route of the disk check is then meaningful. The
    report also records whether (e) implies the disk hypothesis on this input.

    Raises:
        NotNormal: If A is not normal within normality_tol
    """
    _require_normal(A, normality_tol)

    A_star = adjoint(A)
    g_bar, G = np.conj(p.gamma), p.Gamma
    P = _accretive_product(A, p)
    Q = G * (A_star @ A_star) - (g_bar * G + 1) * (A_star @ A) + g_bar * (A @ A)

    notes = []
    routes = []
    for name, M in (("e", P), ("ee", Q)):
        herm_defect = hermitian_defect(M)
        herm_ok = herm_defect <= hermitian_tol * max(1.0, float(np.linalg.norm(M, "fro")))
        route = _psd_route(name, M, tol, detail=f"hermitian defect {herm_defect:.3e}")
        if not herm_ok:
            notes.append(f"{name}: product is not self-adjoint (defect {herm_defect:.3e})")
            route = RouteResult(name=name, holds=False, margin=route.margin, detail=route.detail)
        routes.append(route)

    satisfied = routes[0].holds and routes[1].holds
    implication = None
    if routes[0].holds:
        implication = check_d_dd_ddd(A, p, tol).satisfied
        if not implication:
            logger.warning("(e) holds but the disk hypothesis does not; check tolerances")
    else:
        implication = True

    return HypothesisReport(
        satisfied=satisfied,
        routes=tuple(routes),
        agreement=routes[0].holds == routes[1].holds,
        implication=implication,
        notes=tuple(notes),
    )


def check_segment(
    A: ComplexMatrix,
    p: SegmentParams,
    tol: float = PSD_TOL,
    normality_tol: float = NORMALITY_TOL,
    hermitian_tol: float = HERMITIAN_TOL,
) -> HypothesisReport:
    """
    Check that (A* - mA)(MA* - A) is accretive, with all four formulations.

    The disk routes (ddd, dd) decide satisfaction; the positivity routes (e, ee)
    are reported alongside when A is normal.

    Raises:
        InvalidSegment: If not M >= m > 0
    """
    if not (p.M >= p.m > 0):
        raise InvalidSegment(f"requires M >= m > 0, got m={p.m}, M={p.M}")

    disk = p.as_disk()
    d_report = check_d_dd_ddd(A, disk, tol)
    routes = list(d_report.routes)
    notes = []
    implication = None
    agreement = d_report.agreement

    if normality_defect(A) <= normality_tol:
        e_report = check_e_ee(A, disk, tol, normality_tol, hermitian_tol)
        routes.extend(e_report.routes)
        notes.extend(e_report.notes)
        implication = e_report.implication
        agreement = agreement and e_report.agreement
    else:
        notes.append("positivity routes skipped: matrix is not normal")

    return HypothesisReport(
        satisfied=d_report.satisfied,
        routes=tuple(routes),
        agreement=agreement,
        implication=implication,
        notes=tuple(notes),
    )


def vector_equiv_margins(
    x: ComplexVector, z: ComplexVector, Z: ComplexVector
) -> Tuple[float, float, float]:
    """
    Margins of the two equivalent vector conditions.

    Returns:
        Tuple of (Re<Z - x, x - z>, ||Z - z||/2 - ||x - (z + Z)/2||, scale)
        where scale is the magnitude the margins are compared against
    """
    x, z, Z = as_vector(x), as_vector(z), as_vector(Z)
    if not (x.shape == z.shape == Z.shape):
        raise DimensionMismatch(f"vectors must share a dimension, got {x.shape}, {z.shape}, {Z.shape}")

    accretive = float(np.vdot(x - z, Z - x).real)
    ball = vector_norm(Z - z) / 2 - vector_norm(x - (z + Z) / 2)
    scale = max(1.0, vector_norm(x), vector_norm(z), vector_norm(Z))
    return accretive, ball, scale


def vector_equiv_31_32(
    x: ComplexVector, z: ComplexVector, Z: ComplexVector, tol: float = VECTOR_TOL
) -> Tuple[bool, bool]:
    """
    Re<Z - x, x - z> >= 0 and ||x - (z + Z)/2|| <= ||Z - z||/2, with tolerance.

    Raises:
        DimensionMismatch: If the vectors differ in dimension
    """
    accretive, ball, scale = vector_equiv_margins(x, z, Z)
    return accretive >= -tol * scale * scale, ball >= -tol * scale


def check_defect(A: ComplexMatrix, p: LambdaRadius, tol: float = PSD_TOL) -> HypothesisReport:
    """||A - lambda A*|| <= r."""
    defect = operator_norm(A - p.lam * adjoint(A))
    route = _norm_route("defect", p.r - defect, p.r, tol, f"||A - lambda A*|| = {defect:.6g}")
    return HypothesisReport(satisfied=route.holds, routes=(route,), agreement=True)


def check_ball(y: ComplexVector, a: ComplexVector, r: float, tol: float = VECTOR_TOL) -> HypothesisReport:
    """||y - a|| <= r <= ||a||."""
    y, a = as_vector(y), as_vector(a)
    if y.shape != a.shape:
        raise DimensionMismatch(f"vectors must share a dimension, got {y.shape} and {a.shape}")
    norm_a = vector_norm(a)
    routes = (
        _norm_route("ball", r - vector_norm(y - a), norm_a, tol),
        _norm_route("radius", norm_a - r, norm_a, tol),
    )
    return HypothesisReport(satisfied=routes[0].holds and routes[1].holds, routes=routes, agreement=True)


def check_vector_disk(
    y: ComplexVector, z: ComplexVector, p: DiskParams, tol: float = VECTOR_TOL
) -> HypothesisReport:
    """Both vector forms of the disk condition with x = z, z = gamma y, Z = Gamma y."""
    y = as_vector(y)
    accretive, ball, scale = vector_equiv_margins(z, p.gamma * y, p.Gamma * y)
    routes = (
        RouteResult("accretive", accretive >= -tol * scale * scale, accretive),
        RouteResult("ball", ball >= -tol * scale, ball),
    )
    return HypothesisReport(
        satisfied=routes[0].holds and routes[1].holds,
        routes=routes,
        agreement=routes[0].holds == routes[1].holds,
    )
