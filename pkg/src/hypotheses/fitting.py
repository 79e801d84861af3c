"""Fit inequality parameters to a normal matrix.

All fits work on the spectrum d_j of the normal input: A - lambda A* has
singular values |d_j - lambda conj(d_j)|, and the disk conditions reduce to
the phase points u_j = d_j / conj(d_j) on the unit circle lying in a disk.
The reported defect is always recomputed on the matrix itself.
"""
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
import numpy.typing as npt
from scipy.optimize import minimize

from src.hypotheses.models import DiskParams, LambdaRadius, SegmentParams
from src.linalg.core import (
    ComplexMatrix,
    NORMALITY_TOL,
    adjoint,
    eigenvalues,
    min_gain,
    normality_defect,
    operator_norm,
)
from src.utils.errors import InvalidParameters, NotNormal, Singular
from src.utils.logger import get_logger

logger = get_logger(__name__)

OBJECTIVES = ("min-defect", "min-ratio")
RADIUS_INFLATION = 1e-9
RADIUS_FLOOR = 1e-15
SEGMENT_ANGLE_PAD = 1e-9


class LambdaFit(NamedTuple):
    params: LambdaRadius
    achieved: float
    non_attained: bool


class DiskFit(NamedTuple):
    params: DiskParams
    feasible: bool


class SegmentFit(NamedTuple):
    params: Optional[SegmentParams]
    feasible: bool


def _require_normal(A: ComplexMatrix, tol: float) -> None:
    defect = normality_defect(A)
    if defect > tol:
        raise NotNormal(defect, tol)


def _is_singular(A: ComplexMatrix) -> bool:
    return min_gain(A) <= 1e-14 * operator_norm(A)


def phase_points(A: ComplexMatrix) -> npt.NDArray[np.complex128]:
    """u_j = d_j / conj(d_j) for the nonzero eigenvalues d_j of A."""
    d = eigenvalues(A)
    d = d[np.abs(d) > 0]
    unit = d / np.abs(d)
    return unit * unit


def _spectral_objective(scale_a: npt.NDArray[np.complex128], target: npt.NDArray[np.complex128]):
    """max_j |scale_a_j * z - target_j| as a function of z = x + iy, and its batched form."""

    def single(xy: npt.NDArray[np.float64]) -> float:
        z = complex(xy[0], xy[1])
        return float(np.max(np.abs(target - z * scale_a)))

    def batch(zs: npt.NDArray[np.complex128]) -> npt.NDArray[np.float64]:
        return np.max(np.abs(target[None, :] - zs[:, None] * scale_a[None, :]), axis=1)

    return single, batch


def _minimize_over_plane(
    candidates: List[complex],
    radius: float,
    single,
    batch,
    grid_points: int,
    xatol: float,
    fatol: float,
    maxiter: int,
) -> complex:
    """Coarse grid over the disk |z| <= radius plus candidates, then Nelder-Mead."""
    axis = np.linspace(-radius, radius, grid_points)
    grid = (axis[:, None] + 1j * axis[None, :]).ravel()
    grid = grid[np.abs(grid) <= radius]
    points = np.concatenate([np.asarray(candidates, dtype=np.complex128), grid])
    values = batch(points)
    start = points[int(np.argmin(values))]

    result = minimize(
        single,
        np.array([start.real, start.imag]),
        method="Nelder-Mead",
        options={"xatol": xatol, "fatol": fatol, "maxiter": maxiter},
    )
    best = complex(result.x[0], result.x[1])
    if single(np.array([best.real, best.imag])) > float(np.min(values)):
        best = start
    logger.debug(f"plane search: start {start}, refined {best} after {result.nit} iterations")
    return best


def fit_lambda(
    A: ComplexMatrix,
    objective: str = "min-defect",
    grid_points: int = 33,
    xatol: float = 1e-14,
    fatol: float = 1e-16,
    maxiter: int = 4000,
    lambda_floor: float = 1e-6,
    normality_tol: float = NORMALITY_TOL,
) -> LambdaFit:
    """
    Fit (lambda, r) for the defect hypothesis ||A - lambda A*|| <= r.

    min-defect minimizes f(lambda) = ||A - lambda A*||, a convex function.
    min-ratio minimizes f(lambda)/|lambda| = ||mu A - A*|| over mu = 1/lambda,
    which is convex in mu. When the infimum sits at lambda = 0 (or mu = 0) the
    parameter is clamped to modulus ``lambda_floor`` and flagged non-attained.

    Args:
        A: Normal matrix
        objective: "min-defect" or "min-ratio"
        grid_points: Points per axis of the coarse search grid

    Returns:
        LambdaFit with r = achieved defect * (1 + 1e-9) + 1e-15

    Raises:
        NotNormal: If A is not normal
        Singular: For min-ratio on a singular matrix
        InvalidParameters: For an unknown objective
    """
    if objective not in OBJECTIVES:
        raise InvalidParameters(f"unknown objective {objective!r}, expected one of {OBJECTIVES}")
    _require_normal(A, normality_tol)

    d = eigenvalues(A)
    d_bar = np.conj(d)
    u = phase_points(A)
    singular = _is_singular(A)
    radius = 2.0 if singular else 2.0 * operator_norm(A) / min_gain(A)
    radius = max(radius, 2.0)

    if objective == "min-defect":
        single, batch = _spectral_objective(d_bar, d)
        z = _minimize_over_plane(list(u), radius, single, batch, grid_points, xatol, fatol, maxiter)
    else:
        if singular:
            raise Singular("min-ratio fit needs an invertible matrix")
        single, batch = _spectral_objective(d, d_bar)
        z = _minimize_over_plane(list(np.conj(u)), radius, single, batch, grid_points, xatol, fatol, maxiter)

    non_attained = abs(z) < lambda_floor
    if non_attained:
        phase = np.exp(1j * np.angle(z)) if z != 0 else 1.0
        z = complex(lambda_floor * phase)
        logger.warning(
            f"{objective} infimum is not attained at a nonzero parameter; clamped to modulus {lambda_floor}"
        )

    lam = z if objective == "min-defect" else 1.0 / z
    defect = operator_norm(A - lam * adjoint(A))
    achieved = defect if objective == "min-defect" else defect / abs(lam)
    r = defect * (1.0 + RADIUS_INFLATION) + RADIUS_FLOOR

    logger.debug(f"fit_lambda[{objective}]: lambda={lam}, defect={defect:.3e}, r={r:.3e}")
    return LambdaFit(
        params=LambdaRadius(lam=lam, r=r),
        achieved=achieved,
        non_attained=bool(non_attained),
    )


def _circle_two(a: complex, b: complex) -> Tuple[complex, float]:
    c = (a + b) / 2
    return c, abs(a - c)


def _circle_three(a: complex, b: complex, c: complex) -> Tuple[complex, float]:
    bx, by = b.real - a.real, b.imag - a.imag
    cx, cy = c.real - a.real, c.imag - a.imag
    den = 2.0 * (bx * cy - by * cx)
    if den == 0.0:
        # collinear: the widest pair spans the circle
        pairs = [(a, b), (a, c), (b, c)]
        return max((_circle_two(p, q) for p, q in pairs), key=lambda t: t[1])
    b2, c2 = bx * bx + by * by, cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / den
    uy = (bx * c2 - cx * b2) / den
    center = complex(a.real + ux, a.imag + uy)
    return center, abs(center - a)


def minimal_enclosing_circle(points: npt.ArrayLike) -> Tuple[complex, float]:
    """
    Smallest closed disk containing the given points of the complex plane.

    Incremental (Welzl) construction in input order; deterministic.
    """
    pts = [complex(p) for p in np.asarray(points).ravel()]
    if not pts:
        raise InvalidParameters("minimal enclosing circle of an empty set")

    def inside(center: complex, radius: float, p: complex) -> bool:
        return abs(p - center) <= radius * (1 + 1e-14) + 1e-15

    center, radius = pts[0], 0.0
    for i, p in enumerate(pts):
        if inside(center, radius, p):
            continue
        center, radius = p, 0.0
        for j in range(i):
            q = pts[j]
            if inside(center, radius, q):
                continue
            center, radius = _circle_two(p, q)
            for k in range(j):
                s = pts[k]
                if not inside(center, radius, s):
                    center, radius = _circle_three(p, q, s)
    return center, radius


def fit_disk(A: ComplexMatrix, normality_tol: float = NORMALITY_TOL) -> DiskFit:
    """
    Fit (gamma, Gamma) so that the disk hypothesis holds, from the smallest disk
    around the phase points.

    The split gamma = c - rho e^{i phi}, Gamma = c + rho e^{i phi} is taken along
    phi = arg c. Re(Gamma conj(gamma)) = |c|^2 - rho^2 for any split, so the fit
    is feasible for the theorems needing Re(Gamma conj(gamma)) > 0 iff |c| > rho.

    Raises:
        NotNormal: If A is not normal
        Singular: If A is singular
    """
    _require_normal(A, normality_tol)
    if _is_singular(A):
        raise Singular("disk fit needs an invertible matrix")

    center, radius = minimal_enclosing_circle(phase_points(A))
    radius = radius * (1.0 + RADIUS_INFLATION) + RADIUS_FLOOR
    phase = np.exp(1j * np.angle(center)) if center != 0 else 1.0

    params = DiskParams(gamma=complex(center - radius * phase), Gamma=complex(center + radius * phase))
    feasible = abs(center) > radius
    logger.debug(f"fit_disk: center={center}, radius={radius:.3e}, feasible={feasible}")
    return DiskFit(params=params, feasible=bool(feasible))


def fit_segment(A: ComplexMatrix, normality_tol: float = NORMALITY_TOL) -> SegmentFit:
    """
    Fit M >= m > 0 with m M = 1 so that (A* - mA)(MA* - A) is accretive.

    With phi the largest |arg u_j|, the disk with center sec(phi) and radius
    tan(phi) passes through e^{+-i phi} and contains every phase point; it is
    the disk of the segment M = (1 + sin phi)/cos phi, m = 1/M. Infeasible
    when phi reaches pi/2.

    Raises:
        NotNormal: If A is not normal
        Singular: If A is singular
    """
    _require_normal(A, normality_tol)
    if _is_singular(A):
        raise Singular("segment fit needs an invertible matrix")

    phi = float(np.max(np.abs(np.angle(phase_points(A))))) + SEGMENT_ANGLE_PAD
    if phi >= np.pi / 2:
        return SegmentFit(params=None, feasible=False)

    M = (1.0 + np.sin(phi)) / np.cos(phi)
    return SegmentFit(params=SegmentParams(m=1.0 / M, M=M), feasible=True)
