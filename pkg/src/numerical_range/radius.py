"""Numerical radius, numerical-range boundary and related spectral quantities.

Everything is driven by the support function of the numerical range,

    h(theta) = lambda_max((e^{-i theta} A + e^{i theta} A*) / 2),

whose maximum over the circle is w(A). The radius is returned as a certified
enclosure [value, upper]: ``value`` is attained by an explicit eigenvector and
``upper`` follows from two bounds that hold between consecutive grid angles
without any convexity assumption.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np
import numpy.typing as npt

from src.linalg.core import (
    ComplexMatrix,
    ComplexVector,
    adjoint,
    as_vector,
    eigenvalues,
    hermitian_part,
    min_gain,
    operator_norm,
    quadratic_form,
    vector_norm,
)
from src.utils.errors import InvalidParameters, ToleranceUnreachable
from src.utils.logger import get_logger

logger = get_logger(__name__)

TWO_PI = 2.0 * np.pi
INITIAL_GRID = 512
MAX_POINTS = 2 ** 20
# stacked Hermitian blocks evaluated per eigh call
_CHUNK_ELEMENTS = 2 ** 21


@dataclass(frozen=True)
class RadiusResult:
    """Certified enclosure value <= w(A) <= upper."""

    value: float
    upper: float
    theta_star: float
    witness: ComplexVector
    evaluations: int

    @property
    def gap(self) -> float:
        return self.upper - self.value


@dataclass(frozen=True)
class BoundaryPolyline:
    points: npt.NDArray[np.complex128]
    thetas: npt.NDArray[np.float64]
    vectors: npt.NDArray[np.complex128]


def support_values(
    A: ComplexMatrix, thetas: npt.ArrayLike, largest: bool = True
) -> Tuple[npt.NDArray[np.float64], npt.NDArray[np.complex128]]:
    """
    Batched extreme eigenpairs of the rotated Hermitian parts of A.

    Args:
        A: Square complex matrix
        thetas: Angles
        largest: Return lambda_max (support value) if True, else lambda_min

    Returns:
        Tuple of (values, vectors) with vectors[k] the unit eigenvector for thetas[k]
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=np.float64))
    n = A.shape[0]
    A_star = adjoint(A)
    idx = -1 if largest else 0

    values = np.empty(thetas.shape[0], dtype=np.float64)
    vectors = np.empty((thetas.shape[0], n), dtype=np.complex128)
    chunk = max(1, _CHUNK_ELEMENTS // (n * n))

    for start in range(0, thetas.shape[0], chunk):
        stop = min(start + chunk, thetas.shape[0])
        rot = np.exp(-1j * thetas[start:stop])[:, None, None]
        H = (rot * A + np.conj(rot) * A_star) / 2
        w, v = np.linalg.eigh(H)
        values[start:stop] = w[:, idx]
        vectors[start:stop] = v[:, :, idx]

    return values, vectors


def support_value(A: ComplexMatrix, theta: float) -> Tuple[float, ComplexVector]:
    """Support function h(theta) of W(A) with its unit eigenvector witness."""
    values, vectors = support_values(A, [theta])
    return float(values[0]), vectors[0]


def arc_upper_bounds(
    left: npt.NDArray[np.float64],
    right: npt.NDArray[np.float64],
    width: npt.NDArray[np.float64],
    lipschitz: float,
) -> npt.NDArray[np.float64]:
    """
    Upper bounds for max h over arcs [theta, theta + width] from endpoint values.

    Two bounds are combined. Writing e^{-i(theta+t)} as a nonnegative
    combination of the endpoint rotations gives

        h(theta + t) <= (left * sin(width - t) + right * sin(t)) / sin(width),

    and h is ||A||-Lipschitz in theta. Both hold for widths below pi.
    """
    sin_w = np.sin(width)
    p = left
    q = (right - left * np.cos(width)) / sin_w
    t_star = np.arctan2(q, p)
    inside = (t_star >= 0.0) & (t_star <= width)
    sine_bound = np.where(inside, np.hypot(p, q), np.maximum(left, right))
    lipschitz_bound = (left + right) / 2 + lipschitz * width / 2
    return np.minimum(sine_bound, lipschitz_bound)


def numerical_radius(
    A: ComplexMatrix,
    tol: float = 1e-9,
    initial_grid: int = INITIAL_GRID,
    max_points: int = MAX_POINTS,
) -> RadiusResult:
    """
    Certified numerical radius w(A) = max over theta of h(theta).

    Starts from an equispaced grid and bisects every arc whose upper bound still
    exceeds the best value by more than ``tol``, so resolution doubles each round
    where it matters. The enclosure cannot be narrower than the eigensolver
    rounding floor of a few ulps of ||A||, so smaller tolerances are refused.

    Args:
        A: Square complex matrix
        tol: Target width of the enclosure
        initial_grid: Number of equispaced starting angles
        max_points: Budget of support-function evaluations

    Returns:
        RadiusResult with value <= w(A) <= upper and upper - value <= tol

    Raises:
        InvalidParameters: If tol is not positive
        ToleranceUnreachable: If tol is below the rounding floor 32 n eps ||A||,
            or the evaluation budget is exhausted
    """
    if not tol > 0:
        raise InvalidParameters(f"tolerance must be positive, got {tol}")

    n = A.shape[0]
    lipschitz = operator_norm(A)
    pad = 8.0 * n * np.finfo(float).eps * lipschitz
    if tol < 4.0 * pad:
        raise ToleranceUnreachable(
            f"tolerance {tol:.1e} is below the rounding floor {4.0 * pad:.1e} for ||A|| = {lipschitz:.3e}"
        )

    thetas = np.arange(initial_grid) * (TWO_PI / initial_grid)
    h, vecs = support_values(A, thetas)
    evaluations = initial_grid

    best = int(np.argmax(h))
    value, theta_star, witness = float(h[best]), float(thetas[best]), vecs[best]

    left = thetas
    width = np.full(initial_grid, TWO_PI / initial_grid)
    h_left = h
    h_right = np.roll(h, -1)
    settled_upper = -np.inf
    rounds = 0

    while True:
        bounds = arc_upper_bounds(h_left, h_right, width, lipschitz) + pad
        active = bounds > value + tol
        if np.any(~active):
            settled_upper = max(settled_upper, float(np.max(bounds[~active])))
        if not np.any(active):
            break

        left, width = left[active], width[active] / 2
        h_left, h_right = h_left[active], h_right[active]
        mids = left + width

        if evaluations + mids.shape[0] > max_points:
            raise ToleranceUnreachable(
                f"numerical radius enclosure still {float(np.max(bounds)) - value:.3e} wide "
                f"after {evaluations} evaluations (tol {tol:.1e})"
            )

        h_mid, v_mid = support_values(A, mids)
        evaluations += mids.shape[0]
        rounds += 1

        k = int(np.argmax(h_mid))
        if h_mid[k] > value:
            value, theta_star, witness = float(h_mid[k]), float(mids[k]), v_mid[k]

        left = np.concatenate([left, mids])
        width = np.concatenate([width, width])
        h_left, h_right = np.concatenate([h_left, h_mid]), np.concatenate([h_mid, h_right])

    upper = max(value, settled_upper)
    logger.debug(
        f"numerical radius {value:.17g} in [{value:.17g}, {upper:.17g}] "
        f"after {rounds} rounds, {evaluations} evaluations"
    )
    return RadiusResult(
        value=value,
        upper=upper,
        theta_star=float(np.mod(theta_star, TWO_PI)),
        witness=witness,
        evaluations=evaluations,
    )


def range_boundary(A: ComplexMatrix, count: int) -> BoundaryPolyline:
    """
    Points <A v_theta, v_theta> on the boundary of W(A) for equispaced support angles.

    Raises:
        InvalidParameters: If count < 3
    """
    if count < 3:
        raise InvalidParameters(f"boundary needs at least 3 points, got {count}")

    thetas = np.arange(count) * (TWO_PI / count)
    _, vecs = support_values(A, thetas)
    points = np.einsum("ki,ki->k", np.conj(vecs), vecs @ A.T)
    return BoundaryPolyline(points=points, thetas=thetas, vectors=vecs)


def spectral_radius(A: ComplexMatrix) -> float:
    """Maximum modulus of the eigenvalues of A."""
    return float(np.max(np.abs(eigenvalues(A))))


def resolvent_gap(A: ComplexMatrix, z: complex) -> Tuple[float, float]:
    """
    Lower bound data for ||(A - zI)x|| over unit x.

    Returns:
        Tuple of (sigma_min(A - zI), distance from z to the spectrum of A)
    """
    n = A.shape[0]
    sigma = min_gain(A - complex(z) * np.eye(n))
    dist = float(np.min(np.abs(complex(z) - eigenvalues(A))))
    return sigma, dist


def realize_point(
    A: ComplexMatrix, target: complex, u: ComplexVector, v: ComplexVector
) -> ComplexVector:
    """
    Unit x in span{u, v} with <Ax, x> = target.

    ``u`` and ``v`` are unit vectors whose values <Au,u> and <Av,v> lie on a
    segment containing ``target``. The rotated skew part is cancelled by a
    phase choice, after which <Ax,x> - target is a real quadratic in one
    parameter with a sign change.
    """
    u, v = as_vector(u), as_vector(v)
    C = A - complex(target) * np.eye(A.shape[0])
    a, b = quadratic_form(C, u), quadratic_form(C, v)

    if abs(a) <= abs(b) * 1e-15 or a == b:
        return u if abs(a) <= abs(b) else v
    if abs(b) <= abs(a) * 1e-15:
        return v

    phi = np.angle(b - a)
    C = np.exp(-1j * phi) * C
    H = hermitian_part(C)
    K = (C - adjoint(C)) / 2j

    k = np.vdot(u, K @ v)
    s = 1j * np.conj(k) / abs(k) if abs(k) > 0 else 1.0

    alpha = float(np.vdot(u, H @ u).real)
    gamma = float(np.vdot(v, H @ v).real)
    beta = float((s * np.vdot(u, H @ v)).real)

    if alpha >= 0.0:
        t = 0.0
    elif gamma <= 0.0:
        return v
    else:
        root = np.sqrt(beta * beta - alpha * gamma)
        t = -alpha / (beta + root) if beta + root > 0 else (root - beta) / gamma

    x = u + t * s * v
    norm = vector_norm(x)
    if norm == 0.0:
        return u if abs(a) <= abs(b) else v
    return x / norm
