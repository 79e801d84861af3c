"""Unit-sphere infima xi(A), mu(T), delta(T) and a sampling oracle to cross-check them."""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Tuple, Union

import numpy as np
import numpy.typing as npt

from src.linalg.core import (
    ComplexMatrix,
    ComplexVector,
    NORMALITY_TOL,
    is_normal,
    quadratic_form,
    svd_extremes,
    unit_eigenvectors,
    vector_norm,
)
from src.numerical_range.radius import TWO_PI, realize_point, support_values
from src.utils.errors import InvalidParameters, UnknownFunctional
from src.utils.logger import get_logger

logger = get_logger(__name__)

DELTA_ZERO_TOL = 1e-9
_ORACLE_CHUNK = 8192


@dataclass(frozen=True)
class InfimumEstimate:
    """
    Estimate of an infimum over the unit sphere.

    ``certified`` is True when ``value`` carries a proof (SVD, support
    function, constructed witness) and False when it is only the best value
    found, i.e. an upper bound on the infimum.
    """

    value: float
    witness: ComplexVector
    certified: bool
    upper: Optional[float] = None


class Functional(str, Enum):
    XI = "xi"
    MU = "mu"
    MU2 = "mu2"
    DELTA = "delta"


def xi(A: ComplexMatrix) -> InfimumEstimate:
    """xi(A) = inf ||Ax|| = sigma_min(A), witnessed by the right singular vector."""
    ext = svd_extremes(A)
    return InfimumEstimate(value=ext.sigma_min, witness=ext.v_min, certified=True, upper=ext.sigma_min)


def _zero_in_range_witness(
    B: ComplexMatrix, points: npt.NDArray[np.complex128], vectors: npt.NDArray[np.complex128]
) -> Optional[ComplexVector]:
    """
    Unit x with <Bx, x> = 0 when 0 lies in the hull of the sampled range points.

    Picks the farthest sample a, then the pair (b, c) whose segment crosses the
    ray from a through 0 farthest out; 0 then sits on the segment from a to
    that crossing point, and two realization steps produce the vector.
    """
    moduli = np.abs(points)
    if moduli.size == 0:
        return None
    a = int(np.argmax(moduli))
    if moduli[a] == 0.0:
        return vectors[a]

    # rotate so that sample a sits on the negative real axis
    w = points * np.exp(-1j * (np.angle(points[a]) + np.pi))
    re, im = w.real, w.imag
    above = np.flatnonzero(im >= 0.0)
    below = np.flatnonzero(im <= 0.0)
    if above.size == 0 or below.size == 0:
        return None

    ib, ic = np.meshgrid(above, below, indexing="ij")
    yb, yc = im[ib], im[ic]
    xb, xc = re[ib], re[ic]
    denom = yb - yc
    with np.errstate(divide="ignore", invalid="ignore"):
        cross = np.where(denom > 0, xb + yb * (xc - xb) / denom, np.maximum(xb, xc))
    flat = int(np.argmax(cross))
    if cross.flat[flat] < 0.0:
        return None

    b, c = int(ib.flat[flat]), int(ic.flat[flat])
    crossing = complex(cross.flat[flat]) * np.exp(1j * (np.angle(points[a]) + np.pi))
    x_bc = realize_point(B, crossing, vectors[b], vectors[c])
    return realize_point(B, 0.0, vectors[a], x_bc)


def mu(
    T: ComplexMatrix,
    tol: float = 1e-12,
    initial_grid: int = 512,
    max_rounds: int = 60,
) -> InfimumEstimate:
    """
    mu(T) = inf |<T^2 x, x>|^{1/2} = dist(0, W(T^2))^{1/2}.

    For every angle, W(T^2) lies in the half-plane Re(e^{-i theta} z) >=
    lambda_min(Re(e^{-i theta} T^2)), so the best such lambda_min is a lower
    bound on the distance; every sampled range point is an upper bound. The grid
    is zoomed around the best angle until the two meet. When the samples
    surround the origin an explicit vector with <T^2 x, x> = 0 is constructed.
    """
    B = T @ T
    thetas = np.arange(initial_grid) * (TWO_PI / initial_grid)
    lows, vecs = support_values(B, thetas, largest=False)
    points = np.einsum("ki,ki->k", np.conj(vecs), vecs @ B.T)

    if np.max(lows) <= 0.0:
        witness = _zero_in_range_witness(B, points, vecs)
        if witness is not None:
            residual = abs(quadratic_form(B, witness))
            scale = max(1.0, float(np.max(np.abs(points))))
            if residual <= 1e-13 * scale:
                logger.debug(f"mu: origin realized in W(T^2), residual {residual:.3e}")
                return InfimumEstimate(value=0.0, witness=witness, certified=True, upper=float(np.sqrt(residual)))

    best = int(np.argmax(lows))
    lower, theta_b = max(0.0, float(lows[best])), float(thetas[best])
    k_up = int(np.argmin(np.abs(points)))
    upper_dist, witness = float(np.abs(points[k_up])), vecs[k_up]
    half_width = TWO_PI / initial_grid

    for _ in range(max_rounds):
        if upper_dist - lower <= tol:
            break
        local = theta_b + np.linspace(-half_width, half_width, 33)
        l_low, l_vecs = support_values(B, local, largest=False)
        l_points = np.einsum("ki,ki->k", np.conj(l_vecs), l_vecs @ B.T)
        j = int(np.argmax(l_low))
        if l_low[j] > lower:
            lower, theta_b = float(l_low[j]), float(local[j])
        j = int(np.argmin(np.abs(l_points)))
        if abs(l_points[j]) < upper_dist:
            upper_dist, witness = float(abs(l_points[j])), l_vecs[j]
        half_width /= 8.0

    certified = upper_dist - lower <= max(tol, 1e-12 * max(1.0, upper_dist))
    return InfimumEstimate(
        value=float(np.sqrt(lower)),
        witness=witness,
        certified=bool(certified),
        upper=float(np.sqrt(upper_dist)),
    )


def _delta_value(T: ComplexMatrix, T2: ComplexMatrix, x: ComplexVector) -> float:
    Tx = T @ x
    return float(np.sqrt(np.vdot(Tx, Tx).real) - np.sqrt(abs(np.vdot(x, T2 @ x))))


def _delta_gradient(T: ComplexMatrix, T2: ComplexMatrix, x: ComplexVector) -> ComplexVector:
    """Riemannian gradient (2 d/d conj(x), projected on the tangent space)."""
    Tx = T @ x
    norm_tx = np.sqrt(np.vdot(Tx, Tx).real)
    g = np.zeros_like(x)
    if norm_tx > 0:
        g += (T.conj().T @ Tx) / norm_tx

    s = np.vdot(x, T2 @ x)
    abs_s = abs(s)
    if abs_s > 0:
        ds = (np.conj(s) * (T2 @ x) + s * (T2.conj().T @ x)) / abs_s
        g -= ds / (2.0 * np.sqrt(abs_s))

    return g - np.vdot(x, g).real * x


def _descend(
    T: ComplexMatrix,
    T2: ComplexMatrix,
    x: ComplexVector,
    max_iter: int,
    step_tol: float,
) -> Tuple[ComplexVector, float]:
    """Projected gradient descent on the sphere with Armijo backtracking."""
    fx = _delta_value(T, T2, x)
    step = 1.0
    for _ in range(max_iter):
        g = _delta_gradient(T, T2, x)
        g_norm2 = np.vdot(g, g).real
        if g_norm2 == 0.0:
            break
        while step > step_tol:
            candidate = x - step * g
            candidate = candidate / vector_norm(candidate)
            fc = _delta_value(T, T2, candidate)
            if fc <= fx - 1e-4 * step * g_norm2:
                break
            step /= 2.0
        else:
            break
        x, fx = candidate, fc
        step = min(1.0, 4.0 * step)
    return x, fx


def delta(
    T: ComplexMatrix,
    restarts: int = 4,
    seed: int = 0,
    max_iter: int = 200,
    step_tol: float = 1e-12,
    normality_tol: float = NORMALITY_TOL,
) -> InfimumEstimate:
    """
    delta(T) = inf [||Tx|| - |<T^2 x, x>|^{1/2}] by multi-start projected descent.

    Every unit eigenvector is used as a start, followed by ``restarts`` random
    starts from a generator seeded with ``seed``. For normal T the functional is
    nonnegative and vanishes at eigenvectors, so a best value within 1e-9 of
    zero is reported as a certified 0.

    Raises:
        InvalidParameters: If restarts < 1
    """
    if restarts < 1:
        raise InvalidParameters(f"restarts must be at least 1, got {restarts}")

    n = T.shape[0]
    T2 = T @ T
    starts = [unit_eigenvectors(T)[:, j] for j in range(n)]
    rng = np.random.Generator(np.random.Philox(seed))
    for _ in range(restarts):
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        starts.append(z / vector_norm(z))

    best_value, best_x = np.inf, starts[0]
    for x0 in starts:
        x, fx = _descend(T, T2, x0, max_iter, step_tol)
        if fx < best_value:
            best_value, best_x = fx, x

    if is_normal(T, normality_tol) and best_value <= DELTA_ZERO_TOL:
        return InfimumEstimate(value=0.0, witness=best_x, certified=True, upper=max(best_value, 0.0))
    return InfimumEstimate(value=float(best_value), witness=best_x, certified=False, upper=float(best_value))


def _batch_functional(
    functional: Functional, T: ComplexMatrix, T2: ComplexMatrix
) -> Callable[[npt.NDArray[np.complex128]], npt.NDArray[np.float64]]:
    def norms(X):
        TX = X @ T.T
        return np.sqrt(np.einsum("ki,ki->k", np.conj(TX), TX).real)

    def forms(X):
        return np.abs(np.einsum("ki,ki->k", np.conj(X), X @ T2.T))

    if functional is Functional.XI:
        return norms
    if functional is Functional.MU2:
        return forms
    if functional is Functional.MU:
        return lambda X: np.sqrt(forms(X))
    return lambda X: norms(X) - np.sqrt(forms(X))


def sphere_oracle(
    functional_id: Union[str, Functional],
    T: ComplexMatrix,
    samples: int,
    seed: int,
) -> float:
    """
    Minimum of a sphere functional over uniformly random unit vectors.

    An upper bound on the true infimum; deterministic for a fixed seed.

    Args:
        functional_id: One of "xi", "mu", "mu2", "delta"
        T: Square complex matrix
        samples: Number of random unit vectors
        seed: Seed of the sampling stream

    Raises:
        UnknownFunctional: If functional_id is not recognised
        InvalidParameters: If samples < 1
    """
    try:
        functional = Functional(functional_id)
    except ValueError:
        raise UnknownFunctional(f"unknown sphere functional: {functional_id!r}")
    if samples < 1:
        raise InvalidParameters(f"samples must be at least 1, got {samples}")

    n = T.shape[0]
    evaluate = _batch_functional(functional, T, T @ T)
    rng = np.random.Generator(np.random.Philox(seed))
    best = np.inf
    remaining = samples
    while remaining > 0:
        k = min(remaining, _ORACLE_CHUNK)
        Z = rng.standard_normal((k, n)) + 1j * rng.standard_normal((k, n))
        X = Z / np.linalg.norm(Z, axis=1, keepdims=True)
        best = min(best, float(np.min(evaluate(X))))
        remaining -= k
    return best
