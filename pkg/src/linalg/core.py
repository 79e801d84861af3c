"""Dense complex matrix primitives shared by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype complex128; the helpers
here validate them and expose the spectral extremes (Hermitian eigenvalues,
singular values) that the certificates are built from. All functions are pure.
"""
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from src.utils.errors import DimensionMismatch, EigenResidualError, InvalidMatrix, NotHermitian

ComplexMatrix = npt.NDArray[np.complex128]
ComplexVector = npt.NDArray[np.complex128]

HERMITIAN_TOL = 1e-10
NORMALITY_TOL = 1e-10
EIG_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class HermEigExtremes:
    """Extreme eigenpairs of a Hermitian matrix."""

    lambda_min: float
    lambda_max: float
    v_min: ComplexVector
    v_max: ComplexVector
    residual: float = 0.0


@dataclass(frozen=True)
class SvdExtremes:
    sigma_max: float
    sigma_min: float
    v_max: ComplexVector
    v_min: ComplexVector


def as_matrix(data) -> ComplexMatrix:
    """
    Validate and convert input to a square, finite complex128 matrix.

    Raises:
        InvalidMatrix: If the input is empty, non-square or non-finite
    """
    try:
        A = np.array(data, dtype=np.complex128)
    except (TypeError, ValueError) as e:
        raise InvalidMatrix(f"cannot interpret input as a complex matrix: {e}")

    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidMatrix(f"matrix must be square, got shape {A.shape}")
    if A.shape[0] < 1:
        raise InvalidMatrix("matrix dimension must be at least 1")
    if not np.all(np.isfinite(A)):
        raise InvalidMatrix("matrix entries must be finite")
    return A


def as_vector(data) -> ComplexVector:
    x = np.array(data, dtype=np.complex128)
    if x.ndim != 1 or x.size < 1:
        raise InvalidMatrix(f"vector must be one-dimensional and non-empty, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise InvalidMatrix("vector entries must be finite")
    return x


def adjoint(A: ComplexMatrix) -> ComplexMatrix:
    """Conjugate transpose."""
    return np.ascontiguousarray(np.conj(np.asarray(A)).T)


def hermitian_part(A: ComplexMatrix) -> ComplexMatrix:
    """(A + A*)/2, exactly Hermitian in floating point."""
    return (A + adjoint(A)) / 2


def inner(u: ComplexVector, v: ComplexVector) -> complex:
    """Inner product <u, v>, linear in the first argument."""
    return complex(np.vdot(v, u))


def vector_norm(x: ComplexVector) -> float:
    return float(np.sqrt(np.vdot(x, x).real))


def quadratic_form(A: ComplexMatrix, x: ComplexVector) -> complex:
    """<Ax, x> for a (not necessarily unit) vector x."""
    return complex(np.vdot(x, A @ x))


def hermitian_defect(H: ComplexMatrix) -> float:
    return float(np.linalg.norm(H - adjoint(H), "fro"))


def herm_eig_extremes(H: ComplexMatrix, tol: float = HERMITIAN_TOL) -> HermEigExtremes:
    """
    Extreme eigenvalues of a Hermitian matrix with unit eigenvector witnesses.

    Args:
        H: Hermitian matrix
        tol: Allowed Hermitian defect, relative to the Frobenius norm of H

    Returns:
        HermEigExtremes with lambda_min <= lambda_max and the larger of the two
        eigenpair residuals ||Hv - lambda v||

    Raises:
        NotHermitian: If ||H - H*||_F exceeds tol * ||H||_F
        EigenResidualError: If a returned eigenpair misses 1e-8 * max(1, ||H||)
    """
    H = np.asarray(H, dtype=np.complex128)
    scale = float(np.linalg.norm(H, "fro"))
    defect = hermitian_defect(H)
    if defect > tol * scale:
        raise NotHermitian(f"Hermitian defect {defect:.3e} exceeds {tol:.1e} * {scale:.3e}")

    Hs = hermitian_part(H)
    w, v = np.linalg.eigh(Hs)
    lambda_min, lambda_max = float(w[0]), float(w[-1])
    v_min, v_max = v[:, 0].copy(), v[:, -1].copy()

    residual = max(
        float(np.linalg.norm(Hs @ v_min - lambda_min * v_min)),
        float(np.linalg.norm(Hs @ v_max - lambda_max * v_max)),
    )
    bound = EIG_RESIDUAL_TOL * max(1.0, float(np.linalg.norm(Hs, 2)))
    if residual > bound:
        raise EigenResidualError(f"eigenpair residual {residual:.3e} exceeds {bound:.3e}")

    return HermEigExtremes(
        lambda_min=lambda_min,
        lambda_max=lambda_max,
        v_min=v_min,
        v_max=v_max,
        residual=residual,
    )


def psd_margin(H: ComplexMatrix) -> float:
    """Smallest eigenvalue of the Hermitian part of H."""
    return float(np.linalg.eigvalsh(hermitian_part(np.asarray(H, dtype=np.complex128)))[0])


def svd_extremes(A: ComplexMatrix) -> SvdExtremes:
    """Largest and smallest singular values with right singular vectors."""
    _, s, vh = np.linalg.svd(A)
    return SvdExtremes(
        sigma_max=float(s[0]),
        sigma_min=float(s[-1]),
        v_max=np.conj(vh[0]).copy(),
        v_min=np.conj(vh[-1]).copy(),
    )


def operator_norm(A: ComplexMatrix) -> float:
    """Spectral norm sigma_max(A)."""
    return float(np.linalg.norm(A, 2))


def min_gain(A: ComplexMatrix) -> float:
    """inf over unit x of ||Ax||, i.e. sigma_min(A)."""
    return float(np.linalg.svd(A, compute_uv=False)[-1])


def normality_defect(A: ComplexMatrix) -> float:
    """||A*A - AA*||_F / max(1, ||A||_F^2)."""
    A_star = adjoint(A)
    commutator = A_star @ A - A @ A_star
    scale = max(1.0, float(np.linalg.norm(A, "fro")) ** 2)
    return float(np.linalg.norm(commutator, "fro")) / scale


def is_normal(A: ComplexMatrix, tol: float = NORMALITY_TOL) -> bool:
    return normality_defect(A) <= tol


def _check_conforming(A: np.ndarray, B: np.ndarray, op: str) -> None:
    if A.ndim != 2 or B.ndim != 2:
        raise DimensionMismatch(f"{op}: operands must be matrices")


def matmul(A: ComplexMatrix, B: ComplexMatrix) -> ComplexMatrix:
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    _check_conforming(A, B, "matmul")
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"matmul: {A.shape} and {B.shape} do not conform")
    return A @ B


def matsub(A: ComplexMatrix, B: ComplexMatrix) -> ComplexMatrix:
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    _check_conforming(A, B, "matsub")
    if A.shape != B.shape:
        raise DimensionMismatch(f"matsub: {A.shape} and {B.shape} do not conform")
    return A - B


def scale(c: complex, A: ComplexMatrix) -> ComplexMatrix:
    return complex(c) * np.asarray(A, dtype=np.complex128)


def eigenvalues(A: ComplexMatrix) -> npt.NDArray[np.complex128]:
    return np.linalg.eigvals(A)


def unit_eigenvectors(A: ComplexMatrix) -> ComplexMatrix:
    """Columns are unit-norm eigenvectors of A (general eigensolver)."""
    _, V = np.linalg.eig(A)
    norms = np.linalg.norm(V, axis=0)
    norms[norms == 0] = 1.0
    return V / norms
