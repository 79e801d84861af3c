"""Reproducible random test matrices.

All randomness comes from ``numpy.random.Generator(numpy.random.Philox(seed))``,
a counter-based 64-bit generator, so a spec maps to the same matrix bits on
every run.
"""
import math
from typing import ClassVar, Literal, Optional, Type

import numpy as np
from pydantic import Field, model_validator

from src.hypotheses.models import ParamModel
from src.linalg.core import ComplexMatrix, adjoint
from src.utils.errors import InvalidSpec

KINDS = ("normal", "hermitian", "unitary", "near-normal", "ray-spectrum")
LAWS = ("uniform-disk", "uniform-circle", "uniform-interval", "ray")

_ALLOWED_LAWS = {
    "normal": LAWS,
    "near-normal": LAWS,
    "hermitian": ("uniform-interval",),
    "unitary": ("uniform-circle",),
    "ray-spectrum": ("ray",),
}


class SpectrumLaw(ParamModel):
    """
    Eigenvalue distribution.

    uniform-disk(R) samples the closed disk of radius R, uniform-interval(a, b)
    the real segment, ray(angle, R) moduli uniform on [0.1 R, R] along the ray.
    """

    invalid_error: ClassVar[Type[Exception]] = InvalidSpec

    kind: Literal["uniform-disk", "uniform-circle", "uniform-interval", "ray"] = "uniform-disk"
    R: float = Field(default=1.0, gt=0)
    a: float = -1.0
    b: float = 1.0
    angle: float = math.pi / 4

    @model_validator(mode="after")
    def _interval(self) -> "SpectrumLaw":
        if self.kind == "uniform-interval" and not self.a <= self.b:
            raise ValueError(f"interval needs a <= b, got ({self.a}, {self.b})")
        return self

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        if self.kind == "uniform-disk":
            radius = self.R * np.sqrt(rng.random(n))
            return radius * np.exp(2j * np.pi * rng.random(n))
        if self.kind == "uniform-circle":
            return np.exp(2j * np.pi * rng.random(n))
        if self.kind == "uniform-interval":
            return (self.a + (self.b - self.a) * rng.random(n)).astype(np.complex128)
        moduli = rng.uniform(0.1 * self.R, self.R, n)
        return moduli * np.exp(1j * self.angle)


_DEFAULT_LAWS = {
    "normal": SpectrumLaw(kind="uniform-disk"),
    "near-normal": SpectrumLaw(kind="uniform-disk"),
    "hermitian": SpectrumLaw(kind="uniform-interval"),
    "unitary": SpectrumLaw(kind="uniform-circle"),
    "ray-spectrum": SpectrumLaw(kind="ray"),
}


class GeneratorSpec(ParamModel):
    invalid_error: ClassVar[Type[Exception]] = InvalidSpec

    kind: Literal["normal", "hermitian", "unitary", "near-normal", "ray-spectrum"] = "normal"
    n: int = Field(ge=1)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    spectrum_law: Optional[SpectrumLaw] = None
    perturbation: float = Field(default=0.0, ge=0)

    @model_validator(mode="after")
    def _compatible(self) -> "GeneratorSpec":
        if self.spectrum_law is not None and self.spectrum_law.kind not in _ALLOWED_LAWS[self.kind]:
            raise ValueError(f"{self.kind} matrices cannot use a {self.spectrum_law.kind} spectrum")
        if self.perturbation > 0 and self.kind != "near-normal":
            raise ValueError("perturbation applies to near-normal matrices only")
        return self

    @property
    def law(self) -> SpectrumLaw:
        return self.spectrum_law if self.spectrum_law is not None else _DEFAULT_LAWS[self.kind]

    def echo(self) -> str:
        """One-line description used in report headers."""
        law = self.law
        detail = {
            "uniform-disk": f"uniform-disk(R={law.R!r})",
            "uniform-circle": "uniform-circle",
            "uniform-interval": f"uniform-interval(a={law.a!r}, b={law.b!r})",
            "ray": f"ray(angle={law.angle!r}, R={law.R!r})",
        }[law.kind]
        return f"kind={self.kind} n={self.n} seed={self.seed} spectrum={detail} eps={self.perturbation!r}"


def haar_unitary(rng: np.random.Generator, n: int) -> ComplexMatrix:
    """Haar-distributed unitary from the QR factors of a complex Gaussian matrix."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def generate(spec: GeneratorSpec) -> ComplexMatrix:
    """
    Build the matrix described by ``spec``.

    normal: U diag(d) U* with Haar U and d drawn from the spectrum law;
    hermitian and unitary use real and unimodular spectra; ray-spectrum puts
    every eigenvalue on one ray; near-normal adds eps * G with ||G||_F = 1 to the
    normal matrix, drawn after it so that eps = 0 reproduces it exactly.
    """
    rng = rng_for(spec.seed)
    U = haar_unitary(rng, spec.n)
    spectrum = spec.law.sample(rng, spec.n)
    A = (U * spectrum) @ adjoint(U)

    if spec.kind == "hermitian":
        return (A + adjoint(A)) / 2
    if spec.kind == "near-normal" and spec.perturbation > 0:
        G = rng.standard_normal((spec.n, spec.n)) + 1j * rng.standard_normal((spec.n, spec.n))
        return A + spec.perturbation * G / np.linalg.norm(G, "fro")
    return A
