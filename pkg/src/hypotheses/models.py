"""Scalar parameter bundles for the inequality catalog.

The models validate on construction; pydantic's ``ValidationError`` is turned
into the toolkit's ``InvalidParameters`` (or ``InvalidSegment``) so callers only
deal with one error hierarchy.
"""
import cmath
import json
import numbers
from typing import Annotated, Any, ClassVar, Dict, Optional, Type

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from src.utils.errors import InvalidParameters, InvalidSegment


class ParamModel(BaseModel):
    """Frozen pydantic model that raises toolkit errors on invalid input."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False, populate_by_name=True)

    invalid_error: ClassVar[Type[Exception]] = InvalidParameters

    def __init__(self, **data: Any):
        try:
            super().__init__(**data)
        except ValidationError as e:
            messages = "; ".join(
                f"{'.'.join(str(p) for p in err['loc']) or type(self).__name__}: {err['msg']}"
                for err in e.errors()
            )
            raise self.invalid_error(f"{type(self).__name__}: {messages}") from e

    def canonical(self) -> Dict[str, Any]:
        """JSON-friendly dict with complex values as [re, im] pairs."""
        out: Dict[str, Any] = {}
        for name, value in self.model_dump().items():
            if isinstance(value, complex):
                out[name] = [value.real, value.imag]
            else:
                out[name] = value
        return out


def _as_complex(value: Any) -> Any:
    """Widen real numbers (Python or numpy) to complex; leave anything else to pydantic."""
    if isinstance(value, numbers.Number) and not isinstance(value, bool):
        return complex(value)
    return value


Complex = Annotated[complex, BeforeValidator(_as_complex)]


def _finite_complex(value: complex) -> complex:
    if not cmath.isfinite(value):
        raise ValueError("must be finite")
    return value


class LambdaRadius(ParamModel):
    """lambda and r of the defect hypothesis ||T - lambda T*|| <= r."""

    lam: Complex = Field(alias="lambda")
    r: float = Field(gt=0)

    @field_validator("lam")
    @classmethod
    def _nonzero(cls, v: complex) -> complex:
        _finite_complex(v)
        if v == 0:
            raise ValueError("lambda must be nonzero")
        return v


class DiskParams(ParamModel):
    """gamma, Gamma of the disk hypotheses; center c and radius rho derived."""

    gamma: Complex
    Gamma: Complex

    @field_validator("gamma", "Gamma")
    @classmethod
    def _finite(cls, v: complex) -> complex:
        return _finite_complex(v)

    @property
    def center(self) -> complex:
        return (self.gamma + self.Gamma) / 2

    @property
    def radius(self) -> float:
        return abs(self.Gamma - self.gamma) / 2

    @property
    def re_product(self) -> float:
        """Re(Gamma * conj(gamma))."""
        return (self.Gamma * self.gamma.conjugate()).real


class SegmentParams(ParamModel):
    invalid_error: ClassVar[Type[Exception]] = InvalidSegment

    m: float
    M: float

    @model_validator(mode="after")
    def _ordered(self) -> "SegmentParams":
        if not (self.M >= self.m > 0):
            raise ValueError(f"requires M >= m > 0, got m={self.m}, M={self.M}")
        return self

    def as_disk(self) -> DiskParams:
        return DiskParams(gamma=complex(self.m), Gamma=complex(self.M))


class CombinationParams(ParamModel):
    alpha: Complex
    beta: Complex

    @field_validator("alpha", "beta")
    @classmethod
    def _finite(cls, v: complex) -> complex:
        return _finite_complex(v)


class PriorParams(ParamModel):
    """Exponent rho of the two-branch prior inequality; both branches need rho > 0."""

    rho: float = Field(gt=0)


class ParamSet(ParamModel):
    """Full parameter bundle; inequalities whose parameters are absent are not applicable."""

    lambda_radius: Optional[LambdaRadius] = None
    disk: Optional[DiskParams] = None
    segment: Optional[SegmentParams] = None
    combination: Optional[CombinationParams] = None
    prior: Optional[PriorParams] = None

    def canonical_json(self) -> str:
        """Stable JSON text used for input digests."""
        payload = {}
        for name in ("lambda_radius", "disk", "segment", "combination", "prior"):
            value = getattr(self, name)
            payload[name] = value.canonical() if value is not None else None
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))

    def with_prior(self, rho: float) -> "ParamSet":
        return self.model_copy(update={"prior": PriorParams(rho=rho)})
