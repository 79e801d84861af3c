from typing import Optional


class CertificationError(Exception):
    """Base class for every error raised by the certification toolkit."""


class InvalidMatrix(CertificationError, ValueError):
    """Input is not a finite, non-empty, square complex matrix."""


class DimensionMismatch(CertificationError, ValueError):
    """Operands have non-conforming shapes."""


class NotHermitian(CertificationError, ValueError):
    """Hermitian defect exceeds the configured tolerance."""


class NotNormal(CertificationError, ValueError):
    """Normality defect exceeds the configured tolerance."""

    def __init__(self, defect: float, tolerance: float):
        super().__init__(
            f"matrix is not normal: defect {defect:.3e} exceeds {tolerance:.1e}"
        )
        self.defect = defect
        self.tolerance = tolerance


class Singular(CertificationError, ValueError):
    """Operation requires an invertible matrix."""


class InvalidParameters(CertificationError, ValueError):
    """Inequality parameters are malformed (e.g. lambda = 0 or r <= 0)."""


class InvalidSegment(InvalidParameters):
    """Segment parameters violate M >= m > 0."""


class WrongParamKind(CertificationError, ValueError):
    """The parameter bundle lacks the kind an inequality needs."""


class UnknownFunctional(CertificationError, ValueError):
    """Sphere oracle asked for a functional it does not know."""


class UnknownInequality(CertificationError, ValueError):
    """Identifier is not part of the inequality catalog."""


class InvalidSpec(CertificationError, ValueError):
    """Generator specification is inconsistent."""


class MissingCertificate(CertificationError, ValueError):
    """A cross-relation needs a certificate that was not supplied."""


class DimensionError(CertificationError, ValueError):
    """Matrix file declares dimensions that do not match its body."""


class ParseError(CertificationError, ValueError):
    """Matrix file could not be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        location = ""
        if line is not None:
            location = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + location)
        self.line = line
        self.column = column


class ToleranceUnreachable(CertificationError, RuntimeError):
    """The requested enclosure width is below the rounding floor or the point budget ran out."""


class ConfigError(CertificationError, ValueError):
    """Configuration file or logging setting is unusable."""


class EigenResidualError(CertificationError, RuntimeError):
    """The eigensolver returned a pair that does not satisfy H v = lambda v."""


class UsageError(CertificationError, ValueError):
    """Command-line flags are missing, malformed or inconsistent."""
