"""Closed catalog of the inequalities the engine can certify."""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional, Tuple

from src.utils.errors import UnknownInequality


class InequalityId(str, Enum):
    I_1_2 = "I-1.2"
    I_1_3A = "I-1.3a"
    I_1_3B = "I-1.3b"
    I_1_4 = "I-1.4"
    I_2_2 = "I-2.2"
    I_2_6 = "I-2.6"
    I_2_7 = "I-2.7"
    I_2_8A = "I-2.8a"
    I_2_8B = "I-2.8b"
    I_2_9 = "I-2.9"
    I_2_9_FALLBACK = "I-2.9-fallback"
    I_2_11 = "I-2.11"
    I_2_11A = "I-2.11a"
    I_2_13 = "I-2.13"
    I_2_14 = "I-2.14"
    I_2_15 = "I-2.15"
    I_2_16 = "I-2.16"
    I_2_20 = "I-2.20"
    I_3_1A = "I-3.1a"
    I_3_4 = "I-3.4"
    I_3_7 = "I-3.7"
    I_3_14 = "I-3.14"
    I_3_15 = "I-3.15"
    I_3_16 = "I-3.16"
    I_3_17 = "I-3.17"
    V_2_16A = "V-2.16a"
    V_2_18SRC = "V-2.18src"
    V_2_20SRC = "V-2.20src"
    V_3_2A = "V-3.2a"
    V_3_5 = "V-3.5"
    V_3_8 = "V-3.8"

    @property
    def is_vector(self) -> bool:
        return self.value.startswith("V-")


class Hypothesis(str, Enum):
    NONE = "none"
    DEFECT = "defect"  # ||T - lambda T*|| <= r
    DEFECT_GAIN = "defect-gain"  # (c) / (cc)
    DISK = "disk"  # (d) / (dd) / (ddd)
    SEGMENT = "segment"  # (A* - mA)(MA* - A) accretive
    BALL = "ball"  # ||y - a|| <= r <= ||a||
    VECTOR_DISK = "vector-disk"  # Re<Gamma y - z, z - gamma y> >= 0


@dataclass(frozen=True)
class InequalityInfo:
    """
    Catalog entry.

    Attributes:
        params: ParamSet fields the evaluator reads
        hypothesis: Operator or vector hypothesis checked before evaluation
        requires_normal: Whether non-normal input is rejected
        statement: Human-readable "lhs <= rhs"
        erratum: Note where the implemented form differs from the printed one
    """

    params: Tuple[str, ...]
    hypothesis: Hypothesis
    statement: str
    requires_normal: bool = True
    erratum: Optional[str] = None


_W2 = "w(T^2)"

CATALOG: Dict[InequalityId, InequalityInfo] = {
    InequalityId.I_1_2: InequalityInfo(
        ("lambda_radius",), Hypothesis.DEFECT, f"||T||^2 - {_W2} <= 2r^2/(1+|lambda|)^2"
    ),
    InequalityId.I_1_3A: InequalityInfo(
        ("lambda_radius", "prior"),
        Hypothesis.NONE,
        f"(1+|lambda|^(2rho))||T||^2 <= 2|lambda|^rho {_W2} + rho^2 ||T - lambda T*||^2  (|lambda| <= 1, rho >= 1)",
    ),
    InequalityId.I_1_3B: InequalityInfo(
        ("lambda_radius", "prior"),
        Hypothesis.NONE,
        f"(1+|lambda|^(2rho))||T||^2 <= 2|lambda|^rho {_W2} + |lambda|^(2rho-2) ||T - lambda T*||^2  (|lambda| <= 1, rho < 1)",
    ),
    InequalityId.I_1_4: InequalityInfo(
        ("lambda_radius",), Hypothesis.DEFECT, "||T||^4 - w(T^2)^2 <= r^2 ||T||^2 / |lambda|^2"
    ),
    InequalityId.I_2_2: InequalityInfo(
        ("lambda_radius",),
        Hypothesis.DEFECT,
        f"(1+|lambda|^2)/(2|lambda|) ||T||^2 <= {_W2} + r^2/(2|lambda|)",
    ),
    InequalityId.I_2_6: InequalityInfo(
        ("lambda_radius",), Hypothesis.DEFECT, f"||T||^2 - {_W2} <= r^2/(2|lambda|)"
    ),
    InequalityId.I_2_7: InequalityInfo(
        ("lambda_radius",), Hypothesis.DEFECT, f"||T||^2 - {_W2} <= r^2/2  (|lambda| = 1)"
    ),
    InequalityId.I_2_8A: InequalityInfo(
        ("lambda_radius",), Hypothesis.DEFECT, f"||T||^2 - {_W2} <= r^2/(1+|lambda|^2)"
    ),
    InequalityId.I_2_8B: InequalityInfo(
        ("lambda_radius",), Hypothesis.DEFECT, f"||T||^2 - {_W2} <= 2r^2/(1+|lambda|)^2"
    ),
    InequalityId.I_2_9: InequalityInfo(
        ("lambda_radius",),
        Hypothesis.DEFECT,
        f"||T||^2 - {_W2} <= r^2 - 2|lambda| delta(T) mu(T)",
    ),
    InequalityId.I_2_9_FALLBACK: InequalityInfo(
        ("lambda_radius",), Hypothesis.DEFECT, f"||T||^2 - {_W2} <= r^2"
    ),
    InequalityId.I_2_11: InequalityInfo(
        ("combination",),
        Hypothesis.NONE,
        f"||alpha T + beta T*||^2 <= (|alpha|^2+|beta|^2)||T||^2 + 2|alpha beta| {_W2}",
    ),
    InequalityId.I_2_11A: InequalityInfo(
        ("combination",),
        Hypothesis.NONE,
        f"(|alpha|^2+|beta|^2)||T||^2 <= ||alpha T - beta T*||^2 + 2|alpha beta| {_W2}",
    ),
    InequalityId.I_2_13: InequalityInfo(
        (), Hypothesis.NONE, "||(A+A*)/2||^2 <= ||A||^2", requires_normal=False
    ),
    InequalityId.I_2_14: InequalityInfo(
        (), Hypothesis.NONE, f"||(T+T*)/2||^2 <= (||T||^2 + {_W2})/2"
    ),
    InequalityId.I_2_15: InequalityInfo(
        ("lambda_radius",), Hypothesis.DEFECT_GAIN, "||A||^4 - w(A^2)^2 <= r^2 ||A||^2"
    ),
    InequalityId.I_2_16: InequalityInfo(
        ("lambda_radius",),
        Hypothesis.DEFECT_GAIN,
        "(xi(A)^2 - r^2/|lambda|^2)^(1/2) <= w(A^2)/||A||",
    ),
    InequalityId.I_2_20: InequalityInfo(
        ("lambda_radius",),
        Hypothesis.DEFECT_GAIN,
        "||A||^4 - w(A^2)^2 <= 2 w(A) ||A|| (|lambda| ||A|| - (|lambda|^2 xi(A)^2 - r^2)^(1/2))",
    ),
    InequalityId.I_3_1A: InequalityInfo(
        ("disk",),
        Hypothesis.DISK,
        "||A||^2 - w(A^2) <= |Gamma-gamma|^2/(4|Gamma+gamma|) ||A||^2  (Gamma != -gamma)",
    ),
    InequalityId.I_3_4: InequalityInfo(
        ("disk",),
        Hypothesis.DISK,
        "||A||^2 <= |Gamma+gamma|/(2 sqrt(Re(Gamma conj(gamma)))) w(A^2)  (Re(Gamma conj(gamma)) > 0)",
    ),
    InequalityId.I_3_7: InequalityInfo(
        ("disk",),
        Hypothesis.DISK,
        "||A||^4 - w(A^2)^2 <= (|Gamma+gamma| - 2 sqrt(Re(Gamma conj(gamma)))) w(A^2) ||A||^2",
    ),
    InequalityId.I_3_14: InequalityInfo(
        ("segment",), Hypothesis.SEGMENT, "||A||^2 - w(A^2) <= (M-m)^2/(4(M+m)) ||A||^2"
    ),
    InequalityId.I_3_15: InequalityInfo(
        ("segment",), Hypothesis.SEGMENT, "||A||^2 <= (M+m)/(2 sqrt(mM)) w(A^2)"
    ),
    InequalityId.I_3_16: InequalityInfo(
        ("segment",),
        Hypothesis.SEGMENT,
        "||A||^2 - w(A^2) <= (sqrt(M)-sqrt(m))^2/(2 sqrt(mM)) w(A^2)",
    ),
    InequalityId.I_3_17: InequalityInfo(
        ("segment",),
        Hypothesis.SEGMENT,
        "||A||^4 - w(A^2)^2 <= (sqrt(M)-sqrt(m))^2 w(A^2) ||A||^2",
        erratum="printed with ||A||^2 - w(A^2)^2 on the left; the substitution "
        "gamma = m, Gamma = M into the disk form gives ||A||^4",
    ),
    InequalityId.V_2_16A: InequalityInfo(
        ("lambda_radius",),
        Hypothesis.BALL,
        "||y||^2 ||a||^2 - Re<y,a>^2 <= r^2 ||y||^2",
        requires_normal=False,
    ),
    InequalityId.V_2_18SRC: InequalityInfo(
        ("lambda_radius",),
        Hypothesis.BALL,
        "||y|| (||a||^2 - r^2)^(1/2) <= Re<y,a>",
        requires_normal=False,
    ),
    InequalityId.V_2_20SRC: InequalityInfo(
        ("lambda_radius",),
        Hypothesis.BALL,
        "||y||^2 ||a||^2 - |<y,a>|^2 <= 2|<y,a>| ||a|| (||a|| - (||a||^2 - r^2)^(1/2))",
        requires_normal=False,
    ),
    InequalityId.V_3_2A: InequalityInfo(
        ("disk",),
        Hypothesis.VECTOR_DISK,
        "||z|| ||y|| - Re(conj(Gamma+gamma) <z,y>)/|Gamma+gamma| <= |Gamma-gamma|^2/(4|Gamma+gamma|) ||y||^2",
        requires_normal=False,
    ),
    InequalityId.V_3_5: InequalityInfo(
        ("disk",),
        Hypothesis.VECTOR_DISK,
        "||z|| ||y|| <= |Gamma+gamma|/(2 sqrt(Re(Gamma conj(gamma)))) |<z,y>|",
        requires_normal=False,
    ),
    InequalityId.V_3_8: InequalityInfo(
        ("disk",),
        Hypothesis.VECTOR_DISK,
        "||z||^2 ||y||^2 - |<z,y>|^2 <= (|Gamma+gamma| - 2 sqrt(Re(Gamma conj(gamma)))) |<z,y>| ||y||^2",
        requires_normal=False,
    ),
}

OPERATOR_IDS: Tuple[InequalityId, ...] = tuple(i for i in InequalityId if not i.is_vector)
VECTOR_IDS: Tuple[InequalityId, ...] = tuple(i for i in InequalityId if i.is_vector)


def parse_id(value) -> InequalityId:
    """
    Resolve an identifier string (or enum member) to an InequalityId.

    Raises:
        UnknownInequality: If the identifier is not in the catalog
    """
    if isinstance(value, InequalityId):
        return value
    try:
        return InequalityId(str(value).strip())
    except ValueError:
        raise UnknownInequality(f"unknown inequality id: {value!r}")


def info(identifier) -> InequalityInfo:
    return CATALOG[parse_id(identifier)]
