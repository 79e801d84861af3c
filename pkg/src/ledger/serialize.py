from pathlib import Path
from typing import IO, Iterable, Optional, Union

import pandas as pd

from src.ledger.engine import Certificate

CERTIFICATE_COLUMNS = ["id", "n", "hyp_status", "lhs", "rhs", "slack", "verdict", "witness_available"]
FLOAT_FORMAT = "%.17g"


def certificates_frame(certificates: Iterable[Certificate]) -> pd.DataFrame:
    """One row per certificate, columns in CSV order."""
    rows = [
        {
            "id": cert.id.value,
            "n": cert.n,
            "hyp_status": cert.hyp_status,
            "lhs": cert.lhs,
            "rhs": cert.rhs,
            "slack": cert.slack,
            "verdict": cert.verdict.value,
            "witness_available": "true" if cert.witness_available else "false",
        }
        for cert in certificates
    ]
    return pd.DataFrame(rows, columns=CERTIFICATE_COLUMNS)


def write_frame(frame: pd.DataFrame, out: Optional[Union[str, Path, IO[str]]] = None) -> Optional[str]:
    """
    Write a DataFrame as CSV with 17 significant digits and LF line endings.

    Args:
        frame: Table to write
        out: Path or text stream; when None the CSV text is returned

    Returns:
        CSV text if out is None, otherwise None
    """
    return frame.to_csv(
        out,
        index=False,
        float_format=FLOAT_FORMAT,
        lineterminator="\n",
        na_rep="nan",
    )


def write_certificates(
    certificates: Iterable[Certificate], out: Optional[Union[str, Path, IO[str]]] = None
) -> Optional[str]:
    return write_frame(certificates_frame(certificates), out)
