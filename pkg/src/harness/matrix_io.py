"""Matrix files: the native ``cmat`` text format and Matrix Market.

cmat (UTF-8 text)::

    cmat 2 2
    1+0i 0+0i
    0+0i 0+1i

Entries are written with 17 significant digits, so write followed by read
reproduces every bit. Matrix Market files (``array complex general``) go
through ``scipy.io``.
"""
import re
from pathlib import Path
from typing import Optional, Union

import numpy as np
import scipy.io

from src.linalg.core import ComplexMatrix, as_matrix
from src.utils.errors import DimensionError, InvalidParameters, ParseError
from src.utils.logger import get_logger

logger = get_logger(__name__)

FORMATS = ("cmat", "mtx")

_FLOAT = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_LITERAL = re.compile(rf"([+-]?{_FLOAT})([+-]{_FLOAT})i")
_TOKEN = re.compile(r"\S+")
_HEADER = re.compile(r"cmat\s+(\d+)\s+(\d+)\s*")


def parse_complex_literal(token: str) -> Optional[complex]:
    """Parse ``re±imi`` (both parts mandatory); None if the token does not match."""
    match = _LITERAL.fullmatch(token)
    if match is None:
        return None
    return complex(float(match.group(1)), float(match.group(2)))


def format_complex(value: complex) -> str:
    value = complex(value)
    return f"{value.real:.17g}{value.imag:+.17g}i"


def _parse_cmat(text: str) -> np.ndarray:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty matrix file", line=1, column=1)

    header = _HEADER.fullmatch(lines[0].strip())
    if header is None:
        raise ParseError("expected header 'cmat <rows> <cols>'", line=1, column=1)
    rows, cols = int(header.group(1)), int(header.group(2))
    if rows < 1 or cols < 1:
        raise DimensionError(f"declared shape {rows}x{cols} is empty")

    body = lines[1:]
    if len(body) != rows:
        raise DimensionError(f"header declares {rows} rows, file has {len(body)}")

    A = np.empty((rows, cols), dtype=np.complex128)
    for i, line in enumerate(body):
        tokens = list(_TOKEN.finditer(line))
        for match in tokens:
            value = parse_complex_literal(match.group())
            if value is None:
                raise ParseError(
                    f"malformed complex literal {match.group()!r}", line=i + 2, column=match.start() + 1
                )
        if len(tokens) != cols:
            raise DimensionError(f"line {i + 2}: expected {cols} entries, found {len(tokens)}")
        A[i] = [parse_complex_literal(m.group()) for m in tokens]
    return A


def _parse_mtx(path: Path) -> np.ndarray:
    try:
        _, _, _, layout, field, _ = scipy.io.mminfo(str(path))
        data = scipy.io.mmread(str(path))
    except (ValueError, IndexError, TypeError, RuntimeError) as e:
        raise ParseError(f"invalid Matrix Market file {path}: {e}")
    if field not in ("complex", "real", "integer"):
        raise ParseError(f"unsupported Matrix Market field {field!r}")
    if layout != "array":
        logger.debug(f"{path}: densifying {layout} Matrix Market data")
        data = data.toarray()
    return np.asarray(data, dtype=np.complex128)


def _is_matrix_market(path: Path) -> bool:
    if path.suffix.lower() == ".mtx":
        return True
    with open(path, "r", encoding="utf-8") as f:
        return f.readline().startswith("%%MatrixMarket")


def parse_matrix(path: Union[str, Path]) -> ComplexMatrix:
    """
    Read a square complex matrix from a cmat or Matrix Market file.

    Args:
        path: File to read; Matrix Market is recognised by a ``.mtx`` suffix
            or a ``%%MatrixMarket`` banner

    Returns:
        complex128 matrix

    Raises:
        FileNotFoundError: If the file does not exist
        ParseError: On a malformed header or entry, with its line and column
        DimensionError: If the body does not match the declared shape
        InvalidMatrix: If the matrix is not square
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Matrix file not found: {path}")

    if _is_matrix_market(path):
        A = _parse_mtx(path)
    else:
        A = _parse_cmat(path.read_text(encoding="utf-8"))
    logger.debug(f"read {A.shape[0]}x{A.shape[1]} matrix from {path}")
    return as_matrix(A)


def write_matrix(path: Union[str, Path], A: ComplexMatrix, fmt: Optional[str] = None) -> Path:
    """
    Write ``A`` as cmat (default) or Matrix Market (``fmt="mtx"`` or a ``.mtx`` suffix).

    Returns:
        The path written
    """
    path = Path(path)
    A = as_matrix(A)
    fmt = fmt or ("mtx" if path.suffix.lower() == ".mtx" else "cmat")
    if fmt not in FORMATS:
        raise InvalidParameters(f"unknown matrix format {fmt!r}, expected one of {FORMATS}")

    if fmt == "mtx":
        scipy.io.mmwrite(str(path), A, field="complex", precision=17, symmetry="general")
        return path

    rows, cols = A.shape
    lines = [f"cmat {rows} {cols}"]
    lines.extend(" ".join(format_complex(value) for value in row) for row in A)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")
    return path
