import numpy as np
import pytest

from src.harness.matrix_io import format_complex, parse_complex_literal, parse_matrix, write_matrix
from src.utils.errors import DimensionError, InvalidMatrix, InvalidParameters, ParseError


def write_text(tmp_path, text, name="m.cmat"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestLiterals:
    @pytest.mark.parametrize(
        "token, value",
        [
            ("1+0i", 1),
            ("-2.5-3i", -2.5 - 3j),
            ("0+1e-3i", 1e-3j),
            ("+.5-.25i", 0.5 - 0.25j),
            ("1E2+1E-2i", 100 + 0.01j),
        ],
    )
    def test_parse(self, token, value):
        assert parse_complex_literal(token) == value

    @pytest.mark.parametrize("token", ["1+i+", "1", "i", "1+i", "1+2j", "nan+0i", "1 +2i"])
    def test_reject(self, token):
        assert parse_complex_literal(token) is None

    def test_format_keeps_every_bit(self):
        for value in (0.1 + 0.2j, -1 / 3 + 1e-300j, 2.0 ** 0.5 - 7e22j):
            assert parse_complex_literal(format_complex(value)) == value


class TestCmat:
    def test_reads_diagonal(self, tmp_path):
        path = write_text(tmp_path, "cmat 2 2\n1+0i 0+0i\n0+0i 0+1i\n")
        np.testing.assert_array_equal(parse_matrix(path), np.diag([1, 1j]))

    def test_trailing_blank_lines(self, tmp_path):
        path = write_text(tmp_path, "cmat 1 1\n2-1i\n\n\n")
        assert parse_matrix(path)[0, 0] == 2 - 1j

    def test_malformed_entry_position(self, tmp_path):
        path = write_text(tmp_path, "cmat 2 2\n1+0i 0+0i\n0+0i 1+i+\n")
        with pytest.raises(ParseError) as err:
            parse_matrix(path)
        assert (err.value.line, err.value.column) == (3, 6)

    def test_bad_header(self, tmp_path):
        with pytest.raises(ParseError) as err:
            parse_matrix(write_text(tmp_path, "matrix 2 2\n"))
        assert err.value.line == 1

    def test_empty_file(self, tmp_path):
        with pytest.raises(ParseError):
            parse_matrix(write_text(tmp_path, ""))

    def test_row_count(self, tmp_path):
        with pytest.raises(DimensionError):
            parse_matrix(write_text(tmp_path, "cmat 2 2\n1+0i 0+0i\n"))

    def test_entry_count(self, tmp_path):
        with pytest.raises(DimensionError):
            parse_matrix(write_text(tmp_path, "cmat 2 2\n1+0i 0+0i\n0+0i\n"))

    def test_empty_shape(self, tmp_path):
        with pytest.raises(DimensionError):
            parse_matrix(write_text(tmp_path, "cmat 0 0\n"))

    def test_not_square(self, tmp_path):
        with pytest.raises(InvalidMatrix):
            parse_matrix(write_text(tmp_path, "cmat 1 2\n1+0i 2+0i\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            parse_matrix(tmp_path / "absent.cmat")

    def test_round_trip_is_bit_exact(self, tmp_path, rng):
        A = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        A[0, 0] = 1e-310 - 0.0j
        B = parse_matrix(write_matrix(tmp_path / "a.cmat", A))
        assert A.tobytes() == B.tobytes()

    def test_written_text(self, tmp_path):
        path = write_matrix(tmp_path / "d.cmat", np.diag([1, 1j]))
        assert path.read_bytes() == b"cmat 2 2\n1+0i 0+0i\n0+0i 0+1i\n"


class TestMatrixMarket:
    def test_reads_array_complex(self, tmp_path):
        text = "%%MatrixMarket matrix array complex general\n2 2\n1 0\n0 0\n0 0\n0 1\n"
        A = parse_matrix(write_text(tmp_path, text, name="d.mtx"))
        np.testing.assert_array_equal(A, np.diag([1, 1j]))

    def test_banner_without_suffix(self, tmp_path):
        text = "%%MatrixMarket matrix array real general\n1 1\n4\n"
        assert parse_matrix(write_text(tmp_path, text, name="d.txt"))[0, 0] == 4

    def test_round_trip(self, tmp_path, rng):
        A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        B = parse_matrix(write_matrix(tmp_path / "a.mtx", A))
        np.testing.assert_allclose(B, A, rtol=1e-15)

    def test_garbage(self, tmp_path):
        with pytest.raises(ParseError):
            parse_matrix(write_text(tmp_path, "%%MatrixMarket matrix array complex general\nx y\n", name="g.mtx"))

    def test_unknown_format(self, tmp_path):
        with pytest.raises(InvalidParameters):
            write_matrix(tmp_path / "a.bin", np.eye(2), fmt="bin")
