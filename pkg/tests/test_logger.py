import io
import json
import logging

import numpy as np
import pytest

from src.utils.errors import ConfigError
from src.utils.logger import get_logger, resolve_level, setup_logging


@pytest.fixture
def restore_root():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)


@pytest.mark.parametrize("level, expected", [("debug", 10), ("WARNING", 30), (20, 20)])
def test_resolve_level(level, expected):
    assert resolve_level(level) == expected


def test_unknown_level():
    with pytest.raises(ConfigError, match="unknown logging level"):
        resolve_level("chatty")


def test_json_records_carry_static_fields(restore_root):
    stream = io.StringIO()
    setup_logging("INFO", use_json=True, stream=stream, static_fields={"command": "sweep"})
    get_logger("src.harness.sweep").info("trial 3 done")
    record = json.loads(stream.getvalue().splitlines()[-1])
    assert record["message"] == "trial 3 done"
    assert record["command"] == "sweep"
    assert record["levelname"] == "INFO"


def test_text_records_and_log_file(restore_root, tmp_path):
    stream = io.StringIO()
    log_file = tmp_path / "logs" / "run.log"
    setup_logging(logging.WARNING, log_file=log_file, stream=stream)
    logger = get_logger("src.main")
    logger.info("hidden")
    logger.warning("shown")
    for handler in logging.getLogger().handlers:
        handler.flush()
    assert "hidden" not in stream.getvalue()
    assert " - src.main - WARNING - shown" in stream.getvalue()
    assert "shown" in log_file.read_text(encoding="utf-8")


def test_numeric_modules_log_preformatted_messages(caplog):
    from src.hypotheses.fitting import fit_lambda
    from src.numerical_range.radius import numerical_radius
    from src.sphere.functionals import mu

    A = np.diag([1 + 1j, 2 - 1j, -0.5j])
    caplog.set_level(logging.DEBUG)
    numerical_radius(A)
    mu(A)
    fit_lambda(A)
    records = [r for r in caplog.records if r.name.startswith("src.")]
    assert {r.name for r in records} >= {"src.numerical_range.radius", "src.hypotheses.fitting"}
    assert all(not r.args for r in records)
