import numpy as np
import pytest

from src.hypotheses.models import DiskParams, LambdaRadius, ParamSet
from src.ledger.catalog import VECTOR_IDS, InequalityId
from src.ledger.engine import CertificateEngine, Verdict, evaluate_vector
from src.utils.errors import DimensionMismatch, WrongParamKind

BALL_IDS = (InequalityId.V_2_16A, InequalityId.V_2_18SRC, InequalityId.V_2_20SRC)
DISK_IDS = (InequalityId.V_3_2A, InequalityId.V_3_5, InequalityId.V_3_8)


def ball(r):
    return ParamSet(lambda_radius=LambdaRadius(lam=1, r=r))


def disk(gamma, Gamma):
    return ParamSet(disk=DiskParams(gamma=gamma, Gamma=Gamma))


def random_unit(rng, n):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def test_ids_partition():
    assert set(VECTOR_IDS) == set(BALL_IDS) | set(DISK_IDS)


def test_ball_center():
    a = np.array([3, 4j])
    cert = evaluate_vector("V-2.16a", a, a, ball(2.5))
    assert cert.verdict is Verdict.VERIFIED
    assert cert.lhs == pytest.approx(0.0, abs=1e-12)
    assert cert.rhs == pytest.approx(2.5 ** 2 * 25)


def test_scalar_disk_equality():
    e1 = np.array([1, 0j])
    cert = evaluate_vector("V-3.5", e1, e1, disk(1, 1))
    assert cert.verdict is Verdict.VERIFIED
    assert cert.lhs == pytest.approx(1.0)
    assert cert.rhs == pytest.approx(1.0)
    assert cert.slack == pytest.approx(0.0, abs=1e-15)


def test_near_equality():
    a = np.array([2, 0j])
    y = np.array([2, 0.1 + 0j])
    cert = evaluate_vector("V-2.18src", y, a, ball(0.1))
    assert cert.verdict is Verdict.VERIFIED
    assert cert.lhs == pytest.approx(np.sqrt(4.01) * np.sqrt(3.99))
    assert cert.rhs == pytest.approx(4.0)
    assert 0 < cert.slack < 1e-4


def test_outside_ball_fails_hypothesis():
    a = np.array([1, 0j])
    cert = evaluate_vector("V-2.16a", np.array([0, 1j]), a, ball(0.5))
    assert cert.verdict is Verdict.HYPOTHESIS_FAILED


def test_radius_above_norm_fails_hypothesis():
    a = np.array([1, 0j])
    assert evaluate_vector("V-2.20src", a, a, ball(2.0)).verdict is Verdict.HYPOTHESIS_FAILED


def test_opposite_endpoints_not_applicable():
    e1 = np.array([1, 0j])
    for identifier in DISK_IDS:
        cert = evaluate_vector(identifier, e1, 0 * e1, disk(-1, 1))
        assert cert.verdict is Verdict.NOT_APPLICABLE


def test_errors():
    e1 = np.array([1, 0j])
    with pytest.raises(DimensionMismatch):
        evaluate_vector("V-2.16a", e1, np.ones(3), ball(0.1))
    with pytest.raises(WrongParamKind):
        evaluate_vector("I-2.2", e1, e1, ball(0.1))
    with pytest.raises(WrongParamKind):
        evaluate_vector("V-3.5", e1, e1, ball(0.1))


def test_digest_covers_both_vectors():
    e1, e2 = np.array([1, 0j]), np.array([0, 1 + 0j])
    a = evaluate_vector("V-3.5", e1, e1, disk(1, 1)).inputs_digest
    b = evaluate_vector("V-3.5", e1, e1 + 1e-3 * e2, disk(1, 1)).inputs_digest
    assert a != b


def test_ball_lemmas_on_random_samples(rng):
    engine = CertificateEngine()
    for _ in range(10_000):
        n = int(rng.integers(1, 6))
        a = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * rng.uniform(0.1, 10)
        r = float(np.linalg.norm(a) * rng.uniform(0.01, 1.0))
        y = a + r * rng.uniform(0, 1) * random_unit(rng, n)
        params = ball(r)
        for identifier in BALL_IDS:
            cert = engine.evaluate_vector(identifier, y, a, params)
            assert cert.verdict is Verdict.VERIFIED, (identifier, cert.slack)


def test_disk_lemmas_on_random_samples(rng):
    engine = CertificateEngine()
    for _ in range(10_000):
        n = int(rng.integers(1, 6))
        c = complex(rng.standard_normal(), rng.standard_normal())
        rho = abs(c) * float(rng.uniform(0.05, 0.95))
        tilt = np.exp(2j * np.pi * rng.random())
        params = disk(c - rho * tilt, c + rho * tilt)
        y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        z = c * y + rho * np.linalg.norm(y) * rng.uniform(0, 1) * random_unit(rng, n)
        for identifier in DISK_IDS:
            cert = engine.evaluate_vector(identifier, y, z, params)
            assert cert.verdict is Verdict.VERIFIED, (identifier, cert.slack)
