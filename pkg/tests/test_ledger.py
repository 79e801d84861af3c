import numpy as np
import pytest

from src.hypotheses.fitting import fit_disk, fit_lambda, fit_segment
from src.hypotheses.models import (
    CombinationParams,
    DiskParams,
    LambdaRadius,
    ParamSet,
    PriorParams,
    SegmentParams,
)
from src.ledger.catalog import CATALOG, OPERATOR_IDS, InequalityId, info, parse_id
from src.ledger.engine import CertificateEngine, Verdict, evaluate, evaluate_all, inputs_digest
from src.numerical_range.radius import RadiusResult
from src.utils.errors import NotNormal, UnknownInequality, WrongParamKind


def lam_params(lam, r):
    return ParamSet(lambda_radius=LambdaRadius(lam=lam, r=r))


def full_defaults(rho=1.0):
    return ParamSet(
        lambda_radius=LambdaRadius(lam=1, r=0.5),
        disk=DiskParams(gamma=0.5, Gamma=2),
        segment=SegmentParams(m=0.5, M=2),
        combination=CombinationParams(alpha=1, beta=1),
        prior=PriorParams(rho=rho),
    )


def fitted_params(A, rho=2.0):
    disk = fit_disk(A)
    segment = fit_segment(A)
    return ParamSet(
        lambda_radius=fit_lambda(A).params,
        disk=disk.params,
        segment=segment.params,
        combination=CombinationParams(alpha=1j, beta=0.5),
        prior=PriorParams(rho=rho),
    )


class TestCatalog:
    def test_parse_id(self):
        assert parse_id("I-2.2") is InequalityId.I_2_2
        assert parse_id(" V-3.5 ") is InequalityId.V_3_5
        assert parse_id(InequalityId.I_3_17) is InequalityId.I_3_17

    def test_unknown_id(self):
        with pytest.raises(UnknownInequality):
            parse_id("I-9.9")

    def test_every_id_is_catalogued(self):
        assert set(CATALOG) == set(InequalityId)
        assert len(OPERATOR_IDS) == 25

    def test_normality_exemption(self):
        exempt = [i for i in OPERATOR_IDS if not CATALOG[i].requires_normal]
        assert exempt == [InequalityId.I_2_13]

    def test_erratum_is_recorded(self):
        assert "||A||^4" in info("I-3.17").erratum


class TestEvaluate:
    def test_collinear_spectrum(self, diag_ray):
        cert = evaluate("I-2.2", diag_ray, lam_params(1j, 0.1))
        assert cert.verdict is Verdict.VERIFIED
        assert cert.lhs == pytest.approx(8.0)
        assert cert.rhs == pytest.approx(8.005, abs=1e-7)
        assert cert.slack == pytest.approx(0.005, abs=1e-7)
        assert cert.hyp_status == "satisfied"

    def test_hermitian(self):
        cert = evaluate("I-2.8a", np.diag([3.0, 1.0]), lam_params(1, 0.5))
        assert cert.verdict is Verdict.VERIFIED
        assert cert.lhs == pytest.approx(0.0, abs=1e-7)
        assert cert.rhs == pytest.approx(0.125)

    def test_refinement_equality(self):
        cert = evaluate("I-2.14", np.diag([1, 1j]), ParamSet())
        assert cert.verdict is Verdict.VERIFIED
        assert cert.lhs == pytest.approx(1.0)
        assert cert.rhs == pytest.approx(1.0, abs=1e-7)
        assert cert.hyp_status == "not_required"

    def test_gain_bound_on_identity(self):
        cert = evaluate("I-2.16", np.eye(2), lam_params(1, 0.1))
        assert cert.verdict is Verdict.VERIFIED
        assert cert.lhs == pytest.approx(np.sqrt(0.99))
        assert cert.rhs == pytest.approx(1.0, abs=1e-7)

    def test_disk_reverse(self):
        cert = evaluate("I-3.4", np.diag([2.0, 1.0]), ParamSet(disk=DiskParams(gamma=0.5, Gamma=2)))
        assert cert.verdict is Verdict.VERIFIED
        assert cert.lhs == pytest.approx(4.0)
        assert cert.rhs == pytest.approx(5.0, abs=1e-6)

    def test_non_normal_rejected(self, nilpotent):
        with pytest.raises(NotNormal):
            evaluate("I-2.2", nilpotent, lam_params(1, 1))

    def test_convexity_bound_accepts_non_normal(self, nilpotent):
        cert = evaluate("I-2.13", nilpotent, ParamSet())
        assert cert.verdict is Verdict.VERIFIED
        assert cert.lhs == pytest.approx(0.25)
        assert cert.rhs == pytest.approx(1.0)

    def test_missing_parameters(self, diag_ray):
        with pytest.raises(WrongParamKind):
            evaluate("I-3.4", diag_ray, lam_params(1j, 0.1))

    def test_vector_id_rejected(self, diag_ray):
        with pytest.raises(WrongParamKind):
            evaluate("V-3.5", diag_ray, ParamSet())

    def test_failed_hypothesis_is_a_verdict(self):
        cert = evaluate("I-2.6", np.diag([3.0, 1j]), lam_params(1, 0.1))
        assert cert.verdict is Verdict.HYPOTHESIS_FAILED
        assert cert.hyp_status == "failed"
        assert not cert.witness_available

    def test_violation_carries_witness(self, diag_ray):
        engine = CertificateEngine()
        profile = engine.profile(diag_ray)
        # an enclosure that understates w(T^2) turns a sound bound into a violation
        profile.__dict__["w_square"] = RadiusResult(
            value=1.0, upper=1.0, theta_star=0.0, witness=np.array([1, 0j]), evaluations=0
        )
        (cert,) = engine.evaluate_all(diag_ray, lam_params(1j, 0.1), ids=["I-2.2"], profile=profile)
        assert cert.verdict is Verdict.VIOLATED
        assert cert.witness_available
        assert cert.slack == pytest.approx(1.005 - 8.0)

    def test_unit_modulus_case(self, diag_ray):
        cert = evaluate("I-2.7", diag_ray, lam_params(2j, 0.1))
        assert cert.verdict is Verdict.NOT_APPLICABLE

    def test_prior_branches(self, diag_ray):
        params = ParamSet(lambda_radius=LambdaRadius(lam=1j, r=0.1), prior=PriorParams(rho=2))
        assert evaluate("I-1.3a", diag_ray, params).verdict is Verdict.VERIFIED
        assert evaluate("I-1.3b", diag_ray, params).verdict is Verdict.NOT_APPLICABLE
        assert evaluate("I-1.3b", diag_ray, params.with_prior(0.5)).verdict is Verdict.VERIFIED

    def test_prior_needs_small_lambda(self, diag_ray):
        params = ParamSet(lambda_radius=LambdaRadius(lam=2, r=5), prior=PriorParams(rho=1))
        assert evaluate("I-1.3a", diag_ray, params).verdict is Verdict.NOT_APPLICABLE

    def test_digest_depends_on_params(self, diag_ray):
        a = inputs_digest([diag_ray], lam_params(1j, 0.1))
        b = inputs_digest([diag_ray], lam_params(1j, 0.2))
        assert a != b
        assert a == evaluate("I-2.2", diag_ray, lam_params(1j, 0.1)).inputs_digest


class TestEvaluateAll:
    def test_identity_full_defaults(self):
        certs = evaluate_all(np.eye(2), full_defaults())
        assert [c.id for c in certs] == list(OPERATOR_IDS)
        by_id = {c.id: c for c in certs}
        assert by_id[InequalityId.I_1_3B].verdict is Verdict.NOT_APPLICABLE
        for cert in certs:
            if cert.id is not InequalityId.I_1_3B:
                assert cert.verdict is Verdict.VERIFIED, cert.id
                assert cert.slack >= -1e-12, cert.id

    def test_hermitian_with_fitted_params(self):
        A = np.diag([3.0, 1.0])
        certs = evaluate_all(A, fitted_params(A))
        verdicts = {c.id: c.verdict for c in certs}
        assert Verdict.VIOLATED not in verdicts.values()
        assert Verdict.HYPOTHESIS_FAILED not in verdicts.values()
        assert verdicts[InequalityId.I_3_4] is Verdict.VERIFIED

    def test_infeasible_disk(self):
        A = np.diag([1, 1j])
        fit = fit_disk(A)
        assert not fit.feasible
        by_id = {c.id: c for c in evaluate_all(A, ParamSet(disk=fit.params))}
        assert by_id[InequalityId.I_3_4].verdict is Verdict.NOT_APPLICABLE
        assert by_id[InequalityId.I_3_7].verdict is Verdict.NOT_APPLICABLE
        assert by_id[InequalityId.I_2_2].verdict is Verdict.NOT_APPLICABLE

    def test_subset_keeps_catalog_order(self, diag_ray):
        certs = evaluate_all(diag_ray, lam_params(1j, 0.1), ids=["I-2.8a", "I-2.2"])
        assert [c.id for c in certs] == [InequalityId.I_2_2, InequalityId.I_2_8A]

    def test_non_normal(self, nilpotent):
        with pytest.raises(NotNormal):
            evaluate_all(nilpotent, ParamSet())
        certs = evaluate_all(nilpotent, ParamSet(), ids=["I-2.13"])
        assert certs[0].verdict is Verdict.VERIFIED

    def test_normality_guard_ignores_config(self, config, nilpotent):
        config["ledger"]["strict_normality"] = False
        engine = CertificateEngine(config)
        with pytest.raises(NotNormal):
            engine.evaluate("I-2.2", np.array([[1, 1], [0, 1]]), lam_params(1, 1.0))
        with pytest.raises(NotNormal) as excinfo:
            engine.evaluate_all(nilpotent, full_defaults())
        assert "I-" not in str(excinfo.value)

    def test_thread_pool_matches_serial(self, config, random_normal):
        A = random_normal(5, seed=77)
        params = fitted_params(A)
        serial = CertificateEngine(config, workers=1).evaluate_all(A, params)
        pooled = CertificateEngine(config, workers=3).evaluate_all(A, params)
        assert [c.id for c in pooled] == [c.id for c in serial] == list(OPERATOR_IDS)
        assert [c.verdict for c in pooled] == [c.verdict for c in serial]
        np.testing.assert_allclose([c.slack for c in pooled], [c.slack for c in serial], rtol=0, atol=1e-12)

    def test_combination_reproduces_refinement(self, random_normal):
        A = random_normal(4, seed=5)
        params = ParamSet(combination=CombinationParams(alpha=0.5, beta=0.5))
        by_id = {c.id: c for c in evaluate_all(A, params, ids=["I-2.11", "I-2.14"])}
        assert by_id[InequalityId.I_2_11].lhs == pytest.approx(by_id[InequalityId.I_2_14].lhs, rel=1e-12)
        assert by_id[InequalityId.I_2_11].rhs == pytest.approx(by_id[InequalityId.I_2_14].rhs, rel=1e-12)

    def test_combination_holds_for_any_coefficients(self, random_normal, rng):
        for trial in range(20):
            A = random_normal(int(rng.integers(2, 7)), seed=200 + trial)
            alpha, beta = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            params = ParamSet(combination=CombinationParams(alpha=alpha, beta=beta))
            for cert in evaluate_all(A, params, ids=["I-2.11", "I-2.11a"]):
                assert cert.verdict is Verdict.VERIFIED

    def test_convexity_on_random_matrices(self, rng):
        engine = CertificateEngine()
        for _ in range(20):
            n = int(rng.integers(1, 7))
            A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            assert engine.evaluate("I-2.13", A, ParamSet()).verdict is Verdict.VERIFIED

    @pytest.mark.parametrize("seed", range(8))
    def test_soundness_on_fitted_instances(self, random_normal, seed):
        A = random_normal(2 + seed % 5, seed=1000 + seed)
        params = fitted_params(A, rho=0.5 + seed / 4)
        for cert in evaluate_all(A, params):
            assert cert.verdict is not Verdict.VIOLATED, cert.id

    def test_soundness_on_ray_spectra(self, random_normal, ray_law):
        for trial in range(5):
            A = random_normal(6, seed=trial, kind="ray-spectrum", law=ray_law(0.2 + trial, 1.5))
            certs = evaluate_all(A, fitted_params(A))
            assert all(c.verdict is not Verdict.VIOLATED for c in certs)
            verified = [c for c in certs if c.verdict is Verdict.VERIFIED]
            assert {c.id for c in verified} >= {InequalityId.I_2_2, InequalityId.I_2_15, InequalityId.I_3_4}

    def test_ray_spectra_sit_in_the_equality_regime(self, random_normal, ray_law, rng):
        engine = CertificateEngine()
        for trial in range(100):
            angle = float(rng.uniform(0, 2 * np.pi))
            A = random_normal(int(rng.integers(2, 9)), seed=3000 + trial, kind="ray-spectrum", law=ray_law(angle))
            fit = fit_lambda(A)
            assert fit.achieved <= 1e-10
            assert abs(fit.params.lam) == pytest.approx(1.0, abs=1e-9)

            profile = engine.profile(A)
            assert abs(profile.w_square.upper - profile.norm ** 2) <= 1e-7
            cert = engine.evaluate("I-2.2", A, ParamSet(lambda_radius=fit.params))
            assert cert.verdict is Verdict.VERIFIED
            r, lam_abs = fit.params.r, abs(fit.params.lam)
            assert -1e-12 <= cert.slack <= r * r / (2 * lam_abs) + 1e-7


class TestCrossRelations:
    def test_unit_lambda_equality(self, diag_ray):
        engine = CertificateEngine()
        certs = engine.evaluate_all(diag_ray, lam_params(1j, 0.5))
        by_id = {c.id: c for c in certs}
        assert by_id[InequalityId.I_2_8A].rhs == pytest.approx(0.125)
        assert by_id[InequalityId.I_2_8B].rhs == pytest.approx(0.125)
        report = engine.cross_relations(certs)
        assert report.all_hold
        names = {check.name: check for check in report.checks}
        assert names["segment-rearrangement"].skipped

    def test_coarser_bound(self, diag_ray):
        engine = CertificateEngine()
        certs = engine.evaluate_all(diag_ray, lam_params(2, 1))
        by_id = {c.id: c for c in certs}
        assert by_id[InequalityId.I_2_8A].rhs == pytest.approx(0.2)
        assert by_id[InequalityId.I_2_8B].rhs == pytest.approx(2 / 9)
        assert by_id[InequalityId.I_1_2].rhs == pytest.approx(2 / 9)
        assert engine.cross_relations(certs).all_hold

    def test_segment_rearrangement(self):
        engine = CertificateEngine()
        A = np.diag([2.0, 1.0])
        certs = engine.evaluate_all(A, ParamSet(segment=SegmentParams(m=0.5, M=2)))
        by_id = {c.id: c for c in certs}
        assert by_id[InequalityId.I_3_15].verdict is by_id[InequalityId.I_3_16].verdict
        report = engine.cross_relations(certs)
        assert not [c for c in report.checks if c.name == "segment-rearrangement" and c.skipped]
        assert report.all_hold and not report.failures

    def test_missing_certificate(self, diag_ray):
        from src.utils.errors import MissingCertificate

        engine = CertificateEngine()
        certs = engine.evaluate_all(diag_ray, lam_params(1j, 0.1), ids=["I-2.2", "I-2.6"])
        with pytest.raises(MissingCertificate):
            engine.cross_relations(certs)

    def test_slack_monotonicity_on_random_instances(self, random_normal, rng):
        engine = CertificateEngine()
        for trial in range(10):
            A = random_normal(4, seed=300 + trial)
            lam = complex(rng.standard_normal(), rng.standard_normal())
            r = float(rng.uniform(0.01, 4.0))
            params = fitted_params(A).model_copy(update={"lambda_radius": LambdaRadius(lam=lam, r=r)})
            report = engine.cross_relations(engine.evaluate_all(A, params))
            assert report.all_hold, report.failures
