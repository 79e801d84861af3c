import numpy as np
import pytest

from src.linalg.core import quadratic_form
from src.numerical_range.radius import numerical_radius
from src.sphere.functionals import Functional, delta, mu, sphere_oracle, xi
from src.utils.errors import InvalidParameters, UnknownFunctional


class TestXi:
    def test_diagonal(self):
        est = xi(np.diag([3.0, 1.0]))
        assert est.value == pytest.approx(1.0)
        assert est.certified
        assert abs(est.witness[1]) == pytest.approx(1.0)

    def test_singular(self, nilpotent):
        assert xi(nilpotent).value == pytest.approx(0.0, abs=1e-15)

    def test_oracle_bounds_from_above(self, random_normal):
        A = random_normal(4, seed=9)
        oracle = sphere_oracle("xi", A, 100_000, seed=1)
        assert oracle >= xi(A).value - 1e-12


class TestMu:
    def test_origin_inside_range(self):
        est = mu(np.diag([1, 1j]))
        assert est.value == 0.0
        assert est.certified
        T2 = np.diag([1, 1j]) @ np.diag([1, 1j])
        assert abs(quadratic_form(T2, est.witness)) <= 1e-12

    def test_positive_interval(self):
        est = mu(np.diag([3.0, 1.0]))
        assert est.value == pytest.approx(1.0, abs=1e-9)
        assert est.certified

    def test_negative_interval(self):
        assert mu(np.diag([2j, 1j])).value == pytest.approx(1.0, abs=1e-9)

    def test_oracle_equivalence(self, rng):
        for trial in range(10):
            n = int(rng.integers(2, 4))
            T = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            T = T / np.linalg.norm(T, 2)
            est = mu(T)
            oracle = sphere_oracle(Functional.MU2, T, 100_000, seed=trial)
            assert oracle >= est.value ** 2 - 1e-9
            assert oracle - est.value ** 2 <= 0.05

    def test_lower_bound_below_upper(self, rng):
        T = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        est = mu(T)
        assert est.value <= est.upper + 1e-12

    def test_bounded_by_radius_of_square(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 7))
            T = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            assert mu(T).value ** 2 <= numerical_radius(T @ T).upper + 1e-8


class TestDelta:
    def test_positive_hermitian(self):
        est = delta(np.diag([3.0, 1.0]))
        assert est.value == 0.0 and est.certified

    def test_eigenvector_witness(self):
        est = delta(np.diag([1, 1j]))
        assert est.value == 0.0 and est.certified
        assert np.linalg.norm(est.witness) == pytest.approx(1.0)

    def test_nilpotent(self, nilpotent):
        est = delta(nilpotent)
        assert est.value <= 1e-9
        assert not est.certified

    def test_zero_on_normal_ensemble(self, random_normal):
        for seed in range(10):
            est = delta(random_normal(5, seed=seed))
            assert est.value <= 1e-9
            assert est.certified

    def test_needs_a_restart(self):
        with pytest.raises(InvalidParameters):
            delta(np.eye(2), restarts=0)

    def test_deterministic(self, rng):
        T = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        assert delta(T, seed=3).value == delta(T, seed=3).value


class TestSphereOracle:
    def test_xi_window(self):
        value = sphere_oracle("xi", np.diag([3.0, 1.0]), 100_000, seed=42)
        assert 1.0 <= value <= 1.05

    def test_mu_squared_window(self):
        value = sphere_oracle("mu2", np.diag([3.0, 1.0]), 100_000, seed=42)
        assert 1.0 <= value <= 1.2

    def test_delta_of_identity(self):
        assert sphere_oracle("delta", np.eye(2), 10, seed=1) == 0.0

    def test_reproducible(self, rng):
        T = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        assert sphere_oracle("mu", T, 5000, seed=8) == sphere_oracle("mu", T, 5000, seed=8)

    def test_unknown_functional(self):
        with pytest.raises(UnknownFunctional):
            sphere_oracle("nu", np.eye(2), 10, seed=0)

    def test_needs_samples(self):
        with pytest.raises(InvalidParameters):
            sphere_oracle("xi", np.eye(2), 0, seed=0)
