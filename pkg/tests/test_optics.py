"""Beam-splitter matrices and the Mach-Zehnder composition identity."""

import math

import numpy as np
import pytest

from qmemristor.optics_core import (
    BeamSplitterSpec,
    MZConfig,
    bs_matrix,
    is_unitary,
    mz_effective,
    retarder_matrix,
)


class TestBsMatrix:
    def test_identity_at_zero(self):
        m = bs_matrix(BeamSplitterSpec(theta=0.0))
        assert np.allclose(m, np.eye(2))

    def test_balanced_magnitudes(self):
        m = bs_matrix(BeamSplitterSpec(theta=math.pi / 2.0))
        assert np.allclose(np.abs(m), 1.0 / math.sqrt(2.0))

    def test_full_reflection(self):
        m = bs_matrix(BeamSplitterSpec(theta=math.pi))
        assert abs(m[0, 0]) <= 1e-15 and abs(m[1, 1]) <= 1e-15
        assert abs(abs(m[0, 1]) - 1.0) <= 1e-15
        assert abs(abs(m[1, 0]) - 1.0) <= 1e-15

    def test_unitary_and_unit_determinant_on_grid(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            th, pt, pr = rng.uniform(0.0, 2.0 * math.pi, 3)
            m = bs_matrix(BeamSplitterSpec(theta=th, phi_t=pt, phi_r=pr))
            assert is_unitary(m, 1e-13)
            assert abs(abs(np.linalg.det(m)) - 1.0) <= 1e-13

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            BeamSplitterSpec(theta=float("nan"))

    def test_angles_not_range_reduced(self):
        spec = BeamSplitterSpec(theta=7.0 * math.pi)
        assert spec.theta == 7.0 * math.pi


class TestRetarder:
    def test_zero_identity(self):
        assert np.allclose(retarder_matrix(0.0), np.eye(2))

    def test_two_pi_identity(self):
        assert np.max(np.abs(retarder_matrix(2.0 * math.pi) - np.eye(2))) <= 1e-15

    def test_pi(self):
        assert np.allclose(retarder_matrix(math.pi), np.diag([1.0, -1.0]))


class TestMZEffective:
    def test_fully_transmissive(self):
        res = mz_effective(MZConfig.balanced(0.0, phi_t=math.pi / 2.0, phi_r=1.3))
        assert res.effective.theta == pytest.approx(0.0, abs=1e-15)
        assert res.global_phase == 0.0
        assert res.defect <= 1e-12

    def test_fully_reflective(self):
        res = mz_effective(MZConfig.balanced(math.pi, phi_t=math.pi / 2.0))
        assert res.effective.theta == pytest.approx(math.pi)
        assert res.defect <= 1e-12

    def test_random_grid_defect(self):
        rng = np.random.default_rng(11)
        worst = 0.0
        for _ in range(1000):
            th, pt, pr = rng.uniform(0.0, 2.0 * math.pi, 3)
            res = mz_effective(MZConfig.balanced(th, phi_t=pt, phi_r=pr))
            worst = max(worst, res.defect)
        assert worst <= 1e-12

    def test_effective_phase_difference(self):
        # effective phi_t - phi_r = (phi_t - phi_r) + pi/2
        res = mz_effective(MZConfig.balanced(1.1, phi_t=0.4, phi_r=1.9))
        assert res.effective.phi == pytest.approx(0.4 - 1.9 + math.pi / 2.0)

    def test_base_must_be_balanced(self):
        with pytest.raises(ValueError):
            MZConfig(retarder_theta=1.0, base=BeamSplitterSpec(theta=1.0))


class TestIsUnitary:
    def test_identity(self):
        assert is_unitary(np.eye(2), 1e-13)

    def test_non_unitary(self):
        assert not is_unitary(np.diag([2.0, 1.0]), 1e-13)

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            is_unitary(np.eye(2), 0.0)
