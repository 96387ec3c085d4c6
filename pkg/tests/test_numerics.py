"""Bessel J2, RK4, and loop-geometry kernels."""

import math

import numpy as np
import pytest

from qmemristor.numerics import (
    PlanarCurve,
    bessel_j2,
    decompose_loop,
    loop_area_unsigned,
    rk4_integrate,
    shoelace_area,
)
from qmemristor.numerics import _bessel_jn

# 30-digit reference values (independent arbitrary-precision evaluation)
J2_REFERENCE = {
    0.5: 0.030604023458682641307,
    1.0: 0.11490348493190048047,
    2.5: 0.44605905843961722674,
    5.0: 0.046565116277752215532,
    9.5: 0.22787915416269179771,
    12.0: -0.084930494878604805352,
    20.0: -0.16034135192299815017,
    35.0: 0.12935945088086260638,
    49.5: -0.0065527941613811318182,
}


class TestBesselJ2:
    def test_zero(self):
        assert bessel_j2(0.0) == 0.0

    def test_small_x_limit(self):
        # J2(x)/x^2 -> 1/8 as x -> 0
        for x in (1e-4, 1e-5):
            assert bessel_j2(x) / x**2 == pytest.approx(0.125, rel=1e-6)

    @pytest.mark.parametrize("x,ref", sorted(J2_REFERENCE.items()))
    def test_reference_values(self, x, ref):
        assert abs(bessel_j2(x) - ref) <= 1e-12

    def test_even_function(self):
        assert bessel_j2(-3.7) == bessel_j2(3.7)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            bessel_j2(50.0)
        with pytest.raises(ValueError):
            bessel_j2(-120.0)
        with pytest.raises(ValueError):
            bessel_j2(float("nan"))

    def test_recurrence(self):
        # J1(x) + J3(x) = (4/x) J2(x)
        for x in np.linspace(0.1, 10.0, 40):
            lhs = _bessel_jn(1, x) + _bessel_jn(3, x)
            rhs = 4.0 / x * bessel_j2(x)
            assert abs(lhs - rhs) <= 1e-10


class TestRK4:
    def test_constant(self):
        t, y = rk4_integrate(lambda t, y: [0.0], [3.25], 0.0, 1.0, 16)
        assert len(t) == 17
        assert np.all(y[:, 0] == 3.25)

    def test_cosine_integral(self):
        t, y = rk4_integrate(lambda t, y: [math.cos(t)], [0.0], 0.0, 2 * math.pi, 10000)
        assert abs(y[-1, 0]) <= 1e-10

    def test_fock_law_closed_form(self):
        t, y = rk4_integrate(
            lambda t, y: [math.sin(2.0 * t)], [0.0], 0.0, math.pi, 4096
        )
        exact = 0.5 * (1.0 - np.cos(2.0 * t))
        assert np.max(np.abs(y[:, 0] - exact)) <= 1e-9

    def test_fourth_order_convergence(self):
        def err(n):
            t, y = rk4_integrate(
                lambda t, y: [math.sin(2.0 * t)], [0.0], 0.0, math.pi, n
            )
            return np.max(np.abs(y[:, 0] - 0.5 * (1.0 - np.cos(2.0 * t))))

        ratio = err(128) / err(256)
        assert 12.0 <= ratio <= 20.0

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            rk4_integrate(lambda t, y: [0.0], [0.0], 0.0, 1.0, 0)
        with pytest.raises(ValueError):
            rk4_integrate(lambda t, y: [0.0], [0.0], 1.0, 1.0, 8)

    def test_non_finite_derivative_diagnostic(self):
        with pytest.raises(ValueError, match="t="):
            rk4_integrate(lambda t, y: [float("inf")], [0.0], 0.0, 1.0, 8)


def circle(n=256, radius=1.0):
    psi = np.linspace(0.0, 2.0 * math.pi, n + 1)
    return PlanarCurve(
        points=np.column_stack([radius * np.cos(psi), radius * np.sin(psi)])
    )


def figure_eight(n=1024):
    # half-step offset keeps the self-crossing interior to segments instead
    # of exactly on a sample vertex
    psi = np.linspace(0.0, 2.0 * math.pi, n + 1) + math.pi / n
    return PlanarCurve(points=np.column_stack([np.sin(2.0 * psi), np.sin(psi)]))


class TestPlanarCurve:
    def test_too_few_points(self):
        with pytest.raises(ValueError):
            PlanarCurve(points=np.zeros((4, 2)))

    def test_open_endpoints_rejected_when_closed(self):
        pts = np.column_stack([np.linspace(0, 1, 16), np.zeros(16)])
        with pytest.raises(ValueError):
            PlanarCurve(points=pts, closed=True)


class TestDecomposeLoop:
    def test_circle(self):
        dec = decompose_loop(circle())
        assert dec.crossing_count == 0
        assert dec.sub_loop_count == 1
        assert abs(abs(dec.signed_areas[0]) - math.pi) <= 1e-3

    def test_figure_eight(self):
        dec = decompose_loop(figure_eight())
        assert dec.crossing_count == 1
        assert dec.sub_loop_count == 2
        a = np.abs(dec.signed_areas)
        assert abs(a[0] - a[1]) <= 1e-6

    def test_signed_areas_sum_to_raw_shoelace(self):
        for curve in (circle(), figure_eight()):
            dec = decompose_loop(curve)
            raw = shoelace_area(curve.points)
            assert abs(np.sum(dec.signed_areas) - raw) <= 1e-9

    def test_open_curve_rejected(self):
        c = circle()
        open_curve = PlanarCurve(points=c.points[:-10], closed=False)
        with pytest.raises(ValueError):
            decompose_loop(open_curve)

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            decompose_loop(circle(), tol=0.0)


class TestLoopAreaUnsigned:
    def test_circle(self):
        assert loop_area_unsigned(circle()) == pytest.approx(math.pi, abs=1e-3)

    def test_figure_eight_sums_magnitudes(self):
        area = loop_area_unsigned(figure_eight())
        dec = decompose_loop(figure_eight())
        assert area == pytest.approx(float(np.sum(np.abs(dec.signed_areas))))
        # signed total nearly cancels, unsigned total does not
        assert abs(shoelace_area(figure_eight().points)) <= 1e-6
        assert area > 1.0

    def test_rotation_and_reversal_invariance(self):
        base = figure_eight()
        a0 = loop_area_unsigned(base)
        pts = base.points[:-1]
        rolled = np.roll(pts, 137, axis=0)
        rolled = np.vstack([rolled, rolled[:1]])
        assert loop_area_unsigned(PlanarCurve(points=rolled)) == pytest.approx(
            a0, rel=1e-9
        )
        reversed_pts = base.points[::-1]
        assert loop_area_unsigned(PlanarCurve(points=reversed_pts)) == pytest.approx(
            a0, rel=1e-9
        )
